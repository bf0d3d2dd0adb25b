"""Tests pour Scorpius RAG."""