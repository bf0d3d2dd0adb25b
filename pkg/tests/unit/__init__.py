"""Tests unitaires pour Scorpius RAG."""