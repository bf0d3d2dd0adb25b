"""Générateurs pseudo-aléatoires nommés et reproductibles."""

import numpy as np

PRNG_NAME = "numpy.PCG64"


def make_rng(seed: int) -> np.random.Generator:
    """Crée un générateur PCG64 déterministe pour une graine donnée."""
    return np.random.Generator(np.random.PCG64(seed))
