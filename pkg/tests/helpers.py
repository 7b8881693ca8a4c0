"""Shared random generators for the test suite."""

import numpy as np

from chtriangle.heisenberg import HeisenbergPoint
from chtriangle.linalg import involution_from_polar, normalize_to_su


def make_rng(seed: int = 0) -> np.random.RandomState:
    return np.random.RandomState(seed)


def random_complex(rng, scale: float = 1.0) -> complex:
    return complex(rng.randn() * scale, rng.randn() * scale)


def random_negative_vector(rng) -> np.ndarray:
    """Random vector with <z, z> < 0, at a random projective scale."""
    while True:
        a = random_complex(rng, 0.4)
        b = random_complex(rng, 0.4)
        if abs(a) ** 2 + abs(b) ** 2 < 0.95:
            break
    lam = random_complex(rng)
    if abs(lam) < 1e-3:
        lam = 1.0 + 0j
    return lam * np.array([a, b, 1.0], dtype=complex)


def random_positive_vector(rng) -> np.ndarray:
    """Random vector with <z, z> > 0, kept away from the null cone so the
    reflection it defines is well conditioned."""
    b = random_complex(rng, 0.7)
    cap = np.sqrt(1.0 + abs(b) ** 2)
    c = random_complex(rng)
    c *= 0.8 * cap * rng.uniform(0.0, 1.0) / max(abs(c), 1e-9)
    lam = random_complex(rng)
    if abs(lam) < 1e-3:
        lam = 1.0 + 0j
    return lam * np.array([1.0, b, c], dtype=complex)


def random_form_unitary(rng, factors: int = 3, max_entry: float = 50.0) -> np.ndarray:
    """Random element of SU(2,1) as a bounded product of complex reflections."""
    while True:
        out = np.eye(3, dtype=complex)
        for _ in range(factors):
            out = out @ involution_from_polar(random_positive_vector(rng))
        if np.abs(out).max() <= max_entry:
            return normalize_to_su(out)


def random_heisenberg_point(rng, scale: float = 1.0) -> HeisenbergPoint:
    return HeisenbergPoint(random_complex(rng, scale), float(rng.randn() * scale))
