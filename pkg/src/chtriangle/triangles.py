"""Parametrised families of complex hyperbolic triangle groups.

A triangle of complex geodesics with corner angles (pi/m, pi/n, 0) is
pinned down, up to conjugation, by its angular invariant theta.  The
builders here produce the standard normalised configuration: three polar
vectors, the triangle vertices, and the three side involutions that
generate the group.  Infinite corner orders are passed as math.inf.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import cvector, hermitian_form, involution_from_polar

# rejects configurations where the second and third sides collapse
DEGENERACY_TOL = 1e-14


def is_infinite(order) -> bool:
    """True for the infinite corner order."""
    return isinstance(order, float) and math.isinf(order)


def _check_order(order, name: str):
    if is_infinite(order):
        return
    if order != int(order) or order < 3:
        raise ValueError(f"{name} must be an integer >= 3 or infinity")


def corner_cos(order) -> float:
    """cos(pi/order), with the value 1 at an infinite order."""
    return 1.0 if is_infinite(order) else math.cos(math.pi / order)


def corner_cos2(order) -> float:
    """cos(2 pi/order), with the value 1 at an infinite order."""
    return 1.0 if is_infinite(order) else math.cos(2.0 * math.pi / order)


def corner_sin(order) -> float:
    """sin(pi/order), with the value 0 at an infinite order."""
    return 0.0 if is_infinite(order) else math.sin(math.pi / order)


@dataclass(frozen=True)
class TriangleType:
    """Shape parameters (m, n, theta); the third corner is always ideal."""

    m: float
    n: float
    theta: float

    def __post_init__(self):
        _check_order(self.m, "m")
        _check_order(self.n, "n")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")

    @property
    def a(self) -> float:
        """Parameter a = cos(theta)."""
        return math.cos(self.theta)


@dataclass(frozen=True)
class TriangleGroup:
    """A normalised triangle configuration and its three involutions."""

    ttype: TriangleType
    polars: tuple
    vertices: tuple
    involutions: tuple

    def word(self, letters: str) -> np.ndarray:
        """Product of involutions named by a word over {1, 2, 3},
        e.g. "123" or "3132"."""
        if not letters or any(c not in "123" for c in letters):
            raise ValueError("word must be a nonempty string over {1,2,3}")
        out = np.eye(3, dtype=complex)
        for c in letters:
            out = out @ self.involutions[int(c) - 1]
        return out


def build_mn_inf(m: int, n: int, theta: float) -> TriangleGroup:
    """Triangle group with two finite corner angles pi/m and pi/n.

    The first side is the unit-circle chain; the second and third are the
    vertical chains through cos(pi/n) and e^(i theta) cos(pi/m).  The
    configuration with those two chains equal (theta = 0, m = n) is
    rejected as degenerate.
    """
    if is_infinite(m) or is_infinite(n):
        raise ValueError("both corner orders must be finite here")
    ttype = TriangleType(m, n, theta)
    s1 = corner_cos(n)
    s2 = corner_cos(m)
    z1 = complex(s1)
    z2 = s2 * cmath.exp(1j * theta)
    if abs(z2 - z1) < DEGENERACY_TOL:
        raise ValueError("degenerate configuration: two sides coincide")
    p1 = cvector(0, 1, 0)
    p2 = cvector(1, -z1, z1)
    p3 = cvector(1, -z2.conjugate(), z2.conjugate())
    u1 = cvector(0, 1, -1)
    u2 = cvector(z2, 0, 1)
    u3 = cvector(z1.conjugate(), 0, 1)
    return TriangleGroup(
        ttype=ttype,
        polars=(p1, p2, p3),
        vertices=(u1, u2, u3),
        involutions=tuple(involution_from_polar(p) for p in (p1, p2, p3)),
    )


def build_n_inf_inf(n: int, theta: float) -> TriangleGroup:
    """Triangle group with a single finite corner angle pi/n.

    Normalisation with the second side the vertical chain through 1 and
    the third the vertical chain through e^(i theta) cos(pi/n); the finite
    corner sits between the third and first sides.
    """
    if is_infinite(n):
        raise ValueError("the finite corner order n must be finite")
    ttype = TriangleType(math.inf, n, theta)
    s = corner_cos(n)
    w = s * cmath.exp(-1j * theta)
    p1 = cvector(0, 1, 0)
    p2 = cvector(1, -1, 1)
    p3 = cvector(1, -w, w)
    u1 = cvector(0, 1, -1)
    u2 = cvector(w.conjugate(), 0, 1)
    u3 = cvector(1, 0, 1)
    return TriangleGroup(
        ttype=ttype,
        polars=(p1, p2, p3),
        vertices=(u1, u2, u3),
        involutions=tuple(involution_from_polar(p) for p in (p1, p2, p3)),
    )


def trace_word_123(m, n, theta) -> complex:
    """Closed form for the trace of the product of the three involutions.

    tr = -5 - 2 cos(2pi/m) - 2 cos(2pi/n)
         + 8 e^(i theta) cos(pi/m) cos(pi/n),

    valid for finite or infinite corner orders.
    """
    return complex(
        -5.0
        - 2.0 * corner_cos2(m)
        - 2.0 * corner_cos2(n)
        + 8.0 * cmath.exp(1j * theta) * corner_cos(m) * corner_cos(n)
    )


def trace_word_3132(n, a) -> float:
    """Closed form 3 + 16 s^2 - 16 s a for the word 3132 in the family
    with one finite corner order n, where s = cos(pi/n) and a = cos(theta)."""
    s = corner_cos(n)
    return 3.0 + 16.0 * s * s - 16.0 * s * a


def parameter_t(theta: float) -> float:
    """Alternative deformation parameter t with cos(theta) = (t^2-1)/(t^2+1)."""
    if not 0.0 < theta < math.pi:
        raise ValueError("parameter_t needs theta strictly inside (0, pi)")
    a = math.cos(theta)
    return math.sqrt((1.0 + a) / (1.0 - a))


def angular_invariant(p1, p2, p3) -> float:
    """Angular invariant: arg of the cyclic product of the pairwise
    Hermitian products of the polar vectors."""
    prod = (
        hermitian_form(p3, p2)
        * hermitian_form(p1, p3)
        * hermitian_form(p2, p1)
    )
    return math.atan2(prod.imag, prod.real)
