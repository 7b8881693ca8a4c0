"""Heisenberg group, Cygan metric and Ford isometric spheres.

The punctured boundary of the complex hyperbolic plane is the Heisenberg
group: C x R with the twisted product

    (xi1, v1) * (xi2, v2) = (xi1 + xi2, v1 + v2 + 2 Im(xi1 conj(xi2))).

The Cygan metric is induced by the gauge |(xi, v)| = ||xi|^2 - iv|^(1/2).
Matrices act on the boundary through the horospherical lift psi.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    INFINITY,
    Q_INFINITY_LIFT,
    form_inverse,
    is_unitary_for_form,
    psi,
)

# relative threshold under which an image vector is read as the point at
# infinity rather than re-normalised
INFINITY_TOL = 1e-10
# default strict slack on the Shimizu inequality before reporting a violation
SHIMIZU_SLACK = 1e-12


@dataclass(frozen=True)
class HeisenbergPoint:
    """Boundary point (xi, v) in Heisenberg coordinates."""

    xi: complex
    v: float


@dataclass(frozen=True)
class ExtendedPoint:
    """Horospherical point (xi, v, u) with height u >= 0."""

    xi: complex
    v: float
    u: float

    def __post_init__(self):
        if self.u < 0:
            raise ValueError("horospherical height u must be >= 0")


@dataclass(frozen=True)
class IsometricSphere:
    """Cygan sphere on which an infinity-moving isometry acts isometrically."""

    center: HeisenbergPoint
    radius: float


ORIGIN = HeisenbergPoint(0j, 0.0)


def heis_mul(p: HeisenbergPoint, q: HeisenbergPoint) -> HeisenbergPoint:
    """Heisenberg group product."""
    twist = 2.0 * (complex(p.xi) * complex(q.xi).conjugate()).imag
    return HeisenbergPoint(complex(p.xi) + complex(q.xi), p.v + q.v + twist)


def heis_inverse(p: HeisenbergPoint) -> HeisenbergPoint:
    """Group inverse (-xi, -v)."""
    return HeisenbergPoint(-complex(p.xi), -p.v)


def heis_norm(p: HeisenbergPoint) -> float:
    """Gauge norm ||xi|^2 - iv|^(1/2)."""
    return abs(abs(complex(p.xi)) ** 2 - 1j * p.v) ** 0.5


def cygan_distance(p: HeisenbergPoint, q: HeisenbergPoint) -> float:
    """Left-invariant Cygan distance |p^-1 * q|."""
    return heis_norm(heis_mul(heis_inverse(p), q))


def cygan_distance_ext(p: ExtendedPoint, q: ExtendedPoint) -> float:
    """Cygan distance extended to horospherical points by the |u1 - u2|
    term inside the gauge."""
    xi1, xi2 = complex(p.xi), complex(q.xi)
    inner = (
        abs(xi1 - xi2) ** 2
        + abs(p.u - q.u)
        - 1j * p.v
        + 1j * q.v
        - 2j * (xi1 * xi2.conjugate()).imag
    )
    return abs(inner) ** 0.5


def boundary_action(M, point):
    """Apply a form-unitary matrix to a boundary point.

    Accepts a HeisenbergPoint or the INFINITY marker and returns the same
    kind of value; points carried to the distinguished point return
    INFINITY rather than raising.
    """
    if not is_unitary_for_form(M):
        raise ValueError("boundary_action needs a matrix preserving the form")
    if point is INFINITY:
        lift = Q_INFINITY_LIFT
    else:
        lift = psi((point.xi, point.v, 0.0))
    w = np.asarray(M, dtype=complex) @ lift
    denom = w[1] + w[2]
    if abs(denom) <= INFINITY_TOL * np.abs(w).max():
        return INFINITY
    w = w / denom
    return HeisenbergPoint(complex(w[0]), float((w[1] - w[2]).imag))


def fixes_infinity(M) -> bool:
    """True when M carries the distinguished boundary point to itself."""
    return boundary_action(M, INFINITY) is INFINITY


def heisenberg_translation(xi, v) -> np.ndarray:
    """Matrix of the Heisenberg translation by (xi, v).

    Fixes the distinguished point and acts on the boundary as left
    multiplication by (xi, v).
    """
    xi = complex(xi)
    c = -abs(xi) ** 2 + 1j * v
    return np.array(
        [
            [1.0, xi, xi],
            [-xi.conjugate(), 1.0 + c / 2.0, c / 2.0],
            [xi.conjugate(), -c / 2.0, 1.0 - c / 2.0],
        ],
        dtype=complex,
    )


def translation_of(M, tol: float = 1e-8) -> HeisenbergPoint:
    """Read off the translation vector of a Heisenberg translation matrix.

    Raises when M moves the distinguished point or fails to act as a left
    translation on probe points.
    """
    if not fixes_infinity(M):
        raise ValueError("not a Heisenberg translation: infinity moves")
    t = boundary_action(M, ORIGIN)
    scale = 1.0 + abs(t.xi) ** 2 + abs(t.v)
    for probe in (HeisenbergPoint(1.0 + 0j, 0.0), HeisenbergPoint(1j, 2.0)):
        got = boundary_action(M, probe)
        want = heis_mul(t, probe)
        if got is INFINITY:
            raise ValueError("not a Heisenberg translation")
        if abs(got.xi - want.xi) > tol * scale or abs(got.v - want.v) > tol * scale:
            raise ValueError("not a Heisenberg translation")
    return t


def translation_length(M, z: HeisenbergPoint) -> float:
    """Cygan displacement of an infinity-fixing isometry at z."""
    if not fixes_infinity(M):
        raise ValueError("translation_length needs a map fixing infinity")
    image = boundary_action(M, z)
    return cygan_distance(image, z)


def isometric_sphere(h) -> IsometricSphere:
    """Isometric sphere of an isometry not fixing the distinguished point.

    The centre is h^-1(infinity); the radius is
    sqrt(2 / |a22 - a23 + a32 - a33|).
    """
    h = np.asarray(h, dtype=complex)
    if not is_unitary_for_form(h):
        raise ValueError("isometric_sphere needs a matrix preserving the form")
    denom = abs(h[1, 1] - h[1, 2] + h[2, 1] - h[2, 2])
    if fixes_infinity(h) or denom <= 1e-14 * np.abs(h).max():
        raise ValueError("isometric sphere undefined: the map fixes infinity")
    center = boundary_action(form_inverse(h), INFINITY)
    return IsometricSphere(center=center, radius=math.sqrt(2.0 / denom))


def shimizu_violation(g, h, slack: float = SHIMIZU_SLACK) -> bool:
    """Certificate test from Shimizu's lemma for the complex hyperbolic plane.

    Any discrete group containing the Heisenberg translation g by (xi, v)
    and an element h moving infinity satisfies

        r_h^2 <= t_g(h^-1(inf)) * t_g(h(inf)) + 4 |xi|^2.

    Returns True when the inequality fails by more than slack, which
    certifies non-discreteness of any group containing g and h.
    """
    t = translation_of(g)
    sphere = isometric_sphere(h)
    forward = boundary_action(h, INFINITY)
    backward = boundary_action(form_inverse(h), INFINITY)

    def displacement(point):
        return cygan_distance(boundary_action(g, point), point)

    bound = displacement(forward) * displacement(backward) + 4.0 * abs(t.xi) ** 2
    return sphere.radius**2 > bound + slack
