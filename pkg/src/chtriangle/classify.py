"""Trace-based classification of isometries in SU(2,1).

The discriminant polynomial

    f(z) = |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27

separates the conjugacy types: f(tr M) < 0 exactly for regular elliptic
elements, f > 0 for loxodromic ones, and the f = 0 locus carries the
boundary elliptic and parabolic elements, which are told apart by the
eigenstructure of M.
"""

import cmath
import enum
from dataclasses import dataclass

import numpy as np

from .linalg import is_unitary_for_form, normalize_to_su

# |f| below this is treated as "on the f = 0 locus"
EPS_DISCRIMINANT = 1e-9
# eigenvalue modulus above 1 + this certifies loxodromic in the fallback path
EPS_LOXODROMIC = 1e-7
# rank tolerance for (M - lambda I), scaled by the spectral norm of M
RANK_TOL = 1e-8
# eigenvalue clustering scale used to detect repeated spectra
CLUSTER_TOL = 1e-4


class IsometryClass(enum.Enum):
    IDENTITY = "identity"
    REGULAR_ELLIPTIC = "regular_elliptic"
    BOUNDARY_ELLIPTIC = "boundary_elliptic"
    UNIPOTENT_PARABOLIC = "unipotent_parabolic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Classification:
    """Classification verdict with its witnesses."""

    tag: IsometryClass
    trace: complex
    eigenvalues: tuple
    discriminant: float


def discriminant(z):
    """Evaluate f(z) = |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27.

    Accepts complex scalars or numpy arrays (evaluated elementwise).
    """
    z = np.asarray(z, dtype=complex)
    val = np.abs(z) ** 4 - 8.0 * np.real(z**3) + 18.0 * np.abs(z) ** 2 - 27.0
    if val.ndim == 0:
        return float(val)
    return val


def trace(M) -> complex:
    """Sum of the diagonal entries."""
    return complex(np.trace(np.asarray(M, dtype=complex)))


def second_invariant(M) -> complex:
    """Sum of the principal 2x2 minors (second characteristic coefficient)."""
    M = np.asarray(M, dtype=complex)
    return complex(
        M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        + M[0, 0] * M[2, 2] - M[0, 2] * M[2, 0]
        + M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1]
    )


def cubic_roots(c2: complex, c1: complex, c0: complex):
    """Roots of x^3 - c2 x^2 + c1 x - c0 by the closed Cardano formulas."""
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = -c0 + c1 * c2 / 3.0 - 2.0 * c2**3 / 27.0
    if abs(p) < 1e-30 and abs(q) < 1e-30:
        return (shift, shift, shift)
    delta = cmath.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
    u3a = -q / 2.0 + delta
    u3b = -q / 2.0 - delta
    u3 = u3a if abs(u3a) >= abs(u3b) else u3b
    u = u3 ** (1.0 / 3.0)
    v = -p / (3.0 * u)
    w = cmath.exp(2j * cmath.pi / 3.0)
    return tuple(u * w**j + v * w**-j + shift for j in range(3))


def _repeated_eigenvalue(c2, c1, eigenvalues):
    """Best estimate of the repeated root: the critical point of the
    characteristic polynomial nearest the closest root pair."""
    pairs = [(abs(eigenvalues[i] - eigenvalues[j]), i, j)
             for i in range(3) for j in range(i + 1, 3)]
    _, i, j = min(pairs)
    center = 0.5 * (eigenvalues[i] + eigenvalues[j])
    # roots of the derivative 3 x^2 - 2 c2 x + c1
    disc = cmath.sqrt(c2 * c2 - 3.0 * c1)
    cand = ((c2 + disc) / 3.0, (c2 - disc) / 3.0)
    return min(cand, key=lambda t: abs(t - center))


def classify(M, eps_f: float = EPS_DISCRIMINANT) -> Classification:
    """Classify a form-unitary matrix up to the SU(2,1) scaling ambiguity.

    Regular elliptic and loxodromic elements are decided by the sign of
    the discriminant of the trace; on the borderline |f| <= eps_f the
    decision falls to the eigenstructure, never to the sign of f.
    """
    M = np.asarray(M, dtype=complex)
    if not is_unitary_for_form(M):
        raise ValueError("classify needs a matrix preserving the form")
    M = normalize_to_su(M)

    tau = trace(M)
    f = discriminant(tau)
    c1 = second_invariant(M)
    c0 = complex(np.linalg.det(M))
    eigs = cubic_roots(tau, c1, c0)

    scale = float(np.linalg.norm(M, 2))

    # projectively the identity: M = lambda I with lambda^3 = det = 1
    lam = tau / 3.0
    if np.abs(M - lam * np.eye(3)).max() <= 1e-10 * max(1.0, abs(lam)):
        return Classification(IsometryClass.IDENTITY, tau, (lam, lam, lam), f)

    if f < -eps_f:
        return Classification(IsometryClass.REGULAR_ELLIPTIC, tau, eigs, f)
    if f > eps_f:
        return Classification(IsometryClass.LOXODROMIC, tau, eigs, f)

    # on the f = 0 locus: boundary elliptic / parabolic / drifted loxodromic.
    # Cluster analysis comes first: closed-form roots of a near-triple cubic
    # carry noise of order eps^(1/3), so eigenvalue moduli alone cannot be
    # trusted here.
    lam0 = _repeated_eigenvalue(tau, c1, eigs)
    d = M - lam0 * np.eye(3)

    diam = max(abs(eigs[i] - eigs[j]) for i in range(3) for j in range(i + 1, 3))
    if diam <= CLUSTER_TOL * max(1.0, scale):
        # triple eigenvalue: unipotent up to a cube root of unity
        if np.abs(d).max() <= RANK_TOL * scale:
            return Classification(IsometryClass.IDENTITY, tau, eigs, f)
        if np.abs(d @ d @ d).max() <= RANK_TOL * scale**3:
            return Classification(IsometryClass.UNIPOTENT_PARABOLIC, tau, eigs, f)
        return Classification(IsometryClass.PARABOLIC, tau, eigs, f)

    sing = np.linalg.svd(d, compute_uv=False)
    rank = int(np.sum(sing > RANK_TOL * scale))
    if rank <= 1:
        # repeated eigenvalue with a two-dimensional eigenspace
        return Classification(IsometryClass.BOUNDARY_ELLIPTIC, tau, eigs, f)
    if rank == 2:
        return Classification(IsometryClass.PARABOLIC, tau, eigs, f)
    # no defective eigenvalue found: fall back on the eigenvalue moduli
    moduli = [abs(t) for t in eigs]
    tag = (IsometryClass.LOXODROMIC if max(moduli) > 1.0 + EPS_LOXODROMIC
           else IsometryClass.PARABOLIC)
    return Classification(tag, tau, eigs, f)
