"""Exact cyclotomic arithmetic and the finite-order refutation engine.

A trace of a finite-order regular elliptic product of three involutions
would be a sum of three l-th roots of unity with exponents summing to
zero, and would have to sit exactly on the circle

    |tau + 4 (s1^2 + s2^2) + 1| = 8 s1 s2        (s_j the corner cosines).

Every Galois conjugate of such a trace lies on the conjugated circle,
whose rightmost point -4(|s1'| - |s2'|)^2 - 1 is strictly left of -1
whenever s1' != s2'.  Summing the real parts of all conjugates then
contradicts the Euler-phi bound 1/phi(d1) + 1/phi(d2) + 1/phi(d3) > 1.
This module enumerates all candidate traces up to a bound on l and
reports survivors of the numeric filters together with the exact
cyclotomic diagnostics.
"""

import cmath
import math
import time
from dataclasses import dataclass

import numpy as np

from .classify import discriminant
from .triangles import corner_cos, is_infinite

DEFAULT_CIRCLE_TOL = 1e-8
DEFAULT_NEAR_TOL = 1e-3
DEFAULT_CONDUCTOR_CAP = 10**6
MAX_ORDER_BOUND = 2000


def euler_phi(d: int) -> int:
    """Euler's totient, by trial-division factorisation."""
    if d < 1:
        raise ValueError("euler_phi needs a positive integer")
    result = d
    rest = d
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if rest > 1:
        result -= result // rest
    return result


@dataclass(frozen=True)
class PhiCheck:
    """Orders d_i of the root-of-unity summands and the totient bound."""

    d: tuple
    holds: bool


def phi_inequality(l: int, k1: int, k2: int, k3: int) -> PhiCheck:
    """Evaluate 1/phi(d1) + 1/phi(d2) + 1/phi(d3) > 1 with
    d_i = l / gcd(k_i, l)."""
    d = tuple(l // math.gcd(k % l, l) for k in (k1, k2, k3))
    total = sum(1.0 / euler_phi(di) for di in d)
    return PhiCheck(d=d, holds=total > 1.0)


class CyclotomicInt:
    """Element of Z[omega_N] as an integer coefficient vector mod N.

    coeffs[j] is the coefficient of omega_N^j = exp(2 pi i j / N).  The
    representation works in Z[x]/(x^N - 1); it is not reduced modulo the
    cyclotomic polynomial, which is irrelevant for evaluation and for the
    Galois reindexing used here.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 1:
            raise ValueError("order must be a positive integer")
        self.order = int(order)
        if coeffs is None:
            self.coeffs = np.zeros(self.order, dtype=np.int64)
        else:
            coeffs = np.asarray(coeffs, dtype=np.int64)
            if coeffs.shape != (self.order,):
                raise ValueError("coefficient vector must have length N")
            self.coeffs = coeffs.copy()

    @classmethod
    def root(cls, order: int, j: int, coeff: int = 1) -> "CyclotomicInt":
        """coeff * omega_order^j."""
        out = cls(order)
        out.coeffs[j % order] = coeff
        return out

    @classmethod
    def integer(cls, order: int, t: int) -> "CyclotomicInt":
        """The rational integer t."""
        return cls.root(order, 0, t)

    def _check_compatible(self, other):
        if not isinstance(other, CyclotomicInt) or other.order != self.order:
            raise ValueError("operands must share the same root order")

    def __add__(self, other):
        self._check_compatible(other)
        return CyclotomicInt(self.order, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check_compatible(other)
        return CyclotomicInt(self.order, self.coeffs - other.coeffs)

    def __neg__(self):
        return CyclotomicInt(self.order, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CyclotomicInt(self.order, self.coeffs * int(other))
        self._check_compatible(other)
        # cyclic convolution over the sparser support
        a, b = self, other
        if np.count_nonzero(b.coeffs) < np.count_nonzero(a.coeffs):
            a, b = b, a
        out = np.zeros(self.order, dtype=np.int64)
        for j in np.nonzero(a.coeffs)[0]:
            out += a.coeffs[j] * np.roll(b.coeffs, j)
        return CyclotomicInt(self.order, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, CyclotomicInt)
            and other.order == self.order
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.order, self.coeffs.tobytes()))

    def __repr__(self):
        terms = [f"{int(c)}*w^{j}" for j, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"CyclotomicInt(N={self.order}: {body})"

    def galois(self, k: int) -> "CyclotomicInt":
        """Galois image under omega_N -> omega_N^k; k must be coprime to N."""
        if math.gcd(k % self.order, self.order) != 1:
            raise ValueError("galois automorphism index must be coprime to N")
        out = np.zeros(self.order, dtype=np.int64)
        support = np.nonzero(self.coeffs)[0]
        np.add.at(out, (support * (k % self.order)) % self.order, self.coeffs[support])
        return CyclotomicInt(self.order, out)

    def conjugate(self) -> "CyclotomicInt":
        """Complex conjugation (the Galois map with k = N - 1 for N > 1)."""
        if self.order == 1:
            return CyclotomicInt(self.order, self.coeffs)
        return self.galois(self.order - 1)

    def evaluate(self) -> complex:
        """Numeric value sum_j c_j exp(2 pi i j / N), over the support only."""
        support = np.nonzero(self.coeffs)[0]
        if support.size == 0:
            return 0j
        phases = np.exp((2j * np.pi / self.order) * support)
        return complex(np.sum(self.coeffs[support] * phases))

    def evaluate_conjugate(self, k: int) -> complex:
        """Numeric value of the Galois image under omega_N -> omega_N^k,
        computed over the support without materialising the image."""
        if math.gcd(k % self.order, self.order) != 1:
            raise ValueError("galois automorphism index must be coprime to N")
        support = np.nonzero(self.coeffs)[0]
        if support.size == 0:
            return 0j
        phases = np.exp((2j * np.pi / self.order) * ((support * k) % self.order))
        return complex(np.sum(self.coeffs[support] * phases))


def trace_circle_rightmost(s1: float, s2: float) -> float:
    """Rightmost real point of the circle carrying the conjugated trace:
    -(4 (s1^2 + s2^2) + 1) + |8 s1 s2| = -4 (|s1| - |s2|)^2 - 1."""
    return -4.0 * (abs(s1) - abs(s2)) ** 2 - 1.0


def circle_condition(tau: complex, m, n, tol: float = DEFAULT_CIRCLE_TOL) -> bool:
    """True when tau lies on the trace circle of the (m, n) family to
    absolute tolerance tol."""
    s1 = corner_cos(n)
    s2 = corner_cos(m)
    center = 4.0 * (s1 * s1 + s2 * s2) + 1.0
    return abs(abs(tau + center) - 8.0 * s1 * s2) <= tol


@dataclass(frozen=True)
class CandidateTrace:
    """Canonical candidate omega_l^k1 + omega_l^k2 + omega_l^k3 with
    k1 + k2 + k3 = 0 mod l, exponents sorted and l minimal."""

    l: int
    k: tuple

    def value(self) -> complex:
        w = 2j * math.pi / self.l
        return sum(cmath.exp(w * k) for k in self.k)


def canonical_candidate(l: int, ks) -> CandidateTrace:
    """Sort the exponents mod l and divide out any common factor with l."""
    ks = sorted(k % l for k in ks)
    if sum(ks) % l != 0:
        raise ValueError("exponents must sum to 0 mod l")
    g = math.gcd(math.gcd(ks[0], math.gcd(ks[1], ks[2])), l)
    if g > 1:
        l //= g
        ks = sorted(k // g for k in ks)
    return CandidateTrace(l=l, k=tuple(ks))


def enumerate_candidates(max_l: int):
    """All canonical candidates with l <= max_l, in (l, k) order."""
    out = []
    for l in range(1, max_l + 1):
        for k1 in range(l):
            for k2 in range(k1, l):
                k3 = (-k1 - k2) % l
                if k3 < k2:
                    continue
                if math.gcd(math.gcd(k1, math.gcd(k2, k3)), l) > 1:
                    continue
                out.append(CandidateTrace(l=l, k=(k1, k2, k3)))
    return out


@dataclass(frozen=True)
class ConjugateScan:
    """Exact scan of the circle bound over all Galois conjugates."""

    conductor: int
    n_conjugates: int
    max_rightmost: float
    all_strictly_below: bool
    worst_k: int


@dataclass(frozen=True)
class SurvivorDiagnostic:
    candidate: CandidateTrace
    circle_gap: float
    conductor: int | None
    galois_refuted: bool | None
    witness_k: int | None
    witness_re: float | None
    phi: PhiCheck
    note: str = ""


@dataclass(frozen=True)
class NearMissDiagnostic:
    candidate: CandidateTrace
    circle_gap: float
    conjugates: ConjugateScan | None
    phi: PhiCheck
    note: str = ""


@dataclass(frozen=True)
class RefutationReport:
    m: float
    n: int
    max_l: int
    circle_tol: float
    near_tol: float
    conductor_cap: int
    candidates_checked: int
    regular_elliptic_candidates: int
    survivors: tuple
    near_misses: tuple
    elapsed_seconds: float

    @property
    def overflowed(self):
        flagged = [s for s in self.survivors if s.note == "unchecked (N overflow)"]
        flagged += [t for t in self.near_misses if t.note == "unchecked (N overflow)"]
        return tuple(flagged)


def _conductor(l: int, m, n) -> int:
    N = l
    if not is_infinite(m):
        N = math.lcm(N, 2 * int(m))
    N = math.lcm(N, 2 * int(n))
    return N


def _corner_cyclotomic(order, N: int) -> CyclotomicInt:
    """2 cos(pi/order) as an element of Z[omega_N]; the integer 2 when the
    corner order is infinite."""
    if is_infinite(order):
        return CyclotomicInt.integer(N, 2)
    j = N // (2 * int(order))
    return CyclotomicInt.root(N, j) + CyclotomicInt.root(N, -j)


def _conjugate_scan(l: int, m, n, conductor_cap: int) -> ConjugateScan | None:
    """Exact evaluation of the circle's rightmost point at every Galois
    conjugate; None when the conductor exceeds the cap."""
    N = _conductor(l, m, n)
    if N > conductor_cap:
        return None
    two_s1 = _corner_cyclotomic(n, N)
    two_s2 = _corner_cyclotomic(m, N)
    worst = -math.inf
    worst_k = 1
    count = 0
    for k in range(1, N + 1):
        if math.gcd(k, N) != 1:
            continue
        count += 1
        s1k = two_s1.evaluate_conjugate(k).real / 2.0
        s2k = two_s2.evaluate_conjugate(k).real / 2.0
        rightmost = trace_circle_rightmost(s1k, s2k)
        if rightmost > worst:
            worst = rightmost
            worst_k = k
    return ConjugateScan(
        conductor=N,
        n_conjugates=count,
        max_rightmost=worst,
        all_strictly_below=worst < -1.0,
        worst_k=worst_k,
    )


def _survivor_diagnostic(cand: CandidateTrace, gap: float, m, n, conductor_cap: int) -> SurvivorDiagnostic:
    """Exact Galois check of a survivor: hunt for a conjugate of the exact
    cyclotomic trace whose real part reaches -1, contradicting the circle
    bound."""
    phi = phi_inequality(cand.l, *cand.k)
    N = _conductor(cand.l, m, n)
    if N > conductor_cap:
        return SurvivorDiagnostic(
            candidate=cand, circle_gap=gap, conductor=None, galois_refuted=None,
            witness_k=None, witness_re=None, phi=phi, note="unchecked (N overflow)",
        )
    step = N // cand.l
    tau = CyclotomicInt(N)
    for k in cand.k:
        tau = tau + CyclotomicInt.root(N, k * step)
    witness_k = None
    witness_re = None
    for k in range(1, N + 1):
        if math.gcd(k, N) != 1:
            continue
        re = tau.evaluate_conjugate(k).real
        if re >= -1.0:
            witness_k = k
            witness_re = re
            break
    return SurvivorDiagnostic(
        candidate=cand,
        circle_gap=gap,
        conductor=N,
        galois_refuted=witness_k is not None,
        witness_k=witness_k,
        witness_re=witness_re,
        phi=phi,
    )


def refute_finite_order(
    m,
    n: int,
    max_l: int = 60,
    circle_tol: float = DEFAULT_CIRCLE_TOL,
    near_tol: float = DEFAULT_NEAR_TOL,
    conductor_cap: int = DEFAULT_CONDUCTOR_CAP,
) -> RefutationReport:
    """Enumerate candidate finite-order traces and report the survivors.

    A candidate survives when it is regular elliptic (discriminant below
    -1e-9) and sits on the trace circle to circle_tol; the expected result
    is an empty survivor list.  Candidates passing the circle test only at
    the loose near_tol are reported as near-misses together with the exact
    Galois scan of the circle bound over all conjugates.

    The corner orders must differ; the equal-order family is outside the
    scope of this engine.
    """
    if is_infinite(n):
        raise ValueError("n must be finite")
    if n != int(n) or n < 3:
        raise ValueError("n must be an integer >= 3")
    if not is_infinite(m) and (m != int(m) or m < 3):
        raise ValueError("m must be an integer >= 3 or infinity")
    if not is_infinite(m) and int(m) == int(n):
        raise ValueError(
            "equal corner orders are outside this engine's scope "
            "(covered by prior published results); m must differ from n"
        )
    if max_l > MAX_ORDER_BOUND:
        raise ValueError(f"max_l is capped at {MAX_ORDER_BOUND}")

    start = time.perf_counter()
    s1 = corner_cos(n)
    s2 = corner_cos(m)
    center = 4.0 * (s1 * s1 + s2 * s2) + 1.0
    radius = 8.0 * s1 * s2

    survivors = []
    near = []
    checked = 0
    elliptic = 0
    for cand in enumerate_candidates(max_l):
        checked += 1
        tau = cand.value()
        if discriminant(tau) >= -1e-9:
            continue
        elliptic += 1
        gap = abs(abs(tau + center) - radius)
        if gap <= circle_tol:
            survivors.append(_survivor_diagnostic(cand, gap, m, n, conductor_cap))
        elif gap <= near_tol:
            scan = _conjugate_scan(cand.l, m, n, conductor_cap)
            note = "" if scan is not None else "unchecked (N overflow)"
            near.append(
                NearMissDiagnostic(
                    candidate=cand,
                    circle_gap=gap,
                    conjugates=scan,
                    phi=phi_inequality(cand.l, *cand.k),
                    note=note,
                )
            )
    survivors.sort(key=lambda s: (s.candidate.l, s.candidate.k))
    near.sort(key=lambda s: (s.candidate.l, s.candidate.k))
    return RefutationReport(
        m=m,
        n=n,
        max_l=max_l,
        circle_tol=circle_tol,
        near_tol=near_tol,
        conductor_cap=conductor_cap,
        candidates_checked=checked,
        regular_elliptic_candidates=elliptic,
        survivors=tuple(survivors),
        near_misses=tuple(near),
        elapsed_seconds=time.perf_counter() - start,
    )
