"""Non-discreteness criteria and interval scans over a = cos(theta).

Three certificates are implemented for the triangle group with corner
orders (m, n) and an ideal third corner:

* regular elliptic: the product of the three involutions is regular
  elliptic (discriminant of its trace negative);
* jorgensen: the complex hyperbolic Jorgensen inequality applied to the
  order-n elliptic rotation and the third involution;
* shimizu: Shimizu's lemma applied to the Heisenberg translation produced
  by the two vertical sides and the first involution.

Each criterion has a continuous defining function of a that is negative
exactly where the criterion fires, so interval endpoints are honest roots
found by sign-scanning a uniform grid and bisecting every sign change.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classify import IsometryClass, discriminant
from .triangles import corner_cos, corner_sin, is_infinite, trace_word_123, trace_word_3132
from .util import worker_count

SCAN_TESTS = ("re", "jorgensen", "shimizu")

#: row sets of the three built-in survey tables
TABLE_ROWS = {
    1: (11, 12, 13, 14, 15, 20, 30, 40, 100, 200),
    2: (4, 5, 6, 7, 8, 9, 10, 20, 30, 100, 200),
    3: (4, 5, 6, 7, 8, 9, 10, 15, 20, 40, 100, 200),
}

TABLE_COLUMNS = {
    1: ("elliptic_lo", "elliptic_hi"),
    2: ("jorgensen_lo", "shimizu_lo"),
    3: ("elliptic_lo", "elliptic_hi", "jorgensen_lo", "shimizu_lo"),
}

DEFAULT_GRID = 100_000
DEFAULT_TOL = 1e-10
# discriminant values above -EPS_FIRE do not count as a strict firing
EPS_FIRE = 1e-9


@dataclass(frozen=True)
class CriterionEvaluation:
    """Outcome of the regular elliptic criterion at one configuration."""

    fires: bool
    trace: complex
    discriminant: float


@dataclass(frozen=True)
class ScanResult:
    """Maximal open intervals of a = cos(theta) on which a criterion fires."""

    test: str
    m: float
    n: float
    intervals: tuple
    tol: float

    def contains(self, a: float) -> bool:
        return any(lo < a < hi for lo, hi in self.intervals)


@dataclass(frozen=True)
class TableRow:
    n: int
    cells: dict


@dataclass(frozen=True)
class TableResult:
    table: int
    columns: tuple
    rows: tuple


@dataclass(frozen=True)
class WordClassification:
    trace: float
    tag: IsometryClass


@dataclass(frozen=True)
class NondiscretenessReport:
    """Aggregated verdict of all applicable certificates at one point."""

    m: float
    n: float
    theta: float
    a: float
    regular_elliptic: CriterionEvaluation
    jorgensen: bool | None
    shimizu: bool
    word_3132: WordClassification | None
    fired: tuple
    certified: bool
    verdict: str


def regular_elliptic_value(m, n, a):
    """Discriminant of the trace of the product of the three involutions,
    as a function of a = cos(theta).  Negative exactly where the product
    is regular elliptic.  Vectorised over a."""
    a = np.asarray(a, dtype=float)
    s1 = corner_cos(n)
    s2 = corner_cos(m)
    c = -5.0 - 2.0 * _corner_cos2(m) - 2.0 * _corner_cos2(n)
    sin_theta = np.sqrt(np.clip(1.0 - a * a, 0.0, None))
    tau = c + 8.0 * s1 * s2 * (a + 1j * sin_theta)
    val = discriminant(tau)
    if np.ndim(val) == 0:
        return float(val)
    return val


def _corner_cos2(order):
    return 1.0 if is_infinite(order) else math.cos(2.0 * math.pi / order)


def jorgensen_value(m, n, a):
    """Defining function of the Jorgensen criterion: |.| - sin(pi/n)/2.

    Requires a finite elliptic order n >= 7 (the inequality only applies
    to a regular elliptic rotation of order at least 7).
    """
    if is_infinite(n) or n < 7:
        raise ValueError("jorgensen criterion needs finite n >= 7")
    a = np.asarray(a, dtype=float)
    s1 = corner_cos(n)
    s2 = corner_cos(m)
    val = np.abs(s1 * s1 + 2.0 * s2 * s2 - 4.0 * s1 * s2 * a + 1.0) - 0.5 * corner_sin(n)
    if np.ndim(val) == 0:
        return float(val)
    return val


def shimizu_value(m, n, a):
    """Defining function of the Shimizu criterion: |u - 2iv| + 4u - 1/4,
    with u = s1^2 + s2^2 - 2 s1 s2 a and v = s1 s2 sin(theta)."""
    a = np.asarray(a, dtype=float)
    s1 = corner_cos(n)
    s2 = corner_cos(m)
    u = s1 * s1 + s2 * s2 - 2.0 * s1 * s2 * a
    v = s1 * s2 * np.sqrt(np.clip(1.0 - a * a, 0.0, None))
    val = np.abs(u - 2j * v) + 4.0 * u - 0.25
    if np.ndim(val) == 0:
        return float(val)
    return val


def regular_elliptic_criterion(m, n, theta) -> CriterionEvaluation:
    """Evaluate the regular elliptic certificate at angular invariant theta."""
    tau = trace_word_123(m, n, theta)
    f = discriminant(tau)
    return CriterionEvaluation(fires=f < -EPS_FIRE, trace=tau, discriminant=f)


def jorgensen_condition(m, n, theta) -> bool:
    """True when the Jorgensen certificate fires (strict inequality)."""
    return jorgensen_value(m, n, math.cos(theta)) < 0.0


def shimizu_condition(m, n, theta) -> bool:
    """True when the Shimizu certificate fires (strict inequality)."""
    return shimizu_value(m, n, math.cos(theta)) < 0.0


_VALUE_FUNCTIONS = {
    "re": regular_elliptic_value,
    "jorgensen": jorgensen_value,
    "shimizu": shimizu_value,
}


def _bisect_root(fn, lo, hi, f_lo_negative, tol):
    """Shrink a sign-change bracket to width <= tol; returns the midpoint."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (fn(mid) < 0.0) == f_lo_negative:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan_intervals(test: str, m, n, grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL) -> ScanResult:
    """Find all maximal intervals of a in [-1, 1] where a criterion fires.

    The defining function is sampled on a uniform grid; every sign change
    is refined by bisection to a bracket of width <= tol, and each reported
    interval is re-checked at its midpoint against the strict inequality.
    An empty interval list means the scan found no certificate.
    """
    if test not in SCAN_TESTS:
        raise ValueError(f"unknown test {test!r}; expected one of {SCAN_TESTS}")
    if grid < 1000:
        raise ValueError("grid must be at least 1000 points")
    if tol > 1e-6:
        raise ValueError("tol must be at most 1e-6")
    if test == "jorgensen" and (is_infinite(n) or n < 7):
        return ScanResult(test=test, m=m, n=n, intervals=(), tol=tol)

    fn = _VALUE_FUNCTIONS[test]
    a = np.linspace(-1.0, 1.0, grid)
    values = fn(m, n, a)
    negative = values < 0.0

    scalar = lambda x: float(fn(m, n, x))
    intervals = []
    i = 0
    while i < grid:
        if not negative[i]:
            i += 1
            continue
        j = i
        while j + 1 < grid and negative[j + 1]:
            j += 1
        lo = -1.0 if i == 0 else _bisect_root(scalar, a[i - 1], a[i], False, tol)
        hi = 1.0 if j == grid - 1 else _bisect_root(scalar, a[j], a[j + 1], True, tol)
        if scalar(0.5 * (lo + hi)) < 0.0:
            intervals.append((lo, hi))
        i = j + 1
    return ScanResult(test=test, m=m, n=n, intervals=tuple(intervals), tol=tol)


def _table_cell(scan: ScanResult, which: str):
    """Reduce a scan to the table cell convention: the full interval for the
    regular elliptic columns, the left endpoint of the last interval for the
    one-sided criteria."""
    if not scan.intervals:
        return (None, None) if which == "re" else None
    if which == "re":
        return scan.intervals[0]
    return scan.intervals[-1][0]


def reproduce_table(which: int, grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL) -> TableResult:
    """Recompute one of the three built-in survey tables.

    Table 1: regular elliptic intervals for corner orders (8, n).
    Table 2: Jorgensen and Shimizu endpoints for corner orders (8, n).
    Table 3: all four columns for the family with one finite corner order n.

    Cells are None where the criterion is inapplicable or the scan finds
    no interval; the CLI renders those as dashes.
    """
    if which not in TABLE_ROWS:
        raise ValueError("table index must be 1, 2 or 3")
    m = 8 if which in (1, 2) else math.inf

    def build_row(n: int) -> TableRow:
        cells = {}
        if which in (1, 3):
            lo, hi = _table_cell(scan_intervals("re", m, n, grid, tol), "re")
            cells["elliptic_lo"] = lo
            cells["elliptic_hi"] = hi
        if which in (2, 3):
            cells["jorgensen_lo"] = _table_cell(
                scan_intervals("jorgensen", m, n, grid, tol), "jorgensen"
            )
            cells["shimizu_lo"] = _table_cell(
                scan_intervals("shimizu", m, n, grid, tol), "shimizu"
            )
        return TableRow(n=n, cells=cells)

    rows = TABLE_ROWS[which]
    workers = min(worker_count(), len(rows))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            built = tuple(pool.map(build_row, rows))
    else:
        built = tuple(build_row(n) for n in rows)
    return TableResult(table=which, columns=TABLE_COLUMNS[which], rows=built)


def word_3132_analysis(n, a, boundary_tol: float = 1e-12) -> WordClassification:
    """Trace and isometry class of the word 3132 in the one-finite-corner
    family, from the closed trace formula.

    The word is regular elliptic exactly for a strictly between s and
    (1 + 4 s^2)/(4 s) with s = cos(pi/n); at the left endpoint it is
    unipotent parabolic, at the right endpoint (when it is a geometric
    parameter value) boundary elliptic, and loxodromic outside.
    """
    if is_infinite(n) or n < 3:
        raise ValueError("n must be a finite corner order >= 3")
    if not -1.0 <= a <= 1.0:
        raise ValueError("a = cos(theta) must lie in [-1, 1]")
    s = corner_cos(n)
    t = trace_word_3132(n, a)
    upper = (1.0 + 4.0 * s * s) / (4.0 * s)
    if abs(a - s) <= boundary_tol:
        tag = IsometryClass.UNIPOTENT_PARABOLIC
    elif upper <= 1.0 + boundary_tol and abs(a - upper) <= boundary_tol:
        tag = IsometryClass.BOUNDARY_ELLIPTIC
    elif s < a < upper:
        tag = IsometryClass.REGULAR_ELLIPTIC
    else:
        tag = IsometryClass.LOXODROMIC
    return WordClassification(trace=t, tag=tag)


def order_k_locus(n: int, k: int) -> float:
    """The value of a = cos(theta) at which the word 3132 becomes elliptic
    of rotation angle 2 pi/k, i.e. has trace 1 + 2 cos(2 pi/k)."""
    if is_infinite(n) or n < 3:
        raise ValueError("n must be a finite corner order >= 3")
    if k < 2:
        raise ValueError("k must be at least 2")
    s = corner_cos(n)
    a = (8.0 * s * s - math.cos(2.0 * math.pi / k) + 1.0) / (8.0 * s)
    if not -1.0 <= a <= 1.0:
        raise ValueError(f"no geometric parameter: a = {a:.6g} outside [-1, 1]")
    return a


def _merge_intervals(intervals):
    merged = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    return merged


def word_order_cos_window(n: int, grid: int = DEFAULT_GRID, tol: float = DEFAULT_TOL):
    """Window of cos(2 pi/k) values certifying non-discreteness through the
    order of the word 3132.

    Scans all three criteria for the family with finite corner order n,
    takes the union component of the certified set that reaches a = 1, and
    maps its endpoints through the order-k locus relation.
    """
    pieces = []
    for test in SCAN_TESTS:
        pieces.extend(scan_intervals(test, math.inf, n, grid, tol).intervals)
    merged = _merge_intervals(pieces)
    near_one = [iv for iv in merged if iv[1] >= 1.0 - 1e-9]
    if not near_one:
        raise ValueError(f"no certified interval reaching a = 1 for n = {n}")
    a_lo = near_one[-1][0]
    s = corner_cos(n)
    c_at = lambda a: 8.0 * s * s + 1.0 - 8.0 * s * a
    return (c_at(1.0), c_at(a_lo))


def nondiscreteness_report(m, n, theta) -> NondiscretenessReport:
    """Run every applicable certificate at one configuration.

    The verdict is "certified non-discrete" as soon as one criterion
    fires; the report never claims discreteness.
    """
    a = math.cos(theta)
    re_eval = regular_elliptic_criterion(m, n, theta)
    jor = None
    if not is_infinite(n) and n >= 7:
        jor = jorgensen_condition(m, n, theta)
    shi = shimizu_condition(m, n, theta)
    word = None
    if is_infinite(m) and not is_infinite(n):
        word = word_3132_analysis(n, a)
    fired = []
    if re_eval.fires:
        fired.append("re")
    if jor:
        fired.append("jorgensen")
    if shi:
        fired.append("shimizu")
    certified = bool(fired)
    return NondiscretenessReport(
        m=m,
        n=n,
        theta=theta,
        a=a,
        regular_elliptic=re_eval,
        jorgensen=jor,
        shimizu=shi,
        word_3132=word,
        fired=tuple(fired),
        certified=certified,
        verdict="certified non-discrete" if certified else "no certificate",
    )
