"""Machine re-verification of the rank-3 maximal-defect case analysis.

The worst orthogonality defect of a rank-3 HKZ-reduced basis is 25/12.  The
argument normalizes ||b_1||^2 = 1 and works in the five parameters

    mu_21 = lambda, mu_31 = mu, mu_32 = sigma,
    ||b_2(2)||^2 = k,  ||b_3(3)||^2 = l,

with lambda, mu in [0, 1/2] and sigma in [-1/2, 1/2].  After disposing of
|sigma| <= 1/3 by a monotone corner bound, the remaining analysis fixes the
sign of sigma, replaces l by its minimum, and uses convexity in k to push k to
an endpoint; each of the four (sign, endpoint) combinations turns the claim
"defect >= 25/12" into a quadratic inequality Q(sigma) >= 0 whose coefficients
are polynomials in (lambda, mu).  This module verifies, in exact rational
arithmetic, that Q(sigma) <= 0 on every grid point of each case region, with
equality only at the documented extremal points.

Grid scanning is an exact check at grid points, not an interval-arithmetic
proof over the continuum between them; reports carry that caveat.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import orthogonality_defect
from .core import GramMatrix, GSOData, format_rat
from .reduction import is_hkz_reduced

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
QUARTER = Fraction(1, 4)
DEFECT_MAX_3 = Fraction(25, 12)

NEG_KMIN = "NEG_KMIN"
NEG_KMAX = "NEG_KMAX"
POS_KMIN = "POS_KMIN"
POS_KMAX = "POS_KMAX"
ALL_CASES = (NEG_KMIN, NEG_KMAX, POS_KMIN, POS_KMAX)

# equality Q(sigma) = 0 is allowed only at these (lambda, mu, sigma) points
EXPECTED_EQUALITIES = {
    NEG_KMIN: (),
    NEG_KMAX: ((HALF, HALF, -HALF),),
    POS_KMIN: (),
    POS_KMAX: ((HALF, HALF, HALF),),
}


@dataclass(frozen=True)
class CasePoint:
    """One admissible parameter tuple (lambda, mu, sigma, k, l)."""

    lam: Fraction
    mu: Fraction
    sigma: Fraction
    k: Fraction
    l: Fraction

    def validate(self) -> "CasePoint":
        if not 0 <= self.lam <= HALF:
            raise ValueError(f"lambda {self.lam} outside [0, 1/2]")
        if not 0 <= self.mu <= HALF:
            raise ValueError(f"mu {self.mu} outside [0, 1/2]")
        if not -HALF <= self.sigma <= HALF:
            raise ValueError(f"sigma {self.sigma} outside [-1/2, 1/2]")
        if self.k <= 0 or self.l <= 0:
            raise ValueError("k and l must be positive")
        return self

    def as_tuple(self):
        return (self.lam, self.mu, self.sigma, self.k, self.l)


EXTREMAL_POINT_POS = CasePoint(HALF, HALF, HALF, Fraction(1), Fraction(3, 4))
EXTREMAL_POINT_NEG = CasePoint(HALF, HALF, -HALF, Fraction(1), Fraction(3, 4))


def defect_from_parameters(point: CasePoint) -> Fraction:
    """Defect of the rank-3 basis with these parameters:
    (1 + lambda^2/k) * (1 + (mu^2 + k sigma^2)/l)."""
    if point.k <= 0 or point.l <= 0:
        raise ValueError("k and l must be positive")
    first = 1 + point.lam**2 / point.k
    second = 1 + (point.mu**2 + point.k * point.sigma**2) / point.l
    return first * second


def gram_from_parameters(point: CasePoint) -> GramMatrix:
    """Rank-3 Gram matrix with ||b_1||^2 = 1 and the given GSO parameters."""
    point.validate()
    gso = GSOData(
        mu=((), (point.lam,), (point.mu, point.sigma)),
        bstar=(Fraction(1), point.k, point.l),
    )
    return gso.reconstruct()


# ---------------------------------------------------------------------------
# the HKZ inequality system at rank 3


@dataclass(frozen=True)
class InequalitySystemReport:
    """Exact evaluation of the five rank-3 HKZ inequalities (1)-(5) plus the
    derived consequences (6)-(8)."""

    values: tuple[tuple[int, Fraction, Fraction], ...]  # (index, lhs, rhs), lhs >= rhs
    violated: tuple[int, ...]
    derived_hold: bool | None  # None when a base inequality already failed

    @property
    def ok(self) -> bool:
        return not self.violated

    @property
    def first_violated(self) -> int | None:
        return self.violated[0] if self.violated else None


def check_hkz_inequalities(point: CasePoint) -> InequalitySystemReport:
    """The five necessary inequalities for (lam, mu, sigma, k, l) to come from
    an HKZ-reduced basis, each compared exactly; consequences (6)-(8) are
    asserted whenever (1)-(5) all hold."""
    point.validate()
    lam, mu, sigma, k, l = point.as_tuple()
    one = Fraction(1)
    checks = (
        (1, k + lam**2, one),
        (2, l + k * sigma**2 + mu**2, one),
        (3, l + k * (1 + sigma) ** 2 + (1 - lam - mu) ** 2, one),
        (4, l + k * (1 - sigma) ** 2 + (lam - mu) ** 2, one),
        (5, l + k * sigma**2, k),
    )
    violated = tuple(idx for idx, lhs, rhs in checks if lhs < rhs)
    derived = None
    if not violated:
        bound = l / (1 - sigma**2)
        derived = (
            bound >= k
            and lam**2 >= 1 - bound
            and mu**2 >= 1 - bound
        )
        if not derived:
            raise AssertionError(
                "derived inequalities (6)-(8) failed although (1)-(5) hold"
            )
    return InequalitySystemReport(checks, violated, derived)


# ---------------------------------------------------------------------------
# the |sigma| <= 1/3 corner bound


@dataclass(frozen=True)
class SmallSigmaReport:
    corner_value: Fraction
    samples: tuple[tuple[Fraction, Fraction, Fraction], ...]  # (k, l, value)
    monotone: bool
    ok: bool


def small_sigma_bound_value(k: Fraction, l: Fraction) -> Fraction:
    """(1 + 1/(4k)) (9/8 + 1/(4l)), the defect envelope for |sigma| <= 1/3."""
    return (1 + Fraction(1, 4) / k) * (Fraction(9, 8) + Fraction(1, 4) / l)


def verify_small_sigma_bound(samples_per_axis: int = 8) -> SmallSigmaReport:
    """Confirm the small-sigma envelope peaks at the corner k = 3/4, l = 2/3
    with value exactly 2, decreasing in each variable away from it.

    Every sampled value must be strictly below 2 off the corner and strictly
    above the 9/8 floor.
    """
    k0, l0 = Fraction(3, 4), Fraction(2, 3)
    corner = small_sigma_bound_value(k0, l0)
    ks = [k0 + Fraction(i, 2) for i in range(samples_per_axis)]
    ls = [l0 + Fraction(i, 2) for i in range(samples_per_axis)]
    samples = []
    ok = corner == 2
    monotone = True
    for k in ks:
        for l in ls:
            v = small_sigma_bound_value(k, l)
            samples.append((k, l, v))
            if (k, l) != (k0, l0) and v >= corner:
                ok = False
            if v <= Fraction(9, 8):
                ok = False
    # monotone decrease along each axis
    for k_prev, k_next in zip(ks, ks[1:]):
        if small_sigma_bound_value(k_next, l0) >= small_sigma_bound_value(k_prev, l0):
            monotone = False
    for l_prev, l_next in zip(ls, ls[1:]):
        if small_sigma_bound_value(k0, l_next) >= small_sigma_bound_value(k0, l_prev):
            monotone = False
    return SmallSigmaReport(corner, tuple(samples), monotone, ok and monotone)


# ---------------------------------------------------------------------------
# the four quadratics in sigma


@dataclass(frozen=True)
class QuadraticCase:
    """Exact coefficients of Q(sigma) = a sigma^2 + b sigma + c for one case."""

    case_id: str
    a: Fraction
    b: Fraction
    c: Fraction

    def value(self, sigma: Fraction) -> Fraction:
        return (self.a * sigma + self.b) * sigma + self.c

    def roots_float(self) -> tuple[float, float] | None:
        """Real roots as floats, for report readability only."""
        if self.a == 0:
            return None
        disc = float(self.b * self.b - 4 * self.a * self.c)
        if disc < 0:
            return None
        s = math.sqrt(disc)
        r1 = (-float(self.b) - s) / (2 * float(self.a))
        r2 = (-float(self.b) + s) / (2 * float(self.a))
        return (min(r1, r2), max(r1, r2))


def sigma_interval(case_id: str) -> tuple[Fraction, Fraction]:
    if case_id.startswith("NEG"):
        return (-HALF, -THIRD)
    return (THIRD, HALF)


def kmin_region_contains(lam: Fraction, mu: Fraction) -> bool:
    """Admissibility for the negative-sigma k-minimal case.

    The true lower boundary on mu is 1 + lambda - sqrt(lambda^2 + 2 lambda),
    irrational in general; since mu <= 1/2 < 1 + lambda it is equivalent to
    the all-rational test (1 + lambda - mu)^2 <= lambda^2 + 2 lambda.  The
    region is empty below lambda = 1/4 exactly.
    """
    if lam < QUARTER:
        return False
    return (1 + lam - mu) ** 2 <= lam * lam + 2 * lam


def case_region_contains(case_id: str, lam: Fraction, mu: Fraction) -> bool:
    """Exact membership test for one case's (lambda, mu) region."""
    if not (0 <= lam <= HALF and 0 <= mu <= HALF):
        return False
    if case_id == NEG_KMIN:
        return kmin_region_contains(lam, mu)
    if case_id == POS_KMIN:
        return mu <= 2 * lam
    if case_id == NEG_KMAX:
        # lambda = mu = 0 makes 1 - (1 - lam - mu)^2 vanish: the case is empty
        # there (the k ceiling degenerates to 0) and Q collapses to 0
        # identically, so the corner is excluded rather than scanned.
        return lam != 0 or mu != 0
    if case_id == POS_KMAX:
        return True
    raise ValueError(f"unknown case {case_id!r}")


def case_quadratic(case_id: str, lam: Fraction, mu: Fraction) -> QuadraticCase:
    """The case's quadratic with exact coefficients, as displayed in the
    analysis; raises for (lambda, mu) outside the case region."""
    lam, mu = Fraction(lam), Fraction(mu)
    if not case_region_contains(case_id, lam, mu):
        raise ValueError(f"({lam}, {mu}) outside the {case_id} region")
    if case_id in (NEG_KMIN, POS_KMIN):
        big_a = 1 - lam * lam
        a = Fraction(25, 12) * big_a**2
        if case_id == NEG_KMIN:
            b = -2 * big_a + Fraction(25, 6) * big_a**2
            gap = (1 - lam - mu) ** 2
        else:
            b = 2 * big_a - Fraction(25, 6) * big_a**2
            gap = (lam - mu) ** 2
        c = (
            1
            - gap
            - Fraction(37, 12) * big_a
            + mu * mu
            + Fraction(25, 12) * big_a * gap
            + Fraction(25, 12) * big_a**2
        )
        return QuadraticCase(case_id, a, b, c)
    if case_id == NEG_KMAX:
        a = (
            25 * lam**4
            + 100 * lam**3 * mu
            + 198 * lam**2 * mu**2
            + 100 * lam * mu**3
            + 25 * mu**4
            - 100 * lam**3
            - 300 * lam**2 * mu
            - 300 * lam * mu**2
            - 100 * mu**3
            + 100 * lam**2
            + 200 * lam * mu
            + 100 * mu**2
        ) / 12
        b = -2 * (
            lam**4
            + 2 * lam**3 * mu
            - 2 * lam**2 * mu**2
            + 2 * lam * mu**3
            + mu**4
            - 2 * lam**3
            - 2 * lam**2 * mu
            - 2 * lam * mu**2
            - 2 * mu**3
        )
        c = (
            -Fraction(37, 12) * lam**4
            - Fraction(25, 3) * lam**3 * mu
            - Fraction(13, 2) * lam**2 * mu**2
            - Fraction(25, 3) * lam * mu**3
            - Fraction(37, 12) * mu**4
            + Fraction(25, 3) * lam**3
            + 17 * lam**2 * mu
            + 17 * lam * mu**2
            + Fraction(25, 3) * mu**3
            - Fraction(13, 3) * lam**2
            - Fraction(26, 3) * lam * mu
            - Fraction(13, 3) * mu**2
        )
        return QuadraticCase(case_id, a, b, c)
    # POS_KMAX
    a = (
        25 * lam**4
        - 100 * lam**3 * mu
        + 198 * lam**2 * mu**2
        - 100 * lam * mu**3
        + 25 * mu**4
        - 50 * lam**2
        + 100 * lam * mu
        - 50 * mu**2
        + 25
    ) / 12
    b = 2 * (
        lam**4
        - 2 * lam**3 * mu
        - 2 * lam**2 * mu**2
        - 2 * lam * mu**3
        + mu**4
        - lam**2
        - mu**2
    )
    c = (
        -Fraction(37, 12) * lam**4
        + Fraction(25, 3) * lam**3 * mu
        - Fraction(13, 2) * lam**2 * mu**2
        + Fraction(25, 3) * lam * mu**3
        - Fraction(37, 12) * mu**4
        + Fraction(25, 6) * lam**2
        - Fraction(13, 3) * lam * mu
        + Fraction(25, 6) * mu**2
        - Fraction(13, 12)
    )
    return QuadraticCase(case_id, a, b, c)


def implied_k_l(
    case_id: str, lam: Fraction, mu: Fraction, sigma: Fraction
) -> tuple[Fraction, Fraction]:
    """The (k, l) values each case substitutes before taking the quadratic:
    k at its active endpoint, l at the binding lower bound."""
    if case_id in (NEG_KMIN, POS_KMIN):
        k = 1 - lam * lam
        gap = (1 - lam - mu) ** 2 if case_id == NEG_KMIN else (lam - mu) ** 2
        factor = (1 + sigma) ** 2 if case_id == NEG_KMIN else (1 - sigma) ** 2
        return k, 1 - gap - k * factor
    gap = (1 - lam - mu) ** 2 if case_id == NEG_KMAX else (lam - mu) ** 2
    denom = 2 * (1 + sigma) if case_id == NEG_KMAX else 2 * (1 - sigma)
    k = (1 - gap) / denom
    return k, k * (1 - sigma**2)


def bound_expression_value(
    case_id: str, lam: Fraction, mu: Fraction, sigma: Fraction
) -> Fraction:
    """Direct exact evaluation of the case's defect upper-bound expression.

    Independent of the quadratic coefficients: useful to confirm that
    Q(sigma) <= 0 is exactly equivalent to the bound being <= 25/12.
    """
    k, l = implied_k_l(case_id, lam, mu, sigma)
    if k <= 0 or l <= 0:
        raise ValueError("bound expression undefined: implied k or l nonpositive")
    return defect_from_parameters(CasePoint(lam, mu, sigma, k, l))


# ---------------------------------------------------------------------------
# grid scan


@dataclass(frozen=True)
class CaseScanReport:
    case_id: str
    grid_step: Fraction
    points_checked: int
    max_value: Fraction
    argmax: CasePoint
    equality_points: tuple[CasePoint, ...]
    violations: tuple[CasePoint, ...]
    argmax_roots_float: tuple[float, float] | None
    wall_time: float

    @property
    def passed(self) -> bool:
        expected = EXPECTED_EQUALITIES[self.case_id]
        found = {(p.lam, p.mu, p.sigma) for p in self.equality_points}
        return not self.violations and found <= set(expected)


def grid_points(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    """Multiples of `step` inside [lo, hi], with both endpoints included
    exactly even when they are not multiples."""
    first = math.ceil(lo / step)
    vals = []
    i = first
    while i * step <= hi:
        vals.append(i * step)
        i += 1
    if not vals or vals[0] != lo:
        vals.insert(0, lo)
    if vals[-1] != hi:
        vals.append(hi)
    return vals


def scan_case(case_id: str, grid_step: Fraction = Fraction(1, 100)) -> CaseScanReport:
    """Exact grid scan of one case: asserts Q(sigma) <= 0 at every in-region
    grid point, recording equality points and any strict violations.

    `grid_step` must divide 1/2 so the corners of the parameter box are grid
    points.  The sigma endpoints (+-1/3, +-1/2) are always included exactly.
    """
    grid_step = Fraction(grid_step)
    if grid_step <= 0 or (HALF / grid_step).denominator != 1:
        raise ValueError("grid step must be positive and divide 1/2")
    if case_id not in ALL_CASES:
        raise ValueError(f"unknown case {case_id!r}")
    started = time.perf_counter()
    lo, hi = sigma_interval(case_id)
    sigmas = grid_points(lo, hi, grid_step)
    lm_values = grid_points(Fraction(0), HALF, grid_step)
    checked = 0
    max_value: Fraction | None = None
    argmax: tuple[Fraction, Fraction, Fraction] | None = None
    equalities: list[tuple[Fraction, Fraction, Fraction]] = []
    violations: list[tuple[Fraction, Fraction, Fraction]] = []
    for lam in lm_values:
        for mu in lm_values:
            if not case_region_contains(case_id, lam, mu):
                continue
            quad = case_quadratic(case_id, lam, mu)
            for sigma in sigmas:
                value = quad.value(sigma)
                checked += 1
                if max_value is None or value > max_value:
                    max_value = value
                    argmax = (lam, mu, sigma)
                if value == 0:
                    equalities.append((lam, mu, sigma))
                elif value > 0:
                    violations.append((lam, mu, sigma))
    if max_value is None:
        raise RuntimeError(f"empty scan region for {case_id}")

    def to_point(triple):
        lam, mu, sigma = triple
        k, l = implied_k_l(case_id, lam, mu, sigma)
        return CasePoint(lam, mu, sigma, k, l)

    roots = case_quadratic(case_id, argmax[0], argmax[1]).roots_float()
    return CaseScanReport(
        case_id=case_id,
        grid_step=grid_step,
        points_checked=checked,
        max_value=max_value,
        argmax=to_point(argmax),
        equality_points=tuple(to_point(t) for t in equalities),
        violations=tuple(to_point(t) for t in violations),
        argmax_roots_float=roots,
        wall_time=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# convexity in k of the defect envelope


def _side_of(case_id: str) -> str:
    return "NEG" if case_id.startswith("NEG") else "POS"


def _envelope_pieces(side: str, lam: Fraction, mu: Fraction, sigma: Fraction):
    """(C, E) with N(k) = C - k E the binding lower bound on l for this side."""
    if side == "NEG":
        return 1 - (1 - lam - mu) ** 2, (1 + sigma) ** 2
    if side == "POS":
        return 1 - (lam - mu) ** 2, (1 - sigma) ** 2
    raise ValueError(f"unknown side {side!r}")


def envelope_value(
    side: str, lam: Fraction, mu: Fraction, sigma: Fraction, k: Fraction
) -> Fraction:
    """The defect envelope as a function of the middle norm k:
    (1 + lambda^2/k)(1 + (mu^2 + k sigma^2)/N(k)) with N(k) = C - k E."""
    c_val, e_val = _envelope_pieces(side, lam, mu, sigma)
    n_val = c_val - k * e_val
    if k <= 0 or n_val <= 0:
        raise ValueError("outside case region: k and N(k) must be positive")
    return (1 + lam**2 / k) * (1 + (mu**2 + k * sigma**2) / n_val)


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_sub(p, q):
    n = max(len(p), len(q))
    return [
        (p[i] if i < len(p) else Fraction(0)) - (q[i] if i < len(q) else Fraction(0))
        for i in range(n)
    ]


def _poly_deriv(p):
    return [i * a for i, a in enumerate(p)][1:] or [Fraction(0)]


def _poly_eval(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def convexity_numerator(side: str, point: CasePoint) -> Fraction:
    """Numerator of d^2/dk^2 of the defect envelope over k^3 N(k)^3.

    Computed by exact rational differentiation of the closed form (quotient
    rule applied twice to the polynomial fraction), not transcribed from any
    expanded display.  Sign of the result is the sign of the second derivative
    wherever k > 0 and N(k) > 0.
    """
    lam, mu, sigma, k = point.lam, point.mu, point.sigma, point.k
    c_val, e_val = _envelope_pieces(side, lam, mu, sigma)
    if k <= 0 or c_val - k * e_val <= 0:
        raise ValueError("outside case region: k and N(k) must be positive")
    # f = P/Q with P = (k + lam^2)((C + mu^2) + k (sigma^2 - E)), Q = k(C - kE)
    p_poly = _poly_mul(
        [lam * lam, Fraction(1)], [c_val + mu * mu, sigma * sigma - e_val]
    )
    q_poly = [Fraction(0), c_val, -e_val]
    p1 = _poly_deriv(p_poly)
    q1 = _poly_deriv(q_poly)
    num1 = _poly_sub(_poly_mul(p1, q_poly), _poly_mul(p_poly, q1))
    num2 = _poly_sub(
        _poly_mul(_poly_deriv(num1), q_poly),
        _poly_mul([Fraction(2)], _poly_mul(num1, q1)),
    )
    return _poly_eval(num2, k)


def envelope_second_difference(
    side: str, point: CasePoint, step: Fraction
) -> Fraction:
    """Exact central second difference f(k-h) - 2 f(k) + f(k+h)."""
    lam, mu, sigma, k = point.lam, point.mu, point.sigma, point.k
    return (
        envelope_value(side, lam, mu, sigma, k - step)
        - 2 * envelope_value(side, lam, mu, sigma, k)
        + envelope_value(side, lam, mu, sigma, k + step)
    )


def _envelope_value_float(side, lam, mu, sigma, k) -> float:
    if side == "NEG":
        c_val = 1.0 - (1.0 - lam - mu) ** 2
        e_val = (1.0 + sigma) ** 2
    else:
        c_val = 1.0 - (lam - mu) ** 2
        e_val = (1.0 - sigma) ** 2
    n_val = c_val - k * e_val
    return (1.0 + lam * lam / k) * (1.0 + (mu * mu + k * sigma * sigma) / n_val)


def envelope_second_difference_float(side: str, point: CasePoint, step: float) -> float:
    lam, mu = float(point.lam), float(point.mu)
    sigma, k = float(point.sigma), float(point.k)
    return (
        _envelope_value_float(side, lam, mu, sigma, k - step)
        - 2.0 * _envelope_value_float(side, lam, mu, sigma, k)
        + _envelope_value_float(side, lam, mu, sigma, k + step)
    )


# verbatim transcriptions of the two expanded numerator displays and their
# regrouped variants, kept for comparison against the recomputed numerator;
# mismatches are reported, never silently corrected.


def numerator_display_neg_sum(lam, mu, sigma, k) -> Fraction:
    w = 1 - (1 - lam - mu) ** 2 - k * (1 + sigma) ** 2
    m2 = mu * mu + k * sigma * sigma
    e = (1 + sigma) ** 2
    return (
        2 * lam**2 * m2 * w**2
        + 2 * lam**2 * w**3
        - 2 * lam**2 * k * e * m2 * w
        - 2 * k * lam**2 * sigma**2 * w**2
        + 2 * lam**2 * k**2 * e**2 * m2
        + 2 * k**3 * e**2 * m2
        + 2 * lam**2 * k**2 * sigma**2 * e * w
        + 2 * k**3 * sigma**2 * e
    )


def numerator_display_neg_grouped(lam, mu, sigma, k) -> Fraction:
    w = 1 - (1 - lam - mu) ** 2 - k * (1 + sigma) ** 2
    m2 = mu * mu + k * sigma * sigma
    e = (1 + sigma) ** 2
    return (
        lam**2 * m2 * (1 - (1 - lam - mu) ** 2 - 2 * k * e) ** 2
        + lam**2 * w * (1 - (1 - lam - mu) ** 2 - k * (e + sigma**2)) ** 2
        + lam**2 * m2 * w**2
        + lam**2 * w**3
        + lam**2 * k**2 * e**2 * m2
        + 2 * k**3 * e**2 * m2
        + lam**2 * k**2 * (2 * sigma**2 * e - sigma**4) * w
        + 2 * k**3 * sigma**2 * e
    )


def numerator_display_pos_sum(lam, mu, sigma, k) -> Fraction:
    v = 1 - (lam - mu) ** 2 - k * (1 - sigma) ** 2
    m2 = mu * mu + k * sigma * sigma
    e = (1 - sigma) ** 2
    return (
        2 * lam**2 * m2 * v**2
        + 2 * lam**2 * v**3
        - 2 * lam**2 * k * e * m2 * v
        - 2 * lam**2 * k * sigma**2 * v**2
        + 2 * lam**2 * k**2 * e**2 * m2
        + 2 * k**3 * e**2 * m2
        + 2 * lam**2 * k**2 * sigma**2 * e * v
        + 2 * k**3 * sigma**2 * e * v
    )


def numerator_display_pos_grouped(lam, mu, sigma, k) -> Fraction:
    v = 1 - (lam - mu) ** 2 - k * (1 - sigma) ** 2
    m2 = mu * mu + k * sigma * sigma
    e = (1 - sigma) ** 2
    return (
        lam * m2 * (1 - (lam - mu) ** 2 - 2 * k * e) ** 2
        + lam**2 * v * (1 - (lam - mu) ** 2 - k * (e + sigma**2)) ** 2
        + lam**2 * m2 * v**2
        + lam**2 * v**3
        + lam**2 * k**2 * e**2 * m2
        + 2 * k**3 * e**2 * m2
        + lam**2 * k**2 * sigma**2 * e * v
        + k**3 * (2 * sigma**2 * e - sigma**4) * v
        + 2 * k**3 * sigma**2 * e * v
    )


_DISPLAYS = {
    "NEG": (
        ("neg_sum", numerator_display_neg_sum),
        ("neg_grouped", numerator_display_neg_grouped),
    ),
    "POS": (
        ("pos_sum", numerator_display_pos_sum),
        ("pos_grouped", numerator_display_pos_grouped),
    ),
}


@dataclass(frozen=True)
class ConvexitySample:
    point: CasePoint
    numerator: Fraction
    second_difference: Fraction
    second_difference_half: Fraction
    float_check: float


@dataclass(frozen=True)
class ConvexityCertificate:
    """Pointwise convexity evidence for one case's envelope function.

    `samples` holds per-point records when requested; the minima fields
    summarize the whole grid either way.
    """

    case_id: str
    side: str
    samples_checked: int
    min_numerator: Fraction
    min_second_difference: Fraction
    min_float_check: float
    display_matches: dict[str, bool]
    worst_samples: tuple[ConvexitySample, ...] = field(default=())
    samples: tuple[ConvexitySample, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return (
            self.min_numerator >= 0
            and self.min_second_difference >= 0
            and self.min_float_check >= -1e-12
        )


def convexity_scan(
    case_id: str,
    per_axis: int = 10,
    compare_displays: int = 200,
    keep_samples: bool = False,
) -> ConvexityCertificate:
    """Sample the case region on a per_axis^4 grid of (lambda, mu, sigma, k)
    and require, at every point: recomputed numerator >= 0, exact second
    differences at steps h and h/2 both >= 0, float second difference
    >= -1e-12.  The first `compare_displays` samples are also evaluated
    against the verbatim numerator displays.  With `keep_samples` the
    certificate retains every per-point record.
    """
    if case_id not in ALL_CASES:
        raise ValueError(f"unknown case {case_id!r}")
    side = _side_of(case_id)
    lo, hi = sigma_interval(case_id)
    lam_grid = [Fraction(i, 2 * (per_axis - 1)) for i in range(per_axis)]
    sig_grid = [lo + (hi - lo) * Fraction(i, per_axis - 1) for i in range(per_axis)]
    checked = 0
    min_num: Fraction | None = None
    min_sd: Fraction | None = None
    min_float = math.inf
    matches = {name: True for name, _fn in _DISPLAYS[side]}
    worst: ConvexitySample | None = None
    kept: list[ConvexitySample] = []
    for lam in lam_grid:
        for mu in lam_grid:
            if not case_region_contains(case_id, lam, mu):
                continue
            for sigma in sig_grid:
                c_val, e_val = _envelope_pieces(side, lam, mu, sigma)
                k_top = c_val / e_val
                h = k_top / (4 * (per_axis + 1))
                for t in range(1, per_axis + 1):
                    k = k_top * Fraction(t, per_axis + 1)
                    point = CasePoint(lam, mu, sigma, k, c_val - k * e_val)
                    num = convexity_numerator(side, point)
                    sd = envelope_second_difference(side, point, h)
                    sd_half = envelope_second_difference(side, point, h / 2)
                    fcheck = envelope_second_difference_float(side, point, float(h))
                    checked += 1
                    if keep_samples:
                        kept.append(ConvexitySample(point, num, sd, sd_half, fcheck))
                    if checked <= compare_displays:
                        for name, fn in _DISPLAYS[side]:
                            if matches[name] and fn(lam, mu, sigma, k) != num:
                                matches[name] = False
                    sd_min = min(sd, sd_half)
                    if min_num is None or num < min_num:
                        min_num = num
                    if min_sd is None or sd_min < min_sd:
                        min_sd = sd_min
                        worst = ConvexitySample(point, num, sd, sd_half, fcheck)
                    min_float = min(min_float, fcheck)
    if min_num is None:
        raise RuntimeError(f"empty convexity region for {case_id}")
    return ConvexityCertificate(
        case_id=case_id,
        side=side,
        samples_checked=checked,
        min_numerator=min_num,
        min_second_difference=min_sd,
        min_float_check=min_float,
        display_matches=matches,
        worst_samples=(worst,) if worst else (),
        samples=tuple(kept),
    )


# ---------------------------------------------------------------------------
# the extremal rank-3 form


@dataclass(frozen=True)
class ExtremalVariantReport:
    sigma: Fraction
    gram: GramMatrix
    hkz_ok: bool
    defect: Fraction

    @property
    def ok(self) -> bool:
        return self.hkz_ok and self.defect == DEFECT_MAX_3


@dataclass(frozen=True)
class ExtremalFormReport:
    variants: tuple[ExtremalVariantReport, ...]
    scaled_defect: Fraction

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.variants) and self.scaled_defect == DEFECT_MAX_3


def extremal_gram(sign: int = +1) -> GramMatrix:
    """The rank-3 Gram matrix attaining defect 25/12: parameters
    lambda = mu = 1/2, sigma = +-1/2, k = 1, l = 3/4."""
    point = EXTREMAL_POINT_POS if sign > 0 else EXTREMAL_POINT_NEG
    return gram_from_parameters(point)


def verify_extremal_form() -> ExtremalFormReport:
    """Both sign variants of the extremal form are HKZ reduced with defect
    exactly 25/12; the defect is invariant under scaling."""
    variants = []
    for sign in (+1, -1):
        gram = extremal_gram(sign)
        cert = is_hkz_reduced(gram)
        variants.append(
            ExtremalVariantReport(
                sigma=HALF if sign > 0 else -HALF,
                gram=gram,
                hkz_ok=cert.ok,
                defect=orthogonality_defect(gram),
            )
        )
    scaled = orthogonality_defect(extremal_gram(+1).scaled(4))
    return ExtremalFormReport(tuple(variants), scaled)


# ---------------------------------------------------------------------------
# full verification bundle (what the verify-proof command runs)


@dataclass(frozen=True)
class VerificationResult:
    grid_step: Fraction
    scans: tuple[CaseScanReport, ...]
    small_sigma: SmallSigmaReport
    convexity: tuple[ConvexityCertificate, ...]
    extremal: ExtremalFormReport
    wall_time: float

    @property
    def all_passed(self) -> bool:
        return (
            all(s.passed for s in self.scans)
            and self.small_sigma.ok
            and all(c.ok for c in self.convexity)
            and self.extremal.ok
        )


def run_full_verification(
    grid_step: Fraction = Fraction(1, 100),
    cases: tuple[str, ...] = ALL_CASES,
    convexity_per_axis: int = 10,
) -> VerificationResult:
    started = time.perf_counter()
    scans = tuple(scan_case(case_id, grid_step) for case_id in cases)
    small = verify_small_sigma_bound()
    convexity = tuple(convexity_scan(case_id, convexity_per_axis) for case_id in cases)
    extremal = verify_extremal_form()
    return VerificationResult(
        grid_step=Fraction(grid_step),
        scans=scans,
        small_sigma=small,
        convexity=convexity,
        extremal=extremal,
        wall_time=time.perf_counter() - started,
    )


def _point_json(point: CasePoint) -> dict:
    return {
        "lambda": format_rat(point.lam),
        "mu": format_rat(point.mu),
        "sigma": format_rat(point.sigma),
        "k": format_rat(point.k),
        "l": format_rat(point.l),
    }


def verification_json_dict(result: VerificationResult) -> dict:
    cases = {}
    for scan in result.scans:
        cases[scan.case_id] = {
            "points_checked": scan.points_checked,
            "max_value": format_rat(scan.max_value),
            "max_value_float": float(scan.max_value),
            "argmax": _point_json(scan.argmax),
            "argmax_roots_float": scan.argmax_roots_float,
            "equality_points": [_point_json(p) for p in scan.equality_points],
            "violations": [_point_json(p) for p in scan.violations],
            "passed": scan.passed,
            "wall_time": scan.wall_time,
        }
    convexity = {
        cert.case_id: {
            "samples_checked": cert.samples_checked,
            "min_numerator": format_rat(cert.min_numerator),
            "min_second_difference": format_rat(cert.min_second_difference),
            "min_float_check": cert.min_float_check,
            "display_matches": cert.display_matches,
            "passed": cert.ok,
        }
        for cert in result.convexity
    }
    return {
        "grid_step": format_rat(result.grid_step),
        "note": (
            "exact pointwise verification on the stated grids;"
            " not an interval-arithmetic proof over the continuum"
        ),
        "cases": cases,
        "small_sigma": {
            "corner_value": format_rat(result.small_sigma.corner_value),
            "passed": result.small_sigma.ok,
        },
        "convexity": convexity,
        "extremal_form": {
            "defects": [format_rat(v.defect) for v in result.extremal.variants],
            "hkz_certified": [v.hkz_ok for v in result.extremal.variants],
            "scaled_defect": format_rat(result.extremal.scaled_defect),
            "passed": result.extremal.ok,
        },
        "all_passed": result.all_passed,
        "wall_time": result.wall_time,
    }
