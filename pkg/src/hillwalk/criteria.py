"""Riesz-basis verdicts for root-function systems of the truncated operator.

Three routes to the same question, evaluated over an index family Delta:

  1. the z = 0 weight ratio t_n = max(|beta^-/beta^+|, |beta^+/beta^-|),
  2. the same ratio at the pair midpoint z * of the disc D_n,
  3. the Dirichlet deviation |lam^+ - mu_n| against the pair gap.

Boundedness of the monitored quantity along the simple-pair indices marks
a basis; divergence rules one out.  The asymptotic statements behind the
analytic verdicts cannot be decided from finitely many n, so numeric
conclusions are threshold surrogates and say so; where an analytic rule
applies (band-ratio collapse, equal-offset modulus rule) the rule decides
and the numbers are attached as corroboration only.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath

from .beta import beta_minus, beta_plus
from .numerics import GaussianRational, abs_value, check_precision, complex_to_gaussian
from .potential import FourierPotential, TwoTermParams, two_term
from .spectra import (
    BoundaryCondition,
    SpectralPair,
    refined_dirichlet,
    refined_pair,
)
from .walks import WalkKind, shell_step_counts

DEFAULT_SHELL_CAPS = (3, 2)
STABILITY_SAMPLES = (
    GaussianRational(Fraction(1)),
    GaussianRational(Fraction(-1)),
    GaussianRational(Fraction(0), Fraction(1)),
    GaussianRational(Fraction(0), Fraction(-1)),
)


class DegenerateRatioError(Exception):
    """A weight ratio was requested where one side vanishes."""


@dataclass(frozen=True)
class VerdictThresholds:
    """Desk-scale surrogate for an asymptotic boundedness criterion."""

    divergence: float = 1e3
    cap: float = 1e2
    monotone_points: int = 3

    def to_json_dict(self) -> dict:
        return {
            "divergence": self.divergence,
            "cap": self.cap,
            "monotone_points": self.monotone_points,
        }


@dataclass(frozen=True)
class IndexSet:
    """Generated family of disc indices with parity filter and range."""

    kind: str
    n_min: int
    n_max: int
    parity: str = "both"
    explicit: tuple = ()

    KINDS = ("rsd-multiples", "sm-minus-1", "mod-R-nonzero", "R-multiples", "explicit")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown index-set kind {self.kind!r}")
        if self.parity not in ("even", "odd", "both"):
            raise ValueError(f"unknown parity filter {self.parity!r}")
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValueError(f"bad range [{self.n_min}, {self.n_max}]")

    def _parity_ok(self, n: int) -> bool:
        if self.parity == "even":
            return n % 2 == 0
        if self.parity == "odd":
            return n % 2 == 1
        return True

    def indices(self, params: Optional[TwoTermParams]) -> list:
        if self.kind == "explicit":
            base = [int(n) for n in self.explicit]
        else:
            if params is None:
                raise ValueError(f"index-set kind {self.kind!r} needs potential parameters")
            if self.kind == "rsd-multiples":
                step = params.r * params.s * params.d
                base = list(range(step, self.n_max + 1, step))
            elif self.kind == "sm-minus-1":
                base = [params.s * m - 1 for m in range(1, self.n_max + 2)]
            elif self.kind == "mod-R-nonzero":
                base = [n for n in range(1, self.n_max + 1) if n % params.d != 0]
            else:  # R-multiples
                base = list(range(params.d, self.n_max + 1, params.d))
        out = [n for n in base if self.n_min <= n <= self.n_max and self._parity_ok(n)]
        return sorted(set(out))

    def describe(self) -> str:
        tag = f"{self.kind} in [{self.n_min}, {self.n_max}]"
        if self.parity != "both":
            tag += f", {self.parity} only"
        if self.kind == "explicit":
            tag += f": {list(self.explicit)}"
        return tag


@dataclass(frozen=True)
class BasisVerdict:
    criterion_used: str
    index_set: str
    rows: tuple
    conclusion: str
    thresholds: VerdictThresholds
    caveats: tuple = ()

    def __post_init__(self) -> None:
        if self.conclusion not in ("contains-basis", "no-basis", "inconclusive"):
            raise ValueError(f"unknown conclusion {self.conclusion!r}")

    def to_json_dict(self) -> dict:
        return {
            "criterion": self.criterion_used,
            "delta": self.index_set,
            "rows": [dict(r) for r in self.rows],
            "conclusion": self.conclusion,
            "thresholds": self.thresholds.to_json_dict(),
            "caveats": list(self.caveats),
        }


DESK_SCALE_CAVEAT = (
    "asymptotic boundedness judged from finitely many indices; "
    "thresholds printed alongside the data"
)


# -- elementary quantities -------------------------------------------------


def t_n_squared(bp: GaussianRational, bm: GaussianRational) -> Fraction:
    """Exact t_n^2 = max(|b-/b+|, |b+/b-|)^2 as a rational."""
    p2, m2 = bp.abs2(), bm.abs2()
    if p2 == 0 or m2 == 0:
        raise DegenerateRatioError("t_n needs both weight functionals nonzero")
    q = m2 / p2
    return max(q, 1 / q)


def t_n(bp, bm) -> float:
    """max(|beta^-/beta^+|, |beta^+/beta^-|) >= 1; exact route for exact inputs."""
    if isinstance(bp, GaussianRational) and isinstance(bm, GaussianRational):
        return abs_value(GaussianRational(t_n_squared(bp, bm))) ** 0.5
    wp, wm = complex(bp), complex(bm)
    if wp == 0 or wm == 0:
        raise DegenerateRatioError("t_n needs both weight functionals nonzero")
    q = abs(wm) / abs(wp)
    return max(q, 1 / q)


def structurally_zero(params: TwoTermParams, n: int) -> bool:
    """Whether beta_n^+- vanish identically: no walk reaches -n from n.

    Decided by step-count feasibility, never numerically."""
    plus = shell_step_counts(params, n, WalkKind.X, 0)
    minus = shell_step_counts(params, n, WalkKind.Y, 0)
    assert (plus is None) == (minus is None)
    return plus is None


def criterion3_ratio(pair: SpectralPair) -> float:
    """Dirichlet deviation against the pair gap: |lam^+ - mu| / |lam^+ - lam^-|."""
    if pair.mu is None:
        raise ValueError("pair carries no Dirichlet eigenvalue")
    gap = abs(pair.lam_plus - pair.lam_minus)
    if gap == 0:
        raise DegenerateRatioError("zero gap: double pair, ratio undefined")
    return float(abs(pair.lam_plus - pair.mu) / gap)


def criterion2_quantity(
    pair: SpectralPair,
    pot: FourierPotential,
    params: TwoTermParams,
    shell_caps: tuple = DEFAULT_SHELL_CAPS,
) -> float:
    """t_n evaluated at the disc midpoint z* instead of z = 0."""
    if pair.multiplicity_flag != "simple-pair":
        raise DegenerateRatioError(f"pair at n={pair.n} is not simple")
    zg = complex_to_gaussian(complex(pair.z_star))
    x_cap, y_cap = shell_caps
    bp = beta_plus(pot, params, pair.n, z=zg, shell_cap=x_cap).value
    bm = beta_minus(pot, params, pair.n, z=zg, shell_cap=y_cap).value
    return t_n(bp, bm)


# -- verdict aggregation ---------------------------------------------------


def _threshold_conclusion(exact_squares: Sequence[Fraction], thresholds: VerdictThresholds) -> str:
    """Apply the divergence/cap thresholds to exact t^2 values in index order."""
    if not exact_squares:
        return "inconclusive"
    div2 = Fraction(thresholds.divergence) ** 2
    cap2 = Fraction(thresholds.cap) ** 2
    k = thresholds.monotone_points
    tail = list(exact_squares[-k:])
    monotone = len(tail) == k and all(tail[i] < tail[i + 1] for i in range(k - 1))
    if max(exact_squares) > div2 and monotone:
        return "no-basis"
    if all(v <= cap2 for v in exact_squares):
        return "contains-basis"
    return "inconclusive"


def criterion1_verdict(
    pot: FourierPotential,
    params: TwoTermParams,
    index_set: IndexSet,
    z_choice=0,
    shell_caps: tuple = DEFAULT_SHELL_CAPS,
    thresholds: VerdictThresholds = VerdictThresholds(),
    check_stability: bool = True,
) -> BasisVerdict:
    """t_n(z_choice) over Delta, with the structural-zero indices split off.

    Indices where both functionals vanish identically carry automatic
    doubles and never obstruct a basis; if every index lands there the
    verdict is contains-basis outright.  The remaining indices are judged
    by the thresholds.  The two-sided bound hypothesis behind the z = 0
    reduction is spot-checked at z in {1, -1, i, -i}."""
    ns = index_set.indices(params)
    if not ns:
        raise ValueError(f"empty index set: {index_set.describe()}")
    zg = GaussianRational.of(z_choice)
    x_cap, y_cap = shell_caps
    rows = []
    squares = []
    stability_failures = []
    for n in ns:
        if structurally_zero(params, n):
            rows.append({"n": n, "class": "delta0", "t": None})
            continue
        bp = beta_plus(pot, params, n, z=zg, shell_cap=x_cap).value
        bm = beta_minus(pot, params, n, z=zg, shell_cap=y_cap).value
        if bp.is_zero() or bm.is_zero():
            raise DegenerateRatioError(
                f"beta vanishes numerically at n={n} though walks exist"
            )
        sq = t_n_squared(bp, bm)
        squares.append(sq)
        rows.append({"n": n, "class": "delta1", "t": float(abs_value(GaussianRational(sq)) ** 0.5)})
        if check_stability:
            for z in STABILITY_SAMPLES:
                bpz = beta_plus(pot, params, n, z=z, shell_cap=x_cap).value
                bmz = beta_minus(pot, params, n, z=z, shell_cap=y_cap).value
                for base, moved in ((bp, bpz), (bm, bmz)):
                    if not (4 * moved.abs2() >= base.abs2() and moved.abs2() <= 4 * base.abs2()):
                        stability_failures.append((n, str(z)))
    caveats = [DESK_SCALE_CAVEAT, "two-sided z-stability sampled at z in {0, 1, -1, i, -i} only"]
    if stability_failures:
        caveats.append(f"two-sided stability violated at {stability_failures}")
    if not squares:
        conclusion = "contains-basis"
        caveats.append("all indices structurally degenerate: weight functionals vanish identically")
    else:
        conclusion = _threshold_conclusion(squares, thresholds)
    return BasisVerdict(
        criterion_used="C1",
        index_set=index_set.describe(),
        rows=tuple(rows),
        conclusion=conclusion,
        thresholds=thresholds,
        caveats=tuple(caveats),
    )


# -- analytic reports ------------------------------------------------------


def _ratio_rows(pot, params, ns, shell_caps):
    """Exact |beta^-(0)/beta^+(0)|^2 per n, plus display floats."""
    x_cap, y_cap = shell_caps
    rows, squares = [], []
    for n in ns:
        bp = beta_plus(pot, params, n, shell_cap=x_cap).value
        bm = beta_minus(pot, params, n, shell_cap=y_cap).value
        if bp.is_zero() or bm.is_zero():
            raise DegenerateRatioError(f"vanishing weight sum at n={n}")
        sq = bm.abs2() / bp.abs2()
        squares.append(sq)
        rows.append({"n": n, "ratio": abs_value(GaussianRational(sq)) ** 0.5})
    return rows, squares


def theorem31_report(
    a,
    b,
    R: int,
    S: int,
    m_range: Sequence[int],
    shell_caps: tuple = DEFAULT_SHELL_CAPS,
    bc: Union[str, BoundaryCondition] = BoundaryCondition.PER_PLUS,
    thresholds: VerdictThresholds = VerdictThresholds(),
) -> BasisVerdict:
    """Band-ratio collapse over n = r s d m for unequal offsets R != S.

    The weight ratio |beta^-(0)/beta^+(0)| collapses super-exponentially
    (per-step log-decrement at least |r-s| log m up to a 20% allowance);
    the analytic rule then refuses a basis under periodic conditions
    always, and under antiperiodic ones when both offsets are odd (the
    index family contains odd n exactly then)."""
    if R == S:
        raise ValueError("ratio-collapse analysis needs R != S")
    bc = BoundaryCondition(bc)
    if bc == BoundaryCondition.DIRICHLET:
        raise ValueError("basis verdicts apply to per+ / per- only")
    pot, params = two_term(a, b, R, S)
    ms = sorted(set(int(m) for m in m_range))
    if len(ms) < 2 or ms[0] < 1:
        raise ValueError("need at least two positive m values")
    step = params.r * params.s * params.d
    ns = [step * m for m in ms]
    rows, squares = _ratio_rows(pot, params, ns, shell_caps)
    for row, m in zip(rows, ms):
        row["m"] = m
    # corroboration: strict collapse with the advertised per-step decrement
    drop = abs(params.r - params.s)
    decay_ok = all(squares[i + 1] < squares[i] for i in range(len(squares) - 1))
    slope_ok = True
    for i in range(len(ms) - 1):
        lo, hi = squares[i + 1], squares[i]
        # log(ratio_m / ratio_{m+1}) >= 0.8 * |r-s| * log(m), vacuous at m=1
        need = 0.8 * drop * math.log(max(ms[i], 1))
        got = 0.5 * float(mpmath.log(mpmath.mpf(hi.numerator) / hi.denominator)
                          - mpmath.log(mpmath.mpf(lo.numerator) / lo.denominator))
        rows[i]["log_decrement"] = got
        rows[i]["log_decrement_floor"] = need
        if got < need:
            slope_ok = False
    both_odd = R % 2 == 1 and S % 2 == 1
    caveats = [DESK_SCALE_CAVEAT]
    if not (decay_ok and slope_ok):
        caveats.append("numeric corroboration failed: collapse slower than the analytic rate")
    if bc == BoundaryCondition.PER_PLUS:
        conclusion = "no-basis"
    elif both_odd:
        conclusion = "no-basis"
        caveats.append("odd offsets: the index family meets the antiperiodic parity class")
    else:
        conclusion = "inconclusive"
        caveats.append(
            "even offset present: every generated index is even, the antiperiodic "
            "class is untouched by this family"
        )
    return BasisVerdict(
        criterion_used="C1",
        index_set=f"multiples of r*s*d = {step}, m in {ms}",
        rows=tuple(rows),
        conclusion=conclusion,
        thresholds=thresholds,
        caveats=tuple(caveats),
    )


def theorem5_report(
    a,
    b,
    s: int,
    m_range: Sequence[int],
    shell_caps: tuple = DEFAULT_SHELL_CAPS,
    thresholds: VerdictThresholds = VerdictThresholds(),
) -> BasisVerdict:
    """Ratio collapse over n = s m - 1 for the bands at -2 and 2s, s >= 3.

    Successive ratios shrink faster than m^2 per step; the antiperiodic
    root system gets no basis.  For even s every index is odd; for odd s
    the even-m half of the family is."""
    if not isinstance(s, int) or s < 3:
        raise ValueError(f"s must be an int >= 3, got {s!r}")
    pot, params = two_term(a, b, 1, s)
    ms = sorted(set(int(m) for m in m_range))
    if len(ms) < 2 or ms[0] < 1:
        raise ValueError("need at least two positive m values")
    ns = [s * m - 1 for m in ms]
    rows, squares = _ratio_rows(pot, params, ns, shell_caps)
    factor_ok = True
    for i, m in enumerate(ms):
        rows[i]["m"] = m
        if i + 1 < len(ms):
            # each step must beat the m^2 collapse floor: ratio^2 by m^4
            if squares[i + 1] * Fraction(ms[i]) ** 4 > squares[i]:
                factor_ok = False
    caveats = [DESK_SCALE_CAVEAT]
    if s % 2 == 0:
        caveats.append("even s: every index n = s m - 1 is odd")
    else:
        caveats.append("odd s: indices with even m are odd")
    if not factor_ok:
        caveats.append("numeric corroboration failed: collapse slower than m^2 per step")
    return BasisVerdict(
        criterion_used="C1",
        index_set=f"n = {s} m - 1, m in {ms}",
        rows=tuple(rows),
        conclusion="no-basis",
        thresholds=thresholds,
        caveats=tuple(caveats),
    )


def prop20_verdict(
    a,
    b,
    R: int,
    bc: Union[str, BoundaryCondition],
    n_max: int = 12,
    shell_caps: tuple = DEFAULT_SHELL_CAPS,
    thresholds: VerdictThresholds = VerdictThresholds(),
) -> BasisVerdict:
    """Equal band offsets: bands at -2R and 2R.

    Antiperiodic with even R: every odd n is structurally degenerate, the
    root system is all doubles, basis automatic.  Otherwise the modulus
    rule decides: a basis exists iff |a| = |b|, compared exactly on |a|^2
    and |b|^2.  A t_n table over the active indices corroborates."""
    bc = BoundaryCondition(bc)
    if bc == BoundaryCondition.DIRICHLET:
        raise ValueError("basis verdicts apply to per+ / per- only")
    pot, params = two_term(a, b, R, R)
    parity = 0 if bc == BoundaryCondition.PER_PLUS else 1
    caveats = []
    rows = []
    if bc == BoundaryCondition.PER_MINUS and R % 2 == 0:
        # structural: no odd n is a multiple of an even R
        for n in range(1, n_max + 1, 2):
            assert structurally_zero(params, n)
            rows.append({"n": n, "class": "delta0", "t": None})
        caveats.append("even offset, antiperiodic class: every index degenerates structurally")
        return BasisVerdict(
            criterion_used="C1",
            index_set=f"odd n <= {n_max}",
            rows=tuple(rows),
            conclusion="contains-basis",
            thresholds=thresholds,
            caveats=tuple(caveats),
        )
    ga, gb = GaussianRational.of(a), GaussianRational.of(b)
    moduli_equal = ga.abs2() == gb.abs2()
    conclusion = "contains-basis" if moduli_equal else "no-basis"
    # corroboration: t_n against the leading modulus ratio power
    q2 = max(ga.abs2() / gb.abs2(), gb.abs2() / ga.abs2())
    x_cap, y_cap = shell_caps
    active = [n for n in range(1, n_max + 1) if n % 2 == parity and n % R == 0]
    corroborated = True
    for n in active:
        bp = beta_plus(pot, params, n, shell_cap=x_cap).value
        bm = beta_minus(pot, params, n, shell_cap=y_cap).value
        sq = t_n_squared(bp, bm)
        m = n // R
        lead2 = q2**m
        ok = Fraction(1, 4) <= sq / lead2 <= 4  # within factor 2 on t itself
        row = {
            "n": n,
            "class": "delta1",
            "t": abs_value(GaussianRational(sq)) ** 0.5,
            "leading": abs_value(GaussianRational(lead2)) ** 0.5,
        }
        rows.append(row)
        if not ok:
            corroborated = False
    caveats.append("modulus rule decided exactly on |a|^2, |b|^2; t_n table attached")
    if not corroborated:
        caveats.append("numeric corroboration failed: t_n strays from the leading modulus power")
    return BasisVerdict(
        criterion_used="C1",
        index_set=f"multiples of {R}, parity of {bc.value}, n <= {n_max}",
        rows=tuple(rows),
        conclusion=conclusion,
        thresholds=thresholds,
        caveats=tuple(caveats),
    )


# -- three-criteria concordance --------------------------------------------


@dataclass(frozen=True)
class ConcordanceReport:
    potential: str
    K: int
    precision: int
    rows: tuple

    def to_json_dict(self) -> dict:
        return {
            "potential": self.potential,
            "K": self.K,
            "precision": self.precision,
            "rows": [dict(r) for r in self.rows],
        }


def concordance_report(
    a,
    b,
    ns: Sequence[int] = (6, 8, 10, 12),
    K: int = 32,
    shell_caps: tuple = DEFAULT_SHELL_CAPS,
    precision: int = 320,
) -> ConcordanceReport:
    """All three criteria side by side for bands at -2 and 2.

    The pair gaps shrink below hardware resolution inside the tested
    range, so pairs and the Dirichlet eigenvalue are refined at high
    precision before the ratios are formed."""
    check_precision(precision)
    pot, params = two_term(a, b, 1, 1)
    x_cap, y_cap = shell_caps
    rows = []
    for n in ns:
        if n % 2 != 0:
            raise ValueError(f"periodic discs sit at even n, got {n}")
        rp = refined_pair(pot, params, BoundaryCondition.PER_PLUS, n, K, precision)
        mu = refined_dirichlet(pot, params, n, K, precision)
        with mpmath.workprec(precision):
            gap = rp.gap
            simple = gap > mpmath.mpf(2) ** (-(precision // 2))
            pair = SpectralPair(
                n=n,
                lam_minus=rp.lam_minus,
                lam_plus=rp.lam_plus,
                z_star=rp.z_star,
                gap=gap,
                multiplicity_flag="simple-pair" if simple else "double",
                mu=mu,
                deviation=abs(rp.lam_plus - mu),
            )
            bp0 = beta_plus(pot, params, n, shell_cap=x_cap).value
            bm0 = beta_minus(pot, params, n, shell_cap=y_cap).value
            c1 = t_n(bp0, bm0)
            c2 = criterion2_quantity(pair, pot, params, shell_caps)
            c3 = criterion3_ratio(pair)
        rows.append({"n": n, "c1": c1, "c2": c2, "c3": c3, "gap": float(gap)})
    return ConcordanceReport(
        potential=f"bands -2, 2 with coefficients {a}, {b}",
        K=K,
        precision=precision,
        rows=tuple(rows),
    )
