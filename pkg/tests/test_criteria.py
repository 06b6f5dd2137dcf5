"""Basis verdicts: exact weight ratios, index families, analytic rules."""

from fractions import Fraction

import pytest

from hillwalk.beta import beta_minus, beta_plus
from hillwalk.criteria import (
    BasisVerdict,
    ConcordanceReport,
    DegenerateRatioError,
    IndexSet,
    VerdictThresholds,
    concordance_report,
    criterion1_verdict,
    criterion2_quantity,
    criterion3_ratio,
    prop20_verdict,
    structurally_zero,
    t_n,
    t_n_squared,
    theorem31_report,
    theorem5_report,
)
from hillwalk.criteria import _threshold_conclusion
from hillwalk.numerics import GaussianRational
from hillwalk.potential import two_term
from hillwalk.spectra import SpectralPair

GR = GaussianRational.of


# -- t_n -------------------------------------------------------------------


def test_t_equal_weights_is_one():
    w = GaussianRational.parse("3/7+2/7i")
    assert t_n_squared(w, w) == Fraction(1)
    assert t_n(w, w) == 1.0


def test_t_squared_takes_the_larger_ratio():
    assert t_n_squared(GR(1), GR(4)) == Fraction(16)
    assert t_n_squared(GR(4), GR(1)) == Fraction(16)
    assert t_n(GR(1), GR(4)) == 4.0


def test_t_rejects_vanishing_weight():
    with pytest.raises(DegenerateRatioError):
        t_n_squared(GR(0), GR(1))
    with pytest.raises(DegenerateRatioError):
        t_n(complex(0), complex(2))


def test_t_complex_route_matches_exact_route():
    bp = GaussianRational.parse("1/3+1/5i")
    bm = GaussianRational.parse("-2/7+1/2i")
    exact = t_n(bp, bm)
    loose = t_n(complex(bp), complex(bm))
    assert abs(exact - loose) < 1e-12 * exact


def test_t5_for_bands_minus2_and_6():
    # two-sided ratio at n = 5, s = 3: within a hair of 4^(s-1)^... = 256
    pot, params = two_term(1, 1, 1, 3)
    bp = beta_plus(pot, params, 5, shell_cap=3).value
    bm = beta_minus(pot, params, 5, shell_cap=2).value
    assert 255.9 < t_n(bp, bm) < 256.1


# -- gauge symmetry --------------------------------------------------------


def _tsq(a, b, R, S, n):
    pot, params = two_term(a, b, R, S)
    bp = beta_plus(pot, params, n, shell_cap=3).value
    bm = beta_minus(pot, params, n, shell_cap=2).value
    return t_n_squared(bp, bm)


@pytest.mark.parametrize(
    "a,b,R,S,ns",
    [
        (1, 2, 1, 1, (4, 8, 12)),
        (1, 1, 1, 3, (5, 8, 11)),
        (2, GaussianRational.parse("1+1i"), 2, 3, (5, 10)),
    ],
)
def test_t_invariant_under_gauge_rotation(a, b, R, S, ns):
    # (a, b) -> (a mu^R, b mu^-S) with |mu| = 1 shifts every crossing
    # walk by the same unimodular factor, so the ratio cannot move
    mu = GaussianRational.parse("3/5+4/5i")
    assert mu.abs2() == 1
    mu_R = GR(1)
    for _ in range(R):
        mu_R = mu_R * mu
    mu_S_inv = GR(1)
    for _ in range(S):
        mu_S_inv = mu_S_inv * mu.conjugate()
    for n in ns:
        base = _tsq(a, b, R, S, n)
        gauged = _tsq(mu_R * GR(a), mu_S_inv * GR(b), R, S, n)
        assert base == gauged


def test_t_under_plain_scaling_moves_only_at_cross_shell_order():
    # multiplying both coefficients by one unimodular factor mixes shells
    # with different step counts: the ratio moves, but only by the next
    # shell's relative size, and never enough to touch a verdict
    lam = GaussianRational.parse("3/5+4/5i")
    base = _tsq(1, 2, 1, 1, 4)
    moved = _tsq(lam, lam * GR(2), 1, 1, 4)
    assert moved != base
    assert abs(float(moved / base) - 1.0) < 1e-4


def test_verdict_invariant_under_plain_unimodular_scaling():
    lam = GaussianRational.parse("3/5+4/5i")
    iset = IndexSet("R-multiples", 1, 50, parity="even")
    pot0, params0 = two_term(1, 2, 5, 5)
    pot1, params1 = two_term(lam, lam * GR(2), 5, 5)
    v0 = criterion1_verdict(pot0, params0, iset)
    v1 = criterion1_verdict(pot1, params1, iset)
    assert v0.conclusion == v1.conclusion == "no-basis"


# -- structural zeros ------------------------------------------------------


def test_structural_zero_tracks_divisibility():
    _, params = two_term(1, 1, 5, 5)
    for n in (1, 2, 3, 4, 6, 7, 12):
        assert structurally_zero(params, n)
    for n in (5, 10, 15):
        assert not structurally_zero(params, n)


def test_no_structural_zero_when_gcd_is_one():
    _, params = two_term(1, 1, 1, 3)
    assert not any(structurally_zero(params, n) for n in range(1, 13))


# -- criteria 2 and 3 on synthetic pairs -----------------------------------


def _pair(n, lo, hi, mu=None, flag="simple-pair"):
    return SpectralPair(
        n=n,
        lam_minus=lo,
        lam_plus=hi,
        z_star=0.5 * (lo + hi) - n**2,
        gap=abs(hi - lo),
        multiplicity_flag=flag,
        mu=mu,
        deviation=None if mu is None else abs(hi - mu),
    )


def test_criterion3_midpoint_dirichlet_gives_half():
    assert criterion3_ratio(_pair(3, 9.0, 9.1, mu=9.05)) == pytest.approx(0.5)


def test_criterion3_dirichlet_at_edge_gives_zero():
    assert criterion3_ratio(_pair(3, 9.0, 9.1, mu=9.1)) == 0.0


def test_criterion3_needs_dirichlet_value():
    with pytest.raises(ValueError):
        criterion3_ratio(_pair(3, 9.0, 9.1))


def test_criterion3_rejects_zero_gap():
    with pytest.raises(DegenerateRatioError):
        criterion3_ratio(_pair(3, 9.0, 9.0, mu=9.05))


def test_criterion2_symmetric_potential_gives_one():
    # equal coefficients balance the two weight sums shell by shell; the
    # asymmetric default caps leave a truncation residue around 1e-7
    pot, params = two_term(1, 1, 1, 1)
    pair = _pair(6, 36.0 - 1e-7, 36.0 + 1e-7)
    assert abs(criterion2_quantity(pair, pot, params) - 1.0) < 1e-6


def test_criterion2_refuses_double_pairs():
    pot, params = two_term(1, 1, 1, 1)
    pair = _pair(6, 36.0, 36.0, flag="double")
    with pytest.raises(DegenerateRatioError):
        criterion2_quantity(pair, pot, params)


# -- index families --------------------------------------------------------


def test_index_set_validation():
    with pytest.raises(ValueError):
        IndexSet("powers-of-two", 1, 10)
    with pytest.raises(ValueError):
        IndexSet("explicit", 1, 10, parity="mixed")
    with pytest.raises(ValueError):
        IndexSet("explicit", 5, 4)


def test_index_set_families():
    _, p23 = two_term(1, 1, 2, 3)
    assert IndexSet("rsd-multiples", 1, 20).indices(p23) == [6, 12, 18]
    _, p13 = two_term(1, 1, 1, 3)
    assert IndexSet("sm-minus-1", 2, 12).indices(p13) == [2, 5, 8, 11]
    _, p55 = two_term(1, 1, 5, 5)
    assert IndexSet("mod-R-nonzero", 1, 8).indices(p55) == [1, 2, 3, 4, 6, 7, 8]
    assert IndexSet("R-multiples", 1, 20).indices(p55) == [5, 10, 15, 20]
    assert IndexSet("R-multiples", 1, 20, parity="even").indices(p55) == [10, 20]


def test_index_set_explicit_sorted_dedup_filtered():
    iset = IndexSet("explicit", 3, 9, explicit=(9, 4, 4, 2, 7))
    assert iset.indices(None) == [4, 7, 9]
    assert "explicit" in iset.describe()


def test_generated_kinds_need_parameters():
    with pytest.raises(ValueError):
        IndexSet("R-multiples", 1, 10).indices(None)


# -- threshold logic -------------------------------------------------------


def test_thresholds_cap_gives_contains_basis():
    sq = [Fraction(1), Fraction(16), Fraction(9)]
    assert _threshold_conclusion(sq, VerdictThresholds()) == "contains-basis"


def test_thresholds_divergent_monotone_gives_no_basis():
    sq = [Fraction(10) ** k for k in (2, 4, 6, 8)]
    assert _threshold_conclusion(sq, VerdictThresholds()) == "no-basis"


def test_thresholds_divergent_but_wobbly_is_inconclusive():
    sq = [Fraction(10) ** 8, Fraction(10) ** 7, Fraction(10) ** 8]
    assert _threshold_conclusion(sq, VerdictThresholds()) == "inconclusive"


def test_thresholds_middle_ground_is_inconclusive():
    sq = [Fraction(10) ** 5, Fraction(10) ** 5, Fraction(10) ** 5]
    assert _threshold_conclusion(sq, VerdictThresholds()) == "inconclusive"
    assert _threshold_conclusion([], VerdictThresholds()) == "inconclusive"


# -- criterion 1 verdicts --------------------------------------------------


def test_criterion1_all_structural_indices_contain_basis():
    pot, params = two_term(1, 1, 5, 5)
    v = criterion1_verdict(pot, params, IndexSet("mod-R-nonzero", 1, 12))
    assert v.conclusion == "contains-basis"
    assert all(r["class"] == "delta0" for r in v.rows)
    assert any("structurally degenerate" in c for c in v.caveats)


def test_criterion1_unequal_moduli_diverge():
    pot, params = two_term(1, 2, 5, 5)
    v = criterion1_verdict(pot, params, IndexSet("R-multiples", 1, 50, parity="even"))
    assert v.conclusion == "no-basis"
    assert [r["n"] for r in v.rows] == [10, 20, 30, 40, 50]
    for r, m in zip(v.rows, (2, 4, 6, 8, 10)):
        assert r["t"] == pytest.approx(2.0**m, rel=1e-2)


def test_criterion1_mixed_band_family_diverges():
    pot, params = two_term(1, 1, 1, 3)
    v = criterion1_verdict(pot, params, IndexSet("sm-minus-1", 2, 20))
    assert v.conclusion == "no-basis"
    assert [r["n"] for r in v.rows] == [2, 5, 8, 11, 14, 17, 20]


def test_criterion1_empty_family_rejected():
    pot, params = two_term(1, 1, 1, 1)
    with pytest.raises(ValueError):
        criterion1_verdict(pot, params, IndexSet("explicit", 1, 10))


def test_verdict_json_shape():
    pot, params = two_term(1, 1, 5, 5)
    v = criterion1_verdict(pot, params, IndexSet("mod-R-nonzero", 1, 6))
    d = v.to_json_dict()
    assert set(d) == {"criterion", "delta", "rows", "conclusion", "thresholds", "caveats"}
    assert d["thresholds"] == {"divergence": 1e3, "cap": 1e2, "monotone_points": 3}


def test_verdict_conclusion_validated():
    with pytest.raises(ValueError):
        BasisVerdict("C1", "x", (), "maybe", VerdictThresholds())


# -- ratio-collapse reports ------------------------------------------------


def test_collapse_report_needs_unequal_offsets():
    with pytest.raises(ValueError):
        theorem31_report(1, 1, 2, 2, (2, 3, 4))
    with pytest.raises(ValueError):
        theorem31_report(1, 1, 1, 3, (2, 3), bc="dirichlet")
    with pytest.raises(ValueError):
        theorem31_report(1, 1, 1, 3, (2,))


def test_collapse_periodic_refuses_basis():
    rep = theorem31_report(1, 1, 1, 3, range(2, 7))
    assert rep.conclusion == "no-basis"
    ratios = [r["ratio"] for r in rep.rows]
    frozen = (2.44e-6, 4.87e-11, 2.51e-16, 4.74e-22, 4.01e-28)
    for got, want in zip(ratios, frozen):
        assert got == pytest.approx(want, rel=1e-2)
    for r in rep.rows[:-1]:
        assert r["log_decrement"] >= r["log_decrement_floor"]
    assert not any("corroboration failed" in c for c in rep.caveats)


def test_collapse_antiperiodic_with_odd_offsets():
    rep = theorem31_report(1, 1, 1, 3, range(2, 7), bc="per-")
    assert rep.conclusion == "no-basis"
    assert any("odd offsets" in c for c in rep.caveats)


def test_collapse_antiperiodic_with_even_offset_inconclusive():
    rep = theorem31_report(1, 1, 2, 4, range(2, 6), bc="per-")
    assert rep.conclusion == "inconclusive"
    assert any("even offset" in c for c in rep.caveats)


def test_shifted_family_collapse():
    rep = theorem5_report(1, 1, 3, range(2, 8))
    assert rep.conclusion == "no-basis"
    ratios = [r["ratio"] for r in rep.rows]
    frozen = (3.91e-3, 3.11e-7, 4.12e-12, 1.59e-17, 2.38e-23, 1.67e-29)
    for got, want in zip(ratios, frozen):
        assert got == pytest.approx(want, rel=1e-2)
    # successive collapse beats the m^2 floor
    for i, m in enumerate(range(2, 7)):
        assert ratios[i + 1] * m**2 <= ratios[i]
    assert not any("corroboration failed" in c for c in rep.caveats)
    assert any("odd s" in c for c in rep.caveats)


def test_shifted_family_needs_s_at_least_three():
    with pytest.raises(ValueError):
        theorem5_report(1, 1, 2, (2, 3))


def test_shifted_family_even_s_parity_note():
    rep = theorem5_report(1, 1, 4, (2, 3, 4))
    assert rep.conclusion == "no-basis"
    assert any("even s" in c for c in rep.caveats)


# -- equal-offset verdicts -------------------------------------------------


def test_equal_offsets_even_R_antiperiodic_structural():
    v = prop20_verdict(1, complex(0, 1), 2, "per-")
    assert v.conclusion == "contains-basis"
    assert [r["n"] for r in v.rows] == [1, 3, 5, 7, 9, 11]
    assert all(r["class"] == "delta0" for r in v.rows)


def test_equal_offsets_unequal_moduli_refuse_basis():
    v = prop20_verdict(1, 2, 1, "per+")
    assert v.conclusion == "no-basis"
    for r, m in zip(v.rows, (2, 4, 6, 8, 10, 12)):
        assert r["t"] == pytest.approx(2.0**m, rel=1e-2)
        assert r["leading"] == 2.0**m
    assert not any("corroboration failed" in c for c in v.caveats)


def test_equal_offsets_equal_moduli_contain_basis():
    # |a| = |-12/5 + 9/5 i| = 3 exactly, decided on squares
    b = GaussianRational.parse("-12/5+9/5i")
    v = prop20_verdict(3, b, 3, "per-")
    assert v.conclusion == "contains-basis"
    assert [r["n"] for r in v.rows] == [3, 9]
    for r in v.rows:
        assert abs(r["t"] - 1.0) < 1e-6


def test_equal_offsets_reject_dirichlet():
    with pytest.raises(ValueError):
        prop20_verdict(1, 1, 1, "dirichlet")


# -- three-criteria concordance --------------------------------------------


@pytest.fixture(scope="module")
def concordance_12():
    return concordance_report(1, 2)


@pytest.fixture(scope="module")
def concordance_11():
    return concordance_report(1, 1)


def test_concordance_unequal_moduli_all_three_diverge(concordance_12):
    rows = concordance_12.rows
    assert [r["n"] for r in rows] == [6, 8, 10, 12]
    for r in rows:
        assert r["c1"] == pytest.approx(2.0 ** r["n"], rel=1e-2)
        assert r["c2"] == pytest.approx(2.0 ** r["n"], rel=1e-2)
    c3 = [r["c3"] for r in rows]
    frozen = (3.30e3, 2.58e7, 6.81e11, 4.57e16)
    for got, want in zip(c3, frozen):
        assert got == pytest.approx(want, rel=5e-2)
    assert all(c3[i] < c3[i + 1] for i in range(3))
    assert all(v > 10 for v in c3)


def test_concordance_gaps_track_refinement(concordance_12):
    gaps = [r["gap"] for r in concordance_12.rows]
    frozen = (1.08e-6, 7.68e-11, 1.85e-15, 1.92e-20)
    for got, want in zip(gaps, frozen):
        assert got == pytest.approx(want, rel=1e-2)


def test_concordance_symmetric_potential_all_three_bounded(concordance_11):
    for r in concordance_11.rows:
        assert abs(r["c1"] - 1.0) < 1e-6
        assert abs(r["c2"] - 1.0) < 1e-6
        assert abs(r["c3"] - 1.0) < 1e-6
        assert max(r["c1"], r["c2"], r["c3"]) <= 2.0


def test_concordance_symmetric_gaps(concordance_11):
    gaps = [r["gap"] for r in concordance_11.rows]
    frozen = (1.35e-7, 4.80e-12, 5.79e-17, 2.99e-22)
    for got, want in zip(gaps, frozen):
        assert got == pytest.approx(want, rel=1e-2)


def test_concordance_json_shape(concordance_11):
    d = concordance_11.to_json_dict()
    assert set(d) == {"potential", "K", "precision", "rows"}
    assert d["K"] == 32 and d["precision"] == 320
    assert isinstance(d["rows"][0], dict)


def test_concordance_rejects_odd_indices():
    with pytest.raises(ValueError):
        concordance_report(1, 2, ns=(5,))
