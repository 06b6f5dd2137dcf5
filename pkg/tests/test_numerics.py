"""Exact scalar arithmetic, precision round trips, gamma and binomial."""

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hillwalk.numerics import (
    GammaPoleError,
    GammaRatio,
    GaussianRational,
    abs_value,
    binomial,
    fraction_to_mpf,
    gamma_product_identity,
    gamma_value,
    to_mpc,
)

fractions_st = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=997
)


class TestGaussianRational:
    def test_parse_forms(self):
        assert GaussianRational.parse("3") == GaussianRational(Fraction(3))
        assert GaussianRational.parse("-1/2") == GaussianRational(Fraction(-1, 2))
        assert GaussianRational.parse("i") == GaussianRational(0, Fraction(1))
        assert GaussianRational.parse("-i") == GaussianRational(0, Fraction(-1))
        assert GaussianRational.parse("2/5i") == GaussianRational(0, Fraction(2, 5))
        assert GaussianRational.parse("1/2-3/4i") == GaussianRational(
            Fraction(1, 2), Fraction(-3, 4)
        )
        assert GaussianRational.parse("-12/5+9/5i") == GaussianRational(
            Fraction(-12, 5), Fraction(9, 5)
        )

    def test_parse_rejects_junk(self):
        for bad in ("", "x", "1.5", "1+2", "i3", "1//2"):
            with pytest.raises(ValueError):
                GaussianRational.parse(bad)

    def test_field_arithmetic(self):
        u = GaussianRational(Fraction(1, 2), Fraction(-1, 3))
        v = GaussianRational(Fraction(2), Fraction(5, 7))
        assert (u + v) - v == u
        assert (u * v) / v == u
        assert u * v == v * u
        assert -u + u == GaussianRational()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(Fraction(1)) / GaussianRational()

    def test_abs2_and_conjugate(self):
        u = GaussianRational(Fraction(3, 5), Fraction(4, 5))
        assert u.abs2() == 1
        assert u * u.conjugate() == GaussianRational(Fraction(1))

    def test_integer_powers(self):
        u = GaussianRational(0, Fraction(1))
        assert u ** 2 == GaussianRational(Fraction(-1))
        assert u ** -1 == GaussianRational(0, Fraction(-1))
        assert u ** 0 == GaussianRational(Fraction(1))

    @given(re=fractions_st, im=fractions_st)
    @settings(max_examples=60)
    def test_round_trip_precision(self, re, im):
        g = GaussianRational(re, im)
        for precision in (64, 128, 256):
            z = to_mpc(g, precision)
            with mpmath.mp.workprec(precision + 96):
                err2 = (z.real - mpmath.mpf(re.numerator) / re.denominator) ** 2 + (
                    z.imag - mpmath.mpf(im.numerator) / im.denominator
                ) ** 2
                mag2 = float(re * re + im * im)
                if mag2 == 0:
                    assert err2 == 0
                else:
                    # correctly rounded components: relative error <= 2^(1-p)
                    assert float(mpmath.sqrt(err2)) <= 2.0 ** (1 - precision) * (
                        math.sqrt(mag2)
                    ) + 1e-300


class TestGamma:
    def test_product_identity_small(self):
        third = Fraction(1, 3)
        assert gamma_product_identity(third, 1).re == 1
        assert gamma_product_identity(third, 2).re == Fraction(3, 2)
        assert gamma_product_identity(third, 3).re == Fraction(9, 10)

    @given(
        num=st.integers(min_value=1, max_value=9),
        den=st.integers(min_value=2, max_value=10),
        m=st.integers(min_value=1, max_value=50),
    )
    @settings(max_examples=60)
    def test_telescoping_property(self, num, den, m):
        if num >= den:
            num = den - 1
        alpha = Fraction(num, den)
        value = gamma_product_identity(alpha, m).re
        prod = Fraction(1)
        for t in range(1, m):
            prod *= t - alpha
        assert value * prod == 1

    def test_product_identity_domain(self):
        with pytest.raises(ValueError):
            gamma_product_identity(Fraction(3, 2), 4)
        with pytest.raises(ValueError):
            gamma_product_identity(Fraction(1, 3), 0)

    def test_gamma_value_integers(self):
        assert abs(complex(gamma_value(1, 64)) - 1) < 1e-15
        assert abs(complex(gamma_value(4, 64)) - 6) < 1e-14

    def test_gamma_half_vs_sqrt_pi(self):
        precision = 300
        g = gamma_value(Fraction(1, 2), precision)
        with mpmath.mp.workprec(precision):
            ref = mpmath.sqrt(mpmath.pi)
            assert abs(g.real - ref) < mpmath.mpf(2) ** (-(precision - 8))
            assert abs(g.imag) == 0

    def test_gamma_error_budget(self):
        # value at precision p agrees with a much higher precision run
        x = Fraction(7, 3)
        for p in (64, 128, 256):
            lo = gamma_value(x, p)
            hi = gamma_value(x, p + 128)
            with mpmath.mp.workprec(p + 160):
                rel = abs(lo - hi) / abs(hi)
                assert rel < mpmath.mpf(2) ** (-(p - 8))

    def test_gamma_pole(self):
        with pytest.raises(GammaPoleError):
            gamma_value(0, 64)
        with pytest.raises(GammaPoleError):
            gamma_value(-3, 64)

    def test_gamma_ratio_exact_vs_numeric(self):
        ratio = GammaRatio.of(
            [Fraction(2, 3), Fraction(19, 3)], [Fraction(5, 3), Fraction(7, 3)]
        )
        exact = ratio.exact()
        numeric = ratio.value(192)
        assert abs(complex(to_mpc(exact, 192) - numeric)) < 1e-40

    def test_gamma_ratio_telescopes_requirement(self):
        with pytest.raises(ValueError):
            GammaRatio.of([Fraction(1, 2)], [Fraction(1, 3)]).exact()


class TestBinomial:
    def test_values(self):
        assert binomial(3, 1) == 3
        assert binomial(0, 0) == 1
        assert binomial(23, 10) == 1144066

    def test_domain(self):
        with pytest.raises(ValueError):
            binomial(3, 5)
        with pytest.raises(ValueError):
            binomial(3, -1)

    @given(n=st.integers(min_value=1, max_value=200), k=st.integers(min_value=0, max_value=200))
    @settings(max_examples=80)
    def test_pascal_rule(self, n, k):
        k = min(k, n)
        if 0 < k <= n - 1:
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)
        assert binomial(n, 0) == 1
        assert binomial(n, n) == 1


def test_abs_value_handles_huge_fractions():
    g = GaussianRational(Fraction(10 ** 400, 3), 0)
    assert abs_value(g) == math.inf or abs_value(g) > 1e300
    tiny = GaussianRational(Fraction(3, 10 ** 400), 0)
    assert abs_value(tiny) >= 0.0


def test_fraction_to_mpf_single_rounding():
    q = Fraction(1, 3)
    x = fraction_to_mpf(q, 64)
    with mpmath.mp.workprec(160):
        assert abs(x - mpmath.mpf(1) / 3) < mpmath.mpf(2) ** -64
