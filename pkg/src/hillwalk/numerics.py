"""Exact scalars and arbitrary-precision floats shared by every layer.

Walk weights and closed-form coefficients are Gaussian rationals (rational
real and imaginary parts) and are kept exact end to end; floating point only
enters when a value is rendered or fed to the spectral solvers.  Conversions
are correctly rounded at an explicit mantissa precision in bits.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath.libmp import from_rational, round_nearest

DEFAULT_PRECISION = 256
MIN_PRECISION = 64

RationalLike = Union[int, Fraction]


def check_precision(precision: int) -> int:
    if not isinstance(precision, int) or precision < MIN_PRECISION:
        raise ValueError(f"precision must be an int >= {MIN_PRECISION} bits, got {precision!r}")
    return precision


def _coerce_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


_RATIONAL_RE = _re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _parse_rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex scalar with Fraction real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", _coerce_fraction(self.re))
        object.__setattr__(self, "im", _coerce_fraction(self.im))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(value: "ScalarLike") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(_coerce_fraction(value))
        if isinstance(value, str):
            return GaussianRational.parse(value)
        if isinstance(value, (float, complex)):
            # floats are exact dyadic rationals, so this loses nothing
            z = complex(value)
            return GaussianRational(Fraction(z.real), Fraction(z.imag))
        raise TypeError(f"cannot build GaussianRational from {type(value).__name__}")

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        """Parse '3', '-1/2', 'i', '-i', '2/5i', '1/2-3/4i' into an exact scalar."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty scalar literal")
        if not s.endswith("i"):
            return GaussianRational(_parse_rational(s))
        body = s[:-1]
        # split real part from imaginary coefficient at the last sign that is
        # not the leading sign and not a digit-internal position
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0:
            re_text, im_text = body[:split], body[split:]
        else:
            re_text, im_text = "", body
        re_part = _parse_rational(re_text) if re_text else Fraction(0)
        if im_text in ("", "+"):
            im_part = Fraction(1)
        elif im_text == "-":
            im_part = Fraction(-1)
        else:
            im_part = _parse_rational(im_text)
        return GaussianRational(re_part, im_part)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "ScalarLike") -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "ScalarLike") -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: "ScalarLike") -> "GaussianRational":
        return GaussianRational.of(other) - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "ScalarLike") -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "ScalarLike") -> "GaussianRational":
        o = GaussianRational.of(other)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other: "ScalarLike") -> "GaussianRational":
        return GaussianRational.of(other) / self

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an int")
        if exponent < 0:
            return GaussianRational(Fraction(1)) / self ** (-exponent)
        result = GaussianRational(Fraction(1))
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- queries -----------------------------------------------------------

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ScalarLike = Union[int, Fraction, str, GaussianRational]

ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))


# -- exact <-> floating conversions ---------------------------------------


def fraction_to_mpf(value: RationalLike, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Correctly rounded (single rounding) conversion of a rational to mpf."""
    check_precision(precision)
    q = _coerce_fraction(value)
    with mpmath.mp.workprec(precision):
        raw = from_rational(q.numerator, q.denominator, precision, round_nearest)
        return +mpmath.mp.make_mpf(raw)


def to_mpc(value: ScalarLike, precision: int = DEFAULT_PRECISION) -> mpmath.mpc:
    """Correctly rounded conversion of an exact scalar to an mpc at `precision` bits."""
    g = GaussianRational.of(value)
    with mpmath.mp.workprec(precision):
        return mpmath.mpc(fraction_to_mpf(g.re, precision), fraction_to_mpf(g.im, precision))


def mpc_abs(value: mpmath.mpc, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    with mpmath.mp.workprec(precision):
        return abs(mpmath.mpc(value))


def abs_value(value: ScalarLike, precision: int = DEFAULT_PRECISION) -> float:
    """Modulus of an exact scalar, evaluated through mpf to dodge overflow."""
    g = GaussianRational.of(value)
    with mpmath.mp.workprec(precision):
        return float(mpmath.sqrt(fraction_to_mpf(g.abs2(), precision)))


def float_to_fraction(x: float) -> Fraction:
    """Exact dyadic rational of a finite float."""
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot represent {x!r} exactly")
    return Fraction(x)


def complex_to_gaussian(z: complex) -> GaussianRational:
    """Exact dyadic GaussianRational of a hardware complex value."""
    return GaussianRational(float_to_fraction(float(z.real)), float_to_fraction(float(z.imag)))


# -- gamma helpers ---------------------------------------------------------


class GammaPoleError(ValueError):
    """Gamma evaluated at a non-positive integer."""


def gamma_product_identity(alpha: RationalLike, m: int) -> GaussianRational:
    """Exact value of Gamma(1-alpha)/Gamma(m-alpha) as the telescoped product
    1 / prod_{t=1}^{m-1} (t - alpha), for rational 0 < alpha < 1 and m >= 1."""
    a = _coerce_fraction(alpha)
    if not (0 < a < 1):
        raise ValueError(f"alpha must satisfy 0 < alpha < 1, got {a}")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be an int >= 1, got {m!r}")
    prod = Fraction(1)
    for t in range(1, m):
        prod *= t - a
    return GaussianRational(1 / prod)


def gamma_value(x: ScalarLike, precision: int = DEFAULT_PRECISION) -> mpmath.mpc:
    """Gamma at a rational (or Gaussian-rational) argument at `precision` bits.

    Poles at non-positive real integers raise GammaPoleError."""
    check_precision(precision)
    g = GaussianRational.of(x)
    if g.im == 0 and g.re.denominator == 1 and g.re <= 0:
        raise GammaPoleError(f"Gamma pole at {g.re}")
    with mpmath.mp.workprec(precision):
        return mpmath.mpc(mpmath.gamma(to_mpc(g, precision)))


@dataclass(frozen=True)
class GammaRatio:
    """A product of Gamma values over a product of Gamma values.

    When every numerator argument can be paired with a denominator argument at
    an integer offset the ratio telescopes to an exact rational; `exact()`
    computes that, `value()` evaluates numerically at a given precision."""

    numerator_args: tuple
    denominator_args: tuple

    @staticmethod
    def of(numerator_args, denominator_args) -> "GammaRatio":
        num = tuple(_coerce_fraction(x) for x in numerator_args)
        den = tuple(_coerce_fraction(x) for x in denominator_args)
        return GammaRatio(num, den)

    def _pairing(self):
        groups: dict = {}
        for x in self.numerator_args:
            groups.setdefault(x - math.floor(x), [[], []])[0].append(x)
        for x in self.denominator_args:
            groups.setdefault(x - math.floor(x), [[], []])[1].append(x)
        pairs = []
        for frac_part, (nums, dens) in groups.items():
            if len(nums) != len(dens):
                raise ValueError(
                    f"ratio does not telescope: class {frac_part} has "
                    f"{len(nums)} numerator vs {len(dens)} denominator args"
                )
            pairs.extend(zip(sorted(nums), sorted(dens)))
        return pairs

    def exact(self) -> GaussianRational:
        """Exact rational value via telescoping; raises ValueError if the
        arguments do not pair up at integer offsets."""
        total = Fraction(1)
        for u, v in self._pairing():
            if u >= v:
                # Gamma(v + k) / Gamma(v) = prod_{t=0}^{k-1} (v + t)
                k = int(u - v)
                for t in range(k):
                    total *= v + t
            else:
                k = int(v - u)
                for t in range(k):
                    total /= u + t
        return GaussianRational(total)

    def value(self, precision: int = DEFAULT_PRECISION) -> mpmath.mpc:
        check_precision(precision)
        with mpmath.mp.workprec(precision):
            out = mpmath.mpc(1)
            for x in self.numerator_args:
                out *= gamma_value(x, precision)
            for x in self.denominator_args:
                out /= gamma_value(x, precision)
            return out


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); domain error for k < 0 or k > n."""
    if not isinstance(n, int) or not isinstance(k, int):
        raise TypeError("binomial takes ints")
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"binomial out of domain: n={n}, k={k}")
    return math.comb(n, k)
