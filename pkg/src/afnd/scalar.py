"""Exact base-field arithmetic and the factored norm-value domain.

Scalars are plain :class:`fractions.Fraction` values; the base field is the
rationals carrying either a p-adic absolute value or the trivial one.  Norm
values are kept in factored form (finite map prime -> rational exponent) so
that products, quotients and rational roots of radii stay exact.  Ordering
two distinct norm values falls back to interval evaluation of the log, with
the working precision doubled until the intervals separate; distinct exponent
vectors always denote distinct reals, so this terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

import mpmath

Rational = Union[int, Fraction]

_COMPARE_START_PREC = 64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The base valued field: (Q, |.|_p) or (Q, trivial)."""

    mode: str  # "p-adic" or "trivial"
    p: int | None = None

    def __post_init__(self) -> None:
        if self.mode == "p-adic":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"p-adic mode needs a prime, got {self.p!r}")
        elif self.mode == "trivial":
            if self.p is not None:
                raise ValueError("trivial mode takes no prime")
        else:
            raise ValueError(f"unknown field mode {self.mode!r}")

    @staticmethod
    def padic(p: int) -> "FieldSpec":
        return FieldSpec("p-adic", p)

    @staticmethod
    def trivial() -> "FieldSpec":
        return FieldSpec("trivial")

    def __str__(self) -> str:
        return f"Q_{self.p}" if self.mode == "p-adic" else "Q(trivial)"


def padic_valuation(a: Rational, p: int) -> int:
    """v_p(a) for a nonzero rational; raises on zero."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("v_p(0) is infinite")

    def _vp(n: int) -> int:
        v = 0
        while n % p == 0:
            v += 1
            n //= p
        return v

    return _vp(abs(a.numerator)) - _vp(a.denominator)


class NormValue:
    """A nonnegative real of the form prod p_i^{e_i} (e_i rational), or zero.

    Immutable and hashable.  Equality is equality of exponent maps; the
    total order agrees with the real values.
    """

    __slots__ = ("_exps",)

    def __init__(self, exponents: Mapping[int, Rational] | None = None):
        # None encodes zero; the empty map encodes one.
        if exponents is None:
            object.__setattr__(self, "_exps", None)
            return
        cleaned = {}
        for p, e in exponents.items():
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            e = Fraction(e)
            if e != 0:
                cleaned[p] = e
        object.__setattr__(
            self, "_exps", tuple(sorted(cleaned.items()))
        )

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("NormValue is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "NormValue":
        return NormValue(None)

    @staticmethod
    def one() -> "NormValue":
        return NormValue({})

    @staticmethod
    def prime_power(p: int, e: Rational) -> "NormValue":
        return NormValue({p: e})

    @staticmethod
    def of_rational(a: Rational) -> "NormValue":
        """The factored value of a positive rational number."""
        a = Fraction(a)
        if a <= 0:
            raise ValueError("need a positive rational")
        exps: dict[int, Fraction] = {}
        for n, sign in ((a.numerator, 1), (a.denominator, -1)):
            d = 2
            while d * d <= n:
                while n % d == 0:
                    exps[d] = exps.get(d, Fraction(0)) + sign
                    n //= d
                d += 1
            if n > 1:
                exps[n] = exps.get(n, Fraction(0)) + sign
        return NormValue(exps)

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self._exps is None

    @property
    def exponents(self) -> dict[int, Fraction]:
        if self._exps is None:
            raise ValueError("zero has no factorization")
        return dict(self._exps)

    def as_fraction(self) -> Fraction:
        """Exact rational value; raises if some exponent is non-integral."""
        if self._exps is None:
            return Fraction(0)
        out = Fraction(1)
        for p, e in self._exps:
            if e.denominator != 1:
                raise ValueError(f"{self} is irrational")
            out *= Fraction(p) ** e.numerator
        return out

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other: "NormValue") -> "NormValue":
        if self._exps is None or other._exps is None:
            return NormValue.zero()
        exps = dict(self._exps)
        for p, e in other._exps:
            exps[p] = exps.get(p, Fraction(0)) + e
        return NormValue(exps)

    def __truediv__(self, other: "NormValue") -> "NormValue":
        return self * other.inverse()

    def inverse(self) -> "NormValue":
        if self._exps is None:
            raise ZeroDivisionError("inverse of zero norm value")
        return NormValue({p: -e for p, e in self._exps})

    def __pow__(self, k: Rational) -> "NormValue":
        k = Fraction(k)
        if self._exps is None:
            if k <= 0:
                raise ZeroDivisionError("0 to a nonpositive power")
            return NormValue.zero()
        return NormValue({p: e * k for p, e in self._exps})

    # -- ordering ----------------------------------------------------------

    def _log_interval(self, prec: int):
        saved = mpmath.iv.prec
        try:
            mpmath.iv.prec = prec
            total = mpmath.iv.mpf(0)
            for p, e in self._exps:
                term = mpmath.iv.log(p) * mpmath.iv.mpf(e.numerator)
                total += term / mpmath.iv.mpf(e.denominator)
            return total
        finally:
            mpmath.iv.prec = saved

    def compare(self, other: "NormValue") -> int:
        """Trichotomous comparison, -1 / 0 / +1."""
        if not isinstance(other, NormValue):
            raise TypeError("can only compare NormValue with NormValue")
        if self._exps == other._exps:
            return 0
        if self._exps is None:
            return -1
        if other._exps is None:
            return 1
        # Monotone fast path: every prime is > 1, so a difference of exponent
        # vectors with a consistent sign decides the comparison outright.
        mine = dict(self._exps)
        theirs = dict(other._exps)
        signs = set()
        for p in set(mine) | set(theirs):
            d = mine.get(p, Fraction(0)) - theirs.get(p, Fraction(0))
            if d > 0:
                signs.add(1)
            elif d < 0:
                signs.add(-1)
        if len(signs) == 1:
            return signs.pop()
        prec = _COMPARE_START_PREC
        while True:
            a = self._log_interval(prec)
            b = other._log_interval(prec)
            if a.b < b.a:
                return -1
            if b.b < a.a:
                return 1
            prec *= 2

    def __eq__(self, other) -> bool:
        return isinstance(other, NormValue) and self._exps == other._exps

    def __hash__(self) -> int:
        return hash(("NormValue", self._exps))

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    # -- serialization -----------------------------------------------------

    def __str__(self) -> str:
        if self._exps is None:
            return "0"
        if not self._exps:
            return "1"
        parts = []
        for p, e in self._exps:
            if e == 1:
                parts.append(str(p))
            elif e.denominator == 1:
                parts.append(f"{p}^{e.numerator}")
            else:
                parts.append(f"{p}^{e.numerator}/{e.denominator}")
        return "*".join(parts)

    __repr__ = __str__

    @staticmethod
    def parse(text: str) -> "NormValue":
        """Inverse of str(): "0", "1", or factors like "5^-2*2^1/3"."""
        text = text.strip()
        if text == "0":
            return NormValue.zero()
        if text == "1":
            return NormValue.one()
        exps: dict[int, Fraction] = {}
        for part in text.split("*"):
            part = part.strip()
            if "^" in part:
                base, exp = part.split("^", 1)
                e = Fraction(exp)
            else:
                base, e = part, Fraction(1)
            p = int(base)
            exps[p] = exps.get(p, Fraction(0)) + e
        return NormValue(exps)


def scalar_norm(spec: FieldSpec, a: Rational) -> NormValue:
    """|a| in the chosen field: 0 at zero, p^(-v_p(a)) or trivially 1."""
    a = Fraction(a)
    if a == 0:
        return NormValue.zero()
    if spec.mode == "trivial":
        return NormValue.one()
    return NormValue.prime_power(spec.p, -padic_valuation(a, spec.p))


def compare(a: NormValue, b: NormValue) -> int:
    return a.compare(b)


def max_norm(values: Iterable[NormValue]) -> NormValue:
    """Maximum of a (possibly empty) collection; empty max is zero."""
    best = NormValue.zero()
    for v in values:
        if v > best:
            best = v
    return best


def scalar_to_str(a: Rational) -> str:
    """Exact fraction string "n/d" (or "n" for integers)."""
    return str(Fraction(a))


def scalar_from_str(text: str) -> Fraction:
    return Fraction(text.strip())
