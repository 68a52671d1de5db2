"""Field norms and the exact factored norm-value domain."""

import math
import random
from fractions import Fraction

import pytest

from afnd.scalar import (
    FieldSpec,
    NormValue,
    max_norm,
    padic_valuation,
    scalar_norm,
)

Q5 = FieldSpec.padic(5)
TRIV = FieldSpec.trivial()


def test_field_spec_validation():
    with pytest.raises(ValueError):
        FieldSpec.padic(4)
    with pytest.raises(ValueError):
        FieldSpec("p-adic", None)
    assert str(Q5) == "Q_5"


def test_padic_valuation():
    assert padic_valuation(Fraction(50), 5) == 2
    assert padic_valuation(Fraction(1, 25), 5) == -2
    assert padic_valuation(Fraction(7), 5) == 0
    with pytest.raises(ValueError):
        padic_valuation(Fraction(0), 5)


def test_scalar_norm_basics():
    assert scalar_norm(TRIV, 7) == NormValue.one()
    assert scalar_norm(Q5, 0) == NormValue.zero()
    assert scalar_norm(Q5, 50) == NormValue.of_rational(Fraction(1, 25))
    assert scalar_norm(Q5, Fraction(3, 5)) == NormValue.prime_power(5, 1)


def test_norm_value_arithmetic():
    a = NormValue.prime_power(5, Fraction(-1, 2))
    b = NormValue.prime_power(5, Fraction(1, 2))
    assert a * b == NormValue.one()
    assert a.inverse() == b
    assert (a ** 4) == NormValue.prime_power(5, -2)
    z = NormValue.zero()
    assert (z * a).is_zero
    with pytest.raises(ZeroDivisionError):
        z.inverse()


def test_norm_value_ordering_same_prime():
    vals = [NormValue.prime_power(5, Fraction(k, 2)) for k in range(-4, 5)]
    for lo, hi in zip(vals, vals[1:]):
        assert lo < hi
    assert NormValue.zero() < vals[0]


def test_norm_value_ordering_mixed_primes():
    # 2^(3/2) = 2.828... vs 3: needs the interval refinement path.
    a = NormValue.prime_power(2, Fraction(3, 2))
    b = NormValue.prime_power(3, 1)
    assert a < b
    # 8 vs 2*3 = 6 going the other way.
    assert NormValue.prime_power(2, 3) > NormValue.of_rational(6)


def test_norm_value_float_log_oracle():
    """Orderings agree with floating-point logarithms on a random corpus."""
    rng = random.Random(7)
    primes = [2, 3, 5, 7]
    for _ in range(300):
        exps_a = {p: Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for p in primes}
        exps_b = {p: Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for p in primes}
        a = NormValue({p: e for p, e in exps_a.items() if e})
        b = NormValue({p: e for p, e in exps_b.items() if e})
        la = sum(float(e) * math.log(p) for p, e in exps_a.items())
        lb = sum(float(e) * math.log(p) for p, e in exps_b.items())
        if abs(la - lb) < 1e-9:
            continue  # too close for the float oracle to adjudicate
        assert (a < b) == (la < lb)


def test_norm_value_str_roundtrip():
    for text in ["0", "1", "5", "5^-2", "5^-1/2", "2^3*5^-2"]:
        assert str(NormValue.parse(text)) == text


def test_max_norm():
    vals = [NormValue.prime_power(5, -k) for k in range(3)]
    assert max_norm(vals) == NormValue.one()
    assert max_norm([]) == NormValue.zero()
