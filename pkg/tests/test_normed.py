"""Weighted orthogonal spaces: norms, tensors, operator norms, strictness."""

from fractions import Fraction

import pytest

from afnd.normed import (
    NormedMatrix,
    WeightedSpace,
    classify,
    operator_norm,
    sum_spaces,
    tensor_spaces,
)
from afnd.scalar import FieldSpec, NormValue

Q5 = FieldSpec.padic(5)


def line(r):
    return WeightedSpace.line(Q5, NormValue.of_rational(r))


def test_space_norm():
    s = WeightedSpace(Q5, (NormValue.one(), NormValue.of_rational(5)))
    assert s.norm([Fraction(5), Fraction(0)]) == NormValue.prime_power(5, -1)
    assert s.norm([1, 1]) == NormValue.of_rational(5)
    with pytest.raises(ValueError):
        s.norm([1])


def test_one_dimensional_tensor():
    # k_2 (x) k_3 = k_6, and k_r (x) k_1 = k_r.
    assert tensor_spaces(line(2), line(3)) == line(6)
    for r in (2, 3, 7):
        assert tensor_spaces(line(r), line(1)) == line(r)


def test_sum_spaces():
    s = sum_spaces([line(2), line(3)])
    assert s.weights == (NormValue.of_rational(2), NormValue.of_rational(3))
    assert sum_spaces([], Q5).dim == 0


def test_operator_norm_closed_form():
    k1, k2 = line(1), line(2)
    t = NormedMatrix([[3]], k2, k1)  # |3| * 1 / 2 = 1/2 over Q_5
    assert operator_norm(t) == NormValue.of_rational(Fraction(1, 2))
    u = NormedMatrix([[5]], k1, k1)
    assert operator_norm(u) == NormValue.prime_power(5, -1)
    z = NormedMatrix([[0]], k1, k1)
    assert operator_norm(z).is_zero


def test_compose_and_apply():
    k1 = line(1)
    two = sum_spaces([k1, k1])
    t = NormedMatrix([[1, 1]], two, k1)
    u = NormedMatrix([[1], [2]], k1, two)
    assert t.apply([1, 3]) == [Fraction(4)]
    assert t.compose(u).entries == [[Fraction(3)]]


def test_classify_mult_by_p():
    k1 = line(1)
    t = NormedMatrix([[5]], k1, k1)
    c = classify(t)
    assert c.mono and c.epi and c.strict
    assert c.strict_mono_constant == NormValue.of_rational(5)
    assert c.strict_epi_constant == NormValue.of_rational(5)


def test_classify_zero_map():
    k1 = line(1)
    c = classify(NormedMatrix([[0]], k1, k1))
    assert not c.mono and not c.epi
    assert c.strict_mono_constant is None
    assert c.strict_epi_constant is None


def test_classify_projection():
    k1 = line(1)
    two = sum_spaces([line(1), line(2)])
    c = classify(NormedMatrix([[1, 0]], two, k1))
    assert c.epi and not c.mono
    assert c.strict_epi_constant == NormValue.one()
