"""Point samples, exact seminorms, and pointwise cover falsification."""

from fractions import Fraction

import pytest

from afnd.affinoid import (
    free_affinoid,
    laurent_localization,
    weierstrass_localization,
)
from afnd.scalar import FieldSpec, NormValue
from afnd.spectrum import (
    GaussPoint,
    RigidPoint,
    conservativity_probe,
    cover_check,
    default_sample,
    domain_of,
    member,
    seminorm,
)
from afnd.tate import Polyradius, parse_element

Q5 = FieldSpec.padic(5)
UNIT = Polyradius(Q5, ("x",), (NormValue.one(),))


def test_rigid_seminorm():
    f = parse_element("x^2 + 5", UNIT)
    pt = RigidPoint((Fraction(5),))
    # f(5) = 30, |30|_5 = 1/5
    assert seminorm(pt, f) == NormValue.prime_power(5, -1)


def test_gauss_seminorm():
    f = parse_element("x + 5", UNIT)
    pt = GaussPoint((Fraction(0),), (NormValue.prime_power(5, -2),))
    # max(|1| * 5^-2, |5|) = 1/5
    assert seminorm(pt, f) == NormValue.prime_power(5, -1)
    assert str(pt) == "gauss(0±5^-2)"


def test_default_sample_shape():
    pts = default_sample(UNIT)
    names = [str(p) for p in pts]
    assert names[0] == "rigid(0)"
    assert "gauss(0±5^-1/2)" in names
    assert len(pts) == 9


def test_default_sample_needs_padic():
    triv = Polyradius(FieldSpec.trivial(), ("x",), (NormValue.one(),))
    with pytest.raises(ValueError):
        default_sample(triv)


def make_cover(inner_exp, outer_radius):
    A = free_affinoid(UNIT)
    x = parse_element("x", A.ambient)
    v1 = weierstrass_localization(A, [x], [NormValue.prime_power(5, inner_exp)])
    v2 = laurent_localization(A, g=[x], g_radii=[NormValue.of_rational(outer_radius)])
    return A, v1, v2


def test_full_cover_passes():
    A, v1, v2 = make_cover(-1, 5)
    report = cover_check([domain_of(v1), domain_of(v2)], ambient=A.ambient)
    assert report.covered
    assert report.points_checked == 9


def test_gap_cover_reports_gauss_witness():
    # |x| <= 1/5 and |x| >= 1 miss the radius 5^(-1/2) Gauss point.
    A, v1, v2 = make_cover(-1, 1)
    report = cover_check([domain_of(v1), domain_of(v2)], ambient=A.ambient)
    assert not report.covered
    assert report.witness_strings() == ["gauss(0±5^-1/2)"]


def test_membership_mixed_conditions():
    A, v1, v2 = make_cover(-1, 5)
    d2 = domain_of(v2)
    assert member(GaussPoint((Fraction(0),), (NormValue.one(),)), d2)
    assert not member(RigidPoint((Fraction(25),)), d2)


def test_conservativity_probe_on_gap():
    A, v1, v2 = make_cover(-1, 1)
    x = parse_element("x", A.ambient)
    # The annulus 5^(-3/4) <= |x| <= 5^(-1/4) sits inside the gap.
    probe = laurent_localization(
        weierstrass_localization(
            A, [x], [NormValue.prime_power(5, Fraction(-1, 4))]
        ),
        g=[x],
        g_radii=[NormValue.prime_power(5, Fraction(3, 4))],
    )
    report = conservativity_probe(A, [v1, v2], probe)
    assert report.probe_nonzero
    assert report.tensors_zero == [True, True]
    assert report.violated


def test_conservativity_probe_inside_cover():
    A, v1, v2 = make_cover(-1, 5)
    x = parse_element("x", A.ambient)
    probe = weierstrass_localization(A, [x], [NormValue.prime_power(5, -1)])
    report = conservativity_probe(A, [v1, v2], probe)
    assert not report.violated
