"""Cover complexes and acyclicity verdicts."""

import pytest

from afnd.affinoid import (
    free_affinoid,
    laurent_localization,
    quotient,
    weierstrass_localization,
)
from afnd.cech import (
    ALTERNATING,
    FULL,
    CoverData,
    acyclicity_check,
    build_complex,
)
from afnd.scalar import FieldSpec, NormValue
from afnd.tate import Polyradius, parse_element

Q5 = FieldSpec.padic(5)


def unit_disc():
    return Polyradius(Q5, ("x",), (NormValue.one(),))


def x_of(alg):
    return parse_element("x", alg.ambient)


@pytest.fixture
def disk_cover():
    """|x| <= 1/5 and |x| >= 1/5 cover the unit disk."""
    A = free_affinoid(unit_disc())
    v1 = weierstrass_localization(A, [x_of(A)], [NormValue.prime_power(5, -1)])
    v2 = laurent_localization(A, g=[x_of(A)], g_radii=[NormValue.of_rational(5)])
    return CoverData(A, (v1, v2))


def test_cover_data_validates_pieces():
    A = free_affinoid(unit_disc())
    other = free_affinoid(Polyradius(Q5, ("y",), (NormValue.one(),)))
    with pytest.raises(ValueError):
        CoverData(A, (other,))


def test_alternating_complex_d_squared(disk_cover):
    cx = build_complex(disk_cover, 2, style=ALTERNATING)
    assert cx.verify_d_squared(8)


def test_full_complex_d_squared(disk_cover):
    cx = build_complex(disk_cover, 3, style=FULL)
    assert cx.verify_d_squared(6)


def test_acyclicity_exact_with_unit_constant(disk_cover):
    report = acyclicity_check(disk_cover, 2, 12)
    assert report.exact
    assert str(report.constant) == "1"
    assert all(v.exact for v in report.witness.verdicts)


def test_acyclicity_full_style(disk_cover):
    report = acyclicity_check(disk_cover, 3, 8, style=FULL)
    assert report.exact


def test_acyclicity_refuses_unverified_pieces():
    A = free_affinoid(unit_disc())
    k = quotient(A, [x_of(A)])  # a closed immersion, not a localization
    cover = CoverData(A, (k,))
    report = acyclicity_check(cover, 1, 8)
    assert report.status == "refused"
    assert "not verified" in report.detail


def test_acyclicity_detects_gap():
    A = free_affinoid(unit_disc())
    v1 = weierstrass_localization(A, [x_of(A)], [NormValue.prime_power(5, -2)])
    v2 = laurent_localization(A, g=[x_of(A)], g_radii=[NormValue.of_rational(5)])
    report = acyclicity_check(CoverData(A, (v1, v2)), 2, 8)
    assert report.status == "fails"


def test_three_piece_cover_exact():
    A = free_affinoid(unit_disc())
    x = x_of(A)
    v1 = weierstrass_localization(A, [x], [NormValue.prime_power(5, -2)])
    v2 = laurent_localization(
        A,
        f=[x],
        f_radii=[NormValue.prime_power(5, -1)],
        g=[x],
        g_radii=[NormValue.of_rational(25)],
    )
    v3 = laurent_localization(A, g=[x], g_radii=[NormValue.of_rational(5)])
    report = acyclicity_check(CoverData(A, (v1, v2, v3)), 3, 8)
    assert report.exact
    assert str(report.constant) == "1"
