"""Affinoid presentations: normal forms, localizations, tensor products."""

from fractions import Fraction

import pytest

from afnd.affinoid import (
    BezoutCertificate,
    PresentationError,
    free_affinoid,
    laurent_localization,
    localization_chain,
    quotient,
    rational_localization,
    tensor_over,
    weierstrass_localization,
)
from afnd.scalar import FieldSpec, NormValue
from afnd.tate import Polyradius, TateElement, parse_element

Q5 = FieldSpec.padic(5)


def unit_disc(*names):
    names = names or ("x",)
    return Polyradius(Q5, names, (NormValue.one(),) * len(names))


@pytest.fixture
def A():
    return free_affinoid(unit_disc())


def test_free_normal_form(A):
    f = parse_element("x^2 + 5", A.ambient)
    assert A.normal_form(f, 8) == f
    assert A.monomial_basis(2) == [(0,), (1,), (2,)]


def test_quotient_normal_form(A):
    # A/(x^2 - 5): x^2 rewrites to 5, so x^3 + x becomes 6x.
    B = quotient(A, [parse_element("x^2 - 5", A.ambient)])
    nf = B.normal_form(parse_element("x^3 + x", A.ambient), 8)
    assert str(nf) == "6*x"
    assert B.monomial_basis(8) == [(0,), (1,)]


def test_zero_algebra_detection(A):
    # Inverting x on the small disk |x| <= 1/5 forces 1 = x*S with
    # |x*S| < 1: the algebra collapses.
    small = weierstrass_localization(
        A, [parse_element("x", A.ambient)], [NormValue.prime_power(5, -1)]
    )
    dead = laurent_localization(
        small,
        g=[parse_element("x", small.ambient)],
        g_radii=[NormValue.one()],
    )
    assert dead.is_zero_algebra
    assert dead.monomial_basis(6) == []


def test_weierstrass_localization_eliminates_variable(A):
    V = weierstrass_localization(
        A, [parse_element("x", A.ambient)], [NormValue.prime_power(5, -1)]
    )
    assert V.is_over(A)
    assert V.localization.kind == "weierstrass"
    # x = T in the localization, so x - T reduces to zero.
    diff = parse_element("x - T", V.ambient)
    assert V.normal_form(diff, 6) == TateElement.zero(V.ambient)


def test_laurent_localization_normal_form(A):
    W = laurent_localization(
        A, g=[parse_element("x", A.ambient)], g_radii=[NormValue.of_rational(5)]
    )
    s = W.localization.relators[0].var
    # x * s = 1, so x^3 s^2 + 2 reduces to x + 2.
    f = parse_element(f"x^3*{s}^2 + 2", W.ambient)
    assert str(W.normal_form(f, 8)) == "2 + x"


def test_rational_localization_with_certificate():
    A2 = free_affinoid(unit_disc("x"))
    x = parse_element("x", A2.ambient)
    # (-1)*(x - 1) + 1*x = 1 certifies (x, x - 1) = (1).
    f = [x]
    g = parse_element("x - 1", A2.ambient)
    cert = BezoutCertificate(
        parse_element("-1", A2.ambient), (parse_element("1", A2.ambient),)
    )
    assert cert.verify(f, g)
    V = rational_localization(
        A2, f, g, [NormValue.one()], certificate=cert,
        epsilon=NormValue.one(),
    )
    assert V.localization.kind == "rational"
    chain = localization_chain(V, A2)
    assert chain is not None and len(chain) == 2


def test_rational_localization_needs_certificate(A):
    f = [parse_element("x", A.ambient)]
    g = parse_element("x^2 + 1", A.ambient)
    with pytest.raises(PresentationError):
        rational_localization(A, f, g, [NormValue.one()])


def test_rational_reduces_to_weierstrass(A):
    one = TateElement.constant(A.ambient, 1)
    V = rational_localization(
        A, [parse_element("x", A.ambient)], one, [NormValue.prime_power(5, -1)]
    )
    assert V.localization.kind == "weierstrass"


def test_tensor_over_renames(A):
    V = weierstrass_localization(
        A, [parse_element("x", A.ambient)], [NormValue.prime_power(5, -1)]
    )
    T, rename = tensor_over(A, V, V)
    assert T.is_over(A)
    assert rename  # the second copy's localization variable is renamed
    assert T.ambient.nvars == 3


def test_reduce_reports_norm(A):
    B = quotient(A, [parse_element("x^2 - 5", A.ambient)])
    r = B.reduce(parse_element("x^3", A.ambient), 8)
    assert str(r.representative) == "5*x"
    assert r.residue_norm_upper == NormValue.prime_power(5, -1)


def test_is_over_rejects_unrelated():
    A1 = free_affinoid(unit_disc("x"))
    A2 = free_affinoid(unit_disc("y"))
    assert not A2.is_over(A1)
