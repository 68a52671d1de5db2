"""Point samples on the analytic spectrum and pointwise cover checks.

Two kinds of sample points are exact enough to evaluate seminorms on without
approximation: rigid points with rational coordinates, and Gauss points
(centers of polydiscs with factored radii).  On a polynomial representative
both seminorms have closed forms, so membership of a point in a rational
subdomain |f_i| <= r_i |g| is decided exactly.

A pointwise cover check is a falsifier, not a proof: a cover that passes the
sample may still have gaps, and the conservativity probe shows that
tensor-vanishing against the pieces cannot detect them either, which is why
the sample includes Gauss points at non-rational radii between the rigid
ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from afnd.affinoid import AffinoidPresentation, DomainInequality, tensor_over
from afnd.scalar import FieldSpec, NormValue, scalar_norm
from afnd.tate import Polyradius, TateElement


@dataclass(frozen=True)
class RigidPoint:
    coords: tuple[Fraction, ...]

    def __str__(self) -> str:
        return "rigid(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class GaussPoint:
    center: tuple[Fraction, ...]
    radii: tuple[NormValue, ...]

    def __str__(self) -> str:
        inner = ", ".join(
            f"{c}±{r}" for c, r in zip(self.center, self.radii)
        )
        return f"gauss({inner})"


BerkovichPointSample = Union[RigidPoint, GaussPoint]


def seminorm(point: BerkovichPointSample, f: TateElement) -> NormValue:
    """The value of |f| at the sample point, exactly."""
    if isinstance(point, RigidPoint):
        return scalar_norm(f.ambient.field, f.evaluate(point.coords))
    return f.recenter(point.center).gauss_seminorm(point.radii)


@dataclass(frozen=True)
class RationalDomainData:
    """The subdomain |f_i| <= r_i |g| of the ambient polydisc."""

    f: tuple[TateElement, ...]
    g: TateElement
    r: tuple[NormValue, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.f) != len(self.r):
            raise ValueError("one bound per function required")


def domain_of(
    piece: AffinoidPresentation, name: str = ""
) -> "RationalDomainData | ConjunctionDomain":
    """The domain cut out by a localization's recorded inequalities.

    Conjunctions with different denominators are folded into one data object
    by storing each inequality as its own (f, g, r) triple.
    """
    if piece.localization is None:
        raise ValueError("piece carries no localization data")
    ineqs = piece.localization.inequalities
    if not ineqs:
        raise ValueError("piece carries no domain inequalities")
    gs = {ineq.den for ineq in ineqs}
    if len(gs) == 1:
        g = ineqs[0].den
        return RationalDomainData(
            tuple(i.num for i in ineqs), g, tuple(i.bound for i in ineqs), name
        )
    # Mixed denominators: clear them pairwise into a common shape is not
    # always possible; keep the raw inequalities instead.
    return ConjunctionDomain(tuple(ineqs), name)


@dataclass(frozen=True)
class ConjunctionDomain:
    """A finite conjunction of |num| <= bound * |den| conditions."""

    inequalities: tuple[DomainInequality, ...]
    name: str = ""


def member(
    point: BerkovichPointSample,
    domain: "RationalDomainData | ConjunctionDomain",
) -> bool:
    if isinstance(domain, RationalDomainData):
        sg = seminorm(point, domain.g)
        for fi, ri in zip(domain.f, domain.r):
            if seminorm(point, fi) > ri * sg:
                return False
        return True
    for ineq in domain.inequalities:
        if seminorm(point, ineq.num) > ineq.bound * seminorm(point, ineq.den):
            return False
    return True


def default_sample(
    ambient: Polyradius, unit: Fraction = Fraction(1)
) -> list[BerkovichPointSample]:
    """The standard falsification sample on a polydisc over a p-adic field.

    Rigid points: the origin and u*p^k on the diagonal for k = 0, 1, 2;
    Gauss points centered at the origin with radii p^(-q) for
    q = 0, 1/2, 1, 3/2, 2.  Points outside the polydisc are skipped.
    """
    field = ambient.field
    if field.mode != "p-adic":
        raise ValueError("default sample needs a p-adic base field")
    p = field.p
    n = ambient.nvars
    points: list[BerkovichPointSample] = [RigidPoint((Fraction(0),) * n)]
    for k in range(3):
        c = Fraction(unit) * Fraction(p) ** k
        if all(scalar_norm(field, c) <= r for r in ambient.radii):
            points.append(RigidPoint((c,) * n))
    for q in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)):
        rho = NormValue.prime_power(p, -q)
        if all(rho <= r for r in ambient.radii):
            points.append(
                GaussPoint((Fraction(0),) * n, (rho,) * n)
            )
    return points


@dataclass
class CoverCheckReport:
    covered: bool
    truncation: Optional[int]
    points_checked: int
    witnesses: list[BerkovichPointSample]

    def witness_strings(self) -> list[str]:
        return [str(w) for w in self.witnesses]


def cover_check(
    domains: Sequence["RationalDomainData | ConjunctionDomain"],
    points: Sequence[BerkovichPointSample] | None = None,
    ambient: Polyradius | None = None,
) -> CoverCheckReport:
    """Does every sample point land in some domain of the family?"""
    if points is None:
        if ambient is None:
            raise ValueError("need explicit points or an ambient to sample")
        points = default_sample(ambient)
    witnesses = [
        pt for pt in points if not any(member(pt, d) for d in domains)
    ]
    return CoverCheckReport(not witnesses, None, len(points), witnesses)


@dataclass
class ConservativityReport:
    """Outcome of probing a cover with an auxiliary nonzero algebra.

    `violated` means the probe algebra is nonzero while all its tensor
    products with the pieces vanish: no tensor-vanishing argument against
    the pieces can certify the cover.
    """

    probe_nonzero: bool
    tensors_zero: list[bool]
    violated: bool


def conservativity_probe(
    base: AffinoidPresentation,
    pieces: Sequence[AffinoidPresentation],
    probe: AffinoidPresentation,
) -> ConservativityReport:
    probe_nonzero = not probe.is_zero_algebra
    tensors_zero = [
        tensor_over(base, probe, piece)[0].is_zero_algebra for piece in pieces
    ]
    return ConservativityReport(
        probe_nonzero, tensors_zero, probe_nonzero and all(tensors_zero)
    )
