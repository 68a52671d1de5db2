"""Affinoid algebras as finite presentations over Tate algebras.

A presentation is an ambient polyradius plus finitely many relations.  The
reduction machinery normalizes relations into three layers:

* substitution relations a*v - h (h free of v, ||h/a|| <= radius(v)) are
  eliminated exactly, with no truncation loss;
* coordinate-inverse relations a*u*v - b rewrite the monomial pair u*v to the
  scalar b/a (Laurent normal form), again exactly;
* anything else is handled by degree-bounded row reduction of the element
  against all relation multiples of total degree <= D, with norm-aware
  pivoting; the result is a canonical representative and a certified upper
  bound on the residue seminorm.

A presentation is recognized as the zero algebra when some reduced relation
has a dominant constant term: a*1 = (a - rel) + rel with ||a - rel|| < |a|
forces the residue seminorm of 1 below 1, hence (by multiplicativity of the
bound) to 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from afnd.linalg import NormAwareElimination
from afnd.scalar import FieldSpec, NormValue, scalar_norm
from afnd.tate import (
    Exponent,
    Polyradius,
    TateElement,
    fresh_name,
    grevlex_key,
)

SUBSTITUTION = "substitution"
COORDINATE_INVERSE = "coordinate-inverse"
GENERIC_BOUNDED = "generic-bounded"


@dataclass(frozen=True)
class BezoutCertificate:
    """Data (b, a_1..a_m) with b*g + sum a_i f_i = 1, verified exactly."""

    b: TateElement
    a: tuple[TateElement, ...]

    def verify(self, f: Sequence[TateElement], g: TateElement) -> bool:
        if len(f) != len(self.a):
            return False
        total = self.b * g
        for ai, fi in zip(self.a, f):
            total = total + ai * fi
        return total == TateElement.constant(g.ambient, 1)


@dataclass(frozen=True)
class Relator:
    """One localization relator in a fresh variable of known radius.

    `shape` is "weierstrass" for T - f, "laurent" for g*T - 1, and "generic"
    for anything else (generic relators only get the multi-relator Koszul
    fallback with a validity check).
    """

    element: TateElement
    var: str
    radius: NormValue
    shape: str


@dataclass(frozen=True)
class DomainInequality:
    """|num| <= bound * |den| as a membership condition on the base algebra."""

    num: TateElement
    den: TateElement
    bound: NormValue


@dataclass(frozen=True)
class LocalizationData:
    kind: str  # weierstrass | laurent | rational
    base: "AffinoidPresentation"
    relators: tuple[Relator, ...]
    inequalities: tuple[DomainInequality, ...]


@dataclass(frozen=True)
class ReducedForm:
    representative: TateElement
    residue_norm_upper: NormValue
    truncation: int


class PresentationError(ValueError):
    pass


class AffinoidPresentation:
    """A = k{r^-1 x} / (relations), with a layered reduction strategy."""

    def __init__(
        self,
        ambient: Polyradius,
        relations: Sequence[TateElement] = (),
        strategy: str | None = None,
        certificate: BezoutCertificate | None = None,
        localization: LocalizationData | None = None,
    ):
        self.ambient = ambient
        self.relations = tuple(relations)
        for rel in self.relations:
            if rel.ambient != ambient:
                raise PresentationError("relation outside the ambient algebra")
        self.certificate = certificate
        self.localization = localization
        self._generic_cache: dict[int, "NormAwareElimination | None"] = {}
        self._basis_cache: dict[int, list[Exponent]] = {}
        self._normalize()
        if strategy is not None and strategy != self.strategy:
            raise PresentationError(
                f"requested strategy {strategy!r} but relations support "
                f"only {self.strategy!r}"
            )

    @property
    def field(self) -> FieldSpec:
        return self.ambient.field

    # -- normalization -----------------------------------------------------

    def _normalize(self) -> None:
        ambient = self.ambient
        self.substitutions: dict[str, TateElement] = {}
        self.laurent_pairs: dict[tuple[str, str], Fraction] = {}
        self.generic_relations: list[TateElement] = []
        self.is_zero_algebra = False

        rels = [r for r in self.relations if not r.is_zero]
        while True:
            # Layer 1: substitution relations, eliminating one variable each.
            changed = True
            while changed:
                changed = False
                for ri, rel in enumerate(rels):
                    hit = self._substitution_candidate(rel)
                    if hit is None:
                        continue
                    var, h = hit
                    del rels[ri]
                    self._register_substitution(var, h)
                    rels = [r.substitute(var, h) for r in rels]
                    rels = [r for r in rels if not r.is_zero]
                    changed = True
                    break

            # Zero-algebra detection: a relation with a dominant constant term.
            for rel in rels:
                c = rel.constant_term()
                if c != 0:
                    tail = rel - TateElement.constant(ambient, c)
                    if tail.gauss_norm() < scalar_norm(self.field, c):
                        self.is_zero_algebra = True
                        return

            # Layer 2: coordinate-inverse (Laurent) pairs u*v -> b/a.
            self.laurent_pairs = {}
            remaining = []
            paired: set[str] = set(self.substitutions)
            for rel in rels:
                hit = self._laurent_candidate(rel, paired)
                if hit is None:
                    remaining.append(rel)
                    continue
                u, v, q = hit
                self.laurent_pairs[(u, v)] = q
                paired.update((u, v))

            # A second pair relation through an already-paired variable is an
            # exact identification: from u*w = q and a*u*v = b one gets
            # v = v*(u*w)/q = (u*v)*w/q = (b/(a*q))*w.  Register it as a
            # substitution and renormalize from scratch.
            action = self._pair_identification(remaining)
            if action == "restart":
                rels = [r for r in self.relations if not r.is_zero]
                for var, h in self.substitutions.items():
                    rels = [r.substitute(var, h) for r in rels]
                rels = [r for r in rels if not r.is_zero]
                continue
            if action == "zero":
                self.is_zero_algebra = True
                return
            break

        # Layer 3: everything else.
        self.generic_relations = [
            self._shape_normal(r) for r in remaining if not self._shape_normal(r).is_zero
        ]

        if not remaining:
            self.strategy = COORDINATE_INVERSE if self.laurent_pairs else SUBSTITUTION
        else:
            self.strategy = GENERIC_BOUNDED

    def _substitution_candidate(
        self, rel: TateElement
    ) -> tuple[str, TateElement] | None:
        ambient = self.ambient
        # Prefer eliminating later variables (localization variables are
        # appended last); first admissible candidate wins.
        for i in reversed(range(ambient.nvars)):
            exponent = tuple(1 if k == i else 0 for k in range(ambient.nvars))
            a = rel.terms.get(exponent, Fraction(0))
            if a == 0:
                continue
            name = ambient.names[i]
            h = (TateElement.monomial(ambient, exponent, a) - rel).scale(
                Fraction(1) / a
            )
            if h.uses(name):
                continue
            if h.gauss_norm() > ambient.radii[i]:
                continue
            return name, h
        return None

    def _laurent_candidate(
        self, rel: TateElement, paired: set[str]
    ) -> tuple[str, str, Fraction] | None:
        if len(rel.terms) != 2:
            return None
        ambient = self.ambient
        const = rel.constant_term()
        if const == 0:
            return None
        [(exponent, a)] = [
            (e, c) for e, c in rel.terms.items() if sum(e) > 0
        ]
        support = [i for i, k in enumerate(exponent) if k]
        if len(support) != 2 or any(exponent[i] != 1 for i in support):
            return None
        u, v = ambient.names[support[0]], ambient.names[support[1]]
        if u in paired or v in paired:
            return None
        return u, v, -const / a

    def _register_substitution(self, var: str, h: TateElement) -> None:
        self.substitutions = {
            v: e.substitute(var, h) for v, e in self.substitutions.items()
        }
        self.substitutions[var] = h

    def _pair_of(self, name: str) -> tuple[tuple[str, str], Fraction] | None:
        for pair, q in self.laurent_pairs.items():
            if name in pair:
                return pair, q
        return None

    def _pair_identification(self, remaining: list[TateElement]) -> str | None:
        """Resolve two-term pair relations overlapping an existing pair."""
        for ri, rel in enumerate(remaining):
            if len(rel.terms) != 2:
                continue
            const = rel.constant_term()
            if const == 0:
                continue
            [(exponent, a)] = [(e, c) for e, c in rel.terms.items() if sum(e) > 0]
            support = [i for i, k in enumerate(exponent) if k]
            if len(support) != 2 or any(exponent[i] != 1 for i in support):
                continue
            u = self.ambient.names[support[0]]
            v = self.ambient.names[support[1]]
            val = -const / a
            pu, pv = self._pair_of(u), self._pair_of(v)
            if pu is not None and pv is not None:
                if pu[0] == pv[0]:
                    # Same pair twice: redundant or contradictory.
                    if val == pu[1]:
                        del remaining[ri]
                        return self._pair_identification(remaining)
                    return "zero"
                continue  # two distinct pairs: left to the generic layer
            if pu is None and pv is None:
                continue
            if pu is None:
                u, v = v, u
                pu = pv
            (pair, q) = pu
            partner = pair[0] if pair[1] == u else pair[1]
            if self._try_identify(v, partner, val / q):
                return "restart"
        return self._shared_factor_identification(remaining)

    def _try_identify(self, v: str, w: str, coeff: Fraction) -> bool:
        """Install v = coeff*w (or the reverse), whichever respects radii."""
        h = TateElement.variable(self.ambient, w).scale(coeff)
        if h.gauss_norm() <= self.ambient.radius_of(v):
            self._register_substitution(v, h)
            return True
        h = TateElement.variable(self.ambient, v).scale(Fraction(1) / coeff)
        if h.gauss_norm() <= self.ambient.radius_of(w):
            self._register_substitution(w, h)
            return True
        return False

    def _linear_decompositions(
        self, rel: TateElement
    ) -> list[tuple[str, TateElement, Fraction]]:
        """Ways to read rel as g*v - c (v of exponent 1 throughout, c != 0)."""
        const = rel.constant_term()
        if const == 0:
            return []
        nonconst = [(e, cf) for e, cf in rel.terms.items() if sum(e) > 0]
        if not nonconst:
            return []
        out = []
        for i in range(self.ambient.nvars):
            if all(e[i] == 1 for e, _ in nonconst):
                g_terms = {}
                for e, cf in nonconst:
                    ge = list(e)
                    ge[i] -= 1
                    g_terms[tuple(ge)] = cf
                g = TateElement(self.ambient, g_terms)
                if not g.uses(self.ambient.names[i]):
                    out.append((self.ambient.names[i], g, -const))
        return out

    def _shared_factor_identification(
        self, remaining: list[TateElement]
    ) -> str | None:
        """Identify variables cut out by proportional factors.

        From g*v1 = c1 and (t*g)*v2 = c2 one gets c1*t*v2 = c2*v1 exactly
        (multiply the first by t*v2 and the second by v1), so v2 is a scalar
        multiple of v1 whenever t is a scalar.
        """
        decomps = [self._linear_decompositions(r) for r in remaining]
        for rj in range(len(remaining)):
            for ri in range(rj):
                for v1, g1, c1 in decomps[ri]:
                    for v2, g2, c2 in decomps[rj]:
                        lam = self._proportionality(g1, g2)
                        if lam is None:
                            continue
                        if v1 == v2:
                            if c2 == lam * c1:
                                del remaining[rj]
                                return self._pair_identification(remaining)
                            return "zero"
                        if self._try_identify(v2, v1, c2 / (lam * c1)):
                            return "restart"
        return None

    @staticmethod
    def _proportionality(g1: TateElement, g2: TateElement) -> Fraction | None:
        """The scalar t with g2 = t*g1, if one exists."""
        if g1.is_zero or set(g1.terms) != set(g2.terms):
            return None
        e0 = next(iter(g1.terms))
        lam = g2.terms[e0] / g1.terms[e0]
        for e, cf in g1.terms.items():
            if g2.terms[e] != lam * cf:
                return None
        return lam

    def _shape_normal(self, w: TateElement) -> TateElement:
        """Apply the substitution and Laurent layers exactly."""
        out = w
        for var, h in self.substitutions.items():
            if out.uses(var):
                out = out.substitute(var, h)
        if self.laurent_pairs:
            ambient = self.ambient
            terms: dict[Exponent, Fraction] = {}
            for exponent, c in out.terms.items():
                e = list(exponent)
                for (u, v), q in self.laurent_pairs.items():
                    iu, iv = ambient.index(u), ambient.index(v)
                    m = min(e[iu], e[iv])
                    if m:
                        e[iu] -= m
                        e[iv] -= m
                        c = c * q**m
                t = tuple(e)
                terms[t] = terms.get(t, Fraction(0)) + c
            out = TateElement(ambient, terms)
        return out

    # -- bases and reduction ------------------------------------------------

    def free_variable_indices(self) -> list[int]:
        return [
            i
            for i, n in enumerate(self.ambient.names)
            if n not in self.substitutions
        ]

    def _shape_monomials(self, degree: int) -> list[Exponent]:
        """Monomials surviving substitution and Laurent normalization."""
        ambient = self.ambient
        free = self.free_variable_indices()
        pair_idx = [
            (ambient.index(u), ambient.index(v)) for (u, v) in self.laurent_pairs
        ]
        out: list[Exponent] = []

        def rec(pos: int, remaining: int, acc: list[int]) -> None:
            if pos == len(free):
                e = [0] * ambient.nvars
                for i, k in zip(free, acc):
                    e[i] = k
                if all(e[iu] == 0 or e[iv] == 0 for iu, iv in pair_idx):
                    out.append(tuple(e))
                return
            for k in range(remaining + 1):
                rec(pos + 1, remaining - k, acc + [k])

        rec(0, degree, [])
        out.sort(key=grevlex_key)
        return out

    def _generic_elimination(self, degree: int) -> "NormAwareElimination | None":
        if degree in self._generic_cache:
            return self._generic_cache[degree]
        if not self.generic_relations:
            self._generic_cache[degree] = None
            return None
        shape_basis = self._shape_monomials(degree)
        col_of = {e: j for j, e in enumerate(shape_basis)}
        weights = [self.ambient.monomial_weight(e) for e in shape_basis]
        rows = []
        for rel in self.generic_relations:
            rdeg = rel.total_degree()
            for mono in self._shape_monomials(max(degree - rdeg, 0)):
                prod = self._shape_normal(
                    rel * TateElement.monomial(self.ambient, mono, 1)
                )
                if prod.total_degree() > degree:
                    continue
                row = [Fraction(0)] * len(shape_basis)
                ok = True
                for e, c in prod.terms.items():
                    j = col_of.get(e)
                    if j is None:
                        ok = False
                        break
                    row[j] = c
                if ok and any(row):
                    rows.append(row)
        if not rows:
            self._generic_cache[degree] = None
            return None
        row_weights = [NormValue.one()] * len(rows)
        elim = NormAwareElimination(self.field, rows, row_weights, weights)
        self._generic_cache[degree] = elim
        return elim

    def monomial_basis(self, degree: int) -> list[Exponent]:
        """Canonical normal-form monomials of total degree <= degree."""
        if self.is_zero_algebra:
            return []
        if degree in self._basis_cache:
            return self._basis_cache[degree]
        shape_basis = self._shape_monomials(degree)
        elim = self._generic_elimination(degree)
        if elim is not None:
            pivot_cols = {j for _, j in elim.pivots}
            basis = [e for j, e in enumerate(shape_basis) if j not in pivot_cols]
        else:
            basis = shape_basis
        self._basis_cache[degree] = basis
        return basis

    def normal_form(self, w: TateElement, degree: int) -> TateElement:
        if w.ambient != self.ambient:
            raise PresentationError("element outside the ambient algebra")
        if self.is_zero_algebra:
            return TateElement.zero(self.ambient)
        out = self._shape_normal(w)
        elim = self._generic_elimination(degree)
        if elim is None or out.is_zero:
            return out
        if out.total_degree() > degree:
            raise PresentationError(
                f"degree {out.total_degree()} exceeds truncation {degree}"
            )
        shape_basis = self._shape_monomials(degree)
        col_of = {e: j for j, e in enumerate(shape_basis)}
        vec = [Fraction(0)] * len(shape_basis)
        for e, c in out.terms.items():
            vec[col_of[e]] = c
        # Eliminate pivot coordinates against the (already Jordan-reduced)
        # relation rows; each subtraction stays inside degree <= D.
        for i, j in elim.pivots:
            if vec[j] != 0:
                row = elim.row(i)
                f = vec[j] / row[j]
                for jj, v in row.items():
                    vec[jj] -= f * v
        terms = {e: c for e, c in zip(shape_basis, vec) if c != 0}
        return TateElement(self.ambient, terms)

    def reduce(self, w: TateElement, degree: int) -> ReducedForm:
        if degree < w.total_degree():
            raise PresentationError(
                f"truncation degree {degree} below the degree of the element"
            )
        rep = self.normal_form(w, degree)
        return ReducedForm(rep, rep.gauss_norm(), degree)

    # -- structure maps ------------------------------------------------------

    def is_over(self, base: "AffinoidPresentation") -> bool:
        """True when this presentation visibly extends `base`."""
        n = base.ambient.nvars
        if self.ambient.names[:n] != base.ambient.names:
            return False
        if self.ambient.radii[:n] != base.ambient.radii:
            return False
        if self.ambient.field != base.ambient.field:
            return False
        mapped = tuple(
            rel.in_ambient(self.ambient) for rel in base.relations
        )
        return self.relations[: len(mapped)] == mapped

    def include(self, w: TateElement) -> TateElement:
        """Structure-map image of an element of a smaller ambient."""
        return w.in_ambient(self.ambient)

    def __repr__(self) -> str:
        rels = ", ".join(str(r) for r in self.relations)
        return f"{self.ambient}/({rels})"


# -- constructors ------------------------------------------------------------


def free_affinoid(ambient: Polyradius) -> AffinoidPresentation:
    return AffinoidPresentation(ambient)


def quotient(
    base: AffinoidPresentation, extra_relations: Sequence[TateElement]
) -> AffinoidPresentation:
    """The cyclic module / quotient algebra A/(extra) over A."""
    rels = base.relations + tuple(
        r.in_ambient(base.ambient) for r in extra_relations
    )
    return AffinoidPresentation(base.ambient, rels)


def _append_localization(
    base: AffinoidPresentation,
    relator_specs: Sequence[tuple[TateElement, NormValue, str]],
    kind: str,
    inequalities: Sequence[DomainInequality],
    var_prefix: str = "T",
) -> AffinoidPresentation:
    """Shared construction: extend the ambient and install relators.

    Each relator spec is (partner, radius, shape): shape "weierstrass"
    installs T - partner, shape "laurent" installs partner*T - 1.
    """
    names = list(base.ambient.names)
    relators = []
    new_names: list[str] = []
    new_radii: list[NormValue] = []
    for partner, radius, shape in relator_specs:
        var = fresh_name(var_prefix, names + new_names)
        new_names.append(var)
        new_radii.append(radius)
        relators.append((var, partner, radius, shape))
    ambient = base.ambient.extend(new_names, new_radii)
    relations = [rel.in_ambient(ambient) for rel in base.relations]
    built: list[Relator] = []
    for var, partner, radius, shape in relators:
        t = TateElement.variable(ambient, var)
        p = partner.in_ambient(ambient)
        if shape == "weierstrass":
            element = t - p
        elif shape == "laurent":
            element = p * t - TateElement.constant(ambient, 1)
        else:
            raise PresentationError(f"unknown relator shape {shape!r}")
        relations.append(element)
        built.append(Relator(element, var, radius, shape))
    data = LocalizationData(
        kind=kind,
        base=base,
        relators=tuple(built),
        inequalities=tuple(inequalities),
    )
    return AffinoidPresentation(ambient, relations, localization=data)


def weierstrass_localization(
    base: AffinoidPresentation,
    f: Sequence[TateElement],
    r: Sequence[NormValue],
) -> AffinoidPresentation:
    """A{T/r}/(T_i - f_i): the subdomain |f_i| <= r_i."""
    if len(f) != len(r):
        raise PresentationError("one radius per function required")
    specs = [(fi, ri, "weierstrass") for fi, ri in zip(f, r)]
    ineqs = [
        DomainInequality(fi, TateElement.constant(base.ambient, 1), ri)
        for fi, ri in zip(f, r)
    ]
    return _append_localization(base, specs, "weierstrass", ineqs)


def laurent_localization(
    base: AffinoidPresentation,
    f: Sequence[TateElement] = (),
    f_radii: Sequence[NormValue] = (),
    g: Sequence[TateElement] = (),
    g_radii: Sequence[NormValue] = (),
) -> AffinoidPresentation:
    """Laurent localization: |f_i| <= p_i and |g_j| >= 1/q_j.

    The g_j come with the norms q_j of their inverting variables S_j
    (relations g_j S_j - 1 at radius q_j).
    """
    one = TateElement.constant(base.ambient, 1)
    specs = [(fi, ri, "weierstrass") for fi, ri in zip(f, f_radii)]
    specs += [(gj, qj, "laurent") for gj, qj in zip(g, g_radii)]
    ineqs = [
        DomainInequality(fi, one, ri) for fi, ri in zip(f, f_radii)
    ] + [DomainInequality(one, gj, qj) for gj, qj in zip(g, g_radii)]
    return _append_localization(base, specs, "laurent", ineqs)


def rational_localization(
    base: AffinoidPresentation,
    f: Sequence[TateElement],
    g: TateElement,
    r: Sequence[NormValue],
    certificate: BezoutCertificate | None = None,
    epsilon: NormValue | None = None,
) -> AffinoidPresentation:
    """A{T/r}/(g T_i - f_i): the rational subdomain |f_i| <= r_i |g|.

    Admissibility is not decided here: the caller supplies g = 1
    (Weierstrass), g a bare generator variable (Laurent-type shape), or a
    Bezout certificate for (f_1..f_m, g) = 1.  With a certificate, a caller
    chosen spectral lower bound epsilon (|g| >= epsilon on the domain) is
    used to factor the localization as Laurent-then-Weierstrass, which is the
    shape the resolution machinery can certify.
    """
    if len(f) != len(r):
        raise PresentationError("one radius per function required")
    one = TateElement.constant(base.ambient, 1)
    if g == one:
        return weierstrass_localization(base, f, r)
    is_variable = len(g.terms) == 1 and set(g.terms.values()) == {Fraction(1)} and (
        g.total_degree() == 1
    )
    if not is_variable:
        if certificate is None:
            raise PresentationError(
                "rational localization needs g = 1, g a generator variable, "
                "or a Bezout certificate"
            )
        if not certificate.verify(f, g):
            raise PresentationError("Bezout certificate does not verify")
    if not f:
        # Pure inversion of g: a Laurent localization.
        radius = epsilon.inverse() if epsilon is not None else NormValue.one()
        return laurent_localization(base, g=[g], g_radii=[radius])
    if certificate is not None and epsilon is not None:
        # Laurent-then-Weierstrass factorization at the supplied epsilon.
        step = laurent_localization(base, g=[g], g_radii=[epsilon.inverse()])
        s_var = step.localization.relators[0].var
        s = TateElement.variable(step.ambient, s_var)
        fs = [fi.in_ambient(step.ambient) * s for fi in f]
        out = weierstrass_localization(step, fs, r)
        ineqs = tuple(
            [DomainInequality(fi, g, ri) for fi, ri in zip(f, r)]
        )
        out.localization = LocalizationData(
            kind="rational",
            base=step,
            relators=out.localization.relators,
            inequalities=ineqs,
        )
        return out
    # Raw presentation with relators g T_i - f_i; resolutions fall back to
    # the validity-checked multi-relator Koszul complex.
    names = list(base.ambient.names)
    new_names = []
    for _ in f:
        var = fresh_name("T", names + new_names)
        new_names.append(var)
    ambient = base.ambient.extend(new_names, list(r))
    relations = [rel.in_ambient(ambient) for rel in base.relations]
    relators = []
    for var, fi, ri in zip(new_names, f, r):
        element = g.in_ambient(ambient) * TateElement.variable(ambient, var) - fi.in_ambient(ambient)
        relations.append(element)
        relators.append(Relator(element, var, ri, "generic"))
    ineqs = tuple(DomainInequality(fi, g, ri) for fi, ri in zip(f, r))
    data = LocalizationData("rational", base, tuple(relators), ineqs)
    return AffinoidPresentation(
        ambient, relations, certificate=certificate, localization=data
    )


def tensor_over(
    a: AffinoidPresentation,
    b: AffinoidPresentation,
    c: AffinoidPresentation,
    rename_suffix: str | None = None,
) -> tuple[AffinoidPresentation, dict[str, str]]:
    """Pushout presentation of B (x)_A C; returns it and C's rename map."""
    if not b.is_over(a) or not c.is_over(a):
        raise PresentationError("both factors must be presented over the base")
    n = a.ambient.nvars
    names = list(b.ambient.names)
    radii = list(b.ambient.radii)
    rename: dict[str, str] = {}
    for name, radius in zip(c.ambient.names[n:], c.ambient.radii[n:]):
        new = (name + rename_suffix) if rename_suffix else name
        new = fresh_name(new, names)
        if new != name:
            rename[name] = new
        names.append(new)
        radii.append(radius)
    ambient = Polyradius(a.ambient.field, tuple(names), tuple(radii))
    relations = [rel.in_ambient(ambient) for rel in b.relations]
    for rel in c.relations[len(a.relations):]:
        relations.append(rel.in_ambient(ambient, rename))
    localization = None
    if c.localization is not None and c.localization.base is a:
        relators = tuple(
            Relator(
                rl.element.in_ambient(ambient, rename),
                rename.get(rl.var, rl.var),
                rl.radius,
                rl.shape,
            )
            for rl in c.localization.relators
        )
        localization = LocalizationData(
            kind=c.localization.kind,
            base=b,
            relators=relators,
            inequalities=(),
        )
    return AffinoidPresentation(ambient, relations, localization=localization), rename


def localization_chain(
    target: AffinoidPresentation, base: AffinoidPresentation
) -> tuple[Relator, ...] | None:
    """Relators presenting `target` as an iterated localization of `base`."""
    chain: list[Relator] = []
    node = target
    while node is not base:
        if node.localization is None:
            return None
        chain = list(node.localization.relators) + chain
        node = node.localization.base
    return tuple(chain)
