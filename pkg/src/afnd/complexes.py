"""Bounded complexes of affinoid modules, with truncation-degree homology.

A level of a complex is a finite sum of summands, each carrying an affinoid
presentation; its degree-D model is the weighted orthogonal space spanned by
the normal-form monomials of total degree <= D of each summand.  A
differential component from a source summand to a target summand acts by
pushing the element along a variable rename and multiplying by a fixed
coefficient, which covers both Koszul differentials (multiplication by a
relator) and restriction maps between localizations (coefficient 1, rename of
tensor variables).

All matrices are exact; images that overflow the requested degree enlarge the
target truncation instead of dropping terms.  "Homology vanishes at degree D"
therefore means: every cycle supported in degree <= D is the boundary of a
chain supported in degree <= D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from afnd.affinoid import AffinoidPresentation, Relator, localization_chain
from afnd.linalg import (
    NormAwareElimination,
    kernel_basis,
    reduce_against,
    sparse_rref,
    vector_norm,
)
from afnd.scalar import FieldSpec, NormValue, scalar_norm
from afnd.tate import Exponent, Polyradius, TateElement


@dataclass(frozen=True)
class Summand:
    algebra: AffinoidPresentation
    label: tuple


@dataclass(frozen=True)
class MapComponent:
    """w -> coeff * push(w), push renaming source variables into the target."""

    coeff: TateElement
    rename: Mapping[str, str] | None = None


@dataclass
class LevelBasis:
    entries: list[tuple[int, Exponent]]  # (summand index, exponent)
    weights: list[NormValue]
    truncation: int

    @property
    def dim(self) -> int:
        return len(self.entries)


@dataclass
class DifferentialMatrix:
    """d^n on degree-bounded bases: rows indexed by the target basis."""

    source: LevelBasis
    target: LevelBasis
    entries: list[list[Fraction]]


class ChainComplex:
    """levels[n] with differentials d^n: levels[n] -> levels[n+1]."""

    def __init__(
        self,
        field: FieldSpec,
        levels: Mapping[int, Sequence[Summand]],
        components: Mapping[int, Mapping[tuple[int, int], "MapComponent | Sequence[MapComponent]"]],
    ):
        self.field = field
        self.levels = {n: list(ss) for n, ss in levels.items()}
        # components[n][(target_summand, source_summand)] is a list: distinct
        # insertion maps between the same summands stay separate.
        self.components: dict[int, dict[tuple[int, int], list[MapComponent]]] = {}
        for n, cs in components.items():
            level_cs: dict[tuple[int, int], list[MapComponent]] = {}
            for key, comp in cs.items():
                level_cs[key] = (
                    [comp] if isinstance(comp, MapComponent) else list(comp)
                )
            self.components[n] = level_cs
        for n, cs in self.components.items():
            for (t, s) in cs:
                if n not in self.levels or n + 1 not in self.levels:
                    raise ValueError(f"differential d^{n} has no endpoints")
                if s >= len(self.levels[n]) or t >= len(self.levels[n + 1]):
                    raise ValueError(f"component index out of range at d^{n}")

    def degrees(self) -> list[int]:
        return sorted(self.levels)

    def level_basis(self, n: int, degree: int) -> LevelBasis:
        entries: list[tuple[int, Exponent]] = []
        weights: list[NormValue] = []
        for si, summand in enumerate(self.levels.get(n, [])):
            for e in summand.algebra.monomial_basis(degree):
                entries.append((si, e))
                weights.append(summand.algebra.ambient.monomial_weight(e))
        return LevelBasis(entries, weights, degree)

    def _image_elements(
        self, n: int, source: LevelBasis
    ) -> list[dict[int, TateElement]]:
        """Per source basis vector, its image split by target summand.

        Only the substitution/Laurent layers are applied here; the generic
        layer needs a degree bound and is applied by the caller.
        """
        comps = self.components.get(n, {})
        sources = self.levels[n]
        targets = self.levels[n + 1]
        out: list[dict[int, TateElement]] = []
        for si, e in source.entries:
            mono = TateElement.monomial(sources[si].algebra.ambient, e, 1)
            img: dict[int, TateElement] = {}
            for (t, s), comp_list in comps.items():
                if s != si:
                    continue
                alg = targets[t].algebra
                for comp in comp_list:
                    pushed = mono.in_ambient(alg.ambient, comp.rename)
                    raw = comp.coeff * pushed
                    val = alg._shape_normal(raw)
                    if not val.is_zero:
                        img[t] = img.get(t, TateElement.zero(alg.ambient)) + val
            out.append({t: v for t, v in img.items() if not v.is_zero})
        return out

    def matrix(self, n: int, degree: int) -> DifferentialMatrix:
        """d^n from the degree-<=degree source basis, exact."""
        source = self.level_basis(n, degree)
        images = self._image_elements(n, source)
        growth = degree
        for img in images:
            for v in img.values():
                growth = max(growth, v.total_degree())
        target = self.level_basis(n + 1, growth)
        col_of = {key: j for j, key in enumerate(target.entries)}
        entries = [
            [Fraction(0)] * source.dim for _ in range(target.dim)
        ]
        targets = self.levels[n + 1]
        for j, img in enumerate(images):
            for t, v in img.items():
                alg = targets[t].algebra
                nf = alg.normal_form(v, growth)
                for e, c in nf.terms.items():
                    entries[col_of[(t, e)]][j] = c
        return DifferentialMatrix(source, target, entries)

    def embed(
        self, n: int, coords: Sequence[Fraction], frm: LevelBasis, into: LevelBasis
    ) -> list[Fraction]:
        """Re-express a level-n vector on a larger-degree basis."""
        summands = self.levels[n]
        elems = {
            si: TateElement.zero(s.algebra.ambient)
            for si, s in enumerate(summands)
        }
        for c, (si, e) in zip(coords, frm.entries):
            if c:
                alg = summands[si].algebra
                elems[si] = elems[si] + TateElement.monomial(alg.ambient, e, c)
        col_of = {key: j for j, key in enumerate(into.entries)}
        out = [Fraction(0)] * into.dim
        for si, v in elems.items():
            nf = summands[si].algebra.normal_form(v, into.truncation)
            for e, c in nf.terms.items():
                out[col_of[(si, e)]] = c
        return out

    def verify_d_squared(self, degree: int) -> bool:
        """Exact check that consecutive differentials compose to zero."""
        degs = self.degrees()
        for n in degs:
            if n + 2 not in self.levels:
                continue
            m1 = self.matrix(n, degree)
            m2 = self.matrix(n + 1, m1.target.truncation)
            for j in range(m1.source.dim):
                col = [m1.entries[i][j] for i in range(m1.target.dim)]
                composed = [
                    sum(
                        (m2.entries[i][k] * col[k] for k in range(len(col))),
                        Fraction(0),
                    )
                    for i in range(m2.target.dim)
                ]
                if any(composed):
                    return False
        return True


@dataclass
class CycleWitness:
    """A representative cycle, one element per summand of its level."""

    degree: int
    parts: dict[int, TateElement]
    norm: NormValue


@dataclass
class HomologyReport:
    degree: int
    truncation: int
    cycle_rank: int
    rank: int
    is_zero: bool
    witnesses: list[CycleWitness]


def _cycle_to_witness(
    cx: ChainComplex, n: int, coords: Sequence[Fraction], basis: LevelBasis
) -> CycleWitness:
    summands = cx.levels[n]
    parts: dict[int, TateElement] = {}
    for c, (si, e) in zip(coords, basis.entries):
        if c:
            alg = summands[si].algebra
            term = TateElement.monomial(alg.ambient, e, c)
            parts[si] = parts.get(si, TateElement.zero(alg.ambient)) + term
    norm = vector_norm(cx.field, list(coords), basis.weights)
    return CycleWitness(n, parts, norm)


def _cycles(cx: ChainComplex, n: int, degree: int) -> tuple[LevelBasis, list[list[Fraction]]]:
    basis = cx.level_basis(n, degree)
    if n in cx.components:
        mout = cx.matrix(n, degree)
        cycles = kernel_basis(mout.entries) if mout.entries else [
            [Fraction(1) if i == j else Fraction(0) for i in range(basis.dim)]
            for j in range(basis.dim)
        ]
    else:
        cycles = [
            [Fraction(1) if i == j else Fraction(0) for i in range(basis.dim)]
            for j in range(basis.dim)
        ]
    return basis, cycles


def homology(cx: ChainComplex, n: int, degree: int) -> HomologyReport:
    basis, cycles = _cycles(cx, n, degree)
    if not cycles:
        return HomologyReport(n, degree, 0, 0, True, [])
    if n - 1 not in cx.components:
        witnesses = [_cycle_to_witness(cx, n, z, basis) for z in cycles]
        return HomologyReport(n, degree, len(cycles), len(cycles), False, witnesses)
    min_ = cx.matrix(n - 1, degree)
    # The boundary space, as sparse row vectors over the level-n basis.
    boundary_cols = [
        {i: min_.entries[i][j] for i in range(min_.target.dim) if min_.entries[i][j]}
        for j in range(min_.source.dim)
    ]
    span_rows, span_pivots = sparse_rref(boundary_cols)
    obst_rows: list[dict] = []
    obst_pivots: list[int] = []
    witnesses: list[CycleWitness] = []
    for z in cycles:
        zed = cx.embed(n, z, basis, min_.target)
        rem = reduce_against(
            {i: v for i, v in enumerate(zed) if v}, span_rows, span_pivots
        )
        rem = reduce_against(rem, obst_rows, obst_pivots)
        if rem:
            c = min(rem)
            pv = rem[c]
            obst_rows.append({j: v / pv for j, v in rem.items()})
            obst_pivots.append(c)
            witnesses.append(_cycle_to_witness(cx, n, z, basis))
    quotient_rank = len(obst_rows)
    return HomologyReport(
        n, degree, len(cycles), quotient_rank, quotient_rank == 0, witnesses
    )


@dataclass
class DegreeVerdict:
    degree: int
    exact: bool
    homology_rank: int
    constant: NormValue
    counterexample: Optional[CycleWitness]


@dataclass
class ExactnessWitness:
    truncation: int
    verdicts: list[DegreeVerdict]
    exact: bool
    constant: NormValue


def strict_exactness(
    cx: ChainComplex, degree: int, positions: Sequence[int] | None = None
) -> ExactnessWitness:
    """Exactness at interior degrees, with certified preimage-norm constants.

    At each position the reported constant C satisfies: every cycle that is a
    boundary has a preimage of norm <= C times the cycle norm.  C is the
    inverse of the smallest pivot score of the incoming differential, which
    bounds all norm-minimal preimages at once; positions with no cycles
    report C = 1.
    """
    degs = cx.degrees()
    if positions is None:
        positions = [n for n in degs if n - 1 in cx.components]
    verdicts: list[DegreeVerdict] = []
    overall = NormValue.one()
    exact = True
    for n in positions:
        rep = homology(cx, n, degree)
        if rep.cycle_rank == 0:
            verdicts.append(
                DegreeVerdict(n, True, 0, NormValue.one(), None)
            )
            continue
        min_ = cx.matrix(n - 1, degree)
        elim = NormAwareElimination(
            cx.field, min_.entries, min_.target.weights, min_.source.weights
        )
        s = elim.smallest_score()
        constant = s.inverse() if not s.is_zero else NormValue.one()
        if rep.is_zero:
            verdicts.append(DegreeVerdict(n, True, 0, constant, None))
            if constant > overall:
                overall = constant
        else:
            exact = False
            verdicts.append(
                DegreeVerdict(n, False, rep.rank, constant, rep.witnesses[0])
            )
    return ExactnessWitness(degree, verdicts, exact, overall)


# -- Koszul resolutions ------------------------------------------------------


def koszul_complex(
    algebra: AffinoidPresentation, relators: Sequence[TateElement]
) -> ChainComplex:
    """K(algebra; f_1..f_m): ranks C(m,k) in degrees -m..0.

    Summand labels are the index subsets; d(e_S) = sum over i in S of
    (-1)^(position of i in S) f_i e_{S minus i}.
    """
    m = len(relators)
    for f in relators:
        if f.ambient != algebra.ambient:
            raise ValueError("relator outside the ambient algebra")
    levels: dict[int, list[Summand]] = {}
    index_of: dict[int, dict[tuple, int]] = {}
    for k in range(m + 1):
        subsets = list(combinations(range(m), k))
        levels[-k] = [Summand(algebra, s) for s in subsets]
        index_of[-k] = {s: i for i, s in enumerate(subsets)}
    components: dict[int, dict[tuple[int, int], MapComponent]] = {}
    for k in range(1, m + 1):
        comps: dict[tuple[int, int], MapComponent] = {}
        for s_idx, summand in enumerate(levels[-k]):
            subset = summand.label
            for pos, i in enumerate(subset):
                smaller = tuple(x for x in subset if x != i)
                t_idx = index_of[-k + 1][smaller]
                coeff = relators[i] if pos % 2 == 0 else -relators[i]
                comps[(t_idx, s_idx)] = MapComponent(coeff)
        components[-k] = comps
    return ChainComplex(algebra.field, levels, components)


@dataclass
class KoszulResolution:
    """A resolution of `target` by free modules over its ambient extension.

    `shape_certified` is True when every relator is of a shape for which the
    one-step resolutions are known to compose (T - f, or g S - 1); otherwise
    verdicts built on this resolution must first pass `validity`.
    """

    complex: ChainComplex
    base: AffinoidPresentation
    target: AffinoidPresentation
    free_extension: AffinoidPresentation
    relator_elements: tuple[TateElement, ...]
    shape_certified: bool

    def validity(self, degree: int) -> bool:
        """Negative homology vanishes at the truncation degree.

        The degree-0 homology is the target presentation itself by
        construction, so this is the only obstruction.
        """
        for n in self.complex.degrees():
            if n < 0 and not homology(self.complex, n, degree).is_zero:
                return False
        return True


def resolution_of(
    target: AffinoidPresentation, base: AffinoidPresentation
) -> KoszulResolution | None:
    """Koszul resolution of an (iterated) localization over its base."""
    chain = localization_chain(target, base)
    if chain is None:
        return None
    free_ext = AffinoidPresentation(
        target.ambient,
        [rel.in_ambient(target.ambient) for rel in base.relations],
    )
    relators = tuple(rl.element.in_ambient(target.ambient) for rl in chain)
    certified = all(rl.shape in ("weierstrass", "laurent") for rl in chain)
    cx = koszul_complex(free_ext, relators)
    return KoszulResolution(cx, base, target, free_ext, relators, certified)


def quotient_resolution(
    base: AffinoidPresentation, elements: Sequence[TateElement]
) -> KoszulResolution:
    """Koszul complex of arbitrary elements of the base itself.

    Resolves base/(elements) only when the elements form a regular sequence;
    callers must gate on `validity` before trusting the homology.
    """
    from afnd.affinoid import quotient

    cx = koszul_complex(base, elements)
    return KoszulResolution(
        cx, base, quotient(base, elements), base, tuple(elements), False
    )


def derived_tensor(
    module: AffinoidPresentation, res: KoszulResolution
) -> tuple[ChainComplex, dict[str, str]]:
    """module (x)^L_base target, modeled as module (x) (Koszul levels).

    `module` must be presented over the resolution base.  Returns the
    complex and the rename applied to the resolution's fresh variables.
    """
    from afnd.affinoid import tensor_over

    pushout, rename = tensor_over(res.base, module, res.free_extension)
    relators = tuple(
        f.in_ambient(pushout.ambient, rename) for f in res.relator_elements
    )
    return koszul_complex(pushout, relators), rename
