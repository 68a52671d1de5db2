"""Exact linear algebra over the rationals, with ultrametric pivoting.

Two elimination routines are used throughout the package:

* plain reduced row echelon form over Fraction entries, with the first-nonzero
  pivot rule, for ranks and kernels (any pivot rule gives the same answers;
  this one is deterministic);
* norm-aware Gauss-Jordan elimination for everything that certifies a norm:
  pivots are chosen to maximize |entry| * row_weight / col_weight, ties broken
  by smallest row index then smallest column index.  For weighted orthogonal
  spaces over a non-Archimedean field the pivot scores are the exact singular
  values of the map, and back-substituted preimages are norm-minimal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from afnd.scalar import FieldSpec, NormValue, padic_valuation, scalar_norm

Row = list[Fraction]


def vector_norm(
    field: FieldSpec, coords: Sequence[Fraction], weights: Sequence[NormValue]
) -> NormValue:
    """max_i |c_i| * w_i, the norm in a weighted orthogonal space."""
    best = NormValue.zero()
    for c, w in zip(coords, weights):
        if c:
            v = scalar_norm(field, c) * w
            if v > best:
                best = v
    return best


SparseRow = dict[int, Fraction]


def to_sparse(matrix: Sequence[Sequence[Fraction]]) -> list[SparseRow]:
    return [
        {j: Fraction(x) for j, x in enumerate(row) if x} for row in matrix
    ]


def sparse_rref(rows: Sequence[SparseRow]) -> tuple[list[SparseRow], list[int]]:
    """Fully reduced echelon form of sparse rows, pivots normalized to 1.

    Pivot rows are chosen by fewest nonzeros first (then input order) to
    limit fill-in; the output is sorted by pivot column, so the result is
    canonical for a given input order.
    """
    work = [dict(r) for r in rows if r]
    done: list[tuple[int, SparseRow]] = []  # (pivot column, row)
    while work:
        best = min(range(len(work)), key=lambda i: len(work[i]))
        row = work.pop(best)
        c = min(row)
        pv = row[c]
        row = {j: v / pv for j, v in row.items()}
        for other_list in (work, None):
            if other_list is None:
                targets = [r for _, r in done]
            else:
                targets = other_list
            for i, other in enumerate(targets):
                f = other.get(c)
                if f is None:
                    continue
                for j, v in row.items():
                    nv = other.get(j, Fraction(0)) - f * v
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
        done.append((c, row))
        work = [r for r in work if r]
    done.sort(key=lambda t: t[0])
    return [r for _, r in done], [c for c, _ in done]


def reduce_against(vec: SparseRow, rows: Sequence[SparseRow], pivots: Sequence[int]) -> SparseRow:
    """Remainder of a sparse vector modulo a reduced row set."""
    out = dict(vec)
    for c, row in zip(pivots, rows):
        f = out.get(c)
        if f:
            for j, v in row.items():
                nv = out.get(j, Fraction(0)) - f * v
                if nv:
                    out[j] = nv
                else:
                    out.pop(j, None)
    return out


def rref(matrix: Sequence[Sequence[Fraction]]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; returns (dense rows, pivot column indices)."""
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    srows, pivots = sparse_rref(to_sparse(matrix))
    dense = []
    for row in srows:
        out = [Fraction(0)] * ncols
        for j, v in row.items():
            out[j] = v
        dense.append(out)
    return dense, pivots


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(sparse_rref(to_sparse(matrix))[1])


def kernel_basis(matrix: Sequence[Sequence[Fraction]]) -> list[Row]:
    """Basis of {x : A x = 0}, one vector per free column, deterministic."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = sparse_rref(to_sparse(matrix))
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v = rows[r].get(fc)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


class NormAwareElimination:
    """Greedy ultrametric Gauss-Jordan factorization of one exact matrix.

    The matrix represents a map between weighted orthogonal spaces:
    col_weights on the domain, row_weights on the codomain.  Pivots maximize
    |entry| * row_weight / col_weight, ties broken by smallest row index then
    smallest column index.  After construction, `pivot_scores` holds the
    singular values in the greedy (non-increasing) order and `solve` produces
    norm-minimal preimages.

    Rows are kept sparse.  When the field norm and all the weights involve a
    single prime, scores are compared through their exponents; otherwise the
    factored norm values are compared directly.  Both paths choose the same
    pivots.
    """

    def __init__(
        self,
        field: FieldSpec,
        matrix: Sequence[Sequence[Fraction]],
        row_weights: Sequence[NormValue],
        col_weights: Sequence[NormValue],
    ):
        self.field = field
        self.srows: list[SparseRow] = [
            {j: Fraction(x) for j, x in enumerate(row) if x} for row in matrix
        ]
        self.nrows = len(self.srows)
        self.ncols = len(matrix[0]) if self.nrows else 0
        self.row_weights = list(row_weights)
        self.col_weights = list(col_weights)
        if len(self.row_weights) != self.nrows or (
            self.nrows and len(self.col_weights) != self.ncols
        ):
            raise ValueError("weight lists must match the matrix shape")
        self._setup_scoring()
        # transform accumulates the row operations: transform @ A = reduced rows
        self.transform: list[SparseRow] = [
            {i: Fraction(1)} for i in range(self.nrows)
        ]
        self.pivots: list[tuple[int, int]] = []
        self.pivot_scores: list[NormValue] = []
        self._eliminate()

    def _setup_scoring(self) -> None:
        primes: set[int] = set()
        if self.field.mode == "p-adic":
            primes.add(self.field.p)
        for w in self.row_weights + self.col_weights:
            primes.update(w.exponents)
        if len(primes) <= 1:
            self._prime = primes.pop() if primes else 2
            zero = Fraction(0)
            self._row_exp = [
                w.exponents.get(self._prime, zero) for w in self.row_weights
            ]
            self._col_exp = [
                w.exponents.get(self._prime, zero) for w in self.col_weights
            ]
        else:
            self._prime = None

    def _score_key(self, i: int, j: int, entry: Fraction):
        """A totally ordered score; exponent of the single prime if possible."""
        if self._prime is not None:
            e = self._row_exp[i] - self._col_exp[j]
            if self.field.mode == "p-adic":
                e -= padic_valuation(entry, self.field.p)
            return e
        return (
            scalar_norm(self.field, entry)
            * self.row_weights[i]
            / self.col_weights[j]
        )

    def _score_to_norm(self, key) -> NormValue:
        if self._prime is not None:
            return NormValue.prime_power(self._prime, key) if key else NormValue.one()
        return key

    def _best_of_row(self, i: int, used_cols: set[int]):
        best = None
        best_col = None
        for j, entry in self.srows[i].items():
            if j in used_cols:
                continue
            s = self._score_key(i, j, entry)
            if best is None or s > best or (s == best and j < best_col):
                best, best_col = s, j
        return best, best_col

    def _eliminate(self) -> None:
        used_cols: set[int] = set()
        active = [i for i in range(self.nrows) if self.srows[i]]
        cache = {i: self._best_of_row(i, used_cols) for i in active}
        while True:
            pick = None
            pick_score = None
            for i in active:
                s, _ = cache[i]
                if s is None:
                    continue
                if pick is None or s > pick_score:
                    pick, pick_score = i, s
            if pick is None:
                break
            i = pick
            j = cache[i][1]
            used_cols.add(j)
            active.remove(i)
            self.pivots.append((i, j))
            self.pivot_scores.append(self._score_to_norm(pick_score))
            pv = self.srows[i][j]
            row = self.srows[i]
            trow = self.transform[i]
            touched = [
                i2 for i2 in range(self.nrows)
                if i2 != i and j in self.srows[i2]
            ]
            for i2 in touched:
                f = self.srows[i2][j] / pv
                tgt = self.srows[i2]
                for jj, v in row.items():
                    nv = tgt.get(jj, Fraction(0)) - f * v
                    if nv:
                        tgt[jj] = nv
                    else:
                        tgt.pop(jj, None)
                ttgt = self.transform[i2]
                for jj, v in trow.items():
                    nv = ttgt.get(jj, Fraction(0)) - f * v
                    if nv:
                        ttgt[jj] = nv
                    else:
                        ttgt.pop(jj, None)
            refresh = set(touched) & set(active)
            refresh.update(
                i2 for i2 in active if cache[i2][1] == j
            )
            for i2 in refresh:
                cache[i2] = self._best_of_row(i2, used_cols)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def row(self, i: int) -> SparseRow:
        return self.srows[i]

    def smallest_score(self) -> NormValue:
        return self.pivot_scores[-1] if self.pivot_scores else NormValue.zero()

    def apply_transform(self, b: Sequence[Fraction]) -> Row:
        out = []
        for row in self.transform:
            total = Fraction(0)
            for k, t in row.items():
                if b[k]:
                    total += t * b[k]
            out.append(total)
        return out

    def solve(self, b: Sequence[Fraction]) -> Row | None:
        """One solution of A x = b (free coordinates zero), or None."""
        if len(b) != self.nrows:
            raise ValueError("right-hand side has the wrong length")
        tb = self.apply_transform(b)
        pivot_rows = {i for i, _ in self.pivots}
        for i in range(self.nrows):
            if i not in pivot_rows and tb[i] != 0:
                return None
        x = [Fraction(0)] * self.ncols
        for i, j in self.pivots:
            x[j] = tb[i] / self.srows[i][j]
        return x
