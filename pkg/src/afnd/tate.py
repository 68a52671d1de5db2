"""Tate algebras on polydiscs of factored polyradius.

Elements are finitely supported polynomials over the base field, tagged with
their ambient polyradius.  Polynomials are dense in the full algebra of
convergent series, and every downstream verdict is certified at a truncation
degree, so series tails never enter any statement made by this package.

Exponent vectors are ordered grevlex (total degree, then reversed-lexicographic
tiebreak on variable index) for canonical printing and deterministic
reduction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from afnd.scalar import FieldSpec, NormValue, Rational, max_norm, scalar_norm

Exponent = tuple[int, ...]


def grevlex_key(exponent: Exponent):
    """Sort key: ascending total degree, grevlex within a degree."""
    return (sum(exponent), tuple(-e for e in reversed(exponent)))


@dataclass(frozen=True)
class Polyradius:
    """Named variables with positive radii: the ambient algebra k{r^-1 x}."""

    field: FieldSpec
    names: tuple[str, ...]
    radii: tuple[NormValue, ...]

    def __post_init__(self) -> None:
        if len(self.names) != len(set(self.names)):
            raise ValueError(f"duplicate variable names in {self.names}")
        if len(self.names) != len(self.radii):
            raise ValueError("one radius per variable required")
        for r in self.radii:
            if r.is_zero:
                raise ValueError("radii must be positive")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in {self.names}") from None

    def radius_of(self, name: str) -> NormValue:
        return self.radii[self.index(name)]

    def monomial_weight(self, exponent: Exponent) -> NormValue:
        w = NormValue.one()
        for r, e in zip(self.radii, exponent):
            if e:
                w = w * r**e
        return w

    def extend(self, names: Sequence[str], radii: Sequence[NormValue]) -> "Polyradius":
        return Polyradius(self.field, self.names + tuple(names), self.radii + tuple(radii))

    def restrict(self, keep: Sequence[str]) -> "Polyradius":
        idx = [self.index(n) for n in keep]
        return Polyradius(
            self.field,
            tuple(self.names[i] for i in idx),
            tuple(self.radii[i] for i in idx),
        )

    def __str__(self) -> str:
        inner = ", ".join(f"{n}:{r}" for n, r in zip(self.names, self.radii))
        return f"{self.field}{{{inner}}}"


class TateElement:
    """A polynomial representative of an element of the ambient Tate algebra."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: Polyradius, terms: Mapping[Exponent, Rational]):
        self.ambient = ambient
        cleaned: dict[Exponent, Fraction] = {}
        for exponent, c in terms.items():
            exponent = tuple(exponent)
            if len(exponent) != ambient.nvars or any(e < 0 for e in exponent):
                raise ValueError(f"bad exponent {exponent} for {ambient}")
            c = Fraction(c)
            if c != 0:
                cleaned[exponent] = cleaned.get(exponent, Fraction(0)) + c
        self.terms = {e: c for e, c in cleaned.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ambient: Polyradius) -> "TateElement":
        return TateElement(ambient, {})

    @staticmethod
    def constant(ambient: Polyradius, c: Rational) -> "TateElement":
        return TateElement(ambient, {(0,) * ambient.nvars: c})

    @staticmethod
    def variable(ambient: Polyradius, name: str) -> "TateElement":
        exponent = [0] * ambient.nvars
        exponent[ambient.index(name)] = 1
        return TateElement(ambient, {tuple(exponent): 1})

    @staticmethod
    def monomial(ambient: Polyradius, exponent: Exponent, c: Rational = 1) -> "TateElement":
        return TateElement(ambient, {tuple(exponent): c})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ambient.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]))

    def uses(self, name: str) -> bool:
        i = self.ambient.index(name)
        return any(e[i] for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check_same_ambient(self, other: "TateElement") -> None:
        if self.ambient != other.ambient:
            raise ValueError(
                f"ambient mismatch: {self.ambient} vs {other.ambient}"
            )

    def __add__(self, other: "TateElement") -> "TateElement":
        self._check_same_ambient(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return TateElement(self.ambient, terms)

    def __neg__(self) -> "TateElement":
        return TateElement(self.ambient, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "TateElement") -> "TateElement":
        return self + (-other)

    def __mul__(self, other: "TateElement") -> "TateElement":
        self._check_same_ambient(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return TateElement(self.ambient, terms)

    def scale(self, c: Rational) -> "TateElement":
        c = Fraction(c)
        return TateElement(self.ambient, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "TateElement":
        if k < 0:
            raise ValueError("negative power")
        out = TateElement.constant(self.ambient, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TateElement)
            and self.ambient == other.ambient
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ambient, tuple(self.sorted_terms())))

    # -- norms and evaluation ---------------------------------------------

    def gauss_norm(self) -> NormValue:
        field = self.ambient.field
        return max_norm(
            scalar_norm(field, c) * self.ambient.monomial_weight(e)
            for e, c in self.terms.items()
        )

    def gauss_seminorm(self, rho: Sequence[NormValue]) -> NormValue:
        """The Gauss-point seminorm max |a_I| rho^I, for 0 < rho <= r."""
        if len(rho) != self.ambient.nvars:
            raise ValueError("one radius per variable required")
        for s, r in zip(rho, self.ambient.radii):
            if s.is_zero or s > r:
                raise ValueError(f"radius {s} outside the ambient polydisc")
        field = self.ambient.field
        best = NormValue.zero()
        for e, c in self.terms.items():
            w = scalar_norm(field, c)
            for s, k in zip(rho, e):
                if k:
                    w = w * s**k
            if w > best:
                best = w
        return best

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        if len(point) != self.ambient.nvars:
            raise ValueError("one coordinate per variable required")
        field = self.ambient.field
        for x, r in zip(point, self.ambient.radii):
            if scalar_norm(field, x) > r:
                raise ValueError(f"point coordinate {x} outside the polydisc")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    # -- reshaping ---------------------------------------------------------

    def in_ambient(
        self, ambient: Polyradius, rename: Mapping[str, str] | None = None
    ) -> "TateElement":
        """Push the element into a larger ambient, optionally renaming."""
        rename = rename or {}
        positions = []
        for name in self.ambient.names:
            positions.append(ambient.index(rename.get(name, name)))
        terms: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            new = [0] * ambient.nvars
            for pos, k in zip(positions, e):
                new[pos] += k
            new_t = tuple(new)
            terms[new_t] = terms.get(new_t, Fraction(0)) + c
        return TateElement(ambient, terms)

    def substitute(self, name: str, replacement: "TateElement") -> "TateElement":
        """Exact substitution of one variable by an element of the same ambient."""
        self._check_same_ambient(replacement)
        i = self.ambient.index(name)
        powers: dict[int, TateElement] = {0: TateElement.constant(self.ambient, 1)}
        out = TateElement.zero(self.ambient)
        for e, c in self.sorted_terms():
            k = e[i]
            if k not in powers:
                kk = max(powers)
                acc = powers[kk]
                while kk < k:
                    acc = acc * replacement
                    kk += 1
                    powers[kk] = acc
            rest = list(e)
            rest[i] = 0
            out = out + powers[k] * TateElement.monomial(self.ambient, tuple(rest), c)
        return out

    def recenter(self, center: Sequence[Rational]) -> "TateElement":
        """Exact shift x_i -> x_i + c_i (used for Gauss points off the origin)."""
        out = self
        ambient = self.ambient
        for name, c in zip(ambient.names, center):
            c = Fraction(c)
            if c != 0:
                shift = TateElement.variable(ambient, name) + TateElement.constant(ambient, c)
                out = out.substitute(name, shift)
        return out

    # -- printing / parsing ------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(self.ambient.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    __repr__ = __str__


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)"
    r"|(?P<op>[-+*^()]))"
)


class ElementSyntaxError(ValueError):
    pass


def parse_element(text: str, ambient: Polyradius) -> TateElement:
    """Parse "5 + 3*x^2*y - 1/5*z" into a TateElement."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ElementSyntaxError(f"bad character at {text[pos:]!r}")
            break
        pos = m.end()
        for kind in ("number", "name", "op"):
            if m.group(kind) is not None:
                tokens.append((kind, m.group(kind)))
                break
    tokens.append(("end", ""))

    idx = 0

    def peek() -> tuple[str, str]:
        return tokens[idx]

    def advance() -> tuple[str, str]:
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_sum() -> TateElement:
        out = parse_signed()
        while peek() == ("op", "+") or peek() == ("op", "-"):
            _, op = advance()
            term = parse_signed()
            out = out + term if op == "+" else out - term
        return out

    def parse_signed() -> TateElement:
        sign = 1
        while peek() in (("op", "-"), ("op", "+")):
            if advance()[1] == "-":
                sign = -sign
        term = parse_product()
        return term if sign == 1 else -term

    def parse_product() -> TateElement:
        out = parse_power()
        while peek()[0] in ("number", "name") or peek() in (("op", "*"), ("op", "(")):
            if peek() == ("op", "*"):
                advance()
            out = out * parse_power()
        return out

    def parse_power() -> TateElement:
        base = parse_atom()
        if peek() == ("op", "^"):
            advance()
            kind, val = advance()
            if kind != "number" or "/" in val:
                raise ElementSyntaxError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def parse_atom() -> TateElement:
        kind, val = advance()
        if kind == "number":
            return TateElement.constant(ambient, Fraction(val))
        if kind == "name":
            try:
                return TateElement.variable(ambient, val)
            except KeyError:
                raise ElementSyntaxError(
                    f"unknown variable {val!r}"
                ) from None
        if (kind, val) == ("op", "("):
            inner = parse_sum()
            if advance() != ("op", ")"):
                raise ElementSyntaxError("missing closing parenthesis")
            return inner
        raise ElementSyntaxError(f"unexpected token {val!r}")

    out = parse_sum()
    if peek()[0] != "end":
        raise ElementSyntaxError(f"trailing input at {peek()[1]!r}")
    return out


def fresh_name(base: str, taken: Iterable[str]) -> str:
    """Deterministic rename on collision: append primes."""
    taken = set(taken)
    name = base
    while name in taken:
        name += "'"
    return name


def tensor_free(t1: Polyradius, t2: Polyradius) -> tuple[Polyradius, dict[str, str]]:
    """Completed tensor product of free algebras: the union of variables.

    Returns the joint polyradius and the rename map applied to t2's names.
    """
    if t1.field != t2.field:
        raise ValueError("tensor over different base fields")
    names = list(t1.names)
    radii = list(t1.radii)
    rename: dict[str, str] = {}
    for name, r in zip(t2.names, t2.radii):
        new = fresh_name(name, names)
        if new != name:
            rename[name] = new
        names.append(new)
        radii.append(r)
    return Polyradius(t1.field, tuple(names), tuple(radii)), rename
