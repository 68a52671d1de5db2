"""Scenario runner: declarative verification files and deterministic reports.

A scenario file is line oriented.  Blank lines and `#` comments are ignored.
Multi-line constructs open with a header and close with `end`:

    scenario unit-disk
    degree 12
    field p-adic 5

    algebra A
      var x 1
    end

    localize V1 of A
      bound x 5^-1          # |x| <= 5^-1
    end

    localize V2 of A
      invert x 5            # |x| >= 5^-1 (inverting variable has radius 5)
    end

    module M of A
      relation x
    end

    check disk-hoepi hoepi A V1
    check acyclic cech A 2 V1 V2
    check points cover A V1 V2
    check fiber transversal A M V2
    check norms norm-table A
      element 5 + x^2
    end

Checks run in declaration order and the JSON report lists them in that
order.  Reports contain no timestamps or timings, so two runs on the same
input produce byte-identical output.  The exit status is 0 exactly when
every check verdict is holds / exact / covered / ok.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass, field
from typing import Optional

from afnd.affinoid import (
    AffinoidPresentation,
    free_affinoid,
    laurent_localization,
    quotient,
    weierstrass_localization,
)
from afnd.cech import ALTERNATING, CoverData, acyclicity_check
from afnd.complexes import CycleWitness
from afnd.homotopy import check_transversal, is_epimorphism, is_homotopy_epi
from afnd.scalar import FieldSpec, NormValue
from afnd.spectrum import cover_check, domain_of
from afnd.tate import ElementSyntaxError, Polyradius, TateElement, parse_element

log = logging.getLogger("afnd")

PASSING = {"holds", "exact", "covered", "ok"}


class ScenarioError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class CheckSpec:
    name: str
    kind: str
    args: list[str]
    elements: list[str] = field(default_factory=list)
    line: int = 0


@dataclass
class Scenario:
    name: str
    field_spec: FieldSpec
    degree: int
    algebras: dict[str, AffinoidPresentation]
    checks: list[CheckSpec]


# -- parsing ---------------------------------------------------------------


def _tokens(raw: str) -> list[str]:
    return raw.split("#", 1)[0].split()


def _parse_radius(text: str, lineno: int) -> NormValue:
    try:
        return NormValue.parse(text)
    except (ValueError, ArithmeticError) as exc:
        raise ScenarioError(f"bad norm value {text!r}: {exc}", lineno)


def _parse_expr(
    text: str, ambient: Polyradius, lineno: int
) -> TateElement:
    try:
        return parse_element(text, ambient)
    except ElementSyntaxError as exc:
        raise ScenarioError(f"bad element {text!r}: {exc}", lineno)


def parse_scenario(text: str) -> Scenario:
    lines = text.splitlines()
    name = "scenario"
    field_spec: Optional[FieldSpec] = None
    degree: Optional[int] = None
    algebras: dict[str, AffinoidPresentation] = {}
    checks: list[CheckSpec] = []
    i = 0
    n = len(lines)

    def collect_block(start: int) -> tuple[list[tuple[int, list[str]]], int]:
        body = []
        j = start
        while j < n:
            toks = _tokens(lines[j])
            if toks == ["end"]:
                return body, j + 1
            if toks:
                body.append((j + 1, toks))
            j += 1
        raise ScenarioError("unterminated block", start)

    def need_algebra(ref: str, lineno: int) -> AffinoidPresentation:
        if ref not in algebras:
            raise ScenarioError(f"undeclared algebra {ref!r}", lineno)
        return algebras[ref]

    while i < n:
        lineno = i + 1
        toks = _tokens(lines[i])
        if not toks:
            i += 1
            continue
        head = toks[0]
        if head == "scenario":
            if len(toks) != 2:
                raise ScenarioError("usage: scenario NAME", lineno)
            name = toks[1]
            i += 1
        elif head == "degree":
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) < 1:
                raise ScenarioError("usage: degree D with D >= 1", lineno)
            degree = int(toks[1])
            i += 1
        elif head == "field":
            if toks[1:] == ["trivial"]:
                field_spec = FieldSpec.trivial()
            elif len(toks) == 3 and toks[1] == "p-adic":
                try:
                    field_spec = FieldSpec.padic(int(toks[2]))
                except ValueError as exc:
                    raise ScenarioError(str(exc), lineno)
            else:
                raise ScenarioError(
                    "usage: field trivial | field p-adic P", lineno
                )
            i += 1
        elif head == "algebra":
            if field_spec is None:
                raise ScenarioError("declare the field first", lineno)
            if len(toks) != 2:
                raise ScenarioError("usage: algebra NAME", lineno)
            body, i = collect_block(i + 1)
            names: list[str] = []
            radii: list[NormValue] = []
            relation_lines: list[tuple[int, str]] = []
            for ln, btoks in body:
                if btoks[0] == "var" and len(btoks) == 3:
                    names.append(btoks[1])
                    radii.append(_parse_radius(btoks[2], ln))
                elif btoks[0] == "relation":
                    relation_lines.append((ln, " ".join(btoks[1:])))
                else:
                    raise ScenarioError(
                        "algebra blocks hold `var NAME RADIUS` and "
                        "`relation EXPR` lines", ln
                    )
            ambient = Polyradius(field_spec, tuple(names), tuple(radii))
            alg = free_affinoid(ambient)
            rels = [
                _parse_expr(expr, ambient, ln) for ln, expr in relation_lines
            ]
            algebras[toks[1]] = quotient(alg, rels) if rels else alg
        elif head in ("localize", "module"):
            if len(toks) != 4 or toks[2] != "of":
                raise ScenarioError(f"usage: {head} NAME of BASE", lineno)
            base = need_algebra(toks[3], lineno)
            body, i = collect_block(i + 1)
            if head == "module":
                rels = []
                for ln, btoks in body:
                    if btoks[0] != "relation":
                        raise ScenarioError(
                            "module blocks hold `relation EXPR` lines", ln
                        )
                    rels.append(
                        _parse_expr(" ".join(btoks[1:]), base.ambient, ln)
                    )
                algebras[toks[1]] = quotient(base, rels)
            else:
                current = base
                for ln, btoks in body:
                    if len(btoks) != 3 or btoks[0] not in ("bound", "invert"):
                        raise ScenarioError(
                            "localize blocks hold `bound EXPR R` and "
                            "`invert EXPR R` lines", ln
                        )
                    f = _parse_expr(btoks[1], current.ambient, ln)
                    r = _parse_radius(btoks[2], ln)
                    if btoks[0] == "bound":
                        current = weierstrass_localization(current, [f], [r])
                    else:
                        current = laurent_localization(
                            current, g=[f], g_radii=[r]
                        )
                if current is base:
                    raise ScenarioError("empty localize block", lineno)
                algebras[toks[1]] = current
        elif head == "check":
            if len(toks) < 3:
                raise ScenarioError("usage: check NAME KIND ARGS...", lineno)
            spec = CheckSpec(toks[1], toks[2], toks[3:], line=lineno)
            if spec.kind == "norm-table":
                body, i = collect_block(i + 1)
                for ln, btoks in body:
                    if btoks[0] != "element":
                        raise ScenarioError(
                            "norm-table blocks hold `element EXPR` lines", ln
                        )
                    spec.elements.append(" ".join(btoks[1:]))
            else:
                i += 1
            checks.append(spec)
        else:
            raise ScenarioError(f"unknown directive {head!r}", lineno)

    if field_spec is None:
        raise ScenarioError("scenario declares no field")
    if degree is None:
        degree = 10
    # Validate check references up front so errors point at the right line.
    for spec in checks:
        for ref in spec.args:
            if not ref.isdigit() and ref not in algebras:
                raise ScenarioError(
                    f"check {spec.name!r} references undeclared "
                    f"algebra {ref!r}", spec.line
                )
    return Scenario(name, field_spec, degree, algebras, checks)


# -- execution -------------------------------------------------------------


def _witness_json(w: Optional[CycleWitness]) -> Optional[dict]:
    if w is None:
        return None
    return {
        "degree": w.degree,
        "norm": str(w.norm),
        "parts": {str(k): str(v) for k, v in sorted(w.parts.items())},
    }


def _run_check(spec: CheckSpec, sc: Scenario, degree: int) -> dict:
    record: dict = {"name": spec.name, "kind": spec.kind}
    algebras = sc.algebras

    def arg_algebra(pos: int) -> AffinoidPresentation:
        try:
            return algebras[spec.args[pos]]
        except IndexError:
            raise ScenarioError(
                f"check {spec.name!r}: missing argument {pos + 1}", spec.line
            )

    if spec.kind in ("epi", "hoepi"):
        base, target = arg_algebra(0), arg_algebra(1)
        fn = is_epimorphism if spec.kind == "epi" else is_homotopy_epi
        verdict = fn(base, target, degree)
        record.update(
            verdict=verdict.status,
            degree=verdict.truncation,
            detail=verdict.detail,
            homology_ranks={
                str(k): v for k, v in sorted(verdict.homology_ranks.items())
            },
            witness=_witness_json(verdict.witness),
        )
    elif spec.kind == "transversal":
        base, module, target = arg_algebra(0), arg_algebra(1), arg_algebra(2)
        verdict = check_transversal(module, base, target, degree)
        record.update(
            verdict=verdict.status,
            degree=verdict.truncation,
            detail=verdict.detail,
            homology_ranks={
                str(k): v for k, v in sorted(verdict.homology_ranks.items())
            },
            witness=_witness_json(verdict.witness),
        )
    elif spec.kind == "cech":
        base = arg_algebra(0)
        if len(spec.args) < 3 or not spec.args[1].isdigit():
            raise ScenarioError(
                "usage: check NAME cech BASE DEPTH PIECE...", spec.line
            )
        depth = int(spec.args[1])
        pieces = tuple(algebras[a] for a in spec.args[2:])
        report = acyclicity_check(
            CoverData(base, pieces), depth, degree, style=ALTERNATING
        )
        record.update(
            verdict=report.status,
            degree=report.truncation,
            detail=report.detail,
            constant=str(report.constant) if report.constant else None,
            positions=[
                {
                    "degree": v.degree,
                    "exact": v.exact,
                    "homology_rank": v.homology_rank,
                    "constant": str(v.constant),
                }
                for v in (report.witness.verdicts if report.witness else [])
            ],
        )
    elif spec.kind == "cover":
        base = arg_algebra(0)
        pieces = [algebras[a] for a in spec.args[1:]]
        domains = [domain_of(p, name) for p, name in zip(pieces, spec.args[1:])]
        report = cover_check(domains, ambient=base.ambient)
        record.update(
            verdict="covered" if report.covered else "uncovered",
            points_checked=report.points_checked,
            witnesses=report.witness_strings(),
        )
    elif spec.kind == "norm-table":
        alg = arg_algebra(0)
        table = []
        for expr in spec.elements:
            el = _parse_expr(expr, alg.ambient, spec.line)
            reduced = alg.reduce(el, degree)
            table.append(
                {
                    "element": expr,
                    "reduced": str(reduced.representative),
                    "gauss_norm": str(reduced.representative.gauss_norm()),
                }
            )
        record.update(verdict="ok", degree=degree, table=table)
    else:
        raise ScenarioError(
            f"unknown check kind {spec.kind!r}", spec.line
        )
    return record


def run_scenario(
    path: str, degree: Optional[int] = None, fail_fast: bool = False
) -> dict:
    with open(path, encoding="utf-8") as fh:
        sc = parse_scenario(fh.read())
    d = degree if degree is not None else sc.degree
    field_str = (
        f"p-adic {sc.field_spec.p}"
        if sc.field_spec.mode == "p-adic"
        else "trivial"
    )
    records = []
    all_passed = True
    for spec in sc.checks:
        log.info("running check %s (%s)", spec.name, spec.kind)
        record = _run_check(spec, sc, d)
        records.append(record)
        if record["verdict"] not in PASSING:
            all_passed = False
            log.warning(
                "check %s: %s", spec.name, record["verdict"]
            )
            if fail_fast:
                break
    return {
        "scenario": sc.name,
        "field": field_str,
        "degree": d,
        "checks": records,
        "all_passed": all_passed,
    }


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="afnd",
        description="Run a verification scenario and print a JSON report.",
    )
    parser.add_argument("scenario", help="path to the scenario file")
    parser.add_argument(
        "--degree", type=int, default=None,
        help="override the scenario's truncation degree",
    )
    parser.add_argument(
        "--json", metavar="OUT", default=None,
        help="also write the report to this file",
    )
    parser.add_argument(
        "--fail-fast", action="store_true",
        help="stop at the first failing check",
    )
    parser.add_argument(
        "--seed", type=int, default=0,
        help="seed for randomized property corpora",
    )
    args = parser.parse_args(argv)
    level = os.environ.get("AFND_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    random.seed(args.seed)
    if args.degree is not None and args.degree < 1:
        parser.error("--degree must be >= 1")
    try:
        report = run_scenario(args.scenario, args.degree, args.fail_fast)
    except (ScenarioError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render_report(report)
    sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report["all_passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
