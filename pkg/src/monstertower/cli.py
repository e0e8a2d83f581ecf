"""Command-line front end and the germ expression language.

Germs are written as comma-separated polynomials in ``t`` with rational
coefficients, e.g. ``"t^4, t^6 + t^7, 0"`` or ``"3/2*t^2, -t^5"``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import (
    RSVL,
    RSVT,
    RSVV,
    SingularityClass,
    UnsupportedFamily,
    WrongClass,
    classify_germ,
    spatial_test,
    stable_orbit_census,
)
from .config import TowerConfig
from .enriques import HorizonTooShort, MissingAnnotations, check_enriques, proximity_table
from .germ import CurveGerm, GermError, NotWellParameterized, is_well_parameterized
from .orbits import COUNT_LABEL, enumerate_classes, is_extrapolated, to_dot
from .series import SeriesError
from .tower import HorizonExceeded, InternalInconsistency, TowerTrace, fraction_str, prolong, regularization_level
from .words import SpellingError

__all__ = [
    "SCHEMA",
    "ParseError",
    "RunDocument",
    "parse_germ",
    "render_germ",
    "render_poly",
    "trace_levels",
    "build_parser",
    "execute",
    "main",
]

SCHEMA = "monster-tower/1"
GERM_COMMANDS = ("prolong", "code", "classify", "mult-seq", "enriques", "regularize")
DOMAIN_ERRORS = (GermError, SeriesError, HorizonExceeded, HorizonTooShort, MissingAnnotations,
                 WrongClass, UnsupportedFamily, SpellingError, InternalInconsistency)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


_TOKEN = re.compile(r"(?P<num>\d+)|(?P<t>t)|(?P<op>[-+*/^,])|(?P<ws>\s+)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            hit = _TOKEN.match(text, pos)
            if not hit:
                self.fail(f"unexpected character {text[pos]!r}", pos)
            if hit.lastgroup != "ws":
                self.tokens.append((hit.lastgroup, hit.group(), pos))
            pos = hit.end()
        self.i = 0

    def where(self, pos: int) -> tuple:
        before = self.text[:pos]
        line = before.count("\n") + 1
        return line, pos - (before.rfind("\n") + 1) + 1

    def fail(self, message: str, pos: int | None = None):
        if pos is None:
            pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise ParseError(message, *self.where(pos))

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = "end of input" if tok[0] is None else repr(tok[1])
            self.fail(f"expected {want!r}, found {got}")
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        return self.peek()[1] == value

    def germ(self) -> list:
        polys = [self.poly()]
        while self.at(","):
            self.i += 1
            polys.append(self.poly())
        if self.peek()[0] is not None:
            self.fail(f"unexpected {self.peek()[1]!r}")
        return polys

    def poly(self) -> dict:
        out: dict = {}
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take("op")[1] == "-" else 1
        while True:
            e, c = self.term()
            out[e] = out.get(e, 0) + sign * c
            if self.at("+") or self.at("-"):
                sign = -1 if self.take("op")[1] == "-" else 1
            else:
                return {e: c for e, c in out.items() if c}

    def term(self) -> tuple:
        if self.peek()[0] == "t":
            return self.power(), Fraction(1)
        c = self.coeff()
        if self.at("*"):
            self.i += 1
            return self.power(), c
        return 0, c

    def coeff(self) -> Fraction:
        num = int(self.take("num")[1])
        if self.at("/"):
            self.i += 1
            _, den, pos = self.take("num")
            if int(den) == 0:
                self.fail("zero denominator", pos)
            return Fraction(num, int(den))
        return Fraction(num)

    def power(self) -> int:
        self.take("t")
        if self.at("^"):
            self.i += 1
            return int(self.take("num")[1])
        return 1


def parse_germ(text: str, precision: int | None = None) -> CurveGerm:
    """Parse a germ expression into an exact rational germ."""
    if not text.strip():
        raise ParseError("empty germ expression", 1, 1)
    polys = _Parser(text).germ()
    for i, p in enumerate(polys):
        if p.get(0):
            raise GermError(f"component {i + 1} has a nonzero constant term")
    return CurveGerm.from_polynomials(polys, precision)


def render_poly(coeffs: dict) -> str:
    parts = []
    for e in sorted(coeffs):
        c = Fraction(coeffs[e])
        if not c:
            continue
        mag = abs(c)
        mono = "t" if e == 1 else f"t^{e}"
        if e == 0:
            body = fraction_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{fraction_str(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) or "0"


def render_germ(g: CurveGerm) -> str:
    """Inverse of :func:`parse_germ` on the stored terms."""
    return ", ".join(render_poly(c.coeffs) for c in g.coords)


@dataclass
class RunDocument:
    command: str
    input: dict
    result: object = None
    levels: list = field(default_factory=list)
    classification: dict | None = None
    reports: dict = field(default_factory=dict)
    schema_version: str = SCHEMA

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "input": self.input,
            "result": self.result,
            "levels": self.levels,
            "classification": self.classification,
            "reports": self.reports,
        }

    def to_text(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_text(cls, text: str) -> "RunDocument":
        data = json.loads(text)
        if data.get("schema_version") != SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema_version')!r}")
        return cls(**data)


def _planes(trace: TowerTrace, planes) -> list:
    return [{"kind": p.kind, "birth_level": p.birth_level, "covector": trace.coord(p.covector_coord).name}
            for p in planes]


def trace_levels(trace: TowerTrace) -> list:
    out = []
    for r in trace.records:
        out.append({
            "level": r.level,
            "letter": r.letter,
            "multiplicity": r.multiplicity,
            "denominator": None if r.denominator is None else trace.coord(r.denominator).name,
            "point": [[c.name, fraction_str(v)] for c, v in zip(r.active_coords, r.point_coords)],
            "critical_planes": _planes(trace, r.critical_planes),
            "direction_planes": _planes(trace, r.letter_planes),
        })
    return out


def _class_dict(c: SingularityClass) -> dict:
    return {
        "family": c.family,
        "params": c.params(),
        "trailing_R": c.trailing_R,
        "word": c.word,
        "codim": c.codim,
        "simple": c.simple,
        "simplicity_readings": c.simplicity_readings(),
    }


def _text_levels(levels: list) -> str:
    lines = []
    for rec in levels:
        point = " ".join(f"{name}={v}" for name, v in rec["point"])
        planes = ",".join(f"{p['kind'][0]}{p['birth_level']}:{p['covector']}" for p in rec["critical_planes"])
        lines.append(f"{rec['level']:>3}  {rec['letter'] or '-'}  mult {rec['multiplicity']}  "
                     f"{point}" + (f"  planes {planes}" if planes else ""))
    return "\n".join(lines)


def _germ_command(args, cfg: TowerConfig, text: str) -> tuple:
    g = parse_germ(text)
    if not is_well_parameterized(g):
        raise NotWellParameterized(f"{render_germ(g)} is not well-parameterized")
    doc = RunDocument(args.command, {"germ": render_germ(g), "levels": cfg.levels,
                                     "precision": cfg.precision})
    cmd = args.command
    if cmd == "regularize":
        r = regularization_level(g, horizon=cfg.horizon)
        doc.input = {"germ": doc.input["germ"], "horizon": cfg.horizon}
        doc.result = r
        return doc, str(r), 0
    trace = prolong(g, cfg.levels, **cfg.prolong_kwargs())
    doc.levels = trace_levels(trace)
    if cmd == "prolong":
        doc.result = trace.letters
        return doc, trace.letters + "\n" + _text_levels(doc.levels), 0
    if cmd == "code":
        doc.result = trace.letters
        return doc, trace.letters, 0
    if cmd == "mult-seq":
        doc.result = trace.multiplicities
        return doc, " ".join(map(str, trace.multiplicities)), 0
    if cmd == "enriques":
        rep = check_enriques(trace)
        table = proximity_table(trace)
        doc.result = rep.passed
        doc.reports["proximity"] = sorted([i, j] for i, j in table.prox)
        doc.reports["enriques"] = [
            {"level": e.level, "multiplicity": e.multiplicity,
             "proximate": [[j, m] for j, m in e.proximate], "status": e.status}
            for e in rep.identities]
        verdict = "all identities pass" if rep.passed else "identity failure"
        return doc, rep.render() + "\n" + verdict, 0 if rep.passed else 1
    if cmd == "classify":
        cls, report = classify_germ(g, cfg.levels, **cfg.prolong_kwargs())
        doc.result = cls.word
        doc.classification = _class_dict(cls)
        doc.reports["consistency"] = {
            "prepared_orders": list(report.prepared_orders),
            "checks": [{"name": c.name, "expected": c.expected, "actual": c.actual, "ok": c.ok}
                       for c in report.checks],
            "notes": list(report.notes),
            "consistent": report.consistent,
        }
        lines = [str(cls)]
        lines += [f"  {c.name}: expected {c.expected}, got {c.actual}  [{'ok' if c.ok else 'MISMATCH'}]"
                  for c in report.checks]
        lines += [f"  note: {n}" for n in report.notes]
        if cls.family in (RSVT, RSVV, RSVL):
            verdict = spatial_test(g, cls)
            doc.classification["spatial"] = verdict
            lines.append(f"  spatial: {verdict}")
        return doc, "\n".join(lines), 0 if report.consistent else 1
    raise AssertionError(cmd)


def _orbits(args) -> tuple:
    counts = enumerate_classes(args.dim, args.depth)
    doc = RunDocument("orbits", {"dim": args.dim, "depth": args.depth}, list(counts))
    doc.reports = {"label": COUNT_LABEL, "extrapolated": is_extrapolated(args.dim)}
    if args.dot:
        doc.reports["dot"] = to_dot(args.dim, args.depth)
        return doc, doc.reports["dot"], 0
    text = " ".join(map(str, counts)) + f"\n{COUNT_LABEL}"
    if is_extrapolated(args.dim):
        text += " [extrapolated beyond n=3]"
    return doc, text, 0


def _census(args) -> tuple:
    c = SingularityClass.make(args.family, s=args.s)
    forms = stable_orbit_census(c, args.q)
    doc = RunDocument("census", {"family": args.family, "s": args.s, "q": args.q},
                      [f.render() for f in forms])
    doc.reports = {"planar": [f.render() for f in forms if not f.spatial],
                   "spatial": [f.render() for f in forms if f.spatial]}
    return doc, "\n".join(doc.result), 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monstertower", description="Curve germs in the Monster tower.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in GERM_COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--germ", help='e.g. "t^2, t^3"')
        src.add_argument("--stdin", action="store_true", help="read one germ per line")
        p.add_argument("--levels", type=int, default=TowerConfig.levels)
        p.add_argument("--precision", type=int, default=None)
        p.add_argument("--horizon", type=int, default=TowerConfig.horizon)
        p.add_argument("--jobs", type=int, default=1, help="parallel workers in --stdin mode")
        p.add_argument("--format", choices=("text", "json"), default="text")
    p = sub.add_parser("orbits")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--dot", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p = sub.add_parser("census")
    p.add_argument("--family", choices=(RSVT, RSVV), default=RSVT)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _describe(exc: Exception) -> str:
    level = getattr(exc, "level", None)
    where = f" (at level {level})" if level is not None else ""
    return f"{type(exc).__name__}{where}: {exc}"


def execute(args, germ_text: str | None = None) -> tuple:
    """Run one parsed command; returns ``(exit code, output text, document or None)``."""
    try:
        if args.command == "orbits":
            if args.dim < 2 or args.depth < 1:
                return 2, "error: need --dim >= 2 and --depth >= 1", None
            doc, text, code = _orbits(args)
        elif args.command == "census":
            if args.s < 1 or args.q < 0:
                return 2, "error: need --s >= 1 and --q >= 0", None
            doc, text, code = _census(args)
        else:
            if args.levels < 0:
                return 2, "error: --levels must be non-negative", None
            cfg = TowerConfig(levels=args.levels, precision=args.precision, horizon=args.horizon)
            doc, text, code = _germ_command(args, cfg, germ_text if germ_text is not None else args.germ)
    except ParseError as exc:
        return 2, f"error: {_describe(exc)}", None
    except DOMAIN_ERRORS as exc:
        return 1, f"error: {_describe(exc)}", None
    if args.format == "json":
        return code, doc.to_text(), doc
    return code, text, doc


def _batch_one(job):
    argv, line = job
    args = build_parser().parse_args(argv)
    code, out, doc = execute(args, line)
    if args.format == "json":
        out = doc.to_text(indent=None) if doc else json.dumps({"schema_version": SCHEMA, "error": out})
    else:
        out = f"{line}\t{out}".replace("\n", "\n\t")
    return code, out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "stdin", False):
        lines = [ln.strip() for ln in sys.stdin if ln.strip() and not ln.lstrip().startswith("#")]
        jobs = [(argv, ln) for ln in lines]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_batch_one, jobs))
        else:
            results = [_batch_one(j) for j in jobs]
        for _, out in results:
            print(out)
        return max((c for c, _ in results), default=0)
    code, out, doc = execute(args)
    print(out, file=sys.stderr if doc is None else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
