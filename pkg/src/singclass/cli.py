"""Command-line interface.

Exit codes: 0 success, 2 invalid arguments or parameters, 3 the support is not
an isolated candidate, 4 no catalog skeleton matches, 5 the table diff is not
empty.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence, TextIO

from .catalog import (
    CatalogError,
    Instance,
    alpha_at_ones,
    milnor_closed_form,
    render_polynomial,
    resolve_type,
    validate_params,
    weights_of,
)
from .classify import (
    ClassifyError,
    Identification,
    NoCatalogMatch,
    NotIsolatedCandidate,
    identify_type,
    skeleton_map,
)
from .enumerate import (
    Bounds,
    DiffReport,
    diff_table,
    enumerate_rational,
    is_rational,
    regenerate_table,
    surface_classification,
)
from .fixtures import TABLE_FILE, Fixture, FixtureError, fixture_dir, load_fixture
from .newton import genus_of

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_ISOLATED = 3
EXIT_NO_MATCH = 4
EXIT_TABLE_MISMATCH = 5

TSV_COLUMNS = ("type", "params", "links", "weights", "mu", "alpha_at_ones", "p_g",
               "rational", "polynomial")


def fraction_text(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class OutputRecord:
    type: str
    params: tuple[int, ...]
    links: tuple[tuple[int, int], ...]
    weights: tuple[str, ...]
    mu: int
    alpha_at_ones: str
    p_g: int
    rational: bool
    polynomial: str

    @classmethod
    def of(cls, instance: Instance) -> "OutputRecord":
        return cls(
            type=instance.type_id,
            params=instance.params,
            links=instance.links.as_tuple(),
            weights=tuple(fraction_text(w) for w in weights_of(instance)),
            mu=milnor_closed_form(instance),
            alpha_at_ones=fraction_text(alpha_at_ones(instance)),
            p_g=genus_of(instance).p_g,
            rational=is_rational(instance),
            polynomial=render_polynomial(instance),
        )

    def as_dict(self, decimal: bool = False) -> dict:
        out = {
            "type": self.type,
            "params": list(self.params),
            "links": [list(p) for p in self.links],
            "weights": list(self.weights),
            "mu": self.mu,
            "alpha_at_ones": self.alpha_at_ones,
            "p_g": self.p_g,
            "rational": self.rational,
            "polynomial": self.polynomial,
        }
        if decimal:
            out["alpha_decimal"] = float(Fraction(self.alpha_at_ones))
        return out

    def to_json(self, decimal: bool = False) -> str:
        return json.dumps(self.as_dict(decimal), separators=(",", ":"))

    def to_tsv(self, decimal: bool = False) -> str:
        cols = [
            self.type,
            ",".join(map(str, self.params)),
            ";".join(f"{p},{q}" for p, q in self.links) or "-",
            ",".join(self.weights),
            str(self.mu),
            self.alpha_at_ones,
            str(self.p_g),
            "true" if self.rational else "false",
            self.polynomial,
        ]
        if decimal:
            cols.append(f"{float(Fraction(self.alpha_at_ones)):.12g}")
        return "\t".join(cols)


def identification_dict(ident: Identification) -> dict:
    return {
        "type": ident.type_id,
        "permutation": list(ident.permutation),
        "params": list(ident.params),
        "links": [list(p) for p in ident.links.as_tuple()],
        "link_status": list(ident.link_status),
        "residual": [list(v) for v in ident.residual],
    }


class UsageError(ValueError):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _links(text: str | None) -> tuple[tuple[int, int], ...] | None:
    if text is None:
        return None
    values = _int_list(text)
    if len(values) % 2:
        raise UsageError("link exponents come in pairs")
    return tuple((values[i], values[i + 1]) for i in range(0, len(values), 2))


def _fixes(text: str | None) -> dict[str, int]:
    out: dict[str, int] = {}
    if not text:
        return out
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep or not value.strip().isdigit():
            raise UsageError(f"expected slot=value, got {part!r}")
        out[key.strip()] = int(value)
    return out


def parse_support(text: str) -> list[tuple[int, ...]]:
    rows = [r.strip() for r in text.replace("\n", ";").split(";")]
    return [_int_list(r) for r in rows if r and not r.startswith("#")]


def _emit(record: OutputRecord, fmt: str, decimal: bool, out: TextIO) -> None:
    out.write((record.to_json(decimal) if fmt == "json" else record.to_tsv(decimal)) + "\n")


def cmd_invariants(args: argparse.Namespace, out: TextIO) -> int:
    desc = resolve_type(args.type, surface=args.surface)
    inst = validate_params(desc, _int_list(args.params), _links(args.links))
    _emit(OutputRecord.of(inst), args.format, args.decimal, out)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, out: TextIO) -> int:
    if args.skeletons:
        for support, ident in skeleton_map(_int_list(args.skeletons)):
            vecs = ";".join(",".join(map(str, v)) for v in support)
            out.write(f"{vecs}\t{ident.type_id}\t{','.join(map(str, ident.permutation))}\n")
        return EXIT_OK
    if args.file:
        text = Path(args.file).read_text(encoding="utf-8")
    elif args.support:
        text = args.support
    else:
        raise UsageError("classify needs --support, --file or --skeletons")
    ident = identify_type(parse_support(text))
    out.write(json.dumps(identification_dict(ident), separators=(",", ":")) + "\n")
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace, out: TextIO) -> int:
    desc = resolve_type(args.type, surface=args.surface)
    bounds = Bounds.uniform(args.bounds, desc.arity)
    for inst in enumerate_rational(desc, bounds, fixed=_fixes(args.fix)):
        _emit(OutputRecord.of(inst), args.format, args.decimal, out)
    return EXIT_OK


def _report_json(report: DiffReport) -> str:
    return json.dumps({
        "entries": [{"kind": e.kind, "type": e.type_id, "item": e.path,
                     "printed": e.printed, "generated": e.generated} for e in report.entries],
        "overlaps": [{"items": list(paths), "shared": n} for paths, n in report.overlaps],
    }, indent=1)


def cmd_table(args: argparse.Namespace, out: TextIO) -> int:
    if args.types == "all":
        ids: list[str] | str = "all"
    else:
        ids = [t.strip() for t in args.types.split(",") if t.strip()]
    doc = regenerate_table(ids, args.bounds)
    if args.rows:
        out.write(doc.to_text())
        return EXIT_OK
    path = Path(args.fixture) if args.fixture else fixture_dir() / TABLE_FILE
    if not path.exists() and not path.is_absolute():
        path = fixture_dir() / path
    fixture = load_fixture(path)
    wanted = set(doc.type_ids)
    report = diff_table(doc, Fixture(tuple(e for e in fixture.entries if e.type_id in wanted),
                                     fixture.source))
    out.write(_report_json(report) + "\n" if args.format == "json" else report.to_text())
    return EXIT_OK if report.empty else EXIT_TABLE_MISMATCH


def cmd_surface_ade(args: argparse.Namespace, out: TextIO) -> int:
    result = surface_classification(args.bounds)
    for m in result.matches:
        p = ",".join(map(str, m.instance.params))
        out.write(f"{m.label}\t{m.instance.type_id}\t{p}\t{m.mu}\t"
                  f"{render_polynomial(m.instance)}\n")
    for tid, rest, slot, verdict in result.families:
        out.write(f"# {tid} {','.join(map(str, rest))} slot {slot}: {verdict.kind}\n")
    return EXIT_OK


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--decimal", action="store_true",
                   help="add an approximate alpha column next to the exact value")


def _add_instance_commands(sub: argparse._SubParsersAction, surface: bool) -> None:
    p = sub.add_parser("invariants", help="weights, Milnor number, alpha and genus of one instance")
    p.add_argument("type")
    p.add_argument("params", help="comma-separated exponents, e.g. 2,3,7,41")
    p.add_argument("--links", help="link exponents p,q[,r,s]")
    _common(p)
    p.set_defaults(func=cmd_invariants, surface=surface)

    p = sub.add_parser("enumerate", help="rational instances of a family within bounds")
    p.add_argument("type")
    p.add_argument("--bounds", type=int, default=50)
    p.add_argument("--fix", help="fixed slots, e.g. a=2,b=3")
    _common(p)
    p.set_defaults(func=cmd_enumerate, surface=surface)

    p = sub.add_parser("classify", help="identify the family of a support")
    p.add_argument("--support", help='exponent vectors, e.g. "2,0,0,0;0,3,0,0;..."')
    p.add_argument("--file", help="file with one exponent vector per line")
    p.add_argument("--skeletons", help="list every skeleton for these generic exponents")
    p.set_defaults(func=cmd_classify, surface=surface)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singclass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _add_instance_commands(sub, surface=False)

    p = sub.add_parser("table", help="regenerate the rational tables and diff them with a fixture")
    p.add_argument("--types", default="all", help="'all' or comma-separated numerals")
    p.add_argument("--fixture", help="fixture file (default: the shipped table fixture)")
    p.add_argument("--bounds", type=int, default=50)
    p.add_argument("--rows", action="store_true", help="print the regenerated rows instead")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("surface", help="the same commands for surface classes")
    p.add_argument("--ade", action="store_true", help="list rational surface instances with ADE labels")
    p.add_argument("--bounds", type=int, default=30)
    p.set_defaults(func=cmd_surface_ade)
    _add_instance_commands(p.add_subparsers(dest="surface_command"), surface=True)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "surface" and args.surface_command is None and not args.ade:
        parser.error("surface needs --ade or a subcommand")
    try:
        return args.func(args, out)
    except NotIsolatedCandidate as exc:
        print(f"NotIsolatedCandidate: {exc}", file=sys.stderr)
        return EXIT_NOT_ISOLATED
    except NoCatalogMatch as exc:
        print(f"NoCatalogMatch: {exc}", file=sys.stderr)
        return EXIT_NO_MATCH
    except (CatalogError, ClassifyError, FixtureError, UsageError, ValueError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
