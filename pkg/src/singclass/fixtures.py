"""Printed table entries encoded as tab-separated lines.

Each line has five fields::

    TYPE  ITEM  FIXED  FREE  SYMMETRY

``FIXED`` is ``-`` or space-separated ``slot=value``.  ``FREE`` is ``-`` or
space-separated ``slot:RANGE`` where ``RANGE`` is ``ge(N)``, ``ge(slot)``,
``ge(slot+N)`` or ``set{...}`` with comma-separated values and ``i..j`` runs.
Relational bounds may only refer to fixed slots or free slots listed earlier.
The last free slot is the entry's run slot.  ``SYMMETRY`` is ``ordered`` or
``unordered(cd)``-style groups: values within each group are taken in every
order.  Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import ast
import itertools
import operator
import os
import re
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import BinaryIO, Iterator, Mapping, Sequence, TextIO

from .catalog import (
    SLOTS,
    CatalogError,
    TypeDescriptor,
    UnknownType,
    orbit,
    in_domain,
    resolve_type,
    validate_params,
)

ENV_VAR = "SINGCLASS_FIXTURES"
TABLE_FILE = "theorem33_full.tsv"
ADE_FILE = "surface_ade.tsv"
FORMULA_FILE = "mu_formulas.tsv"
SUSPECT_FILE = "theorem33_suspects.tsv"


class FixtureError(ValueError):
    pass


class ParseError(FixtureError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateItem(FixtureError):
    pass


class RangeError(FixtureError):
    pass


@dataclass(frozen=True)
class RangeSpec:
    kind: str  # "ge" or "set"
    lower: int = 0
    ref: int | None = None  # slot index for relational bounds
    values: tuple[int, ...] = ()

    def low(self, assign: Mapping[int, int]) -> int:
        if self.kind == "set":
            return self.values[0]
        return self.lower + (assign[self.ref] if self.ref is not None else 0)

    def iterate(self, assign: Mapping[int, int], upper: int) -> Iterator[int]:
        if self.kind == "set":
            for v in self.values:
                if v > upper:
                    break
                yield v
        else:
            yield from range(self.low(assign), upper + 1)

    def contains(self, value: int, assign: Mapping[int, int]) -> bool:
        if self.kind == "set":
            return value in self.values
        return value >= self.low(assign)

    def spot_values(self, assign: Mapping[int, int]) -> list[int]:
        if self.kind == "set":
            vs = self.values
            return sorted({vs[0], vs[len(vs) // 2], vs[-1]})
        lo = self.low(assign)
        return [lo, lo + 1, lo + 5]

    @property
    def unbounded(self) -> bool:
        return self.kind == "ge"

    def text(self) -> str:
        if self.kind == "set":
            return "set{" + format_values(self.values) + "}"
        if self.ref is None:
            return f"ge({self.lower})"
        return f"ge({SLOTS[self.ref]}+{self.lower})" if self.lower else f"ge({SLOTS[self.ref]})"


def format_values(values: Sequence[int]) -> str:
    parts = []
    vals = sorted(set(values))
    i = 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and vals[j + 1] == vals[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{vals[i]}..{vals[j]}")
        else:
            parts.extend(str(v) for v in vals[i:j + 1])
        i = j + 1
    return ",".join(parts)


@dataclass(frozen=True)
class FixtureEntry:
    type_id: str
    item: str
    fixed: tuple[tuple[int, int], ...]
    free: tuple[tuple[int, RangeSpec], ...]
    groups: tuple[tuple[int, ...], ...]
    line: int = 0

    @property
    def path(self) -> str:
        desc = resolve_type(self.type_id)
        head = desc.numeral if desc.family == "threefold" else desc.id
        return f"{head}.{self.item}"

    @property
    def run_slot(self) -> int | None:
        return self.free[-1][0] if self.free else None

    def serialize(self) -> str:
        desc = resolve_type(self.type_id)
        tname = desc.numeral if desc.family == "threefold" else desc.id
        fixed = " ".join(f"{SLOTS[s]}={v}" for s, v in sorted(self.fixed)) or "-"
        free = " ".join(f"{SLOTS[s]}:{r.text()}" for s, r in self.free) or "-"
        if self.groups:
            sym = "unordered(" + ",".join("".join(SLOTS[s] for s in g) for g in self.groups) + ")"
        else:
            sym = "ordered"
        return "\t".join((tname, self.item, fixed, free, sym))

    @cached_property
    def permutations(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.fixed) + len(self.free)
        perms = [tuple(range(n))]
        for g in self.groups:
            nxt = []
            for base in perms:
                for order in itertools.permutations(g):
                    p = list(base)
                    for src, dst in zip(g, order):
                        p[dst] = base[src]
                    nxt.append(tuple(p))
            perms = nxt
        return tuple(sorted(set(perms)))

    def base_tuples(self, limits: Sequence[int]) -> list[tuple[int, ...]]:
        """Tuples in the printed orientation, before group permutations."""
        if any(v > limits[s] for s, v in self.fixed):
            return []
        # layout: fixed values, then free values in listed order
        layout = [s for s, _ in self.fixed] + [s for s, _ in self.free]
        where = {s: i for i, s in enumerate(layout)}
        rows = [tuple(v for _, v in self.fixed)]
        for slot, rng in self.free:
            top = limits[slot]
            if rng.kind == "set":
                vals = [v for v in rng.values if v <= top]
                rows = [r + (v,) for r in rows for v in vals]
            elif rng.ref is None:
                vals = list(range(rng.lower, top + 1))
                rows = [r + (v,) for r in rows for v in vals]
            else:
                j, off = where[rng.ref], rng.lower
                rows = [r + (v,) for r in rows for v in range(r[j] + off, top + 1)]
        order = [where[s] for s in range(len(layout))]
        if len(order) == 1:
            return [(r[order[0]],) for r in rows]
        get = operator.itemgetter(*order)
        return [get(r) for r in rows]

    def expand(self, limits: Sequence[int]) -> set[tuple[int, ...]]:
        base = self.base_tuples(limits)
        out = set(base)
        for p in self.permutations[1:]:
            get = operator.itemgetter(*p)
            out.update(map(get, base))
        return out

    def accepts(self, u: Sequence[int], relax: Sequence[int] = ()) -> bool:
        """Whether ``u``, read in the printed slot order, satisfies the entry
        apart from the ``relax`` slots."""
        if any(u[s] != v for s, v in self.fixed if s not in relax):
            return False
        assign = dict(enumerate(u))
        return all(s in relax or r.contains(u[s], assign) for s, r in self.free)

    def reorderings(self, params: Sequence[int]) -> Iterator[tuple[int, ...]]:
        """``params`` in every order allowed by the symmetry groups."""
        n = len(params)
        for p in self.permutations:
            # a permuted tuple t' has t'[i] = t[p[i]], so invert to recover the printed form
            u = [0] * n
            for i in range(n):
                u[p[i]] = params[i]
            yield tuple(u)

    def orient(self, params: Sequence[int], relax: Sequence[int] = ()) -> tuple[int, ...] | None:
        """The printed-orientation form of ``params`` if some group order of it
        satisfies the entry, ignoring the values or ranges of the ``relax`` slots."""
        for u in self.reorderings(params):
            if self.accepts(u, relax):
                return u
        return None

    def distance(self, params: Sequence[int], relax: Sequence[int]) -> int | None:
        """L1 distance from ``params`` to the printed constraints on the
        ``relax`` slots, minimized over group orders that satisfy the rest."""
        free = dict(self.free)
        fixed = dict(self.fixed)
        best = None
        for u in self.reorderings(params):
            if not self.accepts(u, relax):
                continue
            assign = dict(enumerate(u))
            cost = 0
            for s in relax:
                if s in free:
                    r = free[s]
                    if r.kind == "set":
                        cost += min(abs(u[s] - v) for v in r.values)
                    else:
                        cost += max(0, r.low(assign) - u[s])
                else:
                    cost += abs(u[s] - fixed[s])
            if best is None or cost < best:
                best = cost
        return best

    def matches(self, params: Sequence[int], relax: Sequence[int] = ()) -> bool:
        return self.orient(params, relax) is not None

    def spot_points(self) -> list[tuple[int, ...]]:
        n = len(self.fixed) + len(self.free)
        assign = dict(self.fixed)
        out = []

        def rec(k: int) -> None:
            if k == len(self.free):
                out.append(tuple(assign[i] for i in range(n)))
                return
            slot, rng = self.free[k]
            for v in rng.spot_values(assign):
                assign[slot] = v
                rec(k + 1)
            assign.pop(slot, None)

        rec(0)
        return out


@dataclass(frozen=True)
class Fixture:
    entries: tuple[FixtureEntry, ...]
    source: str = "<string>"

    def for_type(self, type_id: str) -> tuple[FixtureEntry, ...]:
        tid = resolve_type(type_id).id
        return tuple(e for e in self.entries if e.type_id == tid)

    def serialize(self) -> str:
        return "".join(e.serialize() + "\n" for e in self.entries)


_RANGE_GE = re.compile(r"ge\((?:(\d+)|([a-d])(?:\+(\d+))?)\)")
_RANGE_SET = re.compile(r"set\{([0-9.,]+)\}")


def _parse_set(body: str, lineno: int) -> tuple[int, ...]:
    vals: list[int] = []
    for part in body.split(","):
        m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", part)
        if not m:
            raise ParseError(lineno, f"bad set element {part!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        if hi < lo:
            raise ParseError(lineno, f"empty run {part!r}")
        vals.extend(range(lo, hi + 1))
    if len(set(vals)) != len(vals):
        raise ParseError(lineno, "repeated value in set")
    return tuple(sorted(vals))


def _parse_line(text: str, lineno: int) -> FixtureEntry:
    fields = text.split("\t")
    if len(fields) != 5:
        raise ParseError(lineno, f"expected 5 tab-separated fields, found {len(fields)}")
    tname, item, fixed_s, free_s, sym_s = fields
    try:
        desc = resolve_type(tname)
    except UnknownType:
        raise ParseError(lineno, f"unknown type {tname!r}") from None
    if tname != desc.id and not re.fullmatch(r"[IVX]+", tname):
        raise ParseError(lineno, f"unknown type {tname!r}")
    if not item or re.search(r"\s", item):
        raise ParseError(lineno, "item path must be non-empty without spaces")
    slots = desc.slots
    seen: set[int] = set()

    def slot_index(name: str) -> int:
        if name not in slots:
            raise ParseError(lineno, f"{desc.id} has no slot {name!r}")
        return SLOTS.index(name)

    fixed = []
    if fixed_s != "-":
        for tok in fixed_s.split(" "):
            m = re.fullmatch(r"([a-z])=(\d+)", tok)
            if not m:
                raise ParseError(lineno, f"bad fixed assignment {tok!r}")
            s = slot_index(m.group(1))
            if s in seen:
                raise ParseError(lineno, f"slot {m.group(1)} assigned twice")
            seen.add(s)
            fixed.append((s, int(m.group(2))))
    free = []
    if free_s != "-":
        for tok in free_s.split(" "):
            m = re.fullmatch(r"([a-z]):(.+)", tok)
            if not m:
                raise ParseError(lineno, f"bad range spec {tok!r}")
            s = slot_index(m.group(1))
            if s in seen:
                raise ParseError(lineno, f"slot {m.group(1)} assigned twice")
            body = m.group(2)
            g = _RANGE_GE.fullmatch(body)
            if g:
                if g.group(1) is not None:
                    rng = RangeSpec("ge", int(g.group(1)))
                else:
                    ref = slot_index(g.group(2))
                    if ref not in seen:
                        raise ParseError(lineno, f"bound on {m.group(1)} refers to unset slot {g.group(2)}")
                    rng = RangeSpec("ge", int(g.group(3) or 0), ref)
            else:
                st = _RANGE_SET.fullmatch(body)
                if not st:
                    raise ParseError(lineno, f"bad range {body!r}")
                rng = RangeSpec("set", values=_parse_set(st.group(1), lineno))
            seen.add(s)
            free.append((s, rng))
    if seen != set(range(desc.arity)):
        missing = "".join(SLOTS[i] for i in range(desc.arity) if i not in seen)
        raise ParseError(lineno, f"slots {missing} are neither fixed nor free")
    groups: list[tuple[int, ...]] = []
    if sym_s != "ordered":
        m = re.fullmatch(r"unordered\(([a-z]+(?:,[a-z]+)*)\)", sym_s)
        if not m:
            raise ParseError(lineno, f"bad symmetry flag {sym_s!r}")
        used: set[int] = set()
        for grp in m.group(1).split(","):
            idx = tuple(sorted(slot_index(c) for c in grp))
            if len(idx) < 2 or len(set(idx)) != len(idx) or used & set(idx):
                raise ParseError(lineno, f"bad symmetry group {grp!r}")
            used |= set(idx)
            groups.append(idx)
        groups.sort()
    return FixtureEntry(desc.id, item, tuple(sorted(fixed)), tuple(free), tuple(groups), lineno)


def _check_entry(entry: FixtureEntry) -> None:
    desc = resolve_type(entry.type_id)
    for s, r in entry.free:
        if r.kind == "ge" and r.ref is None and r.lower < desc.minimums[s]:
            raise RangeError(
                f"line {entry.line}: {entry.path} lower bound {r.lower} for slot "
                f"{SLOTS[s]} is below its minimum {desc.minimums[s]}")
        if r.kind == "set" and r.values[0] < 1:
            raise RangeError(f"line {entry.line}: {entry.path} has a non-positive value")
    for point in entry.spot_points():
        for p in entry.permutations:
            t = tuple(point[p[i]] for i in range(len(point)))
            if not weight_valid(desc, t):
                raise RangeError(
                    f"line {entry.line}: {entry.path} instantiates invalid parameters {t}")


def weight_valid(desc: TypeDescriptor, params: Sequence[int]) -> bool:
    """Weights are valid and some symmetric image respects the slot minimums."""
    for img in orbit(desc, params):
        if in_domain(desc, img):
            try:
                validate_params(desc, img, require_links=False)
                return True
            except CatalogError:
                return False
    return False


def parse_fixture(text: str, source: str = "<string>", validate: bool = True) -> Fixture:
    entries = []
    seen: dict[tuple[str, str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        entry = _parse_line(line, lineno)
        key = (entry.type_id, entry.item)
        if key in seen:
            raise DuplicateItem(f"line {lineno}: {entry.path} already defined on line {seen[key]}")
        seen[key] = lineno
        if validate:
            _check_entry(entry)
        entries.append(entry)
    return Fixture(tuple(entries), source)


def fixture_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("singclass") / "data"))


def load_fixture(source: str | os.PathLike | BinaryIO | TextIO | None = None,
                 validate: bool = True) -> Fixture:
    """Load a fixture from a path, an open stream (bytes are read as UTF-8),
    or the shipped table when ``source`` is None."""
    if hasattr(source, "read"):
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
        return parse_fixture(text, getattr(source, "name", "<stream>"), validate)
    p = Path(source) if source is not None else fixture_dir() / TABLE_FILE
    return parse_fixture(p.read_text(encoding="utf-8"), str(p), validate)


# -- closed-form formula file ----------------------------------------------

@dataclass(frozen=True)
class FormulaRow:
    type_id: str
    weights: tuple[str, ...]
    mu: str


_ALLOWED = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.Div,
            ast.USub, ast.Constant, ast.Name, ast.Load, ast.Pow)


def evaluate_formula(expr: str, params: Sequence[int]) -> Fraction:
    """Evaluate an arithmetic expression in the slot letters exactly; ``^``
    denotes a power."""
    tree = ast.parse(expr.replace("^", "**"), mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise FixtureError(f"unsupported syntax in {expr!r}")
    env = {s: Fraction(v) for s, v in zip(SLOTS, params)}

    def ev(node: ast.AST) -> Fraction:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int):
                raise FixtureError(f"non-integer constant in {expr!r}")
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise FixtureError(f"unknown name {node.id!r} in {expr!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp):
            return -ev(node.operand)
        left, right = ev(node.left), ev(node.right)
        op = node.op
        if isinstance(op, ast.Add):
            return left + right
        if isinstance(op, ast.Sub):
            return left - right
        if isinstance(op, ast.Mult):
            return left * right
        if isinstance(op, ast.Pow):
            if right.denominator != 1 or right < 0:
                raise FixtureError(f"bad exponent in {expr!r}")
            return left ** int(right)
        return left / right

    return ev(tree)


def load_formulas(path: str | os.PathLike | None = None) -> dict[str, FormulaRow]:
    p = Path(path) if path is not None else fixture_dir() / FORMULA_FILE
    out: dict[str, FormulaRow] = {}
    for lineno, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 3:
            raise ParseError(lineno, f"expected 3 tab-separated fields, found {len(fields)}")
        try:
            desc = resolve_type(fields[0])
        except UnknownType:
            raise ParseError(lineno, f"unknown type {fields[0]!r}") from None
        weights = tuple(w.strip() for w in fields[1].split(";"))
        if len(weights) != desc.arity:
            raise ParseError(lineno, f"{desc.id} needs {desc.arity} weight formulas")
        if desc.id in out:
            raise DuplicateItem(f"line {lineno}: {desc.id} listed twice")
        out[desc.id] = FormulaRow(desc.id, weights, fields[2].strip())
    return out


# -- suspect list ------------------------------------------------------------

@dataclass(frozen=True)
class Suspect:
    type_id: str
    item: str
    kind: str
    generated: str
    note: str


def load_suspects(path: str | os.PathLike | None = None) -> tuple[Suspect, ...]:
    p = Path(path) if path is not None else fixture_dir() / SUSPECT_FILE
    out = []
    for lineno, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 5:
            raise ParseError(lineno, f"expected 5 tab-separated fields, found {len(fields)}")
        out.append(Suspect(resolve_type(fields[0]).id, *fields[1:]))
    return tuple(out)
