"""Rational members of each family, infinite-family detection, and table diffs."""

from __future__ import annotations

import heapq
import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .catalog import (
    SLOTS,
    CatalogError,
    Instance,
    TypeDescriptor,
    _canonicalizer,
    alpha_at_ones,
    canonical_params,
    in_domain,
    milnor_closed_form,
    orbit,
    polynomial_support,
    resolve_type,
    surface_types,
    threefold_types,
    validate_params,
    weights_of,
)
from .fixtures import Fixture, FixtureEntry, format_values


class MonotonicityViolation(RuntimeError):
    """The rational values of a free parameter do not form an initial segment."""


class UnlabeledRational(RuntimeError):
    pass


@dataclass(frozen=True)
class Bounds:
    limits: tuple[int, ...]

    @classmethod
    def uniform(cls, limit: int, arity: int) -> "Bounds":
        if limit < 1:
            raise ValueError("bounds must be positive")
        return cls((limit,) * arity)

    @classmethod
    def coerce(cls, value: "Bounds | int", arity: int) -> "Bounds":
        if isinstance(value, Bounds):
            if len(value.limits) != arity:
                raise ValueError(f"bounds have {len(value.limits)} entries, expected {arity}")
            return value
        return cls.uniform(int(value), arity)


# -- exact alpha on integer pairs -------------------------------------------

def _alpha_pair(desc: TypeDescriptor, params: Sequence[int]) -> tuple[int, int] | None:
    """alpha(1,...,1) as (numerator, positive denominator), or None if invalid."""
    nums, dens = [], []
    for n, d in desc.weight_pairs(*params):
        if d == 0:
            return None
        if d < 0:
            n, d = -n, -d
        if n <= d:  # weight <= 1
            return None
        nums.append(n)
        dens.append(d)
    total = 1
    for n in nums:
        total *= n
    acc = 0
    for i, d in enumerate(dens):
        acc += d * total // nums[i]
    return acc, total


def _rational_flag(desc: TypeDescriptor, params: Sequence[int]) -> bool | None:
    pair = _alpha_pair(desc, params)
    if pair is None:
        return None
    return pair[0] > pair[1]


def is_rational(instance: Instance) -> bool:
    """The rationality criterion alpha(1,...,1) > 1."""
    return alpha_at_ones(instance) > 1


# -- enumeration ------------------------------------------------------------

def _scan_box(desc: TypeDescriptor, limits: Sequence[int]) -> Iterable[tuple[int, ...]]:
    """Rational tuples in the box between slot minimums and limits.

    Pruning relies on the rational set being closed under decreasing any
    parameter, which the property tests check over a grid.
    """
    n = desc.arity
    mins = desc.minimums

    def rec(prefix: list[int]) -> Iterable[tuple[int, ...]]:
        k = len(prefix)
        if k == n - 1:
            for v in range(mins[k], limits[k] + 1):
                flag = _rational_flag(desc, prefix + [v])
                if flag:
                    yield tuple(prefix) + (v,)
                elif flag is False:
                    break
            return
        for v in range(mins[k], limits[k] + 1):
            probe = prefix + [v] + list(mins[k + 1:])
            if _rational_flag(desc, probe) is False:
                break
            prefix.append(v)
            yield from rec(prefix)
            prefix.pop()

    if any(limits[k] < mins[k] for k in range(n)):
        return
    yield from rec([])


def rational_tuples(type_id: str | TypeDescriptor, bounds: Bounds | int) -> frozenset[tuple[int, ...]]:
    """Canonical representatives of tuples meeting the criterion within bounds.

    Link solvability is not required here.
    """
    desc = resolve_type(type_id)
    limits = Bounds.coerce(bounds, desc.arity).limits
    canon = _canonicalizer(desc)
    return frozenset(map(canon, _scan_box(desc, limits)))


def _instance_for(desc: TypeDescriptor, params: tuple[int, ...]) -> Instance | None:
    for img in (params,) + orbit(desc, params):
        if not in_domain(desc, img):
            continue
        try:
            return validate_params(desc, img)
        except CatalogError:
            continue
    return None


def enumerate_rational(type_id: str | TypeDescriptor, bounds: Bounds | int,
                       fixed: Mapping[str, int] | None = None,
                       require_links: bool = True) -> list[Instance]:
    """Valid rational instances within bounds, one per symmetry class, sorted.

    ``fixed`` filters the canonical representatives by slot letter.
    """
    desc = resolve_type(type_id)
    fixed = dict(fixed or {})
    for slot in fixed:
        if slot not in desc.slots:
            raise ValueError(f"{desc.id} has no slot {slot!r}")
    out = []
    for t in sorted(rational_tuples(desc, bounds)):
        if any(t[SLOTS.index(s)] != v for s, v in fixed.items()):
            continue
        if require_links:
            inst = _instance_for(desc, t)
            if inst is None:
                continue
        else:
            inst = validate_params(desc, t, require_links=False)
        out.append(inst)
    return out


# -- frontier analysis ------------------------------------------------------

class _Poly:
    """Integer polynomial in one variable, coefficients low to high."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[int]):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @staticmethod
    def lift(x: "int | _Poly") -> "_Poly":
        return x if isinstance(x, _Poly) else _Poly((x,))

    def __add__(self, other):
        o = _Poly.lift(other)
        n = max(len(self.c), len(o.c))
        return _Poly([(self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0)
                      for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return _Poly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-_Poly.lift(other))

    def __rsub__(self, other):
        return _Poly.lift(other) - self

    def __mul__(self, other):
        o = _Poly.lift(other)
        if not self.c or not o.c:
            return _Poly(())
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    out[i + j] += x * y
        return _Poly(out)

    __rmul__ = __mul__

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0


@dataclass(frozen=True)
class FamilyVerdict:
    kind: str  # "InfiniteFamily" or "FiniteWithMax"
    max_value: int | None
    limit_alpha: Fraction


INFINITE = "InfiniteFamily"
FINITE = "FiniteWithMax"


def _fill(desc: TypeDescriptor, fixed: Mapping | Sequence, free_slot: int | str
          ) -> tuple[list, int]:
    k = SLOTS.index(free_slot) if isinstance(free_slot, str) else int(free_slot)
    if not 0 <= k < desc.arity:
        raise ValueError(f"{desc.id} has no slot {free_slot!r}")
    if isinstance(fixed, Mapping):
        params: list = [None] * desc.arity
        for key, v in fixed.items():
            j = SLOTS.index(key) if isinstance(key, str) else int(key)
            params[j] = v
        params[k] = None
    else:
        params = list(fixed)
        if len(params) == desc.arity - 1:
            params.insert(k, None)
        params[k] = None
    if len(params) != desc.arity or any(p is None for i, p in enumerate(params) if i != k):
        raise ValueError(f"{desc.id}: every slot except the free one must be fixed")
    return params, k


def _limit(desc: TypeDescriptor, params: list, k: int) -> tuple[Fraction, int]:
    """Limit of alpha(1,...,1) and the eventual sign of alpha - 1."""
    sym = list(params)
    sym[k] = _Poly((0, 1))
    nums, dens = [], []
    for n, d in desc.weight_pairs(*sym):
        nums.append(_Poly.lift(n))
        dens.append(_Poly.lift(d))
    den = _Poly((1,))
    for n in nums:
        den = den * n
    num = _Poly(())
    for i, d in enumerate(dens):
        term = d
        for j, n in enumerate(nums):
            if j != i:
                term = term * n
        num = num + term
    if not den.c:
        raise CatalogError(f"{desc.id}: a weight vanishes identically along the free slot")
    if num.degree < den.degree:
        limit = Fraction(0)
    elif num.degree == den.degree:
        limit = Fraction(num.lead, den.lead)
    else:
        raise CatalogError(f"{desc.id}: alpha grows without bound along the free slot")
    diff = num - den
    sign = 0 if not diff.c else (1 if diff.lead * den.lead > 0 else -1)
    return limit, sign


def frontier_analysis(type_id: str | TypeDescriptor, fixed: Mapping | Sequence,
                      free_slot: int | str, *, start: int | None = None,
                      probe: int = 32) -> FamilyVerdict:
    """Classify the free parameter's rational values as finite or unbounded.

    The limit of alpha(1,...,1) is the ratio of leading coefficients of its
    numerator and denominator in the free parameter.  Values from ``start``
    over ``probe`` further steps are checked to form an initial segment.
    """
    desc = resolve_type(type_id)
    params, k = _fill(desc, fixed, free_slot)
    limit, sign = _limit(desc, params, k)
    lo = desc.minimums[k] if start is None else start

    def flag(t: int) -> bool | None:
        params[k] = t
        return _rational_flag(desc, params)

    last = None
    seen_false = False
    t = lo
    while t <= lo + probe or (sign <= 0 and not seen_false):
        f = flag(t)
        if f:
            if seen_false:
                raise MonotonicityViolation(
                    f"{desc.id}{tuple(params)}: rational again at {SLOTS[k]}={t}")
            last = t
        elif f is False:
            seen_false = True
        t += 1
    if sign > 0:
        if seen_false:
            raise MonotonicityViolation(
                f"{desc.id}: slot {SLOTS[k]} is eventually rational but fails inside the probe")
        return FamilyVerdict(INFINITE, None, limit)
    return FamilyVerdict(FINITE, last, limit)


# -- table regeneration -----------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    type_id: str
    prefix: tuple[int, ...]
    lo: int
    hi: int | None  # None when unbounded

    def text(self) -> str:
        desc = resolve_type(self.type_id)
        slots = " ".join(f"{s}={v}" for s, v in zip(desc.slots, self.prefix))
        last = desc.slots[-1]
        rng = f"ge({self.lo})" if self.hi is None else (
            f"set{{{self.lo}}}" if self.hi == self.lo else f"set{{{self.lo}..{self.hi}}}")
        return f"{desc.numeral}\t{slots}\t{last}:{rng}"


class TableDocument:
    """Generated rational tuples per type; rows are built on first access."""

    def __init__(self, bounds: int, type_ids: tuple[str, ...], tuples: Mapping[str, frozenset]):
        self.bounds = bounds
        self.type_ids = type_ids
        self.tuples = dict(tuples)
        self._rows: tuple[TableRow, ...] | None = None

    @property
    def rows(self) -> tuple[TableRow, ...]:
        if self._rows is None:
            rows: list[TableRow] = []
            for tid in self.type_ids:
                rows.extend(_rows_for(resolve_type(tid), self.tuples[tid], self.bounds))
            self._rows = tuple(rows)
        return self._rows

    def to_text(self) -> str:
        head = f"# bounds {self.bounds}\n"
        return head + "".join(r.text() + "\n" for r in self.rows)


def _runs(values: Sequence[int]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for v in values:
        if out and v == out[-1][1] + 1:
            out[-1] = (out[-1][0], v)
        else:
            out.append((v, v))
    return out


def _rows_for(desc: TypeDescriptor, tuples: Iterable[tuple[int, ...]], limit: int) -> list[TableRow]:
    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for t in tuples:
        groups[t[:-1]].append(t[-1])
    rows = []
    for prefix in sorted(groups):
        for lo, hi in _runs(sorted(groups[prefix])):
            end: int | None = hi
            if hi == limit:
                verdict = frontier_analysis(desc, list(prefix), desc.arity - 1, start=lo, probe=0)
                if verdict.kind == INFINITE:
                    end = None
                elif verdict.max_value is not None and verdict.max_value > hi:
                    end = verdict.max_value
            rows.append(TableRow(desc.id, prefix, lo, end))
    return rows


def regenerate_table(type_ids: Iterable[str] | str = "all", bounds: int = 50) -> TableDocument:
    """Rational tuples of the requested threefold types, compressed into rows."""
    if type_ids == "all":
        descs = list(threefold_types())
    else:
        ids = [type_ids] if isinstance(type_ids, str) else list(type_ids)
        descs = [resolve_type(t) for t in ids]
    tuples = {desc.id: rational_tuples(desc, bounds) for desc in descs}
    return TableDocument(bounds, tuple(d.id for d in descs), tuples)


# -- table diffs --------------------------------------------------------------

MISSING = "missing"
EXTRA = "extra"
RANGE_MISMATCH = "range-mismatch"
VERDICT_MISMATCH = "verdict-mismatch"
COVERAGE_MISMATCH = "CoverageMismatch"


@dataclass(frozen=True)
class DiffEntry:
    kind: str
    type_id: str
    path: str
    printed: str
    generated: str

    def text(self) -> str:
        return "\t".join((self.kind, self.path, self.printed, self.generated))


@dataclass(frozen=True)
class DiffReport:
    entries: tuple[DiffEntry, ...]
    # pairs of item paths listing common tuples, with the number shared
    overlaps: tuple[tuple[tuple[str, ...], int], ...] = ()

    @property
    def empty(self) -> bool:
        return not self.entries

    def to_text(self) -> str:
        return "".join(e.text() + "\n" for e in self.entries)


def _printed(entry: FixtureEntry) -> str:
    return "\t".join(entry.serialize().split("\t")[2:4])


def _line_cover(points: Iterable[tuple[int, ...]]) -> list[tuple[int, tuple[int, ...], list[int]]]:
    """Greedy cover of a point set by maximal axis-parallel runs.

    Each run is (slot, point with that slot zeroed, consecutive values).
    """
    remaining = set(points)
    if not remaining:
        return []
    n = len(next(iter(remaining)))
    heap = []
    for k in range(n):
        groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
        for u in remaining:
            groups[u[:k] + (0,) + u[k + 1:]].append(u[k])
        for rest, values in groups.items():
            for lo, hi in _runs(sorted(values)):
                heap.append((lo - hi, k, rest, lo, hi))
    heapq.heapify(heap)
    out = []
    while remaining:
        _, k, rest, lo, hi = heapq.heappop(heap)
        alive = [v for v in range(lo, hi + 1) if rest[:k] + (v,) + rest[k + 1:] in remaining]
        pieces = _runs(alive)
        if len(pieces) == 1 and pieces[0] == (lo, hi):
            for v in alive:
                remaining.discard(rest[:k] + (v,) + rest[k + 1:])
            out.append((k, rest, alive))
        else:
            for plo, phi in pieces:
                heapq.heappush(heap, (plo - phi, k, rest, plo, phi))
    out.sort(key=lambda r: (r[1][:r[0]] + r[1][r[0] + 1:], r[0], r[2][0]))
    return out


def _replacement(desc: TypeDescriptor, oriented: Iterable[tuple[int, ...]], limit: int) -> str:
    """Generated rows in an entry's printed orientation; runs reaching the
    bound are extended by frontier analysis."""
    parts = []
    for k, rest, values in _line_cover(oriented):
        prefix = " ".join(f"{SLOTS[i]}={v}" for i, v in enumerate(rest) if i != k)
        if len(values) == 1:
            parts.append(" ".join(f"{SLOTS[i]}={v}" for i, v in
                                  enumerate(rest[:k] + (values[0],) + rest[k + 1:])))
            continue
        rng = f"set{{{format_values(values)}}}"
        if values[-1] == limit:
            params = list(rest)
            verdict = frontier_analysis(desc, params, k, start=values[0], probe=0)
            if verdict.kind == INFINITE:
                rng = f"ge({values[0]})"
            elif verdict.max_value is not None and verdict.max_value > limit:
                rng = f"set{{{values[0]}..{verdict.max_value}}}"
        parts.append(f"{prefix} {SLOTS[k]}:{rng}".strip())
    return "; ".join(parts)


_FULL_ROWS = 6


Relaxation = tuple[tuple[int, int] | None, tuple[int, ...]]


def _swap(t: tuple[int, ...], tau: tuple[int, int] | None) -> tuple[int, ...]:
    if tau is None:
        return t
    i, j = tau
    u = list(t)
    u[i], u[j] = u[j], u[i]
    return tuple(u)


def _swapped_distance(entry: FixtureEntry, params: tuple[int, ...],
                      tau: tuple[int, int] | None, relax: Sequence[int]) -> int | None:
    if tau is None:
        return entry.distance(params, relax)
    # a transposition is applied in the printed slot order
    for u in entry.reorderings(params):
        if entry.accepts(_swap(u, tau), relax):
            return 0
    return None


def _relaxations(entry: FixtureEntry, arity: int, suspicious: bool) -> list[list[Relaxation]]:
    """Escalating ways to loosen an entry: ignore the run slot, read two slots
    transposed (only for entries already in doubt), ignore one more slot,
    then ignore every free slot."""
    run = entry.run_slot
    free = tuple(s for s, _ in entry.free)
    base = (run,) if run is not None else ()
    swaps = list(itertools.combinations(range(arity), 2)) if suspicious else []
    return [
        [(None, base)] if base else [],
        [(tau, ()) for tau in swaps],
        [(tau, base) for tau in swaps] if base else [],
        [(None, tuple(sorted(set(base) | {j}))) for j in range(arity) if j not in base],
        [(None, free)] if free else [],
        [(None, tuple(sorted(set(free) | {j}))) for j in range(arity) if j not in free],
    ]


def _diff_type(desc: TypeDescriptor, gen: frozenset, entries: Sequence[FixtureEntry],
               limit: int) -> tuple[list[DiffEntry], Counter]:
    canon = _canonicalizer(desc)
    limits = (limit,) * desc.arity
    missing: dict[int, set] = defaultdict(set)
    per_entry: list[set] = []
    for i, e in enumerate(entries):
        mine = set(map(canon, e.expand(limits)))
        per_entry.append(mine)
        bad = mine.difference(gen)
        if bad:
            missing[i] = bad
    listed = set().union(*per_entry)
    extras = gen.difference(listed)

    novel: dict[int, int] = {}

    def novelty(i: int) -> int:
        # tuples listed by no other entry
        if not novel:
            counts = Counter(itertools.chain.from_iterable(per_entry))
            for j, mine in enumerate(per_entry):
                novel[j] = sum(1 for t in mine if counts[t] == 1)
        return novel[i]

    def suspicious(i: int) -> bool:
        return i in missing or 2 * novelty(i) <= len(per_entry[i])

    # attribute unlisted rational tuples line by line to the nearest entry
    attributed: dict[int, dict[tuple[int, ...], Relaxation]] = defaultdict(dict)
    unattributed = []
    for k, rest, values in _line_cover(extras):
        line = [rest[:k] + (v,) + rest[k + 1:] for v in values]
        images = [orbit(desc, t) for t in line]
        hit = None
        for tier in range(6):
            best = None
            for i, e in enumerate(entries):
                options = _relaxations(e, desc.arity, tier in (1, 2) and suspicious(i))[tier]
                for tau, relax in options:
                    cost = 0
                    for imgs in images:
                        d = [x for x in (_swapped_distance(e, img, tau, relax) for img in imgs)
                             if x is not None]
                        if not d:
                            break
                        cost += min(d)
                    else:
                        # keep the most printed values, stay nearest, and
                        # prefer entries that add little of their own
                        kept = sum(1 for slot, _ in e.fixed if slot not in relax)
                        key = (-kept, cost, novelty(i), i)
                        if best is None or key < best[0]:
                            best = (key, i, (tau, relax))
            if best is not None:
                hit = best[1:]
                break
        if hit is None:
            unattributed.extend(line)
        else:
            i, how = hit
            for t in line:
                attributed[i][t] = how

    out: list[DiffEntry] = []
    for i in sorted(set(missing) | set(attributed)):
        e = entries[i]
        base: Relaxation = (None, (e.run_slot,) if e.run_slot is not None else ())

        def oriented_form(t: tuple[int, ...], how: Relaxation) -> tuple[int, ...] | None:
            tau, relax = how
            for img in orbit(desc, t):
                for u in e.reorderings(img):
                    if e.accepts(_swap(u, tau), relax):
                        return u
            return None

        plus = {oriented_form(t, how) for t, how in attributed[i].items()}
        kept_own = {oriented_form(t, base) for t in per_entry[i] - missing[i]}
        oriented = (plus | kept_own) - {None}
        if not oriented:
            out.append(DiffEntry(MISSING, desc.id, e.path, _printed(e), "-"))
            continue
        if len(_line_cover(oriented)) <= _FULL_ROWS:
            generated = _replacement(desc, oriented, limit)
        else:
            # too many rows to restate: give the printed entry with additions and removals
            minus = {oriented_form(t, (None, ())) for t in missing[i]} - {None}
            generated = _printed(e).replace("\t", " ")
            if plus - {None}:
                generated += " plus " + _replacement(desc, plus - {None}, limit)
            if minus:
                generated += " minus " + _replacement(desc, minus, limit)
        out.append(DiffEntry(RANGE_MISMATCH, desc.id, e.path, _printed(e), generated))
    if unattributed:
        out.append(DiffEntry(EXTRA, desc.id, desc.numeral, "-",
                             _replacement(desc, unattributed, limit)))

    flagged = set(missing) | set(attributed)
    for i, e in enumerate(entries):
        if i in flagged or e.run_slot is None:
            continue
        k = e.run_slot
        if not dict(e.free)[k].unbounded:
            continue
        seen = set()
        for point in e.spot_points():
            rest = point[:k] + point[k + 1:]
            if rest in seen:
                continue
            seen.add(rest)
            if len(seen) > 3:
                break
            verdict = frontier_analysis(desc, list(point), k, start=point[k], probe=0)
            if verdict.kind == FINITE:
                shown = " ".join(f"{SLOTS[j]}={v}" for j, v in enumerate(point) if j != k)
                out.append(DiffEntry(VERDICT_MISMATCH, desc.id, e.path, _printed(e),
                                     f"{shown} {SLOTS[k]}:max({verdict.max_value})"))
                break

    overlaps: Counter = Counter()
    for i, j in itertools.combinations(range(len(entries)), 2):
        shared = len(per_entry[i] & per_entry[j])
        if shared:
            overlaps[(entries[i].path, entries[j].path)] = shared
    return out, overlaps


def diff_table(generated: TableDocument, fixture: Fixture) -> DiffReport:
    """Compare regenerated rational tuples with the printed entries.

    Listed tuples that are not rational, and rational tuples reachable by
    widening an entry's ranges, are reported against that entry with the
    generated replacement.  Unbounded ranges are confirmed by frontier
    analysis at a few instantiations.
    """
    out: list[DiffEntry] = []
    overlaps: Counter = Counter()
    fixture_types = {e.type_id for e in fixture.entries}
    for tid in generated.type_ids:
        desc = resolve_type(tid)
        entries = fixture.for_type(tid)
        if tid not in fixture_types:
            out.append(DiffEntry(COVERAGE_MISMATCH, tid, desc.numeral, "-",
                                 f"{len(generated.tuples[tid])} tuples"))
            continue
        found, over = _diff_type(desc, generated.tuples[tid], entries, generated.bounds)
        out.extend(found)
        overlaps.update(over)
    for tid in sorted(fixture_types - set(generated.type_ids), key=lambda t: resolve_type(t).index):
        desc = resolve_type(tid)
        out.append(DiffEntry(COVERAGE_MISMATCH, tid, desc.numeral,
                             f"{len(fixture.for_type(tid))} entries", "-"))
    return DiffReport(tuple(out), tuple(sorted(overlaps.items())))


# -- surface mode -----------------------------------------------------------

def _ade_forms(mu: int) -> list[tuple[str, tuple[Fraction, ...]]]:
    """Sorted weights of the Du Val normal forms with Milnor number ``mu``."""
    forms = [(f"A_{mu}", (Fraction(2), Fraction(2), Fraction(mu + 1)))]
    if mu >= 4:
        forms.append((f"D_{mu}", tuple(sorted((Fraction(2), Fraction(2 * (mu - 1), mu - 2),
                                               Fraction(mu - 1))))))
    exceptional = {6: (2, 3, 4), 7: (2, 3, Fraction(9, 2)), 8: (2, 3, 5)}
    if mu in exceptional:
        forms.append((f"E_{mu}", tuple(Fraction(w) for w in exceptional[mu])))
    return forms


def ade_label(instance: Instance) -> str:
    """Du Val label of a rational surface instance, matched by Milnor number
    and weights."""
    weights = tuple(sorted(weights_of(instance)))
    if len(weights) != 3:
        raise ValueError("ADE labels apply to surface instances")
    mu = milnor_closed_form(instance)
    for label, form in _ade_forms(mu):
        if form == weights:
            return label
    raise UnlabeledRational(f"{instance.type_id}{instance.params}: mu={mu}, weights {weights}")


@dataclass(frozen=True)
class ADEMatch:
    instance: Instance
    label: str
    mu: int


@dataclass(frozen=True)
class SurfaceClassification:
    matches: tuple[ADEMatch, ...]
    # (type id, other parameters, free slot, verdict) for each run reaching the bound
    families: tuple[tuple[str, tuple[int, ...], int, FamilyVerdict], ...]

    def by_label(self) -> dict[str, list[ADEMatch]]:
        groups: dict[str, list[ADEMatch]] = defaultdict(list)
        for m in self.matches:
            groups[m.label].append(m)
        return dict(groups)


def surface_classification(bounds: int = 30) -> SurfaceClassification:
    """Label every rational surface instance within bounds and run frontier
    analysis on runs that reach the bound."""
    matches = []
    families = []
    for desc in surface_types():
        instances = enumerate_rational(desc, bounds)
        for inst in instances:
            matches.append(ADEMatch(inst, ade_label(inst), milnor_closed_form(inst)))
        seen = set()
        for t in sorted(rational_tuples(desc, bounds)):
            for k in range(desc.arity):
                if t[k] != bounds:
                    continue
                rest = t[:k] + t[k + 1:]
                if (k, rest) in seen:
                    continue
                seen.add((k, rest))
                families.append((desc.id, rest, k, frontier_analysis(desc, list(rest), k)))
    return SurfaceClassification(tuple(matches), tuple(families))
