"""Catalog of weighted homogeneous isolated singularity families.

Each family is described by a pointer map on the variables: variable ``i``
carries the monomial ``z_i^{e_i}`` times, optionally, one partner variable to
the first power.  Families whose pointer graph has two variables feeding the
same target need an extra binomial in those two variables (a *link*).

Weights are kept exact.  Each family stores its weight and Milnor number
closed forms as ``(numerator, denominator)`` polynomial pairs so the same
expressions evaluate over integers, fractions, or polynomials in a free
parameter.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

VARIABLES = ("x", "y", "z", "w")
SLOTS = ("a", "b", "c", "d")

Pair = tuple  # (numerator, denominator) built from +, -, * only


class CatalogError(ValueError):
    """Base class for parameter validation failures."""


class ArityMismatch(CatalogError):
    pass


class NonpositiveWeight(CatalogError):
    """A weight is not strictly greater than one."""


class UnsolvableLink(CatalogError):
    pass


class DegenerateDenominator(CatalogError):
    pass


class BelowSlotMinimum(CatalogError):
    """A parameter lies below the smallest value its slot admits."""


class NonIntegerMu(CatalogError):
    pass


class UnknownType(CatalogError):
    pass


@dataclass(frozen=True)
class TypeDescriptor:
    id: str
    family: str
    numeral: str
    index: int
    pointers: tuple[int | None, ...]
    links: tuple[tuple[int, int], ...]
    minimums: tuple[int, ...]
    weight_pairs: Callable[..., tuple[Pair, ...]]
    mu_pair: Callable[..., Pair]

    @property
    def arity(self) -> int:
        return len(self.pointers)

    @property
    def slots(self) -> tuple[str, ...]:
        return SLOTS[: self.arity]

    @property
    def symmetries(self) -> tuple[tuple[int, ...], ...]:
        return _automorphisms(self.pointers)

    def __repr__(self) -> str:
        return f"TypeDescriptor({self.id})"


@dataclass(frozen=True)
class LinkExponents:
    first: tuple[int, int] | None = None
    second: tuple[int, int] | None = None
    surface: tuple[int, int] | None = None

    def as_tuple(self) -> tuple[tuple[int, int], ...]:
        if self.surface is not None:
            return (self.surface,)
        return tuple(x for x in (self.first, self.second) if x is not None)


@dataclass(frozen=True)
class Instance:
    type_id: str
    params: tuple[int, ...]
    links: LinkExponents = LinkExponents()


@lru_cache(maxsize=None)
def _automorphisms(pointers: tuple[int | None, ...]) -> tuple[tuple[int, ...], ...]:
    n = len(pointers)
    out = []
    for sigma in itertools.permutations(range(n)):
        if all(
            pointers[sigma[i]] == (None if pointers[i] is None else sigma[pointers[i]])
            for i in range(n)
        ):
            out.append(sigma)
    return tuple(out)


# Threefold families.  Slot k is the exponent on the dominant variable k.
_THREEFOLD: list[tuple] = [
    ("I", (None, None, None, None), (), (2, 2, 2, 2),
     lambda a, b, c, d: ((a, 1), (b, 1), (c, 1), (d, 1)),
     lambda a, b, c, d: ((a - 1) * (b - 1) * (c - 1) * (d - 1), 1)),
    ("II", (None, None, None, 2), (), (2, 2, 2, 2),
     lambda a, b, c, d: ((a, 1), (b, 1), (c, 1), (c * d, c - 1)),
     lambda a, b, c, d: ((a - 1) * (b - 1) * (c * (d - 1) + 1), 1)),
    ("III", (None, None, 3, 2), (), (2, 2, 2, 2),
     lambda a, b, c, d: ((a, 1), (b, 1), (c * d - 1, d - 1), (c * d - 1, c - 1)),
     lambda a, b, c, d: ((a - 1) * (b - 1) * c * d, 1)),
    ("IV", (None, 0, None, 2), (), (2, 1, 2, 1),
     lambda a, b, c, d: ((a, 1), (a * b, a - 1), (c, 1), (c * d, c - 1)),
     lambda a, b, c, d: ((a * (b - 1) + 1) * (c * (d - 1) + 1), 1)),
    ("V", (1, 0, None, 2), (), (2, 2, 2, 1),
     lambda a, b, c, d: ((a * b - 1, b - 1), (a * b - 1, a - 1), (c, 1), (c * d, c - 1)),
     lambda a, b, c, d: (a * b * (c * (d - 1) + 1), 1)),
    ("VI", (1, 0, 3, 2), (), (2, 2, 2, 2),
     lambda a, b, c, d: ((a * b - 1, b - 1), (a * b - 1, a - 1),
                         (c * d - 1, d - 1), (c * d - 1, c - 1)),
     lambda a, b, c, d: (a * b * c * d, 1)),
    ("VII", (None, None, 1, 2), (), (2, 2, 1, 1),
     lambda a, b, c, d: ((a, 1), (b, 1), (b * c, b - 1), (b * c * d, b * (c - 1) + 1)),
     lambda a, b, c, d: ((a - 1) * (b * c * (d - 1) + b - 1), 1)),
    ("VIII", (None, None, 1, 1), ((2, 3),), (2, 2, 1, 1),
     lambda a, b, c, d: ((a, 1), (b, 1), (b * c, b - 1), (b * d, b - 1)),
     lambda a, b, c, d: ((a - 1) * (b * (c - 1) + 1) * (b * (d - 1) + 1), b - 1)),
    ("IX", (None, 3, 3, 1), ((1, 2),), (2, 2, 1, 2),
     lambda a, b, c, d: ((a, 1), (b * d - 1, d - 1), (c * (b * d - 1), b * (d - 1)),
                         (b * d - 1, b - 1)),
     lambda a, b, c, d: ((a - 1) * d * (c * (b * d - 1) - b * (d - 1)), d - 1)),
    ("X", (None, 2, 3, 1), (), (2, 1, 1, 1),
     lambda a, b, c, d: ((a, 1), (b * c * d + 1, d * (c - 1) + 1),
                         (b * c * d + 1, b * (d - 1) + 1), (b * c * d + 1, c * (b - 1) + 1)),
     lambda a, b, c, d: ((a - 1) * b * c * d, 1)),
    ("XI", (None, 0, 1, 2), (), (2, 1, 1, 1),
     lambda a, b, c, d: ((a, 1), (a * b, a - 1), (a * b * c, a * (b - 1) + 1),
                         (a * b * c * d, a * b * (c - 1) + a - 1)),
     lambda a, b, c, d: (a * b * c * (d - 1) + a * (b - 1) + 1, 1)),
    ("XII", (None, 0, 0, 1), ((1, 2),), (2, 1, 1, 1),
     lambda a, b, c, d: ((a, 1), (a * b, a - 1), (a * c, a - 1), (a * b * d, a * (b - 1) + 1)),
     lambda a, b, c, d: ((a * (c - 1) + 1) * (a * b * (d - 1) + a - 1), a - 1)),
    ("XIII", (None, 0, 1, 1), ((2, 3),), (2, 1, 1, 1),
     lambda a, b, c, d: ((a, 1), (a * b, a - 1), (a * b * c, a * (b - 1) + 1),
                         (a * b * d, a * (b - 1) + 1)),
     lambda a, b, c, d: ((a * b * (c - 1) + a - 1) * (a * b * (d - 1) + a - 1),
                         a * (b - 1) + 1)),
    ("XIV", (None, 0, 0, 0), ((1, 2), (2, 3)), (2, 1, 1, 1),
     lambda a, b, c, d: ((a, 1), (a * b, a - 1), (a * c, a - 1), (a * d, a - 1)),
     lambda a, b, c, d: ((a * (b - 1) + 1) * (a * (c - 1) + 1) * (a * (d - 1) + 1),
                         (a - 1) * (a - 1))),
    ("XV", (1, 0, 0, 2), ((1, 2),), (2, 2, 1, 1),
     lambda a, b, c, d: ((a * b - 1, b - 1), (a * b - 1, a - 1), (c * (a * b - 1), b * (a - 1)),
                         (c * d * (a * b - 1), c * (a * b - 1) - b * (a - 1))),
     lambda a, b, c, d: (a * (c * (d - 1) * (a * b - 1) + b * (a - 1)), a - 1)),
    ("XVI", (1, 0, 0, 0), ((1, 2), (2, 3)), (2, 2, 1, 1),
     lambda a, b, c, d: ((a * b - 1, b - 1), (a * b - 1, a - 1), (c * (a * b - 1), b * (a - 1)),
                         (d * (a * b - 1), b * (a - 1))),
     lambda a, b, c, d: (a * (c * (a * b - 1) - b * (a - 1)) * (d * (a * b - 1) - b * (a - 1)),
                         b * (a - 1) * (a - 1))),
    ("XVII", (1, 0, 1, 0), ((1, 3), (0, 2)), (2, 2, 1, 1),
     lambda a, b, c, d: ((a * b - 1, b - 1), (a * b - 1, a - 1), (c * (a * b - 1), a * (b - 1)),
                         (d * (a * b - 1), b * (a - 1))),
     lambda a, b, c, d: ((c * (a * b - 1) - a * (b - 1)) * (d * (a * b - 1) - b * (a - 1)),
                         (a - 1) * (b - 1))),
    ("XVIII", (2, 0, 1, 1), ((2, 3),), (1, 1, 1, 1),
     lambda a, b, c, d: ((a * b * c + 1, b * (c - 1) + 1), (a * b * c + 1, c * (a - 1) + 1),
                         (a * b * c + 1, a * (b - 1) + 1),
                         (d * (a * b * c + 1), c * (a * (b - 1) + 1))),
     lambda a, b, c, d: (a * b * (a * b * c * (d - 1) + c * (a - 1) + d), a * (b - 1) + 1)),
    ("XIX", (2, 0, 3, 1), (), (1, 1, 2, 2),
     lambda a, b, c, d: ((a * b * c * d - 1, b * (d * (c - 1) + 1) - 1),
                         (a * b * c * d - 1, d * (c * (a - 1) + 1) - 1),
                         (a * b * c * d - 1, a * (b * (d - 1) + 1) - 1),
                         (a * b * c * d - 1, c * (a * (b - 1) + 1) - 1)),
     lambda a, b, c, d: (a * b * c * d, 1)),
]

_SURFACE: list[tuple] = [
    ("I", (None, None, None), (), (2, 2, 2),
     lambda a, b, c: ((a, 1), (b, 1), (c, 1)),
     lambda a, b, c: ((a - 1) * (b - 1) * (c - 1), 1)),
    ("II", (None, None, 1), (), (2, 2, 2),
     lambda a, b, c: ((a, 1), (b, 1), (b * c, b - 1)),
     lambda a, b, c: ((a - 1) * (b * c - b + 1), 1)),
    ("III", (None, 2, 1), (), (2, 2, 2),
     lambda a, b, c: ((a, 1), (b * c - 1, c - 1), (b * c - 1, b - 1)),
     lambda a, b, c: ((a - 1) * b * c, 1)),
    ("IV", (None, 2, 0), (), (2, 2, 2),
     lambda a, b, c: ((a, 1), (a * b * c, a * c - a + 1), (a * c, a - 1)),
     lambda a, b, c: (a * c * (b - 1) + a - 1, 1)),
    ("V", (1, 2, 0), (), (2, 2, 2),
     lambda a, b, c: ((a * b * c + 1, b * c - c + 1), (a * b * c + 1, a * c - a + 1),
                      (a * b * c + 1, a * b - b + 1)),
     lambda a, b, c: (a * b * c, 1)),
    ("VI", (None, 0, 0), ((1, 2),), (2, 2, 2),
     lambda a, b, c: ((a, 1), (a * b, a - 1), (a * c, a - 1)),
     lambda a, b, c: ((a * b - a + 1) * (a * c - a + 1), a - 1)),
    ("VII", (1, 0, 0), ((1, 2),), (2, 2, 2),
     lambda a, b, c: ((a * b - 1, b - 1), (a * b - 1, a - 1), (c * (a * b - 1), b * (a - 1))),
     lambda a, b, c: (a * (a * b * c - a * b + b - c), a - 1)),
]


def _build() -> dict[str, TypeDescriptor]:
    out: dict[str, TypeDescriptor] = {}
    for family, rows in (("threefold", _THREEFOLD), ("surface", _SURFACE)):
        prefix = "Threefold" if family == "threefold" else "Surface"
        for index, (numeral, pointers, links, mins, wf, mf) in enumerate(rows, start=1):
            tid = f"{prefix}-{numeral}"
            out[tid] = TypeDescriptor(tid, family, numeral, index, pointers, links, mins, wf, mf)
    return out


_CATALOG = _build()


def catalog_types() -> tuple[TypeDescriptor, ...]:
    """All 26 families: 19 threefold types followed by 7 surface classes."""
    return tuple(_CATALOG.values())


def threefold_types() -> tuple[TypeDescriptor, ...]:
    return tuple(t for t in _CATALOG.values() if t.family == "threefold")


def surface_types() -> tuple[TypeDescriptor, ...]:
    return tuple(t for t in _CATALOG.values() if t.family == "surface")


def resolve_type(name: str | TypeDescriptor, surface: bool = False) -> TypeDescriptor:
    """Look up a family by full id (``Threefold-II``) or bare numeral (``II``)."""
    if isinstance(name, TypeDescriptor):
        return name
    key = name.strip()
    if key in _CATALOG:
        return _CATALOG[key]
    for prefix, full in (("S-", "Surface-"), ("T-", "Threefold-")):
        if key.startswith(prefix):
            key = full + key[len(prefix):]
            if key in _CATALOG:
                return _CATALOG[key]
    full = ("Surface-" if surface else "Threefold-") + key.upper()
    if full in _CATALOG:
        return _CATALOG[full]
    raise UnknownType(f"unknown type {name!r}")


def _fractions(pairs: Sequence[Pair]) -> tuple[Fraction, ...]:
    return tuple(Fraction(n, d) for n, d in pairs)


def weight_pairs(desc: TypeDescriptor, params: Sequence[int]) -> tuple[Pair, ...]:
    if len(params) != desc.arity:
        raise ArityMismatch(f"{desc.id} takes {desc.arity} parameters, got {len(params)}")
    return desc.weight_pairs(*params)


def _checked_weights(desc: TypeDescriptor, params: Sequence[int]) -> tuple[Fraction, ...]:
    pairs = weight_pairs(desc, params)
    for i, (_, den) in enumerate(pairs):
        if den == 0:
            raise DegenerateDenominator(
                f"{desc.id}{tuple(params)}: weight w{i} has a zero denominator")
    weights = _fractions(pairs)
    for i, w in enumerate(weights):
        if w <= 1:
            raise NonpositiveWeight(f"{desc.id}{tuple(params)}: w{i} = {w} is not > 1")
    return weights


def _solve_link(alpha_u: Fraction, alpha_v: Fraction) -> tuple[int, int] | None:
    # Smallest (p, q) in lexicographic order with p*alpha_u + q*alpha_v == 1.
    p = 0
    while p * alpha_u <= 1:
        rest = 1 - p * alpha_u
        q = rest / alpha_v
        if q.denominator == 1 and p + q >= 1:
            return p, int(q)
        p += 1
    return None


def link_satisfies(weights: Sequence[Fraction], pair: tuple[int, int],
                   exps: tuple[int, int]) -> bool:
    p, q = exps
    if p < 0 or q < 0 or p + q < 1:
        return False
    u, v = pair
    return p / weights[u] + q / weights[v] == 1


def _pack_links(desc: TypeDescriptor, found: Sequence[tuple[int, int]]) -> LinkExponents:
    if not found:
        return LinkExponents()
    if desc.family == "surface":
        return LinkExponents(surface=found[0])
    return LinkExponents(first=found[0], second=found[1] if len(found) > 1 else None)


def validate_params(type_id: str | TypeDescriptor, params: Sequence[int],
                    links: LinkExponents | Sequence[tuple[int, int]] | None = None,
                    *, require_links: bool = True,
                    require_isolated: bool | None = None) -> Instance:
    """Check a parameter tuple and return the instance with canonical links.

    Checks run in a fixed order so each rejected tuple raises one error:
    arity, non-positive entries, denominators, weights, slot minimums, Milnor
    integrality, links.  ``require_isolated`` defaults to ``require_links``;
    table mode turns both off and keeps tuples whose weights cannot belong to
    an isolated singularity.
    """
    if require_isolated is None:
        require_isolated = require_links
    desc = resolve_type(type_id)
    params = tuple(params)
    if len(params) != desc.arity:
        raise ArityMismatch(f"{desc.id} takes {desc.arity} parameters, got {len(params)}")
    if any(not isinstance(p, int) or isinstance(p, bool) for p in params):
        raise BelowSlotMinimum(f"{desc.id}: parameters must be integers, got {params}")
    if any(p < 1 for p in params):
        raise BelowSlotMinimum(f"{desc.id}{params}: parameters must be positive")
    weights = _checked_weights(desc, params)
    for slot, (p, m) in enumerate(zip(params, desc.minimums)):
        if p < m:
            raise BelowSlotMinimum(
                f"{desc.id}{params}: slot {SLOTS[slot]}={p} is below its minimum {m}")
    if require_isolated:
        mu = Fraction(1)
        for w in weights:
            mu *= w - 1
        if mu.denominator != 1:
            raise NonIntegerMu(
                f"{desc.id}{params}: prod(w_i - 1) = {mu}, so no isolated singularity "
                "has these weights")
    if isinstance(links, LinkExponents):
        given = links.as_tuple()
    else:
        given = tuple(tuple(x) for x in links) if links else ()
    if given and len(given) != len(desc.links):
        raise UnsolvableLink(
            f"{desc.id} takes {len(desc.links)} link exponent pairs, got {len(given)}")
    chosen: list[tuple[int, int]] = []
    for k, pair in enumerate(desc.links):
        if given:
            if not link_satisfies(weights, pair, given[k]):
                raise UnsolvableLink(
                    f"{desc.id}{params}: link exponents {given[k]} do not satisfy the constraint")
            chosen.append(given[k])
            continue
        sol = _solve_link(1 / weights[pair[0]], 1 / weights[pair[1]])
        if sol is None:
            if require_links:
                u, v = (VARIABLES[i] for i in pair)
                raise UnsolvableLink(
                    f"{desc.id}{params}: no monomial {u}^p*{v}^q has weight one")
            continue
        chosen.append(sol)
    return Instance(desc.id, params, _pack_links(desc, chosen))


def weights_of(instance: Instance) -> tuple[Fraction, ...]:
    return _checked_weights(resolve_type(instance.type_id), instance.params)


def alpha_of(instance: Instance, point: Sequence[int | Fraction]) -> Fraction:
    """The weight functional ``sum point_i / w_i``."""
    weights = weights_of(instance)
    if len(point) != len(weights):
        raise ArityMismatch(f"point {tuple(point)} has the wrong length")
    return sum((Fraction(p) / w for p, w in zip(point, weights)), Fraction(0))


def alpha_at_ones(instance: Instance) -> Fraction:
    return alpha_of(instance, (1,) * len(instance.params))


def milnor_closed_form(instance: Instance) -> int:
    desc = resolve_type(instance.type_id)
    num, den = desc.mu_pair(*instance.params)
    if den == 0:
        raise DegenerateDenominator(f"{desc.id}{instance.params}: Milnor formula divides by zero")
    mu = Fraction(num, den)
    if mu.denominator != 1 or mu < 1:
        raise NonIntegerMu(f"{desc.id}{instance.params}: Milnor formula gives {mu}")
    return int(mu)


def polynomial_support(instance: Instance) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors in display order: one per variable, then link monomials."""
    desc = resolve_type(instance.type_id)
    n = desc.arity
    out = []
    for i, (e, partner) in enumerate(zip(instance.params, desc.pointers)):
        v = [0] * n
        v[i] = e
        if partner is not None:
            v[partner] += 1
        out.append(tuple(v))
    for (u, w), (p, q) in zip(desc.links, instance.links.as_tuple()):
        v = [0] * n
        v[u] += p
        v[w] += q
        out.append(tuple(v))
    return tuple(out)


def render_monomial(vector: Sequence[int]) -> str:
    parts = []
    for var, e in zip(VARIABLES, vector):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts) if parts else "1"


def render_polynomial(instance: Instance) -> str:
    return " + ".join(render_monomial(v) for v in polynomial_support(instance))


def permute_params(params: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """Parameters after relabelling variable ``i`` as ``sigma[i]``."""
    out = [0] * len(params)
    for i, s in enumerate(sigma):
        out[s] = params[i]
    return tuple(out)


def orbit(desc: TypeDescriptor, params: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Distinct images of ``params`` under the family's symmetries, sorted."""
    return tuple(sorted({permute_params(params, s) for s in desc.symmetries}))


def in_domain(desc: TypeDescriptor, params: Sequence[int]) -> bool:
    return all(p >= m for p, m in zip(params, desc.minimums))


@lru_cache(maxsize=None)
def _canonicalizer(desc: TypeDescriptor) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
    if len(desc.symmetries) == 1:
        return tuple
    getters = []
    for sigma in desc.symmetries:
        inverse = [0] * len(sigma)
        for i, s in enumerate(sigma):
            inverse[s] = i
        getters.append(operator.itemgetter(*inverse))
    mins = desc.minimums
    symmetric_domain = all(permute_params(mins, s) == mins for s in desc.symmetries)

    def canon(params: tuple[int, ...]) -> tuple[int, ...]:
        images = [g(params) for g in getters]
        if symmetric_domain:
            return min(images)
        good = [img for img in images if all(p >= m for p, m in zip(img, mins))]
        return min(good or images)

    return canon


def canonical_params(desc: TypeDescriptor, params: Sequence[int]) -> tuple[int, ...]:
    """Smallest image under the family's symmetries, preferring images whose
    entries respect the slot minimums."""
    return _canonicalizer(desc)(tuple(params))
