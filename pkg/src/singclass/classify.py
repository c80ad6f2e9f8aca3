"""Match a support against the catalog skeletons.

For each variable ``i`` a skeleton picks one monomial ``z_i^e`` or
``z_i^e * z_j``.  The partner choices form a pointer graph on the variables;
two skeletons belong to the same family exactly when their pointer graphs
are isomorphic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .catalog import (
    CatalogError,
    LinkExponents,
    TypeDescriptor,
    _checked_weights,
    _pack_links,
    _solve_link,
    catalog_types,
    resolve_type,
)

Vector = tuple[int, ...]


class ClassifyError(ValueError):
    pass


class SupportError(ClassifyError):
    """The support is malformed."""


class NotIsolatedCandidate(ClassifyError):
    """Some variable has no admissible monomial."""


class NoCatalogMatch(ClassifyError):
    pass


@dataclass(frozen=True)
class Identification:
    type_id: str
    permutation: tuple[int, ...]
    params: tuple[int, ...]
    links: LinkExponents
    link_status: tuple[str, ...]
    residual: tuple[Vector, ...]

    def sort_key(self) -> tuple:
        return (resolve_type(self.type_id).index, self.permutation, self.params)


def normalize_support(support: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
    vecs = []
    for v in support:
        try:
            t = tuple(int(x) for x in v)
        except (TypeError, ValueError) as exc:
            raise SupportError(f"bad exponent vector {v!r}") from exc
        if any(x < 0 for x in t):
            raise SupportError(f"negative exponent in {t}")
        if not any(t):
            raise SupportError("the constant monomial is not allowed")
        vecs.append(t)
    if not vecs:
        raise SupportError("empty support")
    n = len(vecs[0])
    if n not in (3, 4) or any(len(v) != n for v in vecs):
        raise SupportError("exponent vectors must all have length 3 or 4")
    return tuple(sorted(set(vecs)))


def _pick_info(v: Vector, i: int) -> tuple[int, int | None] | None:
    """(exponent, partner) if ``v`` is admissible for variable ``i``."""
    if v[i] < 1:
        return None
    others = [(j, x) for j, x in enumerate(v) if j != i and x]
    if not others:
        return v[i], None
    if len(others) == 1 and others[0][1] == 1:
        return v[i], others[0][0]
    return None


def skeleton_candidates(support: Sequence[Sequence[int]]) -> tuple[tuple[Vector, ...], ...]:
    """Admissible monomials of the support, per variable."""
    vecs = normalize_support(support)
    out = []
    for i in range(len(vecs[0])):
        cands = tuple(v for v in vecs if _pick_info(v, i) is not None)
        if not cands:
            raise NotIsolatedCandidate(
                f"variable {i} has no monomial of the form z_{i}^e or z_{i}^e*z_j")
        out.append(cands)
    return tuple(out)


@lru_cache(maxsize=None)
def _graph_index(arity: int) -> dict[tuple, tuple[tuple[TypeDescriptor, tuple[int, ...]], ...]]:
    """Map every pointer graph to the (family, permutation) pairs realising it.

    ``permutation[k]`` is the coordinate playing the role of catalog variable k.
    """
    table: dict[tuple, list] = {}
    for desc in catalog_types():
        if desc.arity != arity:
            continue
        for sigma in itertools.permutations(range(arity)):
            graph = [None] * arity
            for k, partner in enumerate(desc.pointers):
                graph[sigma[k]] = None if partner is None else sigma[partner]
            table.setdefault(tuple(graph), []).append((desc, sigma))
    return {k: tuple(v) for k, v in table.items()}


def _resolve_links(desc: TypeDescriptor, sigma: tuple[int, ...], params: tuple[int, ...],
                   residual: list[Vector]) -> tuple[LinkExponents, tuple[str, ...], list[Vector]]:
    if not desc.links:
        return LinkExponents(), (), residual
    try:
        weights = _checked_weights(desc, params)
    except CatalogError:
        return LinkExponents(), ("unsolvable",) * len(desc.links), residual
    chosen, status = [], []
    rest = list(residual)
    for u, v in desc.links:
        cu, cv = sigma[u], sigma[v]
        found = sorted(
            (m[cu], m[cv]) for m in rest
            if all(x == 0 for j, x in enumerate(m) if j not in (cu, cv))
            and Fraction(m[cu]) / weights[u] + Fraction(m[cv]) / weights[v] == 1)
        if found:
            p, q = found[0]
            rest = [m for m in rest
                    if not (m[cu] == p and m[cv] == q
                            and all(x == 0 for j, x in enumerate(m) if j not in (cu, cv)))]
            chosen.append((p, q))
            status.append("found")
            continue
        sol = _solve_link(1 / weights[u], 1 / weights[v])
        if sol is None:
            status.append("unsolvable")
        else:
            chosen.append(sol)
            status.append("added")
    return _pack_links(desc, chosen), tuple(status), rest


def identify_all(support: Sequence[Sequence[int]]) -> list[Identification]:
    """Every skeleton match in the support, sorted by the tie-break order."""
    vecs = normalize_support(support)
    cands = skeleton_candidates(vecs)
    n = len(vecs[0])
    index = _graph_index(n)
    seen = {}
    for picks in itertools.product(*cands):
        if len(set(picks)) != n:
            continue
        info = [_pick_info(v, i) for i, v in enumerate(picks)]
        graph = tuple(p for _, p in info)
        for desc, sigma in index.get(graph, ()):
            params = tuple(info[sigma[k]][0] for k in range(n))
            residual = [v for v in vecs if v not in picks]
            links, status, rest = _resolve_links(desc, sigma, params, residual)
            ident = Identification(desc.id, sigma, params, links, status, tuple(rest))
            seen.setdefault(ident.sort_key(), ident)
    return [seen[k] for k in sorted(seen)]


def identify_type(support: Sequence[Sequence[int]]) -> Identification:
    """The match minimising (family index, permutation, parameters)."""
    matches = identify_all(support)
    if not matches:
        raise NoCatalogMatch("no catalog skeleton is contained in the support")
    return matches[0]


def all_skeletons(generic_exponents: Sequence[int]) -> list[tuple[Vector, ...]]:
    """Every support built from one admissible monomial per variable."""
    n = len(generic_exponents)
    per_var = []
    for i, e in enumerate(generic_exponents):
        opts = []
        base = [0] * n
        base[i] = e
        opts.append(tuple(base))
        for j in range(n):
            if j != i:
                v = list(base)
                v[j] = 1
                opts.append(tuple(v))
        per_var.append(opts)
    return [tuple(combo) for combo in itertools.product(*per_var)]


def skeleton_map(generic_exponents: Sequence[int]) -> list[tuple[tuple[Vector, ...], Identification]]:
    return [(s, identify_type(s)) for s in all_skeletons(generic_exponents)]
