"""Lattice points under the weight hyperplane and the geometric genus.

A region is the convex hull ``F`` of a support lying on ``alpha = 1``.  A
positive lattice point ``p`` lies in the closed cone ``Gamma_-`` over ``F``
when ``alpha(p) <= 1`` and ``p / alpha(p)`` is a convex combination of the
support vectors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .catalog import Instance, polynomial_support, weights_of


class NewtonError(ValueError):
    pass


class OffHyperplane(NewtonError):
    """A support vector does not satisfy ``alpha(v) = 1``."""


class NonIntegerProduct(NewtonError):
    pass


@dataclass(frozen=True)
class GenusReport:
    p_g: int
    witnesses: tuple[tuple[int, ...], ...]
    simplex_count: int


@dataclass(frozen=True)
class NewtonRegion:
    support: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...]
    # alpha(p) * scale == sum(p_i * coeffs_i) with integer coefficients
    scale: int = field(repr=False)
    coeffs: tuple[int, ...] = field(repr=False)
    # integer barycentric tests, one tuple of rows per full-rank subset
    cells: tuple[tuple[tuple[int, ...], ...], ...] = field(repr=False)
    # lower-dimensional subsets, used only when no full-rank subset exists
    flats: tuple[tuple[tuple[int, ...], ...], ...] = field(repr=False)

    @property
    def arity(self) -> int:
        return len(self.weights)


def _int_det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _int_det(minor)
    return total


def _adjugate(m: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(m)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            adj[j][i] = (-1) ** (i + j) * _int_det(minor)
    return adj


def _solve_exact(vectors: Sequence[Sequence[int]], target: Sequence[Fraction]) -> list[Fraction] | None:
    """Coefficients ``lam`` with ``sum lam_j v_j == target`` if unique, else None."""
    k, n = len(vectors), len(target)
    rows = [[Fraction(vectors[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, n) if rows[i][col] != 0), None)
        if piv is None:
            return None
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    return [rows[i][k] for i in range(k)]


def newton_region(support: Sequence[Sequence[int]], weights: Sequence[Fraction | int]) -> NewtonRegion:
    weights = tuple(Fraction(w) for w in weights)
    n = len(weights)
    vecs = tuple(sorted({tuple(int(x) for x in v) for v in support}))
    if not vecs:
        raise NewtonError("empty support")
    for v in vecs:
        if len(v) != n:
            raise NewtonError(f"support vector {v} has length {len(v)}, expected {n}")
        if any(x < 0 for x in v):
            raise NewtonError(f"support vector {v} has a negative entry")
        if sum(Fraction(x) / w for x, w in zip(v, weights)) != 1:
            raise OffHyperplane(f"support vector {v} is off the hyperplane alpha = 1")
    scale = math.lcm(*(w.numerator for w in weights))
    coeffs = tuple(scale * w.denominator // w.numerator for w in weights)
    cells = []
    for subset in itertools.combinations(vecs, n):
        rows = [list(v) for v in subset]
        det = _int_det(rows)
        if det == 0:
            continue
        adj = _adjugate(rows)
        sign = 1 if det > 0 else -1
        # column j of adj / det gives barycentric coordinate j up to alpha(p)
        cells.append(tuple(tuple(sign * adj[i][j] for i in range(n)) for j in range(n)))
    flats: list[tuple[tuple[int, ...], ...]] = []
    if not cells:
        for k in range(1, n):
            flats.extend(itertools.combinations(vecs, k))
    return NewtonRegion(vecs, weights, scale, coeffs, tuple(cells), tuple(flats))


def region_of(instance: Instance) -> NewtonRegion:
    return newton_region(polynomial_support(instance), weights_of(instance))


def alpha(region: NewtonRegion, point: Sequence[int | Fraction]) -> Fraction:
    return sum((Fraction(p) / w for p, w in zip(point, region.weights)), Fraction(0))


def _in_hull(region: NewtonRegion, point: Sequence[int]) -> bool:
    # Positive scaling of the point leaves barycentric signs unchanged, so the
    # projection to alpha = 1 is never formed for the full-rank test.
    for rows in region.cells:
        if all(sum(r * p for r, p in zip(row, point)) >= 0 for row in rows):
            return True
    if region.flats:
        a = alpha(region, point)
        target = [Fraction(p) / a for p in point]
        for subset in region.flats:
            lam = _solve_exact(subset, target)
            if lam is not None and all(x >= 0 for x in lam):
                return True
    return False


def contains_positive_point(region: NewtonRegion, point: Sequence[int]) -> bool:
    """Whether a point with positive integer entries lies in closed ``Gamma_-``."""
    if len(point) != region.arity:
        raise NewtonError(f"point {tuple(point)} has the wrong length")
    if any(int(p) != p or p < 1 for p in point):
        raise NewtonError(f"point {tuple(point)} must have positive integer entries")
    if sum(c * p for c, p in zip(region.coeffs, point)) > region.scale:
        return False
    return _in_hull(region, [int(p) for p in point])


def _simplex_points(region: NewtonRegion) -> Iterator[tuple[int, ...]]:
    n = region.arity
    coeffs, scale = region.coeffs, region.scale
    # suffix minimum cost of setting the remaining coordinates to 1
    tail = [sum(coeffs[i:]) for i in range(n + 1)]

    def rec(i: int, used: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(prefix)
            return
        p = 1
        while used + p * coeffs[i] + tail[i + 1] <= scale:
            prefix.append(p)
            yield from rec(i + 1, used + p * coeffs[i], prefix)
            prefix.pop()
            p += 1

    yield from rec(0, 0, [])


def geometric_genus(region: NewtonRegion) -> GenusReport:
    """Count positive lattice points in closed ``Gamma_-``.

    ``simplex_count`` counts positive points with ``alpha(p) <= 1`` regardless
    of hull membership, as a diagnostic.
    """
    witnesses = []
    simplex = 0
    for p in _simplex_points(region):
        simplex += 1
        if _in_hull(region, p):
            witnesses.append(p)
    return GenusReport(len(witnesses), tuple(witnesses), simplex)


def genus_of(instance: Instance) -> GenusReport:
    return geometric_genus(region_of(instance))


def milnor_oracle(weights: Sequence[Fraction | int]) -> int:
    """Milnor number of a weighted homogeneous isolated singularity: prod(w_i - 1)."""
    prod = Fraction(1)
    for w in weights:
        prod *= Fraction(w) - 1
    if prod.denominator != 1 or prod <= 0:
        raise NonIntegerProduct(f"prod(w_i - 1) = {prod} is not a positive integer")
    return int(prod)
