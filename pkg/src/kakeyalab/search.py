"""Search for small sets containing a k-flat translate in every direction.

Point sets are bitmasks over the ranked points of (Z/NZ)^n, so unions,
containment tests and cardinalities are single integer operations.  The
greedy pass and the branch-and-bound minimizer are both deterministic:
ties break on enumeration (lexicographic) order everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import tables
from .geometry import Flat, flat_points
from .ring import RingContext


class BudgetExceeded(Exception):
    """Branch-and-bound node budget ran out; carries the best certificate found."""

    def __init__(self, certificate: "KakeyaCertificate"):
        super().__init__("search budget exhausted before optimality was proven")
        self.certificate = certificate


@dataclass(frozen=True)
class KakeyaCertificate:
    """A set S plus, per direction, a shift whose translate lies inside S."""

    k: int
    ctx: RingContext
    points: tuple[tuple[int, ...], ...]
    witnesses: tuple[tuple[Flat, tuple[int, ...]], ...]
    optimal: bool = False

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def measure(self) -> Fraction:
        return Fraction(self.size, self.ctx.size)

    def point_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.points)


def _translate_masks(ctx: RingContext, flat: Flat) -> list[tuple[int, tuple[int, ...]]]:
    """Distinct translates of a flat as (bitmask, lex-least shift) pairs,
    ordered by that shift."""
    N = ctx.modulus
    base = sorted(flat_points(flat))
    seen: dict[int, tuple[int, ...]] = {}
    for i in range(ctx.size):
        a = ctx.unrank(i)
        mask = 0
        for pt in base:
            mask |= 1 << ctx.rank(tuple((p + c) % N for p, c in zip(pt, a)))
        if mask not in seen:
            seen[mask] = a
    return sorted(seen.items(), key=lambda kv: kv[1])


def _certificate(ctx: RingContext, k: int, chosen: Sequence[tuple[Flat, int, tuple[int, ...]]],
                 optimal: bool) -> KakeyaCertificate:
    union = 0
    witnesses = []
    for flat, mask, shift in chosen:
        union |= mask
        witnesses.append((flat, shift))
    pts = tuple(ctx.unrank(i) for i in range(ctx.size) if union >> i & 1)
    return KakeyaCertificate(k, ctx, pts, tuple(witnesses), optimal)


def greedy_kakeya(ctx: RingContext, k: int) -> KakeyaCertificate:
    """Greedy cover: repeatedly commit the direction whose cheapest translate
    adds the fewest new points (ties on enumeration order), choosing the
    lex-least minimizing shift."""
    if not 1 <= k <= ctx.dimension:
        raise ValueError("need 1 <= k <= n")
    flats = tables.flats(ctx, k)
    options = [_translate_masks(ctx, F) for F in flats]
    remaining = list(range(len(flats)))
    union = 0
    chosen: list[tuple[Flat, int, tuple[int, ...]]] = []
    while remaining:
        best = None
        for fi in remaining:
            for mask, shift in options[fi]:
                cost = bin(mask & ~union).count("1")
                cand = (cost, fi, shift, mask)
                if best is None or cand[:3] < best[:3]:
                    best = cand
                if cost == 0:
                    break
        cost, fi, shift, mask = best
        chosen.append((flats[fi], mask, shift))
        union |= mask
        remaining.remove(fi)
    chosen.sort(key=lambda c: flats.index(c[0]))
    return _certificate(ctx, k, chosen, optimal=False)


def exact_min_kakeya(ctx: RingContext, k: int, budget: int = 5_000_000) -> KakeyaCertificate:
    """Minimum-cardinality certificate by depth-first branch and bound.

    Nodes assign one translate per direction, cheapest increments first;
    a direction already covered by the current union is claimed at zero
    cost without branching (a dominant choice).  The pruning bound is
    |union| plus the largest single-direction minimum increment over the
    remaining directions, which never overestimates the cost of a
    completion.  Budget counts expanded nodes; exhaustion raises
    BudgetExceeded carrying the best certificate found so far.
    """
    if not 1 <= k <= ctx.dimension:
        raise ValueError("need 1 <= k <= n")
    flats = tables.flats(ctx, k)
    if k == ctx.dimension:
        full = flats[0]
        return _certificate(ctx, k, [(full, (1 << ctx.size) - 1, (0,) * ctx.dimension)], optimal=True)

    options = [_translate_masks(ctx, F) for F in flats]
    seed = greedy_kakeya(ctx, k)
    mask_by_shift = [dict((shift, mask) for mask, shift in opts) for opts in options]
    best_chosen = [(flat, mask_by_shift[flats.index(flat)][shift], shift)
                   for flat, shift in seed.witnesses]
    best_size = seed.size
    nodes = 0
    order = sorted(range(len(flats)), key=lambda fi: -min(bin(m).count("1") for m, _ in options[fi]))

    def lower_bound(union: int, pos: int) -> int:
        have = bin(union).count("1")
        worst = 0
        for fi in order[pos:]:
            inc = min(bin(m & ~union).count("1") for m, _ in options[fi])
            worst = max(worst, inc)
            if have + worst >= best_size:
                break
        return have + worst

    def dfs(pos: int, union: int, chosen: list[tuple[Flat, int, tuple[int, ...]]]):
        nonlocal nodes, best_size, best_chosen
        if nodes >= budget:
            raise _Exhausted()
        nodes += 1
        if pos == len(order):
            size = bin(union).count("1")
            if size < best_size:
                best_size = size
                best_chosen = list(chosen)
            return
        if lower_bound(union, pos) >= best_size:
            return
        fi = order[pos]
        ranked = sorted(options[fi], key=lambda ms: (bin(ms[0] & ~union).count("1"), ms[1]))
        if ranked[0][0] & ~union == 0:
            # a translate already inside the union dominates every other
            # choice (swapping it in can only shrink the final union), so
            # only that branch needs exploring
            ranked = ranked[:1]
        for mask, shift in ranked:
            chosen.append((flats[fi], mask, shift))
            dfs(pos + 1, union | mask, chosen)
            chosen.pop()

    try:
        dfs(0, 0, [])
    except _Exhausted:
        raise BudgetExceeded(_finish(ctx, k, flats, best_chosen)) from None
    return _finish(ctx, k, flats, best_chosen, optimal=True)


class _Exhausted(Exception):
    pass


def _finish(ctx, k, flats, chosen, optimal: bool = False) -> KakeyaCertificate:
    chosen = sorted(chosen, key=lambda c: flats.index(c[0]))
    return _certificate(ctx, k, chosen, optimal)


def certify(points: Sequence[Sequence[int]], ctx: RingContext, k: int) -> KakeyaCertificate:
    """Check that a point set contains a translate of every k-flat.

    Raises ValueError naming the first uncovered direction otherwise.
    """
    mask = 0
    pts = []
    for p in points:
        reduced = tuple(c % ctx.modulus for c in p)
        r = ctx.rank(reduced)
        if not mask >> r & 1:
            pts.append(reduced)
        mask |= 1 << r
    witnesses = []
    for flat in tables.flats(ctx, k):
        hit = None
        for tmask, shift in _translate_masks(ctx, flat):
            if tmask & ~mask == 0:
                hit = shift
                break
        if hit is None:
            raise ValueError(f"no translate of {flat.generators} lies inside the set")
        witnesses.append((flat, hit))
    return KakeyaCertificate(k, ctx, tuple(sorted(pts)), tuple(witnesses), optimal=False)
