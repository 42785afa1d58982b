"""Precomputed index tables shared by the transform and maximal-operator code.

Everything here is keyed by an immutable RingContext and cached, so the
cost of building gather tensors is paid once per ring.  Arrays are
returned non-writeable; treat them as shared read-only state.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .geometry import Flat, ProjDirection, QuotientChart, enumerate_grassmannian, enumerate_proj, quotient_chart
from .ring import RingContext


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def coord_grid(ctx: RingContext) -> np.ndarray:
    """(size, n) coordinates of every point, in rank order."""
    N, n = ctx.modulus, ctx.dimension
    idx = np.arange(ctx.size, dtype=np.int64)
    out = np.empty((ctx.size, n), dtype=np.int64)
    for j in range(n):
        out[:, n - 1 - j] = (idx // N**j) % N
    return _freeze(out)


@lru_cache(maxsize=None)
def place_values(ctx: RingContext) -> np.ndarray:
    N, n = ctx.modulus, ctx.dimension
    return _freeze(np.array([N ** (n - 1 - i) for i in range(n)], dtype=np.int64))


def rank_points(coords: np.ndarray, ctx: RingContext) -> np.ndarray:
    """Ranks of an (..., n) array of coordinates (already reduced mod N)."""
    return coords @ place_values(ctx)


@lru_cache(maxsize=None)
def valuations(ctx: RingContext) -> np.ndarray:
    """Dual valuation of every frequency, indexed by rank."""
    grid = coord_grid(ctx)
    N = ctx.modulus
    g = np.full(ctx.size, N, dtype=np.int64)
    for j in range(ctx.dimension):
        g = np.gcd(g, grid[:, j])
    return _freeze(N // g)


@lru_cache(maxsize=None)
def directions(ctx: RingContext) -> tuple[ProjDirection, ...]:
    return tuple(enumerate_proj(ctx))


@lru_cache(maxsize=None)
def direction_matrix(ctx: RingContext) -> np.ndarray:
    return _freeze(np.array([d.rep for d in directions(ctx)], dtype=np.int64))


@lru_cache(maxsize=None)
def flats(ctx: RingContext, k: int) -> tuple[Flat, ...]:
    return tuple(enumerate_grassmannian(ctx, k))


@lru_cache(maxsize=None)
def orthogonality_mask(ctx: RingContext) -> np.ndarray:
    """(P, size) boolean: <u, a> = 0 mod N per direction u and frequency a."""
    dirs = direction_matrix(ctx)
    grid = coord_grid(ctx)
    dots = dirs @ grid.T % ctx.modulus
    return _freeze(dots == 0)


@lru_cache(maxsize=None)
def line_table(ctx: RingContext) -> np.ndarray:
    """(P, size, N) int32: rank of a + t*u per direction u, shift a, step t."""
    N = ctx.modulus
    grid = coord_grid(ctx)
    dirs = direction_matrix(ctx)
    steps = np.arange(N, dtype=np.int64)
    out = np.empty((len(dirs), ctx.size, N), dtype=np.int32)
    for i, u in enumerate(dirs):
        pts = (grid[:, None, :] + steps[None, :, None] * u[None, None, :]) % N
        out[i] = rank_points(pts, ctx)
    return _freeze(out)


@lru_cache(maxsize=None)
def flat_table(ctx: RingContext, k: int) -> np.ndarray:
    """(F, size, N**k) int32: rank of a + x per flat, shift a, flat point x."""
    from .geometry import flat_points

    N = ctx.modulus
    grid = coord_grid(ctx)
    fl = flats(ctx, k)
    npts = N**k
    out = np.empty((len(fl), ctx.size, npts), dtype=np.int32)
    for i, F in enumerate(fl):
        pts = np.array(sorted(flat_points(F)), dtype=np.int64)
        shifted = (grid[:, None, :] + pts[None, :, :]) % N
        out[i] = rank_points(shifted, ctx)
    return _freeze(out)


@lru_cache(maxsize=None)
def charts(ctx: RingContext, pivot_rule: str = "first") -> tuple[QuotientChart, ...]:
    return tuple(quotient_chart(u, ctx, pivot_rule) for u in directions(ctx))


@lru_cache(maxsize=None)
def xray_table(ctx: RingContext, pivot_rule: str = "first") -> np.ndarray:
    """(P, size/N, N) int32: rank of section(y) + t*u per direction."""
    N = ctx.modulus
    qctx = ctx.quotient()
    qsize = qctx.size
    qgrid = coord_grid(qctx)
    steps = np.arange(N, dtype=np.int64)
    dirs = directions(ctx)
    out = np.empty((len(dirs), qsize, N), dtype=np.int32)
    for i, (u, chart) in enumerate(zip(dirs, charts(ctx, pivot_rule))):
        secs = np.array([chart.section(tuple(y)) for y in qgrid], dtype=np.int64)
        pts = (secs[:, None, :] + steps[None, :, None] * np.array(u.rep, dtype=np.int64)) % N
        out[i] = rank_points(pts, ctx)
    return _freeze(out)


@lru_cache(maxsize=None)
def coset_labels(ctx: RingContext, d: int) -> np.ndarray:
    """(size,) label of x mod d, ranked in (Z/dZ)^n; d must divide N."""
    if ctx.modulus % d:
        raise ValueError(f"{d} does not divide {ctx.modulus}")
    grid = coord_grid(ctx) % d
    n = ctx.dimension
    weights = np.array([d ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    return _freeze(grid @ weights)


@lru_cache(maxsize=None)
def lift_map(ctx: RingContext) -> dict[tuple[int, int], int]:
    """(direction index, quotient-direction index) -> 2-flat index."""
    from .geometry import lift_direction

    qctx = ctx.quotient()
    fl = flats(ctx, 2)
    flat_index = {f: i for i, f in enumerate(fl)}
    out = {}
    for ui, u in enumerate(directions(ctx)):
        for wi, w in enumerate(directions(qctx)):
            out[(ui, wi)] = flat_index[lift_direction(u, w, ctx)]
    return out
