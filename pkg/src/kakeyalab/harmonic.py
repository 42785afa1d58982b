"""Fourier and X-ray transforms over (Z/NZ)^n, scale bands, spectral sums.

Conventions (Haar = average):

    integral f = N**(-n) sum_x f(x)
    f^(a)      = N**(-n) sum_x e(+<x,a>/N) f(x)
    f(x)       = sum_a e(-<x,a>/N) f^(a)
    f_u(y)     = N**(-1) sum_t f(section(y) + t u)        (X-ray along u)

Two value lanes: the exact lane stores a density as shared-denominator
integer numerators and keeps every identity in Q (spectra carry integer
cyclotomic coefficient vectors); the float lane uses numpy doubles and
complexes for large sweeps.
"""
from __future__ import annotations

import math
import warnings
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import tables
from .cyclotomic import Cyclotomic, reduce_mod_cyclotomic
from .geometry import ProjDirection, proj_size
from .ring import DualFrequency, PAdic, Profinite, RingContext, ScaleSemantics, scale

_INT_HEADROOM = 1 << 61


class ConstancyError(Exception):
    """A band component is not constant on the cosets it should be."""

    def __init__(self, msg: str, violation: Fraction):
        super().__init__(msg)
        self.violation = violation


def _check_headroom(bound: int) -> None:
    if bound >= _INT_HEADROOM:
        raise OverflowError(
            "exact-lane intermediate values would overflow int64; "
            "reduce density magnitudes or denominators")


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------


class Density:
    """A function on (Z/NZ)^n, exact-rational or float/complex valued.

    Exact lane: values[i] = num[i] / den with a single positive shared
    denominator.  Float lane: a numpy array (complex permitted, which only
    arises inside band projections).
    """

    __slots__ = ("ctx", "num", "den", "data")

    def __init__(self, ctx: RingContext, *, num=None, den=None, data=None):
        self.ctx = ctx
        if data is None:
            num = np.array(num, dtype=np.int64)  # always copy before freezing
            if num.shape != (ctx.size,):
                raise ValueError(f"expected {ctx.size} values, got {num.shape}")
            g = int(np.gcd.reduce(np.abs(num))) if num.any() else 0
            g = gcd(g, den)
            if g > 1:
                num = num // g
                den = den // g
            num.setflags(write=False)
            self.num, self.den, self.data = num, int(den), None
        else:
            data = np.array(data)
            if data.shape != (ctx.size,):
                raise ValueError(f"expected {ctx.size} values, got {data.shape}")
            data.setflags(write=False)
            self.num, self.den, self.data = None, None, data

    # -- constructors ---------------------------------------------------

    @classmethod
    def exact(cls, ctx: RingContext, values: Iterable) -> "Density":
        fracs = [Fraction(v) for v in values]
        den = 1
        for f in fracs:
            den = den * f.denominator // gcd(den, f.denominator)
        num = np.array([int(f * den) for f in fracs], dtype=object)
        _check_headroom(int(max(abs(int(x)) for x in num)) if len(fracs) else 0)
        return cls(ctx, num=num.astype(np.int64), den=den)

    @classmethod
    def from_numden(cls, ctx: RingContext, num, den: int) -> "Density":
        return cls(ctx, num=num, den=den)

    @classmethod
    def from_float(cls, ctx: RingContext, data) -> "Density":
        return cls(ctx, data=np.asarray(data, dtype=complex if np.iscomplexobj(data) else np.float64))

    @classmethod
    def constant(cls, ctx: RingContext, value, lane: str = "exact") -> "Density":
        if lane == "exact":
            v = Fraction(value)
            return cls(ctx, num=np.full(ctx.size, v.numerator, dtype=np.int64), den=v.denominator)
        return cls(ctx, data=np.full(ctx.size, float(value)))

    @classmethod
    def indicator(cls, ctx: RingContext, points: Iterable[Sequence[int]], lane: str = "exact") -> "Density":
        num = np.zeros(ctx.size, dtype=np.int64)
        for p in points:
            num[ctx.rank(p)] = 1
        if lane == "exact":
            return cls(ctx, num=num, den=1)
        return cls(ctx, data=num.astype(np.float64))

    # -- basics -----------------------------------------------------------

    @property
    def lane(self) -> str:
        return "float" if self.data is not None else "exact"

    def value(self, x: Sequence[int]):
        i = self.ctx.rank(x)
        if self.lane == "exact":
            return Fraction(int(self.num[i]), self.den)
        return self.data[i]

    def values(self):
        if self.lane == "exact":
            return tuple(Fraction(int(v), self.den) for v in self.num)
        return tuple(self.data)

    def integral(self):
        """integral f = N**(-n) sum_x f(x)."""
        if self.lane == "exact":
            return Fraction(int(self.num.sum()), self.den * self.ctx.size)
        return self.data.sum() / self.ctx.size

    def power_mean(self, p: int):
        """E_x |f(x)|**p, exact for integer p in the exact lane."""
        if self.lane == "exact":
            total = sum(abs(int(v)) ** p for v in self.num)
            return Fraction(total, self.den**p * self.ctx.size)
        return (np.abs(self.data) ** p).sum() / self.ctx.size

    def abs(self) -> "Density":
        if self.lane == "exact":
            return Density(self.ctx, num=np.abs(self.num), den=self.den)
        return Density(self.ctx, data=np.abs(self.data))

    def is_nonnegative(self) -> bool:
        if self.lane == "exact":
            return bool((self.num >= 0).all())
        return bool((np.real(self.data) >= 0).all() and np.allclose(np.imag(self.data), 0))

    def to_float(self) -> "Density":
        if self.lane == "float":
            return self
        return Density(self.ctx, data=self.num.astype(np.float64) / self.den)

    def __add__(self, other: "Density") -> "Density":
        if self.ctx != other.ctx:
            raise ValueError("mismatched ring contexts")
        if self.lane == "exact" and other.lane == "exact":
            d = self.den * other.den // gcd(self.den, other.den)
            num = self.num * (d // self.den) + other.num * (d // other.den)
            return Density(self.ctx, num=num, den=d)
        return Density(self.ctx, data=self.to_float().data + other.to_float().data)

    def __sub__(self, other: "Density") -> "Density":
        if self.lane == "exact" and other.lane == "exact":
            d = self.den * other.den // gcd(self.den, other.den)
            num = self.num * (d // self.den) - other.num * (d // other.den)
            return Density(self.ctx, num=num, den=d)
        return Density(self.ctx, data=self.to_float().data - other.to_float().data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Density):
            return NotImplemented
        if self.ctx != other.ctx or self.lane != other.lane:
            return False
        if self.lane == "exact":
            return self.den == other.den and bool((self.num == other.num).all())
        return bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        if self.lane == "exact":
            return hash((self.ctx, self.den, self.num.tobytes()))
        return hash((self.ctx, self.data.tobytes()))


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


class Spectrum:
    """Fourier coefficients indexed by the dual group (rank order).

    Exact lane: coefficient a is (1/den) * sum_j coeffs[a, j] zeta_N**j
    with integer coeffs.  Float lane: a complex vector.
    """

    __slots__ = ("ctx", "coeffs", "den", "values", "_corr")

    def __init__(self, ctx: RingContext, *, coeffs=None, den=None, values=None):
        self.ctx = ctx
        self._corr = None
        if values is None:
            coeffs = np.array(coeffs, dtype=np.int64)  # always copy before freezing
            g = int(np.gcd.reduce(np.abs(coeffs).ravel())) if coeffs.any() else 0
            g = gcd(g, den)
            if g > 1:
                coeffs = coeffs // g
                den = den // g
            coeffs.setflags(write=False)
            self.coeffs, self.den, self.values = coeffs, int(den), None
        else:
            values = np.array(values, dtype=np.complex128)
            values.setflags(write=False)
            self.coeffs, self.den, self.values = None, None, values

    @property
    def lane(self) -> str:
        return "float" if self.values is not None else "exact"

    def frequencies(self) -> tuple[DualFrequency, ...]:
        vals = tables.valuations(self.ctx)
        grid = tables.coord_grid(self.ctx)
        return tuple(DualFrequency(tuple(int(c) for c in grid[i]), int(vals[i]))
                     for i in range(self.ctx.size))

    def coefficient(self, a: Sequence[int]):
        i = self.ctx.rank(a)
        if self.lane == "exact":
            N = self.ctx.modulus
            return Cyclotomic(N, tuple(Fraction(int(c), self.den) for c in self.coeffs[i]))
        return complex(self.values[i])

    def correlations(self) -> np.ndarray:
        """(size, N) integer coefficients of den**2 * |f^(a)|**2 per a."""
        if self._corr is None:
            C = self.coeffs
            N = self.ctx.modulus
            _check_headroom(int(np.abs(C).max(initial=0)) ** 2 * N * self.ctx.size)
            corr = np.empty_like(C)
            for m in range(N):
                corr[:, m] = (C * np.roll(C, m, axis=1)).sum(axis=1)
            corr.setflags(write=False)
            self._corr = corr
        return self._corr

    def plancherel(self):
        """sum_a |f^(a)|**2, exact in the exact lane."""
        if self.lane == "exact":
            total = self.correlations().sum(axis=0, dtype=object)
            return _rational_from_int_coeffs(total, self.ctx.modulus, self.den**2)
        return float((np.abs(self.values) ** 2).sum())

    def to_float(self) -> "Spectrum":
        if self.lane == "float":
            return self
        N = self.ctx.modulus
        roots = np.exp(2j * np.pi * np.arange(N) / N)
        return Spectrum(self.ctx, values=self.coeffs @ roots / self.den)


def _rational_from_int_coeffs(coeffs: Sequence, N: int, den: int) -> Fraction:
    red = reduce_mod_cyclotomic([int(c) for c in coeffs], N)
    if any(red[1:]):
        raise ValueError("cyclotomic value is not rational")
    return Fraction(int(red[0]) if red else 0, den)


# ---------------------------------------------------------------------------
# Fourier transform
# ---------------------------------------------------------------------------


def _axis_pass_exact(C: np.ndarray, ctx: RingContext, axis: int, sign: int) -> np.ndarray:
    """One separable stage: out[.., a, ..] = sum_x zeta**(sign*x*a) in[.., x, ..]."""
    N, n = ctx.modulus, ctx.dimension
    shaped = C.reshape((N,) * n + (N,))
    moved = np.moveaxis(shaped, axis, 0)
    flat = moved.reshape(N, -1, N)
    out = np.zeros_like(flat)
    for a in range(N):
        acc = out[a]
        for x in range(N):
            acc += np.roll(flat[x], (sign * x * a) % N, axis=-1)
    return np.moveaxis(out.reshape(moved.shape), 0, axis).reshape(ctx.size, N)


def fourier_forward(f: Density) -> Spectrum:
    """f^(a) = N**(-n) sum_x e(<x,a>/N) f(x), by per-axis passes.

    The exact lane multiplies by roots of unity as cyclic shifts of
    integer coefficient vectors, so the result is exact; the naive
    double-sum oracle lives in fourier_forward_naive for tests.
    """
    ctx = f.ctx
    N, n = ctx.modulus, ctx.dimension
    if f.lane == "exact":
        _check_headroom(int(np.abs(f.num).sum()))
        C = np.zeros((ctx.size, N), dtype=np.int64)
        C[:, 0] = f.num
        for axis in range(n):
            C = _axis_pass_exact(C, ctx, axis, +1)
        return Spectrum(ctx, coeffs=C, den=f.den * ctx.size)
    data = f.data.astype(np.complex128).reshape((N,) * n)
    W = np.exp(2j * np.pi * np.outer(np.arange(N), np.arange(N)) / N) / N
    for axis in range(n):
        data = np.moveaxis(np.tensordot(W, np.moveaxis(data, axis, 0), axes=(1, 0)), 0, axis)
    return Spectrum(ctx, values=data.reshape(ctx.size))


def fourier_inverse(s: Spectrum) -> Density:
    """f(x) = sum_a e(-<x,a>/N) f^(a).

    Exact spectra of rational densities invert to exact densities; a
    hand-built spectrum whose inverse is irrational is rejected.
    """
    ctx = s.ctx
    N, n = ctx.modulus, ctx.dimension
    if s.lane == "exact":
        C = s.coeffs.copy()
        for axis in range(n):
            C = _axis_pass_exact(C, ctx, axis, -1)
        nums = []
        for row in C:
            nums.append(_rational_from_int_coeffs(row, N, 1))
        den = s.den
        for q in nums:
            den = den // gcd(den, q.denominator) * q.denominator
        scale_up = den // s.den
        num = np.array([int(q * scale_up) for q in nums], dtype=np.int64)
        return Density(ctx, num=num, den=den)
    data = s.values.reshape((N,) * n)
    W = np.exp(-2j * np.pi * np.outer(np.arange(N), np.arange(N)) / N)
    for axis in range(n):
        data = np.moveaxis(np.tensordot(W, np.moveaxis(data, axis, 0), axes=(1, 0)), 0, axis)
    return Density(ctx, data=data.reshape(ctx.size))


def fourier_forward_naive(f: Density) -> Spectrum:
    """O(N**(2n)) direct character sums; the testing oracle for the fast path."""
    ctx = f.ctx
    N = ctx.modulus
    grid = tables.coord_grid(ctx)
    if f.lane == "exact":
        C = np.zeros((ctx.size, N), dtype=np.int64)
        for ia in range(ctx.size):
            a = grid[ia]
            for ix in range(ctx.size):
                C[ia, int(grid[ix] @ a % N)] += f.num[ix]
        return Spectrum(ctx, coeffs=C, den=f.den * ctx.size)
    vals = np.zeros(ctx.size, dtype=np.complex128)
    for ia in range(ctx.size):
        phases = np.exp(2j * np.pi * (grid @ grid[ia] % N) / N)
        vals[ia] = (phases * f.data).sum() / ctx.size
    return Spectrum(ctx, values=vals)


# ---------------------------------------------------------------------------
# X-ray transform
# ---------------------------------------------------------------------------


def xray_transform(f: Density, u: ProjDirection, pivot_rule: str = "first") -> Density:
    """Pushforward of f to Q_u: f_u(y) = N**(-1) sum_t f(section(y) + t u).

    Mass is conserved: integral of f_u over Q_u equals integral of f.
    """
    ctx = f.ctx
    dirs = tables.directions(ctx)
    ui = dirs.index(u)
    idx = tables.xray_table(ctx, pivot_rule)[ui]
    qctx = ctx.quotient()
    if f.lane == "exact":
        return Density(qctx, num=f.num[idx].sum(axis=1), den=f.den * ctx.modulus)
    return Density(qctx, data=f.data[idx].sum(axis=1) / ctx.modulus)


def xray_all(f: Density, pivot_rule: str = "first"):
    """X-ray numerators along every direction at once.

    Exact lane: (P, size/N) int64 numerators over denominator den*N.
    Float lane: (P, size/N) values.
    """
    idx = tables.xray_table(f.ctx, pivot_rule)
    if f.lane == "exact":
        return f.num[idx].sum(axis=2), f.den * f.ctx.modulus
    return f.data[idx].sum(axis=2) / f.ctx.modulus, None


def uperp_sum(f: Density, u: ProjDirection):
    """sum over a with <u,a> = 0 of |f^(a)|**2.

    Equals the quotient-side mass integral of |f_u|**2 and the spatial
    double sum N**(-n-1) sum_{z,t} f(z) conj f(z+tu).
    """
    s = fourier_forward(f)
    ctx = f.ctx
    ui = tables.directions(ctx).index(u)
    mask = tables.orthogonality_mask(ctx)[ui]
    if s.lane == "exact":
        total = s.correlations()[mask].sum(axis=0, dtype=object)
        return _rational_from_int_coeffs(total, ctx.modulus, s.den**2)
    return float((np.abs(s.values[mask]) ** 2).sum())


def uperp_sum_spatial(f: Density, u: ProjDirection):
    """The spatial form N**(-n-1) sum_{z,t} f(z) conj f(z + t u)."""
    ctx = f.ctx
    ui = tables.directions(ctx).index(u)
    idx = tables.line_table(ctx)[ui]
    if f.lane == "exact":
        line_sums = f.num[idx].sum(axis=1)
        total = int(np.dot(f.num, line_sums))
        return Fraction(total, f.den**2 * ctx.size * ctx.modulus)
    line_sums = f.data[idx].sum(axis=1)
    return complex(np.dot(np.conj(f.data), line_sums)) / (ctx.size * ctx.modulus)


def quotient_l2(f_u: Density):
    """integral over Q_u of |f_u|**2."""
    return f_u.power_mean(2)


def xray_l2_spatial(f: Density, pivot_rule: str = "first"):
    """avg over u in P of integral |f_u|**2, computed on the quotient side."""
    nums, den = xray_all(f, pivot_rule)
    ctx = f.ctx
    qsize = ctx.size // ctx.modulus
    if f.lane == "exact":
        _check_headroom(int(np.abs(nums).max(initial=0)) ** 2 * qsize)
        total = int((nums.astype(object) ** 2).sum())
        return Fraction(total, den**2 * qsize * nums.shape[0])
    return float((np.abs(nums) ** 2).sum() / (qsize * nums.shape[0]))


def xray_l2_spectral(f: Density):
    """sum_a ratio(v(a)) |f^(a)|**2 with ratio(v) = |P(Z/v)^{n-2}| / |P(Z/v)^{n-1}|."""
    ctx = f.ctx
    n = ctx.dimension
    s = fourier_forward(f)
    vals = tables.valuations(ctx)
    if s.lane == "exact":
        corr = s.correlations()
        total = Fraction(0)
        for v in sorted(set(int(x) for x in vals)):
            rows = corr[vals == v].sum(axis=0, dtype=object)
            mass = _rational_from_int_coeffs(rows, ctx.modulus, s.den**2)
            total += Fraction(proj_size(v, n - 1), proj_size(v, n)) * mass
        return total
    weights = np.array([proj_size(int(v), n - 1) / proj_size(int(v), n) for v in vals])
    return float((weights * np.abs(s.values) ** 2).sum())


def orthogonal_fraction(a: Sequence[int], ctx: RingContext) -> Fraction:
    """Enumerated fraction of directions u with <u, a> = 0 mod N."""
    dirs = tables.direction_matrix(ctx)
    dots = dirs @ np.array([c % ctx.modulus for c in a], dtype=np.int64) % ctx.modulus
    return Fraction(int((dots == 0).sum()), len(dirs))


# ---------------------------------------------------------------------------
# scale bands
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def band_valuation_sets(ctx: RingContext) -> tuple[frozenset[int], ...]:
    """Partition of the dual valuations (divisors of N) into scale bands.

    NUMERIC: band i holds the v with M_i <= v < M_{i+1}.  DIVISIBILITY:
    band i holds the v with v | M_i and v not | M_{i-1}.  The two agree in
    p-adic mode; they differ over factorial scales, where only the
    divisibility reading keeps every band coset-constant.
    """
    divisors = ctx.divisors()
    bands = []
    if ctx.scale_semantics is ScaleSemantics.NUMERIC:
        if isinstance(ctx.mode, Profinite):
            warnings.warn(
                "numeric band semantics over factorial scales: coset constancy "
                "of band components may fail", stacklevel=2)
        for i in range(ctx.num_bands):
            lo = scale(i, ctx)
            hi = scale(i + 1, ctx, beyond_truncation=True)
            bands.append(frozenset(v for v in divisors if lo <= v < hi))
    else:
        prev = 0
        for i in range(ctx.num_bands):
            m = scale(i, ctx)
            members = frozenset(v for v in divisors if m % v == 0 and (i == 0 or prev % v != 0))
            bands.append(members)
            prev = m
    return tuple(bands)


def _mobius(n: int) -> int:
    from .ring import factorize

    m = 1
    for _, r in factorize(n):
        if r > 1:
            return 0
        m = -m
    return m


def band_project(f: Density, i: int, method: str = "coset") -> Density:
    """The scale-i component of f (Littlewood-Paley piece).

    The component is the inverse transform of the spectrum restricted to
    frequencies with valuation in band i.  The default exact-lane path
    evaluates the equal coset-average kernel

        f_i = sum_{v in band(i)} sum_{d | v} mu(v/d) E[f | x mod d],

    which stays in Q; method="spectral" computes the defining spectral
    sum instead (the cross-check used by the tests).  Bands partition the
    dual, so sum_i f_i = f exactly.
    """
    ctx = f.ctx
    members = band_valuation_sets(ctx)[i]
    if method == "spectral" or f.lane == "float":
        return _band_project_spectral(f, members)
    N, n = ctx.modulus, ctx.dimension
    weights: dict[int, int] = {}
    for v in members:
        for d in ctx.divisors():
            if v % d == 0:
                weights[d] = weights.get(d, 0) + _mobius(v // d)
    num = np.zeros(ctx.size, dtype=np.int64)
    for d, w in sorted(weights.items()):
        if w == 0:
            continue
        labels = tables.coset_labels(ctx, d)
        sums = np.zeros(d**n, dtype=np.int64)
        np.add.at(sums, labels, f.num)
        num += w * d**n * sums[labels]
    return Density(ctx, num=num, den=f.den * ctx.size)


def _band_project_spectral(f: Density, members: frozenset[int]) -> Density:
    ctx = f.ctx
    vals = tables.valuations(ctx)
    keep = np.isin(vals, sorted(members))
    s = fourier_forward(f)
    if s.lane == "exact":
        coeffs = np.where(keep[:, None], s.coeffs, 0)
        return fourier_inverse(Spectrum(ctx, coeffs=coeffs, den=s.den))
    return fourier_inverse(Spectrum(ctx, values=np.where(keep, s.values, 0)))


def band_constant(i: int, m: int, ctx: RingContext) -> Fraction:
    """max over a in band i of |P(Z/v(a))^{m-2}| / |P(Z/v(a))^{m-1}|.

    In p-adic mode this is the ratio at M_i; an empty band yields 0.  The
    value never exceeds 1/min-band-valuation.
    """
    members = band_valuation_sets(ctx)[i]
    if not members:
        return Fraction(0)
    return max(Fraction(proj_size(v, m - 1), proj_size(v, m)) for v in members)


def band_constancy_modulus(ctx: RingContext, i: int) -> int:
    """Least scale modulus M with every band-i valuation dividing M, if any.

    Divisibility bands are constant on cosets of M_i (hence of M_{i+1});
    numeric bands over factorial scales may admit no such scale within
    M_{i+1}, the case the verifier reports on.
    """
    members = band_valuation_sets(ctx)[i]
    m = 1
    for v in members:
        m = m * v // gcd(m, v)
    return m


def induce_to_modulus(f: Density, M: int) -> Density:
    """Reinterpret an M-periodic density on (Z/MZ)^n (or pull back if N | M).

    Raises ConstancyError when f is not constant on cosets of M*(Z/NZ)^n.
    """
    ctx = f.ctx
    N, n = ctx.modulus, ctx.dimension
    new_ctx = _context_at_modulus(ctx, M, n)
    if M % N == 0:
        grid = tables.coord_grid(new_ctx) % N
        idx = tables.rank_points(grid, ctx)
        if f.lane == "exact":
            return Density(new_ctx, num=f.num[idx], den=f.den)
        return Density(new_ctx, data=f.data[idx])
    if N % M:
        raise ValueError(f"modulus {M} neither divides nor is divided by {N}")
    labels = tables.coset_labels(ctx, M)
    if f.lane == "exact":
        first = np.full(M**n, -1, dtype=np.int64)
        for rank, lbl in enumerate(labels):
            if first[lbl] < 0:
                first[lbl] = rank
        rep = f.num[first]
        spread = rep[labels]
        if not (spread == f.num).all():
            worst = Fraction(int(np.abs(spread - f.num).max()), f.den)
            raise ConstancyError(f"density is not constant on cosets of {M}*(Z/{N}Z)^{n}", worst)
        return Density(new_ctx, num=rep, den=f.den)
    first = np.full(M**n, -1, dtype=np.int64)
    for rank, lbl in enumerate(labels):
        if first[lbl] < 0:
            first[lbl] = rank
    rep = f.data[first]
    spread = rep[labels]
    worst = float(np.abs(spread - f.data).max())
    if worst > 1e-9:
        raise ConstancyError(f"density is not constant on cosets of {M}*(Z/{N}Z)^{n}", Fraction(worst).limit_denominator())
    return Density(new_ctx, data=rep)


def _context_at_modulus(ctx: RingContext, M: int, n: int) -> RingContext:
    if isinstance(ctx.mode, PAdic):
        p = ctx.mode.p
        ell = 0
        m = M
        while m % p == 0:
            m //= p
            ell += 1
        if m == 1 and ell >= 1:
            return RingContext.padic(p, ell, n, ctx.scale_semantics, ctx.cap)
    if isinstance(ctx.mode, Profinite):
        L = 1
        while math.factorial(L + 1) < M:
            L += 1
        if math.factorial(L + 1) == M and L >= 1:
            return RingContext.profinite(L, n, ctx.scale_semantics, ctx.cap)
    return RingContext.generic(M, n, ctx.cap)
