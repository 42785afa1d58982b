"""Maximal operators over k-flats and the explicit constants they obey.

The order-k maximal operator assigns to each k-flat direction the largest
normalized mass of |f| over any translate:

    maxop_k f(U) = max_a N**(-k) sum_{x in U} |f(a + x)|

(f_star is the unnormalized line version, f_star = N * maxop_1 f).  The
constants half evaluates, factor by factor and with no simplification,
the integer-density bound constant, the rounding-based rational-density
constant, and the scale-chain constant that feeds the 2-flat norm
inequality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import tables
from .geometry import proj_size
from .harmonic import Density, _check_headroom
from .ring import RingContext, scale


@dataclass(frozen=True)
class MaximalProfile:
    """Values and achieving shifts of a maximal operator, per flat.

    Witnesses are the lexicographically least achieving shifts, which
    makes every downstream consumer deterministic.
    """

    k: int
    keys: tuple
    values: tuple
    witnesses: tuple[tuple[int, ...], ...]

    def value(self, key) -> Fraction:
        return self.values[self.keys.index(key)]

    def witness(self, key) -> tuple[int, ...]:
        return self.witnesses[self.keys.index(key)]

    def min_value(self):
        return min(self.values)

    def max_value(self):
        return max(self.values)


def _profile_from_sums(ctx: RingContext, keys, sums: np.ndarray, den: int, k: int,
                       exact: bool) -> MaximalProfile:
    """sums: (num_keys, num_shifts); shift axis is in rank (= lex) order."""
    best = sums.max(axis=1)
    arg = sums.argmax(axis=1)
    witnesses = tuple(ctx.unrank(int(a)) for a in arg)
    if exact:
        values = tuple(Fraction(int(b), den) for b in best)
    else:
        values = tuple(float(b) / den for b in best)
    return MaximalProfile(k, tuple(keys), values, witnesses)


def line_maximal(f: Density, pivot_rule: str = "first") -> MaximalProfile:
    """maxop_1 over every direction of P (Z/NZ)^(n-1).

    Absolute values are taken inside, matching the operator definition;
    nonnegative inputs are unaffected.
    """
    ctx = f.ctx
    idx = tables.line_table(ctx)
    dirs = tables.directions(ctx)
    if f.lane == "exact":
        num = np.abs(f.num)
        _check_headroom(int(num.max(initial=0)) * ctx.modulus)
        sums = num[idx].sum(axis=2)
        return _profile_from_sums(ctx, dirs, sums, f.den * ctx.modulus, 1, True)
    vals = np.abs(f.data)
    sums = vals[idx].sum(axis=2)
    return _profile_from_sums(ctx, dirs, sums, ctx.modulus, 1, False)


def flat_maximal(f: Density, k: int) -> MaximalProfile:
    """maxop_k over every flat of Gr((Z/NZ)^n, k)."""
    ctx = f.ctx
    if not 1 <= k <= ctx.dimension:
        raise ValueError("need 1 <= k <= n")
    idx = tables.flat_table(ctx, k)
    keys = tables.flats(ctx, k)
    npts = ctx.modulus**k
    if f.lane == "exact":
        num = np.abs(f.num)
        _check_headroom(int(num.max(initial=0)) * npts)
        sums = num[idx].sum(axis=2)
        return _profile_from_sums(ctx, keys, sums, f.den * npts, k, True)
    vals = np.abs(f.data)
    sums = vals[idx].sum(axis=2)
    return _profile_from_sums(ctx, keys, sums, npts, k, False)


def f_star(f: Density) -> MaximalProfile:
    """The unnormalized line maximal function, f_star = N * maxop_1 f."""
    prof = line_maximal(f)
    N = f.ctx.modulus
    return MaximalProfile(1, prof.keys, tuple(v * N for v in prof.values), prof.witnesses)


def projmax_identity_check(f_band: Density, u) -> dict:
    """Check maxop_2 |f_band| (lift(u, w)) = maxop_1 (|f_band|)_u (w) per w.

    f_band is a scale-band component (possibly signed); both sides run on
    its absolute value, matching the operators' built-in absolute values.
    Returns per-quotient-direction values and the worst discrepancy,
    which is exactly zero in the exact lane.
    """
    from . import tables
    from .geometry import lift_direction
    from .harmonic import xray_transform

    ctx = f_band.ctx
    g = f_band.abs()
    prof2 = flat_maximal(g, 2)
    gu = xray_transform(g, u)
    prof1 = line_maximal(gu)
    qctx = ctx.quotient()
    rows = []
    worst = Fraction(0) if g.lane == "exact" else 0.0
    for w in tables.directions(qctx):
        lifted = lift_direction(u, w, ctx)
        lhs = prof2.value(lifted)
        rhs = prof1.value(w)
        worst = max(worst, abs(lhs - rhs))
        rows.append({"quotient_direction": w.rep, "plane_value": lhs, "line_value": rhs})
    return {"direction": u.rep, "entries": rows, "worst_discrepancy": worst,
            "equal": worst == 0}


# ---------------------------------------------------------------------------
# p-maximal weight and rounding
# ---------------------------------------------------------------------------


def mweight(f: Density, p: int) -> int:
    """The p-maximal weight of an integer-valued density.

    For each direction pick the lexicographically least shift achieving
    f_star, split that line into its mod-p**k and mod-N0 component lines,
    and take the largest partial line sum over the p-part:

        max over u, z in L_0(u) of sum_{x in L_p(u)} f((x, z)).

    Over a prime-power modulus this is simply max_u f_star(u).
    """
    ctx = f.ctx
    N, n = ctx.modulus, ctx.dimension
    if N % p:
        raise ValueError(f"{p} does not divide the modulus {N}")
    if f.lane != "exact" or f.den != 1 or (f.num < 0).any():
        raise ValueError("mweight needs a nonnegative integer-valued density")
    q = 1
    rest = N
    while rest % p == 0:
        rest //= p
        q *= p
    prof = line_maximal(f)
    best = 0
    for u, a in zip(prof.keys, prof.witnesses):
        line_pts_p = _line_points(a, u.rep, q, n)
        line_pts_0 = _line_points(a, u.rep, rest, n)
        for z in line_pts_0:
            total = 0
            for x in line_pts_p:
                point = _combine_point(x, z, q, rest, N, n)
                total += int(f.num[ctx.rank(point)])
            best = max(best, total)
    return best


def _line_points(a: Sequence[int], u: Sequence[int], m: int, n: int) -> list[tuple[int, ...]]:
    if m == 1:
        return [(0,) * n]
    seen = []
    got = set()
    for t in range(m):
        pt = tuple((a[i] + t * u[i]) % m for i in range(n))
        if pt not in got:
            got.add(pt)
            seen.append(pt)
    return seen


def _combine_point(x: Sequence[int], z: Sequence[int], q: int, rest: int, N: int, n: int) -> tuple[int, ...]:
    if rest == 1:
        return tuple(x)
    if q == 1:
        return tuple(z)
    inv_q = pow(q, -1, rest)
    inv_r = pow(rest, -1, q)
    return tuple((x[i] * rest * inv_r + z[i] * q * inv_q) % N for i in range(n))


def rounding_g(f: Density) -> Density:
    """Round values up to the grid: g(x) = ceil(N f(x)) / N.

    Requires 0 <= f <= 1.  Then g >= f pointwise, N*g is integer valued in
    {0, ..., N}, and whenever sum f**n >= 1 the mass bound
    sum g**n <= (2**n + 1) sum f**n holds.
    """
    ctx = f.ctx
    if f.lane != "exact":
        raise ValueError("rounding is an exact-lane operation")
    N = ctx.modulus
    if (f.num < 0).any() or (f.num > f.den).any():
        raise ValueError("rounding requires 0 <= f <= 1")
    scaled = np.array([-((-int(v) * N) // f.den) for v in f.num], dtype=np.int64)
    return Density(ctx, num=scaled, den=N)


# ---------------------------------------------------------------------------
# explicit constants
# ---------------------------------------------------------------------------


def _ceil_log(base: int, x: int) -> int:
    """Smallest integer e >= 0 with base**e >= x, exact (no float logs)."""
    if x <= 1:
        return 0
    e = 0
    power = 1
    while power < x:
        power *= base
        e += 1
    return e


def _ln(x) -> Fraction:
    """Natural log embedded exactly into Q via its IEEE double.

    These constants mix natural logs with exact integer data; freezing
    the double keeps every downstream comparison deterministic and
    exactly reproducible.
    """
    return Fraction(math.log(x))


def maxN_constant(f: Density, ctx: RingContext) -> Fraction:
    """The integer-density bound constant, evaluated factor by factor.

    With N = p_1**k_1 ... p_r**k_r (primes ascending) and
    mw = mweight(f, p_1):

        first  = 1 / (2 (ln mw + 1) ceil(log_{p_1} mw + log_{p_1} n))
        last   = 1 / (2 (k_r + ceil(log_{p_r} n)))
        mid_i  = 1 / (2 (k_i ln p_i + 1)(k_i + ceil(log_{p_i} n)))

        C = first**n                      for r = 1
        C = first**n * (last * prod_{i=2}^{r-1} mid_i)**n   otherwise

    (the middle product is empty at r = 2).
    """
    n = ctx.dimension
    factors = ctx.factorization
    p1 = factors[0][0]
    mw = mweight(f, p1)
    ceil_term = _ceil_log(p1, mw * n)
    first = 1 / (2 * (_ln(mw) + 1) * ceil_term)
    if len(factors) == 1:
        return first**n
    pr, kr = factors[-1]
    block = Fraction(1, 2 * (kr + _ceil_log(pr, n)))
    for p_i, k_i in factors[1:-1]:
        block *= 1 / (2 * (k_i * _ln(p_i) + 1) * (k_i + _ceil_log(p_i, n)))
    return first**n * block**n


def appendix_constant(N: int, n: int) -> Fraction:
    """The rational-density constant D_{N,n} / (2**n + 1).

    D uses the worst-case weight bound mweight <= N**2, which turns the
    first factor into 1 / (2 (2 ln N + 1)(2 log_{p_1} N + log_{p_1} n + 1));
    the last-prime factor applies for every r >= 1 and the middle product
    is empty below r = 3.  This is the constant the verifier plugs into
    the rational-density maximal inequality.
    """
    from .ring import factorize

    if N < 2:
        raise ValueError("N must be >= 2")
    factors = factorize(N)
    p1 = factors[0][0]
    lg = _ln(N) / _ln(p1)
    lgn = _ln(n) / _ln(p1)
    first = 1 / (2 * (2 * _ln(N) + 1) * (2 * lg + lgn + 1))
    pr, kr = factors[-1]
    block = Fraction(1, 2 * (kr + _ceil_log(pr, n)))
    for p_i, k_i in factors[1:-1]:
        block *= 1 / (2 * (k_i * _ln(p_i) + 1) * (k_i + _ceil_log(p_i, n)))
    d = first**n * block**n
    return d / (2**n + 1)


@dataclass(frozen=True)
class ChainConstant:
    """Partial sums of the scale chain and the effective norm constant.

    term_i = (ratio_i / C_{M_{i+1}, n-1})**(1/(n-1)) with
    ratio_i = |P(Z/M_i)^{n-2}| / |P(Z/M_i)^{n-1}| and C instantiated as
    appendix_constant.  effective = S**-(n-1) multiplies the averaged
    2-flat maximal power in the norm inequality.
    """

    dimension: int
    depth: int
    scales: tuple[int, ...]
    terms: tuple[float, ...]
    partial_sums: tuple[float, ...]
    sum_raised: float
    effective: Fraction


def chain_constant(ctx: RingContext, depth: int) -> ChainConstant:
    """Evaluate the scale chain to the given depth (bands past the
    truncation only contribute constants, so any depth >= 1 is allowed)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    n = ctx.dimension
    if n < 3:
        raise ValueError("the chain constant needs dimension >= 3")
    terms = []
    partials = []
    scales_used = []
    total = 0.0
    for i in range(depth):
        m_i = scale(i, ctx, beyond_truncation=True)
        m_next = scale(i + 1, ctx, beyond_truncation=True)
        ratio = Fraction(proj_size(m_i, n - 1), proj_size(m_i, n))
        c_next = appendix_constant(m_next, n - 1)
        term = float(ratio / c_next) ** (1.0 / (n - 1))
        terms.append(term)
        total += term
        partials.append(total)
        scales_used.append(m_i)
    raised = total ** (n - 1)
    return ChainConstant(n, depth, tuple(scales_used), tuple(terms), tuple(partials),
                         raised, Fraction(1) / Fraction(raised))


@dataclass(frozen=True)
class ConstantLedger:
    """All explicit constants for one ring, ready for serialization.

    maxN_reference is the integer-density constant evaluated on the
    single-point indicator (weight 1), the cleanest reproducible anchor.
    """

    modulus: int
    dimension: int
    maxN_reference: Fraction
    appendix: Fraction
    chain: ChainConstant | None


def constant_ledger(ctx: RingContext, depth: int | None = None) -> ConstantLedger:
    point = Density.indicator(ctx, [(0,) * ctx.dimension])
    chain = None
    if ctx.dimension >= 3:
        chain = chain_constant(ctx, ctx.num_bands if depth is None else depth)
    return ConstantLedger(ctx.modulus, ctx.dimension, maxN_constant(point, ctx),
                          appendix_constant(ctx.modulus, ctx.dimension), chain)
