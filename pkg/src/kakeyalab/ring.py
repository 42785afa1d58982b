"""Exact arithmetic and structural bookkeeping for the ring (Z/NZ)^n.

Everything downstream (projective geometry, Fourier analysis, maximal
operators) runs over a finite truncation of either the p-adic integers
(N = p**ell) or the profinite integers (N = (L+1)!).  At that truncation
a ball of radius 1/N collapses to a single point of (Z/NZ)^n, so all
measure theory becomes exact counting.  A plain "generic" modulus is
also supported for the scale-free parts of the toolkit (a generic N
need not be a prime power or a factorial, e.g. N = 12).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Sequence, Union


class ScaleOverflowError(Exception):
    """Scale index runs past the chosen truncation."""


class ScaleUndefinedError(Exception):
    """The ring mode carries no scale sequence."""


class ScaleSemantics(Enum):
    """How dual valuations are grouped into scale bands.

    NUMERIC groups by the interval M_i <= v < M_{i+1}; DIVISIBILITY groups
    by v | M_i and v not | M_{i-1}.  The two agree whenever the scale
    sequence consists of prime powers (the p-adic case).
    """

    NUMERIC = "numeric"
    DIVISIBILITY = "divisibility"


@dataclass(frozen=True)
class PAdic:
    """Truncation of Z_p at depth ell: N = p**ell, scales M_i = p**i."""

    p: int
    ell: int

    @property
    def modulus(self) -> int:
        return self.p**self.ell

    def describe(self) -> str:
        return f"padic(p={self.p}, ell={self.ell})"


@dataclass(frozen=True)
class Profinite:
    """Truncation of the profinite integers: N = (L+1)!, scales M_i = (i+1)!."""

    L: int

    @property
    def modulus(self) -> int:
        return math.factorial(self.L + 1)

    def describe(self) -> str:
        return f"profinite(L={self.L})"


@dataclass(frozen=True)
class Generic:
    """Plain Z/NZ with no scale sequence attached (no band machinery)."""

    N: int

    @property
    def modulus(self) -> int:
        return self.N

    def describe(self) -> str:
        return f"generic(N={self.N})"


Mode = Union[PAdic, Profinite, Generic]


def factorize(N: int) -> list[tuple[int, int]]:
    """Prime factorization of N >= 1 by trial division, primes ascending.

    N = 1 yields the empty list.  Moduli here stay at desk scale (a few
    thousand at most), so trial division is the right tool.
    """
    if N < 1:
        raise ValueError(f"modulus must be positive, got {N}")
    factors: list[tuple[int, int]] = []
    rest = N
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return factors


@dataclass(frozen=True)
class RingContext:
    """The working ring (Z/NZ)^n together with its truncation metadata.

    Immutable after construction; safe to share across workers and to use
    as a cache key.  All arithmetic on residues is exact.
    """

    modulus: int
    factorization: tuple[tuple[int, int], ...]
    dimension: int
    mode: Mode
    scale_semantics: ScaleSemantics
    cap: int = 10_000_000

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        prod = 1
        last_p = 1
        for p, r in self.factorization:
            if p <= last_p or r < 1:
                raise ValueError("factorization must list ascending primes with exponents >= 1")
            prod *= p**r
            last_p = p
        if prod != self.modulus:
            raise ValueError(f"factorization {self.factorization} does not multiply to {self.modulus}")
        if self.mode.modulus != self.modulus:
            raise ValueError(f"mode {self.mode} implies modulus {self.mode.modulus}, got {self.modulus}")

    # -- constructors -------------------------------------------------

    @classmethod
    def padic(cls, p: int, ell: int, n: int, semantics: ScaleSemantics = ScaleSemantics.NUMERIC,
              cap: int = 10_000_000) -> "RingContext":
        if ell < 1:
            raise ValueError("ell must be >= 1")
        mode = PAdic(p, ell)
        return cls(mode.modulus, tuple(factorize(mode.modulus)), n, mode, semantics, cap)

    @classmethod
    def profinite(cls, L: int, n: int, semantics: ScaleSemantics = ScaleSemantics.DIVISIBILITY,
                  cap: int = 10_000_000) -> "RingContext":
        if L < 1:
            raise ValueError("L must be >= 1")
        mode = Profinite(L)
        return cls(mode.modulus, tuple(factorize(mode.modulus)), n, mode, semantics, cap)

    @classmethod
    def generic(cls, N: int, n: int, cap: int = 10_000_000) -> "RingContext":
        return cls(N, tuple(factorize(N)), n, Generic(N), ScaleSemantics.NUMERIC, cap)

    # -- basic structure ----------------------------------------------

    @property
    def size(self) -> int:
        """Number of points of (Z/NZ)^n."""
        return self.modulus**self.dimension

    def describe(self) -> str:
        return f"{self.mode.describe()} n={self.dimension}"

    def rank(self, x: Sequence[int]) -> int:
        """Flat index of a point; x[0] is the most significant digit.

        Numeric order of ranks equals lexicographic order of tuples.
        """
        i = 0
        for c in x:
            i = i * self.modulus + (c % self.modulus)
        return i

    def unrank(self, i: int) -> tuple[int, ...]:
        N = self.modulus
        out = [0] * self.dimension
        for j in range(self.dimension - 1, -1, -1):
            out[j] = i % N
            i //= N
        return tuple(out)

    def points(self) -> Iterator[tuple[int, ...]]:
        for i in range(self.size):
            yield self.unrank(i)

    def divisors(self) -> tuple[int, ...]:
        divs = [1]
        for p, r in self.factorization:
            divs = [d * p**e for d in divs for e in range(r + 1)]
        return tuple(sorted(divs))

    def quotient(self) -> "RingContext":
        """Context for Q_u = (Z/NZ)^(n-1), same modulus and mode."""
        if self.dimension < 2:
            raise ValueError("quotient requires dimension >= 2")
        return RingContext(self.modulus, self.factorization, self.dimension - 1,
                           self.mode, self.scale_semantics, self.cap)

    def with_dimension(self, n: int) -> "RingContext":
        return RingContext(self.modulus, self.factorization, n,
                           self.mode, self.scale_semantics, self.cap)

    # -- scales --------------------------------------------------------

    @property
    def num_bands(self) -> int:
        """Number of dual-valuation bands within truncation (M_i <= N)."""
        if isinstance(self.mode, PAdic):
            return self.mode.ell + 1
        if isinstance(self.mode, Profinite):
            return self.mode.L + 1
        raise ScaleUndefinedError("generic rings carry no scale sequence")

    def scale(self, i: int, beyond_truncation: bool = False) -> int:
        return scale(i, self, beyond_truncation=beyond_truncation)


def scale(i: int, ctx: RingContext, beyond_truncation: bool = False) -> int:
    """The scale M_i: p**i in p-adic mode, (i+1)! in profinite mode.

    M_0 = 1 in both modes and M_i | M_{i+1}.  Indices whose scale exceeds
    the truncation raise ScaleOverflowError unless beyond_truncation is
    set (constants tabulation legitimately looks past the truncation).
    """
    if i < 0:
        raise ValueError("scale index must be >= 0")
    if isinstance(ctx.mode, PAdic):
        m = ctx.mode.p**i
    elif isinstance(ctx.mode, Profinite):
        m = math.factorial(i + 1)
    else:
        raise ScaleUndefinedError("generic rings carry no scale sequence")
    if m > ctx.modulus and not beyond_truncation:
        raise ScaleOverflowError(f"M_{i} = {m} exceeds truncation N = {ctx.modulus}")
    return m


def dual_valuation(a: Sequence[int], N: int) -> int:
    """Least positive v with v*a = 0 in ((Z/NZ)^n)^, i.e. N/gcd(a_1,...,a_n,N).

    The zero frequency has valuation 1, matching M_0 = 1.
    """
    g = N
    for c in a:
        g = math.gcd(g, c % N)
    return N // g


@dataclass(frozen=True)
class DualFrequency:
    """A dual-group element together with its valuation (v | N always)."""

    components: tuple[int, ...]
    valuation: int


def dual_frequency(a: Sequence[int], N: int) -> DualFrequency:
    return DualFrequency(tuple(c % N for c in a), dual_valuation(a, N))


@lru_cache(maxsize=None)
def _crt_basis(N: int) -> tuple[tuple[int, int], ...]:
    """Pairs (q_j, e_j) with e_j = 1 mod q_j and e_j = 0 mod N/q_j."""
    out = []
    for p, r in factorize(N):
        q = p**r
        m = N // q
        e = (m * pow(m, -1, q)) % N if m > 1 else 1 % N
        out.append((q, e))
    return tuple(out)


def crt_split_scalar(x: int, N: int) -> tuple[int, ...]:
    return tuple(x % q for q, _ in _crt_basis(N))


def crt_combine_scalar(parts: Sequence[int], N: int) -> int:
    basis = _crt_basis(N)
    if len(parts) != len(basis):
        raise ValueError("component count does not match factorization")
    return sum(c * e for c, (_, e) in zip(parts, basis)) % N


def crt_split(x: Sequence[int], ctx: RingContext) -> tuple[tuple[int, ...], ...]:
    """Split a vector mod N into its vectors mod p_j**r_j (a ring isomorphism)."""
    N = ctx.modulus
    return tuple(tuple(c % (p**r) for c in x) for p, r in ctx.factorization)


def crt_combine(parts: Sequence[Sequence[int]], ctx: RingContext) -> tuple[int, ...]:
    """Inverse of crt_split."""
    N = ctx.modulus
    basis = _crt_basis(N)
    if len(parts) != len(basis):
        raise ValueError("component count does not match factorization")
    n = ctx.dimension
    out = []
    for i in range(n):
        out.append(sum(part[i] * e for part, (_, e) in zip(parts, basis)) % N)
    return tuple(out)
