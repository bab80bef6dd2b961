"""Multizeta values zeta(s_1, ..., s_r) in K_infinity, to absolute precision.

Truncation: every monic a of degree d >= 1 satisfies
    S_d(k) = t^(-dk) * sum_m C(-k, m) t^(-dm) * (sum of b^m over deg b < d),
and the inner power sums over the d-dimensional space of lower-degree
polynomials vanish for m < q^d - 1.  Hence v(S_d(k)) >= d*k + q^d - 1, and a
chain d_1 > ... > d_r contributes nothing through u^N once the sum of these
bounds exceeds N.  This prunes far harder than v >= d*k alone.
"""
from __future__ import annotations

from dataclasses import dataclass

from .field import FieldCtx
from .laurent import LaurentTail, from_ratfunc
from .polyring import BudgetError, RatFunc, max_enum
from .powersum import power_sum
from .relations import MZIndex, shuffle_expand


@dataclass(frozen=True)
class ZetaRequest:
    index: MZIndex
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be >= 1")


def valuation_bound(q: int, d: int, k: int) -> int:
    """Lower bound for the u-adic valuation of S_d(k), k >= 1."""
    return d * k + q**d - 1


def chains(q: int, s: tuple[int, ...], N: int):
    """Degree chains d_1 > ... > d_r >= 0 whose valuation bound is <= N."""
    def rec(i, lo, cost):
        # assign d_i >= lo, innermost index first; bounds grow with d
        if i < 0:
            yield ()
            return
        for d in range(lo, N + 1):
            c = cost + valuation_bound(q, d, s[i])
            if c > N:
                break
            for rest in rec(i - 1, d + 1, c):
                yield rest + (d,)

    yield from rec(len(s) - 1, 0, 0)


def zeta_trunc(ctx: FieldCtx, req: ZetaRequest | tuple, N: int | None = None) -> LaurentTail:
    """zeta(s_1, ..., s_r) through u^N."""
    if not isinstance(req, ZetaRequest):
        req = ZetaRequest(MZIndex(tuple(req)), N)
    s, N = req.index.s, req.precision
    budget = max_enum()
    acc = LaurentTail.zero(ctx, N)
    for ch in chains(ctx.q, s, N):
        if ctx.q ** ch[0] > budget:
            raise BudgetError(f"zeta{s} to u^{N} needs degree {ch[0]} sums")
        term = RatFunc.one(ctx)
        for d, k in zip(ch, s):
            term = term * power_sum(ctx, d, k)
        acc = acc + from_ratfunc(term, N)
    return acc


def verify_shuffle_numeric(ctx: FieldCtx, a: int, b: int, N: int):
    """Compare zeta(a)zeta(b) with the shuffle expansion through u^N.

    Returns ``(ok, first_mismatching_order)``.
    """
    lhs = zeta_trunc(ctx, (a,), N) * zeta_trunc(ctx, (b,), N)
    rhs = LaurentTail.zero(ctx, N)
    for idx, c in shuffle_expand(ctx.q, a, b).items():
        rhs = rhs + zeta_trunc(ctx, idx.s, N) * c
    k = lhs.first_mismatch(rhs, upto=N)
    return k is None, k
