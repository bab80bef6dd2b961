"""Power sums S_d(k) = sum of a^(-k) over monic a of degree d.

S_1 values are handled canonically as U-polynomials: F_p-combinations of
powers of a formal U standing for 1/[1].  Everything else is exact
arithmetic in K.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

from .field import FieldCtx, digit_sum, field_for_q, lucas_binom
from .laurent import from_ratfunc
from .polyring import (
    BudgetError, FqPoly, RatFunc, bracket, dfact, ell, lfact, max_enum, monic_polys,
)


class UPoly:
    """Sparse polynomial in U over Z/pZ, stored as {exponent: coefficient}."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms=None):
        self.p = p
        clean = {}
        for e, c in (terms or {}).items():
            if e < 0:
                raise ValueError(f"negative U-exponent {e}")
            c %= p
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def monomial(cls, p, e, c=1):
        return cls(p, {e: c})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max(self.terms) if self.terms else -1

    def lead(self):
        return self.terms[max(self.terms)] if self.terms else 0

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return UPoly(self.p, out)

    def __neg__(self):
        return UPoly(self.p, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        return UPoly(self.p, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = (out.get(e1 + e2, 0) + c1 * c2) % self.p
        return UPoly(self.p, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def items(self):
        """(exponent, coefficient) pairs, highest exponent first."""
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self):
        body = " + ".join(f"{c}*U^{e}" for e, c in self.items()) or "0"
        return f"UPoly({body}, p={self.p})"


@dataclass(frozen=True)
class S1Form:
    """Closed form of S_1(a) as sum of alpha_{a,i} U^(a - i(q-1))."""

    q: int
    a: int
    terms: tuple[tuple[int, int, int], ...]  # (i, exponent, coefficient mod p)

    @property
    def p(self) -> int:
        return field_for_q(self.q).p

    def as_upoly(self) -> UPoly:
        return UPoly(self.p, {e: c for _, e, c in self.terms})


@functools.lru_cache(maxsize=None)
def s1_closed_form(q: int, a: int) -> S1Form:
    if a < 1:
        raise ValueError("S_1 closed form needs a >= 1")
    p = field_for_q(q).p
    sign = 1 if a % 2 == 0 else p - 1
    terms = [(0, a, sign % p)]
    for i in range(1, (a - 1) // q + 1):
        c = lucas_binom(a - 1 - i * (q - 1), i, p)
        if c:
            if (a + i) % 2:
                c = -c % p
            terms.append((i, a - i * (q - 1), c))
    return S1Form(q, a, tuple(terms))


def s1_upoly(q: int, a: int) -> UPoly:
    return s1_closed_form(q, a).as_upoly()


def upoly_eval(x: UPoly, ctx: FieldCtx, N: int | None = None):
    """Substitute U = 1/[1].  Exact RatFunc, or a LaurentTail through u^N."""
    if x.p != ctx.p:
        raise ValueError("UPoly characteristic does not match the field")
    if x.is_zero():
        val = RatFunc.zero(ctx)
    else:
        top = x.degree()
        b1 = bracket(ctx, 1)
        # sum c_e [1]^(top - e), by Horner in [1] from the lowest exponent up
        num = FqPoly(ctx)
        prev = None
        for e, c in reversed(x.items()):
            if prev is not None:
                num = num * (b1 ** (e - prev))
            num = num + FqPoly.const(ctx, ctx.from_int(c))
            prev = e
        val = RatFunc(num, b1 ** top)
    return val if N is None else from_ratfunc(val, N)


# -- brute force ---------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _monic_lcm(ctx: FieldCtx, d: int) -> tuple[FqPoly, tuple[FqPoly, ...]]:
    """lcm M of the monic degree-d polynomials and the cofactors M/a."""
    polys = list(monic_polys(ctx, d))
    M = FqPoly.const(ctx)
    for a in polys:
        M = M * a.exact_div(M.gcd(a))
    return M, tuple(M.exact_div(a) for a in polys)


@functools.lru_cache(maxsize=4096)
def _s_d_cached(ctx: FieldCtx, d: int, k: int) -> RatFunc:
    if d == 0:
        return RatFunc.one(ctx)
    if k <= 0:
        acc = FqPoly(ctx)
        for a in monic_polys(ctx, d):
            acc = acc + a ** (-k)
        return RatFunc(acc, normalized=True)
    M, cof = _monic_lcm(ctx, d)
    num = FqPoly(ctx)
    for c in cof:
        num = num + c ** k
    return RatFunc(num, M ** k)


def s_d_bruteforce(ctx: FieldCtx, d: int, k: int, budget: int | None = None) -> RatFunc:
    """S_d(k) by summing over all q^d monic polynomials of degree d."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    budget = max_enum() if budget is None else budget
    if ctx.q**d > budget:
        raise BudgetError(f"S_{d}({k}) needs {ctx.q}^{d} terms, over budget {budget}")
    return _s_d_cached(ctx, d, k)


# -- negative power sums via the coefficient-space recursion --------------------

class _SpacePowerSums:
    """P[j][m] = sum of b^m over all b in A of degree < j (0^0 = 1).

    Splitting b = c t^(j-1) + b' and summing over c in F_q gives
    P[j][m] = -sum_{i>0, (q-1)|i} C(m,i) t^((j-1)i) P[j-1][m-i].
    """

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.levels: list[list[FqPoly]] = [[FqPoly.const(ctx)]]
        self.mmax = 0

    def _extend(self, d: int, mmax: int):
        ctx = self.ctx
        q, p = ctx.q, ctx.p
        if mmax > self.mmax:
            # grow every existing level in m, then add new levels
            zero = FqPoly(ctx)
            self.levels[0] += [zero] * (mmax - self.mmax)
            for j in range(1, len(self.levels)):
                prev = self.levels[j - 1]
                self.levels[j] += [self._entry(prev, j, m) for m in range(self.mmax + 1, mmax + 1)]
            self.mmax = mmax
        while len(self.levels) <= d:
            j = len(self.levels)
            prev = self.levels[j - 1]
            self.levels.append([self._entry(prev, j, m) for m in range(self.mmax + 1)])

    def _entry(self, prev, j, m):
        ctx = self.ctx
        q, p = ctx.q, ctx.p
        acc = FqPoly(ctx)
        for i in range(q - 1, m + 1, q - 1):
            base = prev[m - i]
            if not base.coeffs:
                continue
            c = lucas_binom(m, i, p)
            if c:
                acc = acc + base.shift((j - 1) * i).scale(ctx.from_int(c))
        return -acc

    def get(self, d: int, mmax: int) -> list[FqPoly]:
        self._extend(d, mmax)
        return self.levels[d]


@functools.cache
def _space_sums(ctx: FieldCtx) -> _SpacePowerSums:
    return _SpacePowerSums(ctx)


def neg_power_sum(ctx: FieldCtx, d: int, k: int) -> FqPoly:
    """S_d(-k) = sum of a^k over monic a of degree d, for k >= 0.

    Expands (t^d + b)^k binomially and uses the power sums of the space of
    lower-degree polynomials, so the cost does not grow with q^d.
    """
    if k < 0:
        raise ValueError("neg_power_sum takes k >= 0")
    if d == 0:
        return FqPoly.const(ctx)
    P = _space_sums(ctx).get(d, k)
    acc = FqPoly(ctx)
    for m in range(k + 1):
        if not P[m].coeffs:
            continue
        c = lucas_binom(k, m, ctx.p)
        if c:
            acc = acc + P[m].shift(d * (k - m)).scale(ctx.from_int(c))
    return acc


def power_sum(ctx: FieldCtx, d: int, k: int) -> RatFunc:
    """S_d(k) exactly, choosing the cheapest exact route."""
    if k <= 0 and ctx.q**d > 64:
        return RatFunc(neg_power_sum(ctx, d, -k), normalized=True)
    return s_d_bruteforce(ctx, d, k)


# -- closed forms -------------------------------------------------------------

def _p_adic_unit_part(k: int, p: int) -> int:
    while k % p == 0:
        k //= p
    return k


def s_d_special(ctx: FieldCtx, d: int, k: int) -> RatFunc | None:
    """Closed-form S_d(k) when (d, k) fits a known pattern, else None.

    Patterns, tried in order:
      k = a p^n with a <= q          1 / l_d^k
      k = q^i - 1, i >= 1            l_{d+i-1} / (l_{i-1} l_d^(q^i))
      d = 1, k = 2q^n - 1            -[n+1] / [1]^(2q^n)
      k = -m, d(q-1) > l(m)          0
      k = -(q^e - 1), e >= d         (-1)^d D_e / (L_d D_{e-d}^(q^d))
    """
    q = ctx.q
    if k > 0:
        if _p_adic_unit_part(k, ctx.p) <= q:
            return RatFunc(FqPoly.const(ctx), ell(ctx, d) ** k)
        i = _exact_log(k + 1, q)
        if i is not None and i >= 1:
            return RatFunc(ell(ctx, d + i - 1), ell(ctx, i - 1) * ell(ctx, d) ** (q**i))
        if d == 1 and (k + 1) % 2 == 0:
            n = _exact_log((k + 1) // 2, q)
            if n is not None:
                return RatFunc(-bracket(ctx, n + 1), bracket(ctx, 1) ** (2 * q**n))
        return None
    m = -k
    if d * (q - 1) > digit_sum(m, q):
        return RatFunc.zero(ctx)
    e = _exact_log(m + 1, q)
    if e is not None and e >= d:
        num = dfact(ctx, e)
        if d % 2:
            num = -num
        return RatFunc(num, lfact(ctx, d) * dfact(ctx, e - d) ** (q**d))
    return None


def _exact_log(n: int, base: int) -> int | None:
    """i with base**i == n, or None."""
    if n < 1:
        return None
    i = 0
    while n % base == 0:
        n //= base
        i += 1
    return i if n == 1 else None


# -- nested sums ----------------------------------------------------------------

def s_d_nested(ctx: FieldCtx, d: int, s: tuple[int, ...]) -> RatFunc:
    """S_d(s_1, ..., s_r) = S_d(s_1) * sum over d > d_2 > ... > d_r >= 0."""
    s = tuple(s)
    if not s:
        raise ValueError("S_d of the empty index is not defined")
    r = len(s)
    if r == 1:
        return power_sum(ctx, d, s[0])
    if d < r - 1:
        return RatFunc.zero(ctx)
    # tail[e] = sum over chains starting strictly below e for the suffix
    below = [RatFunc.one(ctx)] * (d + 1)
    for idx in range(r - 1, 0, -1):
        running = RatFunc.zero(ctx)
        new = [RatFunc.zero(ctx)] * (d + 1)
        for e in range(d + 1):
            new[e] = running
            if idx == r - 1:
                term = power_sum(ctx, e, s[idx])
            else:
                term = power_sum(ctx, e, s[idx]) * below[e]
            running = running + term
        below = new
    return power_sum(ctx, d, s[0]) * below[d]
