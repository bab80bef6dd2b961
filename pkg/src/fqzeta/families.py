"""Closed-form relation sets for small a, and the large-index identities.

Every generator returns a :class:`RelationSet` built from the formula alone;
agreement with :func:`derive_relation` is what the tests establish.
"""
from __future__ import annotations

from dataclasses import dataclass

from .field import FieldCtx, field_for_q, lucas_binom
from .polyring import FqPoly, RatFunc, bracket, ell
from .powersum import s1_upoly, s_d_bruteforce, upoly_eval
from .relations import RelationSet, derive_relation


@dataclass(frozen=True)
class FamilyParams:
    """Recursion data attached to a: r_a = (q-1)p^m with m minimal, a <= p^m."""

    q: int
    a: int

    @property
    def p(self) -> int:
        return field_for_q(self.q).p

    @property
    def m(self) -> int:
        m = 0
        while self.p**m < self.a:
            m += 1
        return m

    @property
    def r(self) -> int:
        return (self.q - 1) * self.p**self.m

    def phi(self, i: int, j: int = 0) -> int:
        return self.r - self.a - j * (self.q - 1) + i * self.r

    @property
    def j_max(self) -> int:
        return (self.r - self.a) // (self.q - 1)

    def decompose(self, b: int) -> tuple[int, int]:
        """(sigma, beta) with b = r*sigma + beta and 0 < beta <= r."""
        sigma, beta = divmod(b, self.r)
        if beta == 0:
            sigma, beta = sigma - 1, self.r
        return sigma, beta

    def n_bj(self, b: int, j: int) -> int:
        """floor((b - 1 - (1+j)(q-1)) / r); used with a = 2."""
        return (b - 1 - (1 + j) * (self.q - 1)) // self.r


def indicator(num: int, den: int) -> int:
    """1 if num/den is an integer, else 0."""
    return 1 if num % den == 0 else 0


def family_a1(q: int, b: int) -> RelationSet:
    """S(1, b): the pairs (1, b - phi(i)) for 0 <= i < sigma."""
    fp = FamilyParams(q, 1)
    sigma, _ = fp.decompose(b)
    return RelationSet.from_terms(q, 1, b, [(1, b - fp.phi(i)) for i in range(sigma)])


def small_a_increment(q: int, a: int, b: int) -> list[tuple[int, int]]:
    """T(a, b + r_a) as (f, a_i) terms."""
    p = field_for_q(q).p
    terms = [(1, a + b)]
    for j in range(1, p - a + 1):
        terms.append((lucas_binom(a + j - 1, j, p), a + b + (p - j) * (q - 1)))
    return terms


def recursion_small_a(q: int, a: int, b: int) -> RelationSet:
    """S(a, b) for 2 <= a <= p, from base cases b <= r_a and the increments."""
    fp = FamilyParams(q, a)
    if not 2 <= a <= fp.p:
        raise ValueError(f"recursion needs 2 <= a <= p, got a={a}, p={fp.p}")
    if b < 1:
        raise ValueError("b must be positive")
    terms = []
    base = b
    while base > fp.r:
        base -= fp.r
        terms += small_a_increment(q, a, base)
    terms += list(derive_relation(q, a, base).pairs)
    return RelationSet.from_terms(q, a, b, terms)


def family_a2(q: int, b: int) -> RelationSet:
    """S(2, b) for any p: weights (j+2) on S_1(b+2-(pi+1+j)(q-1)), i <= n(b,j),
    plus (b/(q-1)) S_1(2) when q-1 divides b."""
    fp = FamilyParams(q, 2)
    p = fp.p
    terms = []
    for j in range(p):
        for i in range(fp.n_bj(b, j) + 1):
            terms.append(((j + 2) % p, b + 2 - (p * i + 1 + j) * (q - 1)))
    if indicator(b, q - 1):
        terms.append(((b // (q - 1)) % p, 2))
    return RelationSet.from_terms(q, 2, b, terms)


def family_a3_q2(b: int, q: int = 2) -> RelationSet:
    """S(3, b) at q = 2 (r_3 = 4)."""
    if q != 2:
        raise ValueError("the a = 3 family is stated for q = 2 only")
    r3 = FamilyParams(2, 3).r
    terms = [(1, b - 1 - 4 * i) for i in range((b - 5) // 4 + 1)]
    terms += [(1, b - 4 * i) for i in range((b - 4) // 4 + 1)]
    for i in (1, 2):
        if indicator(b - i, r3):
            terms += [(1, 2), (1, 3)]
    return RelationSet.from_terms(2, 3, b, terms)


FAMILIES = {
    "a1": lambda q, b: family_a1(q, b),
    "a2": lambda q, b: family_a2(q, b),
    "a3": lambda q, b: family_a3_q2(b, q),
}


# -- identities at large indices -------------------------------------------------

def prop1_value(ctx: FieldCtx, n: int) -> RatFunc:
    """-[n+1] / [1]^(2q^n)."""
    return RatFunc(-bracket(ctx, n + 1), bracket(ctx, 1) ** (2 * ctx.q**n))


def check_prop1(ctx: FieldCtx, n: int) -> bool:
    """S_1(2q^n - 1) = -[n+1]/[1]^(2q^n), via the closed form and brute force."""
    k = 2 * ctx.q**n - 1
    target = prop1_value(ctx, n)
    closed = upoly_eval(s1_upoly(ctx.q, k), ctx)
    brute = s_d_bruteforce(ctx, 1, k)
    return closed == target and brute == target


def check_large_indices(ctx: FieldCtx, n: int) -> bool:
    """S_1(q^n) S_1(q^n - 1) = S_1(2q^n - 1) - S_1(q^n), from closed forms,
    plus the single-pair relation S(q^n, q^n - 1) = {(-1, q^n)}."""
    q, p = ctx.q, ctx.p
    Q = q**n
    one = FqPoly.const(ctx)
    s_q = RatFunc(one, ell(ctx, 1) ** Q)
    s_qm1 = RatFunc(ell(ctx, n), ell(ctx, n - 1) * ell(ctx, 1) ** Q)
    s_2qm1 = prop1_value(ctx, n)
    fact = bracket(ctx, n + 1) - bracket(ctx, n) == bracket(ctx, 1) ** Q
    identity = s_q * s_qm1 == s_2qm1 - s_q
    rel = derive_relation(q, Q, Q - 1)
    return fact and identity and rel.pairs == ((p - 1, Q),)


def neg_n_exponent(q: int, n: int) -> int:
    return q ** (n + 1) - 2 * q**n + 1


def check_s1_negN(ctx: FieldCtx, n: int) -> bool:
    """S_1(-N) = -1 for N = q^(n+1) - 2q^n + 1, and the middle binomials
    C(N, l(q-1)), 0 < l < N/(q-1), all vanish mod p."""
    q, p = ctx.q, ctx.p
    N = neg_n_exponent(q, n)
    total = s_d_bruteforce(ctx, 1, -N)
    minus_one = RatFunc.from_int(ctx, -1)
    binoms_vanish = all(lucas_binom(N, l * (q - 1), p) == 0
                        for l in range(1, -(-N // (q - 1))))
    return total == minus_one and binoms_vanish
