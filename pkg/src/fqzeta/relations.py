"""Shuffle-relation sets S(a, b) and their verification.

For a, b >= 1 there are f_i in F_p and a_i such that

    S_d(a) S_d(b) - S_d(a+b) = sum f_i S_d(a_i, a+b-a_i)      for all d,

and then zeta(a)zeta(b) = zeta(a+b) + zeta(a,b) + zeta(b,a) + sum f_i zeta(a_i, a+b-a_i).
The pairs are found at d = 1, where everything is a polynomial in U = 1/[1]
and a greedy leading-term reduction produces them.
"""
from __future__ import annotations

import functools
import json
from dataclasses import dataclass

from .field import FieldCtx, field_for_q
from .polyring import RatFunc
from .powersum import UPoly, power_sum, s1_upoly, s_d_nested


class RelationError(AssertionError):
    pass


@dataclass(frozen=True)
class RelationSet:
    """The pairs (f_i, a_i) of S(a, b) over F_q, a_i strictly decreasing."""

    q: int
    a: int
    b: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def p(self) -> int:
        return field_for_q(self.q).p

    @property
    def weight(self) -> int:
        return self.a + self.b

    def parity(self) -> list[int]:
        """(a+b-a_i)/(q-1) for each pair; raises if some a_i is not 'even'."""
        out = []
        for _, ai in self.pairs:
            k, r = divmod(self.weight - ai, self.q - 1)
            if r:
                raise RelationError(f"a+b-a_i = {self.weight - ai} is not a multiple of q-1")
            out.append(k)
        return out

    def check(self) -> None:
        """Assert the container invariants."""
        exps = [ai for _, ai in self.pairs]
        if any(x <= y for x, y in zip(exps, exps[1:])):
            raise RelationError(f"a_i not strictly decreasing: {exps}")
        if any(not 0 < ai < self.weight for ai in exps):
            raise RelationError(f"a_i outside (0, a+b): {exps}")
        if any(not 0 < f < self.p for f, _ in self.pairs):
            raise RelationError("coefficients must lie in [1, p)")
        self.parity()

    def as_upoly(self) -> UPoly:
        acc = UPoly(self.p)
        for f, ai in self.pairs:
            acc = acc + s1_upoly(self.q, ai).scale(f)
        return acc

    def to_json(self) -> dict:
        return {"q": self.q, "a": self.a, "b": self.b, "pairs": [[f, ai] for f, ai in self.pairs]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> "RelationSet":
        if isinstance(data, str):
            data = json.loads(data)
        pairs = tuple((int(f), int(ai)) for f, ai in data["pairs"])
        rel = cls(int(data["q"]), int(data["a"]), int(data["b"]), pairs)
        rel.check()
        return rel

    @classmethod
    def from_terms(cls, q: int, a: int, b: int, terms) -> "RelationSet":
        """Canonical set from (f, a_i) terms: merge equal a_i mod p, drop zeros."""
        p = field_for_q(q).p
        acc: dict[int, int] = {}
        for f, ai in terms:
            acc[ai] = (acc.get(ai, 0) + f) % p
        pairs = tuple((f, ai) for ai, f in sorted(acc.items(), reverse=True) if f)
        return cls(q, a, b, pairs)


@dataclass(frozen=True, order=True)
class MZIndex:
    """Index (s_1, ..., s_r) of a multizeta value."""

    s: tuple[int, ...]

    def __post_init__(self):
        if not self.s or any(x < 1 for x in self.s):
            raise ValueError(f"bad multizeta index {self.s}")

    @property
    def weight(self) -> int:
        return sum(self.s)

    @property
    def depth(self) -> int:
        return len(self.s)

    def __str__(self):
        return "zeta(" + ",".join(map(str, self.s)) + ")"


class MZExpression:
    """Formal Z/pZ-combination of multizeta values."""

    def __init__(self, p: int, terms=None):
        self.p = p
        acc: dict[MZIndex, int] = {}
        for idx, c in (terms or []):
            if not isinstance(idx, MZIndex):
                idx = MZIndex(tuple(idx))
            acc[idx] = (acc.get(idx, 0) + c) % p
        self.terms = {k: v for k, v in sorted(acc.items()) if v}

    def items(self):
        return list(self.terms.items())

    def weights(self) -> set[int]:
        return {idx.weight for idx in self.terms}

    def __eq__(self, other):
        return isinstance(other, MZExpression) and self.p == other.p and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, c in self.terms.items():
            parts.append(str(idx) if c == 1 else f"{c}*{idx}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MZExpression({self}, p={self.p})"

    def to_json(self) -> list:
        return [[list(idx.s), c] for idx, c in self.terms.items()]


def delta_d(ctx: FieldCtx, d: int, a: int, b: int) -> RatFunc:
    """S_d(a) S_d(b) - S_d(a+b)."""
    return power_sum(ctx, d, a) * power_sum(ctx, d, b) - power_sum(ctx, d, a + b)


def delta_upoly(q: int, a: int, b: int) -> UPoly:
    """Delta(a, b) = S_1(a)S_1(b) - S_1(a+b) as a polynomial in U."""
    return s1_upoly(q, a) * s1_upoly(q, b) - s1_upoly(q, a + b)


@functools.lru_cache(maxsize=None)
def derive_relation(q: int, a: int, b: int) -> RelationSet:
    """Greedy reduction of Delta(a, b) by leading U-terms of S_1(n)."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    p = field_for_q(q).p
    work = delta_upoly(q, a, b)
    w = a + b
    pairs = []
    max_steps = w // (q - 1) + 1
    while not work.is_zero():
        n = work.degree()
        theta = work.terms[n]
        if n >= w or (w - n) % (q - 1):
            raise RelationError(f"exponent {n} breaks parity for ({a},{b}) at q={q}")
        f = theta if n % 2 == 0 else (-theta) % p
        pairs.append((f, n))
        work = work - s1_upoly(q, n).scale(f)
        if work.degree() >= n:
            raise RelationError("reduction did not lower the top exponent")
        if len(pairs) > max_steps:
            raise RelationError("reduction exceeded its step bound")
    return RelationSet(q, a, b, tuple(pairs))


@functools.lru_cache(maxsize=None)
def _nested(ctx, d, s):
    return s_d_nested(ctx, d, s)


def verify_relation_exact(rel: RelationSet, d: int, ctx: FieldCtx | None = None):
    """Check Delta_d(a,b) = sum f_i S_d(a_i, a+b-a_i) exactly in K.

    Returns ``(ok, witness)`` with witness = left side minus right side.
    """
    ctx = ctx or field_for_q(rel.q)
    if ctx.q != rel.q:
        raise ValueError("field does not match the relation's q")
    lhs = delta_d(ctx, d, rel.a, rel.b)
    rhs = RatFunc.zero(ctx)
    for f, ai in rel.pairs:
        rhs = rhs + _nested(ctx, d, (ai, rel.weight - ai)) * f
    diff = lhs - rhs
    return diff.is_zero(), diff


def shuffle_expand(q: int, a: int, b: int) -> MZExpression:
    """Right side of zeta(a) zeta(b) as a combination of multizeta values."""
    rel = derive_relation(q, a, b)
    w = a + b
    terms = [((w,), 1), ((a, b), 1), ((b, a), 1)]
    terms += [((ai, w - ai), f) for f, ai in rel.pairs]
    return MZExpression(rel.p, terms)
