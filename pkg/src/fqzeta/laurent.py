"""Truncated Laurent series in u = 1/t over F_q (elements of K_infinity).

Precision is absolute: a tail with precision N is correct through u^N and
says nothing about u^(N+1) and beyond.
"""
from __future__ import annotations

from . import kernels as K
from .field import FieldCtx, FieldError, field_for_q
from .polyring import RatFunc


class LaurentTail:
    """c_v u^v + ... + c_N u^N + O(u^(N+1)) with c_v != 0, or an empty tail."""

    __slots__ = ("ctx", "valuation", "coeffs", "precision")

    def __init__(self, ctx: FieldCtx, valuation: int, coeffs, precision: int):
        c = [int(x) for x in coeffs[: max(0, precision - valuation + 1)]]
        if any(not 0 <= x < ctx.q for x in c):
            raise FieldError(f"coefficients must be encoded elements of F_{ctx.q}")
        k = 0
        while k < len(c) and c[k] == 0:
            k += 1
        c = c[k:]
        valuation += k
        while c and c[-1] == 0:
            c.pop()
        if not c:
            valuation = precision + 1
        self.ctx = ctx
        self.valuation = valuation
        self.coeffs = tuple(c)
        self.precision = precision

    @classmethod
    def zero(cls, ctx, precision: int) -> "LaurentTail":
        return cls(ctx, precision + 1, (), precision)

    def is_empty(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        if k > self.precision:
            raise ValueError(f"u^{k} is beyond precision {self.precision}")
        i = k - self.valuation
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def dense(self, lo: int, hi: int) -> list[int]:
        """Coefficients of u^lo..u^hi (hi <= precision)."""
        return [self.coefficient(k) for k in range(lo, hi + 1)]

    def truncate(self, precision: int) -> "LaurentTail":
        precision = min(precision, self.precision)
        return LaurentTail(self.ctx, self.valuation, self.coeffs, precision)

    def _check(self, other):
        if not isinstance(other, LaurentTail):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ValueError("series over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        prec = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation)
        if lo > prec:
            return LaurentTail.zero(self.ctx, prec)
        a = self.dense(lo, prec) if self.valuation <= prec else [0] * (prec - lo + 1)
        b = other.dense(lo, prec) if other.valuation <= prec else [0] * (prec - lo + 1)
        add = self.ctx.add
        return LaurentTail(self.ctx, lo, [add(x, y) for x, y in zip(a, b)], prec)

    def __neg__(self):
        return LaurentTail(self.ctx, self.valuation, K.neg(list(self.coeffs), self.ctx), self.precision)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            c = self.ctx.from_int(other)
            return LaurentTail(self.ctx, self.valuation, K.scale(list(self.coeffs), c, self.ctx), self.precision)
        other = self._check(other)
        if other is NotImplemented:
            return other
        # absolute error of x*y is governed by each error times the other's valuation
        prec = min(self.precision + other.valuation, other.precision + self.valuation)
        v = self.valuation + other.valuation
        if not self.coeffs or not other.coeffs or v > prec:
            return LaurentTail.zero(self.ctx, prec)
        keep = prec - v + 1
        prod = K.mul(list(self.coeffs[:keep]), list(other.coeffs[:keep]), self.ctx)
        return LaurentTail(self.ctx, v, prod[:keep], prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 1:
            raise ValueError("only positive powers of a tail are supported")
        result, base = None, self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def first_mismatch(self, other: "LaurentTail", upto: int | None = None):
        """Lowest exponent where the two tails differ, or None."""
        top = min(self.precision, other.precision)
        if upto is not None:
            top = min(top, upto)
        lo = min(self.valuation, other.valuation)
        for k in range(lo, top + 1):
            if self.coefficient(k) != other.coefficient(k):
                return k
        return None

    def __eq__(self, other):
        if not isinstance(other, LaurentTail):
            return NotImplemented
        return (self.ctx == other.ctx and self.precision == other.precision
                and self.valuation == other.valuation and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.valuation, self.coeffs, self.precision))

    def __str__(self):
        return render_tail(self)

    def __repr__(self):
        return f"LaurentTail({render_tail(self)!r}, q={self.ctx.q})"

    def to_json(self) -> dict:
        return {
            "q": self.ctx.q,
            "valuation": self.valuation,
            "precision": self.precision,
            "coefficients": list(self.coeffs),
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentTail":
        ctx = field_for_q(data["q"])
        return cls(ctx, data["valuation"], data["coefficients"], data["precision"])


def render_tail(x: LaurentTail) -> str:
    terms = []
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        k = x.valuation + i
        mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
        cs = x.ctx.render(c)
        if not mono:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    terms.append(f"O(u^{x.precision + 1})")
    return " + ".join(terms)


def from_ratfunc(x: RatFunc, N: int) -> LaurentTail:
    """Expansion of x in powers of u = 1/t through u^N."""
    ctx = x.ctx
    if x.is_zero():
        return LaurentTail.zero(ctx, N)
    v = x.den.degree - x.num.degree
    if v > N:
        return LaurentTail.zero(ctx, N)
    # x = u^v * rev(num)(u) / rev(den)(u), and rev(den)(0) = 1
    n = N - v + 1
    coeffs = K.series_div(list(reversed(x.num.coeffs)), list(reversed(x.den.coeffs)), n, ctx)
    return LaurentTail(ctx, v, coeffs, N)
