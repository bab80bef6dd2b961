"""Polynomials in t over F_q, the rational function field K = F_q(t), and the
named polynomials [n], l_n, D_n, L_n.

Text syntax (rendering and parsing round-trip)::

    t^3 + 2*t + 1            # over a prime field
    (1,1)*t^2 + t + (0,1)    # over F_{p^s}: polynomial-basis coordinates
    (t^2 + t + 1)/(t^6 + t^5 + t^4 + t^3)
"""
from __future__ import annotations

import contextlib
import functools
import itertools
import os
import re
import threading

from . import kernels as K
from .field import FieldCtx, FieldError

NEG_INF = float("-inf")
DEFAULT_MAX_ENUM = 1 << 24
MAX_DEGREE = 1 << 24


class BudgetError(RuntimeError):
    """A requested computation exceeds the configured resource budget."""


_budget_override: list[int] = []


def max_enum() -> int:
    """Largest number of monic polynomials one power sum may enumerate."""
    cap = int(os.environ.get("FQZETA_MAX_ENUM", DEFAULT_MAX_ENUM))
    return min([cap] + _budget_override[-1:])


@contextlib.contextmanager
def enum_budget(n: int):
    """Temporarily lower the enumeration budget to ``n``."""
    _budget_override.append(n)
    try:
        yield
    finally:
        _budget_override.pop()


class FqPoly:
    """Immutable dense polynomial; ``coeffs[i]`` is the (encoded) coefficient
    of t^i and the last entry is nonzero."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        c = [int(x) for x in coeffs]
        # the compiled kernels index lookup tables with these, so check here
        if any(not 0 <= x < ctx.q for x in c):
            raise FieldError(f"coefficients must be encoded elements of F_{ctx.q}: {c}")
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, ctx, coeffs):
        # coeffs already trimmed (kernel output)
        obj = cls.__new__(cls)
        obj.ctx, obj.coeffs, obj._hash = ctx, tuple(coeffs), None
        return obj

    @classmethod
    def const(cls, ctx, c: int = 1) -> "FqPoly":
        return cls(ctx, [c])

    @classmethod
    def monomial(cls, ctx, k: int, c: int = 1) -> "FqPoly":
        if k > MAX_DEGREE:
            raise BudgetError(f"degree {k} exceeds dense polynomial limit")
        return cls(ctx, [0] * k + [c])

    @classmethod
    def t(cls, ctx) -> "FqPoly":
        return cls(ctx, [0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _coerce(self, other):
        if isinstance(other, FqPoly):
            if other.ctx != self.ctx:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return FqPoly(self.ctx, [self.ctx.from_int(other)])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqPoly._raw(self.ctx, K.add(list(self.coeffs), list(other.coeffs), self.ctx))

    __radd__ = __add__

    def __neg__(self):
        return FqPoly._raw(self.ctx, K.neg(list(self.coeffs), self.ctx))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqPoly._raw(self.ctx, K.sub(list(self.coeffs), list(other.coeffs), self.ctx))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqPoly._raw(self.ctx, K.mul(list(self.coeffs), list(other.coeffs), self.ctx))

    __rmul__ = __mul__

    def scale(self, c: int) -> "FqPoly":
        if not 0 <= c < self.ctx.q:
            raise FieldError(f"{c} is not an encoded element of F_{self.ctx.q}")
        return FqPoly._raw(self.ctx, K.scale(list(self.coeffs), c, self.ctx))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        if self.coeffs and (len(self.coeffs) - 1) * e > MAX_DEGREE:
            raise BudgetError(f"degree {(len(self.coeffs) - 1) * e} exceeds dense polynomial limit")
        if len(self.coeffs) == 1:
            return FqPoly._raw(self.ctx, [self.ctx.exp[(self.ctx.log[self.coeffs[0]] * e) % (self.ctx.q - 1)]])
        result, base = [1], list(self.coeffs)
        while e:
            if e & 1:
                result = K.mul(result, base, self.ctx)
            e >>= 1
            if e:
                base = K.mul(base, base, self.ctx)
        return FqPoly._raw(self.ctx, result)

    def __divmod__(self, other):
        other = self._coerce(other)
        qt, r = K.divmod_(list(self.coeffs), list(other.coeffs), self.ctx)
        return FqPoly._raw(self.ctx, qt), FqPoly._raw(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "FqPoly":
        qt, r = divmod(self, other)
        if r.coeffs:
            raise ArithmeticError("polynomial division is not exact")
        return qt

    def gcd(self, other) -> "FqPoly":
        other = self._coerce(other)
        return FqPoly._raw(self.ctx, K.gcd(list(self.coeffs), list(other.coeffs), self.ctx))

    def monic(self) -> "FqPoly":
        return FqPoly._raw(self.ctx, K.monic(list(self.coeffs), self.ctx))

    def shift(self, k: int) -> "FqPoly":
        """Multiply by t^k (k >= 0)."""
        if not self.coeffs:
            return self
        return FqPoly._raw(self.ctx, (0,) * k + self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"FqPoly({render_poly(self)!r}, q={self.ctx.q})"


def render_poly(f: FqPoly) -> str:
    if not f.coeffs:
        return "0"
    ctx = f.ctx
    terms = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        cs = ctx.render(c)
        if not mono:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


class RatFunc:
    """Element num/den of K in lowest terms with den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: FqPoly, den: FqPoly | None = None, *, normalized=False):
        ctx = num.ctx
        if den is None:
            den = FqPoly._raw(ctx, (1,))
        if not den.coeffs:
            raise ZeroDivisionError("rational function with zero denominator")
        if not normalized:
            if not num.coeffs:
                den = FqPoly._raw(ctx, (1,))
            else:
                if len(den.coeffs) > 1:
                    g = num.gcd(den)
                    if len(g.coeffs) > 1:
                        num, den = num.exact_div(g), den.exact_div(g)
                lc = den.coeffs[-1]
                if lc != 1:
                    inv = ctx.inv[lc]
                    num, den = num.scale(inv), den.scale(inv)
        self.num, self.den, self._hash = num, den, None

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    @classmethod
    def from_int(cls, ctx, n: int) -> "RatFunc":
        return cls(FqPoly(ctx, [ctx.from_int(n)]), normalized=True)

    @classmethod
    def zero(cls, ctx) -> "RatFunc":
        return cls(FqPoly(ctx), normalized=True)

    @classmethod
    def one(cls, ctx) -> "RatFunc":
        return cls.from_int(ctx, 1)

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def is_poly(self) -> bool:
        return self.den.coeffs == (1,)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ctx != self.ctx:
                raise ValueError("rational functions over different fields")
            return other
        if isinstance(other, FqPoly):
            return RatFunc(other, normalized=True)
        if isinstance(other, int):
            return RatFunc.from_int(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        # the two denominators are usually far from coprime; split off the gcd
        g = self.den.gcd(other.den)
        a, b = self.den.exact_div(g), other.den.exact_div(g)
        return RatFunc(self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.ctx)
        # cross-cancel first so each gcd runs on smaller operands
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num.exact_div(g1), other.den.exact_div(g1)) if len(g1.coeffs) > 1 else (self.num, other.den)
        n2, d1 = (other.num.exact_div(g2), self.den.exact_div(g2)) if len(g2.coeffs) > 1 else (other.num, self.den)
        return RatFunc(n1 * n2, d1 * d2, normalized=True)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        lc = self.num.coeffs[-1]
        inv = self.ctx.inv[lc]
        return RatFunc(self.den.scale(inv), self.num.scale(inv), normalized=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        if k == 0:
            return RatFunc.one(self.ctx)
        # lowest terms are preserved by powers
        return RatFunc(self.num ** k, self.den ** k, normalized=True)

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, RatFunc) else other
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def valuation(self):
        """Order at infinity, i.e. deg den - deg num (inf for zero)."""
        if self.is_zero():
            return float("inf")
        return self.den.degree - self.num.degree

    def __str__(self):
        return render_ratfunc(self)

    def __repr__(self):
        return f"RatFunc({render_ratfunc(self)!r}, q={self.ctx.q})"


def render_ratfunc(x: RatFunc) -> str:
    num = render_poly(x.num)
    if x.is_poly():
        return num
    den = render_poly(x.den)
    if len([c for c in x.num.coeffs if c]) > 1:
        num = f"({num})"
    if len([c for c in x.den.coeffs if c]) > 1 or " " in den or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(\^)|([-+*/()])|(,))")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        num, t, caret, op, comma = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif t:
            out.append(("t", None))
        elif caret:
            out.append(("^", None))
        elif op:
            out.append((op, None))
        elif comma:
            out.append((",", None))
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text, ctx):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind!r}, got {tok[0]!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        val = self.term()
        if sign < 0:
            val = -val
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.power()
            val = val * rhs if op == "*" else val / rhs
        return val

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            e = self.take("num")[1]
            base = base ** (-e if neg else e)
        return base

    def atom(self):
        kind, val = self.take()
        ctx = self.ctx
        if kind == "num":
            return RatFunc.from_int(ctx, val)
        if kind == "t":
            return RatFunc(FqPoly.t(ctx), normalized=True)
        if kind == "(":
            # "(c0,c1,...)" is a field element, anything else a subexpression
            j = self.i
            coords = []
            while self.toks[j][0] == "num" and self.toks[j + 1][0] in (",", ")"):
                coords.append(self.toks[j][1])
                if self.toks[j + 1][0] == ")":
                    break
                j += 2
            else:
                coords = None
            if coords is not None and (len(coords) > 1 or ctx.s > 1) and self.toks[j + 1][0] == ")":
                self.i = j + 2
                return RatFunc(FqPoly(ctx, [ctx.elem(coords).value]), normalized=True)
            inner = self.expr()
            self.take(")")
            return inner
        raise ValueError(f"unexpected token {kind!r}")


def parse_ratfunc(text: str, ctx: FieldCtx) -> RatFunc:
    p = _Parser(text, ctx)
    val = p.expr()
    p.take("end")
    return val


def parse_poly(text: str, ctx: FieldCtx) -> FqPoly:
    val = parse_ratfunc(text, ctx)
    if not val.is_poly():
        raise ValueError(f"{text!r} is not a polynomial")
    return val.num


# -- monic enumeration and named polynomials ---------------------------------

def monic_polys(ctx: FieldCtx, d: int, budget: int | None = None):
    """All q^d monic polynomials of degree d, coefficient vectors in
    lexicographic order read from the constant term up."""
    budget = max_enum() if budget is None else budget
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if ctx.q**d > budget:
        raise BudgetError(f"enumerating {ctx.q}^{d} monic polynomials exceeds budget {budget}")
    for low in itertools.product(range(ctx.q), repeat=d):
        yield FqPoly._raw(ctx, low + (1,))


class BracketCache:
    """Memo of [n] = t^{q^n} - t, l_n, D_n and L_n for one field.

    Values are only ever added; concurrent misses may duplicate work but the
    stored values are identical.
    """

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self._lock = threading.Lock()
        self._memo: dict[tuple[str, int], FqPoly] = {}

    def _get(self, key, build):
        val = self._memo.get(key)
        if val is None:
            val = build()
            with self._lock:
                self._memo.setdefault(key, val)
        return val

    def bracket(self, n: int) -> FqPoly:
        if n < 0:
            raise ValueError("bracket index must be >= 0")
        deg = self.ctx.q**n
        if deg > MAX_DEGREE:
            raise BudgetError(f"[{n}] has degree {deg}, beyond the dense limit")
        t = FqPoly.t(self.ctx)
        return self._get(("bracket", n), lambda: FqPoly.monomial(self.ctx, deg) - t)

    def ell(self, n: int) -> FqPoly:
        """l_n as the product of t - t^{q^i}, i = 1..n."""
        def build():
            t = FqPoly.t(self.ctx)
            acc = FqPoly.const(self.ctx)
            for i in range(1, n + 1):
                acc = acc * (t - FqPoly.monomial(self.ctx, self.ctx.q**i))
            return acc
        return self._get(("ell", n), build)

    def lfact(self, n: int) -> FqPoly:
        """L_n = [n][n-1]...[1]."""
        def build():
            acc = FqPoly.const(self.ctx)
            for i in range(1, n + 1):
                acc = acc * self.bracket(i)
            return acc
        return self._get(("lfact", n), build)

    def dfact(self, n: int) -> FqPoly:
        """D_n = [n][n-1]^q ... [1]^{q^{n-1}}."""
        def build():
            acc = FqPoly.const(self.ctx)
            for i in range(1, n + 1):
                acc = acc * self.bracket(i) ** (self.ctx.q ** (n - i))
            return acc
        return self._get(("dfact", n), build)


@functools.cache
def brackets(ctx: FieldCtx) -> BracketCache:
    return BracketCache(ctx)


def bracket(ctx: FieldCtx, n: int) -> FqPoly:
    return brackets(ctx).bracket(n)


def ell(ctx: FieldCtx, n: int) -> FqPoly:
    return brackets(ctx).ell(n)


def lfact(ctx: FieldCtx, n: int) -> FqPoly:
    return brackets(ctx).lfact(n)


def dfact(ctx: FieldCtx, n: int) -> FqPoly:
    return brackets(ctx).dfact(n)
