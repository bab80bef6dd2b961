"""Finite fields F_q, base-p digits and binomial coefficients mod p.

Elements of F_q = F_p[x]/(m(x)) are encoded as integers in ``range(q)``:
the coordinate vector (c_0, ..., c_{s-1}) in the polynomial basis maps to
c_0 + c_1 p + ... + c_{s-1} p^{s-1}.  The modulus m is the lexicographically
smallest monic irreducible of degree s (coefficients compared from the
constant term upwards), so the encoding is reproducible.

Every field carries exp/log/Zech tables of size q, which the polynomial
kernels use for arithmetic when s > 1.
"""
from __future__ import annotations

import functools
import math
from array import array
from dataclasses import dataclass
from itertools import product

MAX_Q = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % k for k in range(3, math.isqrt(n) + 1, 2))


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


# -- tiny dense F_p[x] helpers, used only while building a field ------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm])


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _pmod([v % p for v in c], m, p)


def _ppowmod(a, e, m, p):
    result, base = [1], _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(f, p):
    """Rabin's test for a monic f over F_p."""
    n = len(f) - 1
    x = [0, 1]
    if _ppowmod(x, p**n, f, p) != _pmod(x, f, p):
        return False
    for r in _prime_factors(n):
        h = _ppowmod(x, p ** (n // r), f, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(f, _trim(h), p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, s: int) -> tuple[int, ...]:
    """Monic irreducible of degree s over F_p, smallest low-degree-first."""
    if s == 1:
        return (0, 1)
    # product() varies its last slot fastest, so c_0 is the most significant key
    for low in product(range(p), repeat=s):
        f = list(low) + [1]
        if f[0] and _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {s} over F_{p}")


# -- the field context -------------------------------------------------------

class FieldCtx:
    """The finite field F_q with q = p**s.

    Build instances through :func:`make_field`, which caches them; two
    contexts compare equal iff they share (p, s).
    """

    __slots__ = ("p", "s", "q", "modulus", "generator",
                 "exp", "log", "zech", "neg", "inv", "__weakref__")

    def __init__(self, p: int, s: int):
        self.p, self.s, self.q = p, s, p**s
        self.modulus = smallest_irreducible(p, s)
        self._build_tables()

    def _coords(self, v):
        out = []
        for _ in range(self.s):
            v, c = divmod(v, self.p)
            out.append(c)
        return out

    def _encode(self, coords):
        v = 0
        for c in reversed(coords):
            v = v * self.p + c
        return v

    def _build_tables(self):
        p, q = self.p, self.q
        m = list(self.modulus)
        n = q - 1
        exp = log = None
        for g in range(1, q):
            gc = _trim(self._coords(g))
            powers, cur, seen_one = [], [1], False
            for _ in range(n):
                powers.append(self._encode(cur + [0] * (self.s - len(cur))))
                cur = _pmulmod(cur, gc, m, p) if self.s > 1 else [cur[0] * gc[0] % p]
                if cur == [1] and len(powers) < n:
                    seen_one = True
                    break
            if not seen_one and len(set(powers)) == n:
                exp = powers
                self.generator = g
                break
        log = [-1] * q
        for i, v in enumerate(exp):
            log[v] = i
        one_plus = []
        for i in range(n):
            c = self._coords(exp[i])
            c[0] = (c[0] + 1) % p
            w = self._encode(c)
            one_plus.append(log[w] if w else -1)
        neg = [self._encode([(-c) % p for c in self._coords(v)]) for v in range(q)]
        inv = [0] + [exp[(-log[v]) % n] for v in range(1, q)]
        self.exp = array("q", exp)
        self.log = array("q", log)
        self.zech = array("q", one_plus)
        self.neg = array("q", neg)
        self.inv = array("q", inv)

    # scalar arithmetic on encoded ints; fine for setup and small loops,
    # the polynomial kernels inline their own versions
    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self.log[a], self.log[b]
        z = self.zech[(lb - la) % (self.q - 1)]
        return 0 if z < 0 else self.exp[(la + z) % (self.q - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg[b])

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in F_q")
        return self.mul(a, self.inv[b])

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def elem(self, value) -> "FqElem":
        if isinstance(value, (tuple, list)):
            if len(value) > self.s or any(not 0 <= c < self.p for c in value):
                raise FieldError(f"bad coordinates {value!r} for F_{self.q}")
            value = self._encode(list(value))
        elif not 0 <= value < self.q:
            raise FieldError(f"{value} is not an encoded element of F_{self.q}")
        return FqElem(self, value)

    def elements(self):
        return [FqElem(self, v) for v in range(self.q)]

    def coords(self, v: int) -> tuple[int, ...]:
        return tuple(self._coords(v))

    def render(self, v: int) -> str:
        if self.s == 1:
            return str(v)
        return "(" + ",".join(map(str, self._coords(v))) + ")"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.s) == (other.p, other.s)

    def __hash__(self):
        return hash((self.p, self.s))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, s={self.s})"

    def __reduce__(self):
        return make_field, (self.p, self.s)


@functools.cache
def make_field(p: int, s: int = 1) -> FieldCtx:
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if not isinstance(s, int) or s < 1:
        raise FieldError(f"extension degree must be a positive integer, got {s!r}")
    if p**s > MAX_Q:
        raise FieldError(f"q = {p}^{s} exceeds the supported size {MAX_Q}")
    return FieldCtx(p, s)


def field_for_q(q: int) -> FieldCtx:
    """Field of order q; q must be a prime power."""
    if q < 2:
        raise FieldError(f"q = {q} is not a prime power")
    fs = _prime_factors(q)
    if len(fs) != 1:
        raise FieldError(f"q = {q} is not a prime power")
    p = fs[0]
    s = round(math.log(q, p))
    if p**s != q:
        s = next(k for k in range(1, 64) if p**k == q)
    return make_field(p, s)


@dataclass(frozen=True)
class FqElem:
    """A single element of F_q, mostly for user-facing code and tests."""

    ctx: FieldCtx
    value: int

    def _other(self, other):
        if isinstance(other, FqElem):
            if other.ctx != self.ctx:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return None

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else FqElem(self.ctx, self.ctx.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else FqElem(self.ctx, self.ctx.sub(self.value, v))

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else FqElem(self.ctx, self.ctx.sub(v, self.value))

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.neg[self.value])

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else FqElem(self.ctx, self.ctx.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else FqElem(self.ctx, self.ctx.div(self.value, v))

    def inverse(self):
        return FqElem(self.ctx, self.ctx.div(1, self.value))

    def __pow__(self, e: int):
        if self.value == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return FqElem(self.ctx, 1 if e == 0 else 0)
        n = self.ctx.q - 1
        return FqElem(self.ctx, self.ctx.exp[(self.ctx.log[self.value] * e) % n])

    def __bool__(self):
        return self.value != 0

    @property
    def coords(self) -> tuple[int, ...]:
        return self.ctx.coords(self.value)

    def __repr__(self):
        return f"FqElem({self.ctx.render(self.value)} in F_{self.ctx.q})"


# -- digits and binomials ------------------------------------------------------

@dataclass(frozen=True)
class DigitVec:
    """Little-endian base-``base`` digits of a nonnegative integer."""

    base: int
    digits: tuple[int, ...]

    def __int__(self):
        v = 0
        for d in reversed(self.digits):
            v = v * self.base + d
        return v

    def __len__(self):
        return len(self.digits)

    def __getitem__(self, i):
        return self.digits[i] if i < len(self.digits) else 0


def digits(n: int, base: int) -> DigitVec:
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if n < 0:
        raise ValueError(f"digits of a negative integer {n}")
    if n == 0:
        return DigitVec(base, (0,))
    out = []
    while n:
        n, r = divmod(n, base)
        out.append(r)
    return DigitVec(base, tuple(out))


def digit_sum(n: int, base: int) -> int:
    """Sum of base-``base`` digits; written l(n) for base q."""
    return sum(digits(n, base).digits)


@functools.lru_cache(maxsize=None)
def _small_binom_table(p: int):
    return [[math.comb(m, n) % p for n in range(p)] for m in range(p)]


def lucas_binom(m: int, n: int, p: int) -> int:
    """C(m, n) mod p by the digit-wise product of Lucas' theorem."""
    if m < 0 or n < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if n > m:
        return 0
    table = _small_binom_table(p)
    r = 1
    while n:
        m, mi = divmod(m, p)
        n, ni = divmod(n, p)
        if ni > mi:
            return 0
        r = r * table[mi][ni] % p
    return r


def is_even_mult(n: int, q: int) -> bool:
    """True iff n is 'even', i.e. a multiple of q - 1."""
    return n % (q - 1) == 0
