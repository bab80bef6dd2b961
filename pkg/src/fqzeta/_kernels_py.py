"""Pure-Python polynomial kernels over F_q.

Polynomials are little-endian lists of encoded field elements with no
trailing zeros (``[]`` is zero).  ``F`` is a :class:`~fqzeta.field.FieldCtx`.
The compiled module ``_kernels`` exposes the same functions with the same
semantics; :mod:`fqzeta.kernels` picks one at import time.
"""

BACKEND = "python"


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, F):
    if len(a) < len(b):
        a, b = b, a
    if F.s == 1:
        p = F.p
        out = list(a)
        for i, y in enumerate(b):
            out[i] = (out[i] + y) % p
        return _trim(out)
    fadd = F.add
    out = list(a)
    for i, y in enumerate(b):
        out[i] = fadd(out[i], y)
    return _trim(out)


def neg(a, F):
    nt = F.neg
    return [nt[x] for x in a]


def sub(a, b, F):
    return add(a, neg(b, F), F)


def scale(a, c, F):
    if c == 0:
        return []
    if F.s == 1:
        p = F.p
        return [x * c % p for x in a]
    fmul = F.mul
    return [fmul(x, c) for x in a]


def mul(a, b, F):
    if not a or not b:
        return []
    if F.s == 1:
        p = F.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim([v % p for v in out])
    fadd, fmul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fadd(out[i + j], fmul(x, y))
    return _trim(out)


def divmod_(a, b, F):
    """Quotient and remainder of a by nonzero b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return [], list(a)
    r = list(a)
    qt = [0] * (len(a) - db)
    inv_lc = F.inv[b[-1]]
    if F.s == 1:
        p = F.p
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] * inv_lc % p
            if c:
                qt[i - db] = c
                off = i - db
                for j in range(db + 1):
                    r[off + j] = (r[off + j] - c * b[j]) % p
        return _trim(qt), _trim(r[:db])
    fadd, fmul, nt = F.add, F.mul, F.neg
    for i in range(len(a) - 1, db - 1, -1):
        c = fmul(r[i], inv_lc)
        if c:
            qt[i - db] = c
            nc = nt[c]
            off = i - db
            for j in range(db + 1):
                if b[j]:
                    r[off + j] = fadd(r[off + j], fmul(nc, b[j]))
    return _trim(qt), _trim(r[:db])


def monic(a, F):
    if not a or a[-1] == 1:
        return list(a)
    return scale(a, F.inv[a[-1]], F)


def gcd(a, b, F):
    """Monic greatest common divisor (``[]`` when both are zero)."""
    a, b = list(a), list(b)
    while b:
        a, b = b, divmod_(a, b, F)[1]
    return monic(a, F)


def series_div(num, den, n, F):
    """First n power-series coefficients of num/den, with den[0] != 0."""
    inv0 = F.inv[den[0]]
    out = [0] * n
    if F.s == 1:
        p = F.p
        for k in range(n):
            acc = num[k] if k < len(num) else 0
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * out[k - j]
            out[k] = acc * inv0 % p
        return out
    fadd, fmul, nt = F.add, F.mul, F.neg
    for k in range(n):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j] and out[k - j]:
                acc = fadd(acc, nt[fmul(den[j], out[k - j])])
        out[k] = fmul(acc, inv0)
    return out
