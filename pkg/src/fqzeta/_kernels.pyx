# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled polynomial kernels over F_q.

Same functions and list-in/list-out contract as ``_kernels_py``.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy

BACKEND = "cython"

ctypedef long long i64


cdef struct FT:
    i64 p
    i64 s
    i64 n
    const i64* exp
    const i64* log
    const i64* zech
    const i64* neg
    const i64* inv


cdef int _load(object F, FT* ft) except -1:
    # raw pointers stay valid: F owns the arrays and never resizes them
    cdef const i64[::1] e = F.exp
    cdef const i64[::1] l = F.log
    cdef const i64[::1] z = F.zech
    cdef const i64[::1] ng = F.neg
    cdef const i64[::1] iv = F.inv
    ft.p = F.p
    ft.s = F.s
    ft.n = F.q - 1
    ft.exp = &e[0]
    ft.log = &l[0]
    ft.zech = &z[0] if z.shape[0] else NULL
    ft.neg = &ng[0]
    ft.inv = &iv[0]
    return 0


cdef inline i64 fadd(FT* f, i64 a, i64 b) nogil:
    cdef i64 la, d, z
    if f.s == 1:
        a += b
        return a - f.p if a >= f.p else a
    if a == 0:
        return b
    if b == 0:
        return a
    la = f.log[a]
    d = f.log[b] - la
    if d < 0:
        d += f.n
    z = f.zech[d]
    if z < 0:
        return 0
    la += z
    if la >= f.n:
        la -= f.n
    return f.exp[la]


cdef inline i64 fmul(FT* f, i64 a, i64 b) nogil:
    if f.s == 1:
        return a * b % f.p
    if a == 0 or b == 0:
        return 0
    a = f.log[a] + f.log[b]
    if a >= f.n:
        a -= f.n
    return f.exp[a]


cdef i64* _alloc(Py_ssize_t n) except NULL:
    cdef i64* buf = <i64*> malloc((n if n > 0 else 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    memset(buf, 0, (n if n > 0 else 1) * sizeof(i64))
    return buf


cdef i64* _to_c(list a, Py_ssize_t n) except NULL:
    cdef i64* buf = _alloc(n)
    cdef Py_ssize_t i
    for i in range(len(a)):
        buf[i] = a[i]
    return buf


cdef list _from_c(const i64* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


def add(list a, list b, F):
    cdef FT ft
    _load(F, &ft)
    if len(a) < len(b):
        a, b = b, a
    cdef Py_ssize_t la = len(a), lb = len(b), i
    cdef i64* out = _to_c(a, la)
    try:
        for i in range(lb):
            out[i] = fadd(&ft, out[i], <i64> b[i])
        return _from_c(out, la)
    finally:
        free(out)


def neg(list a, F):
    cdef FT ft
    _load(F, &ft)
    return [ft.neg[<i64> x] for x in a]


def sub(list a, list b, F):
    return add(a, neg(b, F), F)


def scale(list a, c, F):
    cdef FT ft
    _load(F, &ft)
    cdef i64 cc = c
    if cc == 0:
        return []
    return [fmul(&ft, <i64> x, cc) for x in a]


def mul(list a, list b, F):
    cdef FT ft
    _load(F, &ft)
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, n
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    cdef i64* A = _to_c(a, la)
    cdef i64* B = _to_c(b, lb)
    cdef i64* C = _alloc(n)
    cdef i64 x, p = ft.p
    try:
        with nogil:
            if ft.s == 1:
                for i in range(la):
                    x = A[i]
                    if x:
                        for j in range(lb):
                            C[i + j] += x * B[j]
                for i in range(n):
                    C[i] %= p
            else:
                for i in range(la):
                    x = A[i]
                    if x:
                        for j in range(lb):
                            if B[j]:
                                C[i + j] = fadd(&ft, C[i + j], fmul(&ft, x, B[j]))
        return _from_c(C, n)
    finally:
        free(A)
        free(B)
        free(C)


cdef Py_ssize_t _rem_inplace(FT* f, i64* r, Py_ssize_t lr, const i64* b,
                             Py_ssize_t lb, i64* qt) nogil:
    """Reduce r (length lr) mod b (length lb, nonzero lead) in place.

    Writes the quotient into qt when qt is not NULL; returns the trimmed
    remainder length.
    """
    cdef Py_ssize_t db = lb - 1, i, j, off
    cdef i64 c, nc, inv_lc = f.inv[b[db]], p = f.p
    for i in range(lr - 1, db - 1, -1):
        c = fmul(f, r[i], inv_lc)
        if c:
            off = i - db
            if qt != NULL:
                qt[off] = c
            if f.s == 1:
                nc = p - c
                for j in range(lb):
                    r[off + j] = (r[off + j] + nc * b[j]) % p
            else:
                nc = f.neg[c]
                for j in range(lb):
                    if b[j]:
                        r[off + j] = fadd(f, r[off + j], fmul(f, nc, b[j]))
    lr = db if lr > db else lr
    while lr > 0 and r[lr - 1] == 0:
        lr -= 1
    return lr


def divmod_(list a, list b, F):
    cdef FT ft
    _load(F, &ft)
    cdef Py_ssize_t la = len(a), lb = len(b), lr
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if la < lb:
        return [], list(a)
    cdef i64* R = _to_c(a, la)
    cdef i64* B = _to_c(b, lb)
    cdef i64* Q = _alloc(la - lb + 1)
    try:
        with nogil:
            lr = _rem_inplace(&ft, R, la, B, lb, Q)
        return _from_c(Q, la - lb + 1), _from_c(R, lr)
    finally:
        free(R)
        free(B)
        free(Q)


def gcd(list a, list b, F):
    cdef FT ft
    _load(F, &ft)
    cdef Py_ssize_t la = len(a), lb = len(b), lt, i
    cdef i64* A = _to_c(a, la)
    cdef i64* B = _to_c(b, lb)
    cdef i64* T
    cdef i64 inv_lc
    try:
        with nogil:
            while lb > 0:
                la = _rem_inplace(&ft, A, la, B, lb, NULL)
                T = A
                A = B
                B = T
                lt = la
                la = lb
                lb = lt
            if la > 0:
                inv_lc = ft.inv[A[la - 1]]
                for i in range(la):
                    A[i] = fmul(&ft, A[i], inv_lc)
        return _from_c(A, la)
    finally:
        free(A)
        free(B)


def monic(list a, F):
    # wraparound is off in this module, so no negative indices
    cdef Py_ssize_t top = len(a) - 1
    if top < 0 or a[top] == 1:
        return list(a)
    return scale(a, F.inv[a[top]], F)


def series_div(list num, list den, Py_ssize_t n, F):
    cdef FT ft
    _load(F, &ft)
    cdef Py_ssize_t ln = len(num), ld = len(den), k, j, top
    cdef i64* N = _to_c(num, ln)
    cdef i64* D = _to_c(den, ld)
    cdef i64* out = _alloc(n)
    cdef i64 acc, inv0 = ft.inv[D[0]], p = ft.p
    try:
        with nogil:
            for k in range(n):
                acc = N[k] if k < ln else 0
                top = k if k < ld - 1 else ld - 1
                if ft.s == 1:
                    for j in range(1, top + 1):
                        acc = (acc + (p - D[j]) * out[k - j]) % p
                else:
                    for j in range(1, top + 1):
                        if D[j] and out[k - j]:
                            acc = fadd(&ft, acc, ft.neg[fmul(&ft, D[j], out[k - j])])
                out[k] = fmul(&ft, acc, inv0)
        return [out[k] for k in range(n)]
    finally:
        free(N)
        free(D)
        free(out)
