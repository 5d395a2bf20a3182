# cython: boundscheck=False, wraparound=False, cdivision=True
"""Hot elimination/multiplication kernels, compiled backend.

Mirrors ``_core_py`` exactly.  Entries over Q are arbitrary-precision
Python ints (or Fractions for mul_obj), so those loops still do object
arithmetic, but the index bookkeeping and zero tests run at C speed; the
F_p kernels use C int64 throughout (safe because p < 2**31).
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


def mul_obj(list a, list b, Py_ssize_t m, Py_ssize_t k, Py_ssize_t n):
    """Product of an m*k and a k*n matrix with exact (int/Fraction) entries."""
    cdef Py_ssize_t i, j, t, ai, oi, bt
    cdef object x, y
    cdef list out = [0] * (m * n)
    for i in range(m):
        ai = i * k
        oi = i * n
        for t in range(k):
            x = a[ai + t]
            if x:
                bt = t * n
                for j in range(n):
                    y = b[bt + j]
                    if y:
                        out[oi + j] = out[oi + j] + x * y
    return out


def mul_mod(list a, list b, Py_ssize_t m, Py_ssize_t k, Py_ssize_t n,
            long long p):
    """Product of an m*k and a k*n matrix over F_p (entries in range(p))."""
    cdef Py_ssize_t i, j, t, ai, oi, bt
    cdef long long x, y
    cdef list out = [0] * (m * n)
    cdef long long *row = <long long *> malloc(n * sizeof(long long)) if n else NULL
    if n and row == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            ai = i * k
            oi = i * n
            for j in range(n):
                row[j] = 0
            for t in range(k):
                x = a[ai + t]
                if x:
                    bt = t * n
                    for j in range(n):
                        y = b[bt + j]
                        if y:
                            row[j] = (row[j] + x * y) % p
            for j in range(n):
                if row[j]:
                    out[oi + j] = row[j]
    finally:
        if row != NULL:
            free(row)
    return out


def bareiss_echelon(data, Py_ssize_t rows, Py_ssize_t cols):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(echelon, pivots)``; every division is exact so entries stay
    minor-sized.
    """
    cdef list a = list(data)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, pr, rc, ic, pc
    cdef object prev = 1, piv, x, v, tmp
    for c in range(cols):
        if r >= rows:
            break
        pr = -1
        for i in range(r, rows):
            if a[i * cols + c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rc = r * cols
            pc = pr * cols
            for j in range(cols):
                tmp = a[rc + j]
                a[rc + j] = a[pc + j]
                a[pc + j] = tmp
        rc = r * cols
        piv = a[rc + c]
        for i in range(r + 1, rows):
            ic = i * cols
            x = a[ic + c]
            if x == 0:
                if prev == 1 and piv == 1:
                    continue
                for j in range(c + 1, cols):
                    v = a[ic + j]
                    if v:
                        a[ic + j] = piv * v // prev
            else:
                for j in range(c + 1, cols):
                    a[ic + j] = (piv * a[ic + j] - x * a[rc + j]) // prev
                a[ic + c] = 0
        pivots.append(c)
        prev = piv
        r += 1
    return a, pivots


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a must be nonzero mod p
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod(data, Py_ssize_t rows, Py_ssize_t cols, long long p):
    """Reduced row echelon form over F_p.  Returns ``(rref, pivots)``."""
    cdef list a = [x % p for x in data]
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, pr, rc, ic, pc
    cdef long long inv, x, v, w
    cdef object tmp
    for c in range(cols):
        if r >= rows:
            break
        pr = -1
        for i in range(r, rows):
            if a[i * cols + c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rc = r * cols
            pc = pr * cols
            for j in range(cols):
                tmp = a[rc + j]
                a[rc + j] = a[pc + j]
                a[pc + j] = tmp
        rc = r * cols
        inv = _inv_mod(a[rc + c], p)
        if inv != 1:
            for j in range(c, cols):
                v = a[rc + j]
                if v:
                    a[rc + j] = v * inv % p
        for i in range(rows):
            if i == r:
                continue
            ic = i * cols
            x = a[ic + c]
            if x:
                for j in range(c, cols):
                    v = a[rc + j]
                    if v:
                        w = (<long long> a[ic + j] - x * v) % p
                        if w < 0:
                            w += p
                        a[ic + j] = w
        pivots.append(c)
        r += 1
    return a, pivots
