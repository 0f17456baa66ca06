# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact kernels; mirrors ``_fallback`` function for function.

Entries stay Python integers (or gmpy2 mpz); the gain comes from typed loop
indices and direct list access in the elimination loops.
"""

BACKEND = "cython"


cdef list _copy(list rows):
    return [list(r) for r in rows]


cdef object _det_inplace(list a, Py_ssize_t n):
    cdef Py_ssize_t i, j, k, p
    cdef list ak, ai
    cdef object prev = 1, pivot, f
    cdef int sign = 1
    if n == 0:
        return 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        ak = <list>a[k]
        pivot = ak[k]
        for i in range(k + 1, n):
            ai = <list>a[i]
            f = ai[k]
            if f == 0:
                for j in range(k + 1, n):
                    ai[j] = (pivot * ai[j]) // prev
            else:
                for j in range(k + 1, n):
                    ai[j] = (pivot * ai[j] - f * ak[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(rows):
    cdef list a = _copy(list(rows))
    return _det_inplace(a, len(a))


def principal_det(rows, idx):
    cdef list sub = []
    cdef list src
    for r in idx:
        src = <list>rows[r]
        sub.append([src[c] for c in idx])
    return _det_inplace(sub, len(sub))


def leading_minors(rows):
    cdef list a = _copy(list(rows))
    cdef Py_ssize_t n = len(a), i, j, k
    cdef list ak, ai, out = []
    cdef object prev = 1, pivot, f
    for k in range(n):
        ak = <list>a[k]
        pivot = ak[k]
        out.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            ai = <list>a[i]
            f = ai[k]
            for j in range(k + 1, n):
                ai[j] = (pivot * ai[j] - f * ak[j]) // prev
        prev = pivot
    return out


def inertia(rows):
    cdef list a = _copy(list(rows))
    cdef Py_ssize_t n = len(a), i, j, k, p
    cdef list ak, ai, r
    cdef object prev = 1, pivot, f
    cdef int prev_sign = 1, s
    cdef Py_ssize_t pos = 0, neg = 0
    for k in range(n):
        p = k
        while p < n and a[p][p] == 0:
            p += 1
        if p == n:
            for i in range(k, n):
                ai = <list>a[i]
                for j in range(k, n):
                    if ai[j] != 0:
                        return None, k
            return (pos, n - k, neg), k
        if p != k:
            a[k], a[p] = a[p], a[k]
            for r in a:
                r[k], r[p] = r[p], r[k]
        ak = <list>a[k]
        pivot = ak[k]
        s = 1 if pivot > 0 else -1
        if s == prev_sign:
            pos += 1
        else:
            neg += 1
        prev_sign = s
        for i in range(k + 1, n):
            ai = <list>a[i]
            f = ai[k]
            for j in range(k + 1, n):
                ai[j] = (pivot * ai[j] - f * ak[j]) // prev
        prev = pivot
    return (pos, 0, neg), n


def solve(rows, rhs):
    cdef Py_ssize_t n = len(rows), i, j, k, p
    cdef list a = [list(r) + [b] for r, b in zip(rows, rhs)]
    cdef list ak, ai, x
    cdef object prev = 1, pivot, f, denom, s
    for k in range(n):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    break
            else:
                return None
        ak = <list>a[k]
        pivot = ak[k]
        for i in range(k + 1, n):
            ai = <list>a[i]
            f = ai[k]
            for j in range(k + 1, n + 1):
                ai[j] = (pivot * ai[j] - f * ak[j]) // prev
        prev = pivot
    denom = a[n - 1][n - 1]
    x = [0] * n
    for i in range(n - 1, -1, -1):
        ai = <list>a[i]
        s = denom * ai[n]
        for j in range(i + 1, n):
            s -= ai[j] * x[j]
        x[i] = s // ai[i]
    return x, denom


def scan_minors(rows, long long lo, long long hi, weights, base, Py_ssize_t cap):
    cdef Py_ssize_t m = len(rows), b, size
    cdef long long r, g
    cdef Py_ssize_t count = 0
    cdef object min_det = None, d, num, den, min_num = None, min_den = 1
    cdef long long min_mask = -1, min_smask = -1
    cdef list nonpos = [], idx, sub, src
    cdef bint weighted = weights is not None
    for r in range(lo, hi):
        g = r ^ (r >> 1)
        if g == 0:
            continue
        idx = []
        for b in range(m):
            if (g >> b) & 1:
                idx.append(b)
        sub = []
        for b in idx:
            src = <list>rows[b]
            sub.append([src[c] for c in idx])
        size = len(idx)
        d = _det_inplace(sub, size)
        count += 1
        if min_det is None or d < min_det:
            min_det = d
            min_mask = g
        if d <= 0 and len(nonpos) < cap:
            nonpos.append((g, d))
        if weighted:
            num = d
            for b in idx:
                num = num * weights[b]
            den = base ** size
            if min_num is None or num * min_den < min_num * den:
                min_num = num
                min_den = den
                min_smask = g
    return count, min_det, min_mask, nonpos, min_num, min_den, min_smask
