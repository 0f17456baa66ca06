"""Pure-Python exact kernels.

Same functions and signatures as the compiled ``_core`` module.  Inputs are
lists of lists of integers (``int`` or ``gmpy2.mpz``); inputs are never
mutated.
"""

BACKEND = "python"


def det(rows):
    """Bareiss determinant with row pivoting on the first nonzero entry."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    prev = 1
    sign = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        ak = a[k]
        pivot = ak[k]
        for i in range(k + 1, n):
            ai = a[i]
            f = ai[k]
            for j in range(k + 1, n):
                ai[j] = (pivot * ai[j] - f * ak[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def principal_det(rows, idx):
    return det([[rows[r][c] for c in idx] for r in idx])


def leading_minors(rows):
    """Leading principal minors of orders 1..n, or a shorter list.

    Elimination runs without pivoting so the k-th pivot is the k-th leading
    minor.  If a zero minor appears the list stops right after it and the
    caller finishes the remaining orders another way.
    """
    n = len(rows)
    a = [list(r) for r in rows]
    prev = 1
    out = []
    for k in range(n):
        ak = a[k]
        pivot = ak[k]
        out.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            ai = a[i]
            f = ai[k]
            for j in range(k + 1, n):
                ai[j] = (pivot * ai[j] - f * ak[j]) // prev
        prev = pivot
    return out


def inertia(rows):
    """Inertia (n_pos, n_zero, n_neg) of a symmetric integer matrix.

    Fraction-free elimination with symmetric (congruence) pivoting: the pivot
    is the first nonzero diagonal entry of the remaining block, moved into
    place by swapping both rows and columns.  Pivots are then the leading
    minors of the permuted matrix and negative eigenvalues are counted by
    sign changes.  Returns ``(None, step)`` when every remaining diagonal
    entry is zero but the remaining block is not.
    """
    n = len(rows)
    a = [list(r) for r in rows]
    prev = 1
    prev_sign = 1
    pos = neg = 0
    for k in range(n):
        p = k
        while p < n and a[p][p] == 0:
            p += 1
        if p == n:
            for i in range(k, n):
                ai = a[i]
                for j in range(k, n):
                    if ai[j] != 0:
                        return None, k
            return (pos, n - k, neg), k
        if p != k:
            a[k], a[p] = a[p], a[k]
            for r in a:
                r[k], r[p] = r[p], r[k]
        ak = a[k]
        pivot = ak[k]
        s = 1 if pivot > 0 else -1
        if s == prev_sign:
            pos += 1
        else:
            neg += 1
        prev_sign = s
        for i in range(k + 1, n):
            ai = a[i]
            f = ai[k]
            for j in range(k + 1, n):
                ai[j] = (pivot * ai[j] - f * ak[j]) // prev
        prev = pivot
    return (pos, 0, neg), n


def solve(rows, rhs):
    """Fraction-free solve of ``rows @ x = rhs``.

    Returns ``(numerators, denominator)`` with ``x = numerators / denominator``
    and the denominator equal to +-det(rows), or ``None`` if singular.
    """
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    break
            else:
                return None
        ak = a[k]
        pivot = ak[k]
        for i in range(k + 1, n):
            ai = a[i]
            f = ai[k]
            for j in range(k + 1, n + 1):
                ai[j] = (pivot * ai[j] - f * ak[j]) // prev
        prev = pivot
    denom = a[n - 1][n - 1]
    x = [0] * n
    for i in range(n - 1, -1, -1):
        ai = a[i]
        s = denom * ai[n]
        for j in range(i + 1, n):
            s -= ai[j] * x[j]
        x[i] = s // ai[i]
    return x, denom


def scan_minors(rows, lo, hi, weights, base, cap):
    """Principal minors over Gray-code ranks ``lo <= r < hi``.

    Rank ``r`` selects the subset whose bitmask is ``r ^ (r >> 1)``.  Tracks
    the smallest determinant and, when ``weights`` is given, the smallest
    rescaled value ``det * prod(weights) / base**size`` as an exact fraction.
    Returns ``(count, min_det, min_mask, nonpositive, min_num, min_den,
    min_scaled_mask)`` where ``nonpositive`` holds at most ``cap`` pairs
    ``(mask, det)`` in scan order.
    """
    m = len(rows)
    count = 0
    min_det = None
    min_mask = -1
    nonpos = []
    min_num = None
    min_den = 1
    min_smask = -1
    for r in range(lo, hi):
        g = r ^ (r >> 1)
        if g == 0:
            continue
        idx = [b for b in range(m) if g >> b & 1]
        d = det([[rows[x][y] for y in idx] for x in idx])
        count += 1
        if min_det is None or d < min_det:
            min_det = d
            min_mask = g
        if d <= 0 and len(nonpos) < cap:
            nonpos.append((g, d))
        if weights is not None:
            num = d
            for b in idx:
                num *= weights[b]
            den = base ** len(idx)
            if min_num is None or num * min_den < min_num * den:
                min_num = num
                min_den = den
                min_smask = g
    return count, min_det, min_mask, nonpos, min_num, min_den, min_smask
