# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels (int64 with checked arithmetic).

Same contracts as ``_kernels_py``.  Any overflow raises OverflowError and
the dispatcher in ``kernels`` reruns the call on the bignum fallback.
"""

from libc.stdlib cimport malloc, calloc, free

cdef extern from *:
    """
    static inline int k_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int k_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    #define K_LLMIN (-9223372036854775807LL - 1)
    static inline int k_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int k_mul(long long a, long long b, long long *r) nogil
    int k_add(long long a, long long b, long long *r) nogil
    int k_sub(long long a, long long b, long long *r) nogil
    const long long K_LLMIN


cdef inline int fma_into(long long *acc, long long a, long long b) noexcept nogil:
    cdef long long t
    if k_mul(a, b, &t):
        return 1
    if k_add(acc[0], t, acc):
        return 1
    return 0


cdef inline int fms_into(long long *acc, long long a, long long b) noexcept nogil:
    cdef long long t
    if k_mul(a, b, &t):
        return 1
    if k_sub(acc[0], t, acc):
        return 1
    return 0


cdef long long *to_c(object seq, Py_ssize_t size) except NULL:
    cdef long long *buf = <long long *> malloc(max(size, 1) * sizeof(long long))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(size):
            buf[i] = seq[i]
            if buf[i] == K_LLMIN:
                raise OverflowError("int64 minimum not supported")
    except OverflowError:
        free(buf)
        raise
    return buf


cdef list from_c(long long *buf, Py_ssize_t size):
    return [buf[i] for i in range(size)]


def leibniz_defects(int n, object C, int side):
    cdef long long *c = to_c(C, n * n * n)
    cdef long long *lhs = <long long *> calloc(n, sizeof(long long))
    cdef long long *rhs = <long long *> calloc(n, sizeof(long long))
    cdef int r, s, t, k, m, bad, ovf = 0
    cdef long long v
    out = []
    try:
        for r in range(n):
            for s in range(n):
                for t in range(n):
                    for m in range(n):
                        lhs[m] = 0
                        rhs[m] = 0
                    for k in range(n):
                        v = c[(r * n + s) * n + k]
                        if v:
                            for m in range(n):
                                ovf |= fma_into(&lhs[m], v, c[(k * n + t) * n + m])
                    if side == 0:
                        for k in range(n):
                            v = c[(r * n + t) * n + k]
                            if v:
                                for m in range(n):
                                    ovf |= fma_into(&rhs[m], v, c[(k * n + s) * n + m])
                        for k in range(n):
                            v = c[(s * n + t) * n + k]
                            if v:
                                for m in range(n):
                                    ovf |= fma_into(&rhs[m], v, c[(r * n + k) * n + m])
                    else:
                        for k in range(n):
                            v = c[(s * n + t) * n + k]
                            if v:
                                for m in range(n):
                                    ovf |= fma_into(&rhs[m], v, c[(r * n + k) * n + m])
                        for k in range(n):
                            v = c[(r * n + t) * n + k]
                            if v:
                                for m in range(n):
                                    ovf |= fms_into(&rhs[m], v, c[(s * n + k) * n + m])
                    if ovf:
                        raise OverflowError("int64 overflow in leibniz kernel")
                    bad = 0
                    for m in range(n):
                        if lhs[m] != rhs[m]:
                            bad = 1
                            break
                    if bad:
                        out.append((r, s, t, from_c(lhs, n), from_c(rhs, n)))
    finally:
        free(c)
        free(lhs)
        free(rhs)
    return out


def derivation_defects(int n, object C, object M):
    cdef long long *c = to_c(C, n * n * n)
    cdef long long *d
    try:
        d = to_c(M, n * n)
    except OverflowError:
        free(c)
        raise
    cdef long long *lhs = <long long *> calloc(n, sizeof(long long))
    cdef long long *rhs = <long long *> calloc(n, sizeof(long long))
    cdef int i, j, k, m, p, bad, ovf = 0
    cdef long long v
    out = []
    try:
        for i in range(n):
            for j in range(n):
                for m in range(n):
                    lhs[m] = 0
                    rhs[m] = 0
                for k in range(n):
                    v = c[(i * n + j) * n + k]
                    if v:
                        for m in range(n):
                            ovf |= fma_into(&lhs[m], v, d[m * n + k])
                for p in range(n):
                    v = d[p * n + i]
                    if v:
                        for m in range(n):
                            ovf |= fma_into(&rhs[m], v, c[(p * n + j) * n + m])
                for p in range(n):
                    v = d[p * n + j]
                    if v:
                        for m in range(n):
                            ovf |= fma_into(&rhs[m], v, c[(i * n + p) * n + m])
                if ovf:
                    raise OverflowError("int64 overflow in derivation kernel")
                bad = 0
                for m in range(n):
                    if lhs[m] != rhs[m]:
                        bad = 1
                        break
                if bad:
                    out.append((i, j, from_c(lhs, n), from_c(rhs, n)))
    finally:
        free(c)
        free(d)
        free(lhs)
        free(rhs)
    return out


def commutator_defects(int n, object C, int side):
    cdef long long *c = to_c(C, n * n * n)
    cdef long long *mats = <long long *> calloc(n * n * n, sizeof(long long))
    cdef int a, b, i, j, k, m, base, bad, ovf = 0
    cdef long long acc, v
    out = []
    try:
        # mats[a][m][b]: right R_a[m][b] = C[b,a,m]; left L_a[m][b] = C[a,b,m]
        for a in range(n):
            for b in range(n):
                base = ((b * n + a) if side == 0 else (a * n + b)) * n
                for m in range(n):
                    mats[(a * n + m) * n + b] = c[base + m]
        for a in range(n):
            for b in range(n):
                base = ((b * n + a) if side == 0 else (a * n + b)) * n
                bad = 0
                for i in range(n):
                    for j in range(n):
                        acc = 0
                        for k in range(n):
                            v = mats[(a * n + i) * n + k]
                            if v:
                                ovf |= fma_into(&acc, v, mats[(b * n + k) * n + j])
                            v = mats[(b * n + i) * n + k]
                            if v:
                                ovf |= fms_into(&acc, v, mats[(a * n + k) * n + j])
                            v = c[base + k]
                            if v:
                                ovf |= fms_into(&acc, v, mats[(k * n + i) * n + j])
                        if ovf:
                            raise OverflowError("int64 overflow in commutator kernel")
                        if acc != 0:
                            bad = 1
                            break
                    if bad:
                        break
                if bad:
                    out.append((a, b))
    finally:
        free(c)
        free(mats)
    return out


cdef long long gcd_ll(long long a, long long b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef void make_primitive(long long *row, int ncols) noexcept nogil:
    cdef long long g = 0
    cdef int j
    for j in range(ncols):
        if row[j]:
            g = gcd_ll(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(ncols):
            row[j] //= g


cdef int combine(long long *row, long long p, long long *other, long long v, int ncols) noexcept nogil:
    # row <- p*row - v*other, primitive afterwards; 1 on overflow
    cdef int j
    cdef long long x, y
    for j in range(ncols):
        if k_mul(p, row[j], &x):
            return 1
        if k_mul(v, other[j], &y):
            return 1
        if k_sub(x, y, &row[j]) or row[j] == K_LLMIN:
            return 1
    make_primitive(row, ncols)
    return 0


def int_rref(object rows, int ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef long long *basis = <long long *> calloc(max(ncols * ncols, 1), sizeof(long long))
    cdef int *pivots = <int *> calloc(max(ncols, 1), sizeof(int))
    cdef long long *row = <long long *> calloc(max(ncols, 1), sizeof(long long))
    cdef int rank = 0, idx, q, j, lead, pos
    cdef long long v, p
    if basis == NULL or pivots == NULL or row == NULL:
        free(basis); free(pivots); free(row)
        raise MemoryError()
    try:
        for idx in range(nrows):
            src = rows[idx]
            for j in range(ncols):
                row[j] = src[j]
                if row[j] == K_LLMIN:
                    raise OverflowError("int64 minimum not supported")
            for q in range(rank):
                v = row[pivots[q]]
                if v:
                    if combine(row, basis[q * ncols + pivots[q]], &basis[q * ncols], v, ncols):
                        raise OverflowError("int64 overflow in rref kernel")
            lead = -1
            for j in range(ncols):
                if row[j]:
                    lead = j
                    break
            if lead < 0:
                continue
            make_primitive(row, ncols)
            if row[lead] < 0:
                for j in range(ncols):
                    row[j] = -row[j]
            p = row[lead]
            for q in range(rank):
                v = basis[q * ncols + lead]
                if v:
                    if combine(&basis[q * ncols], p, row, v, ncols):
                        raise OverflowError("int64 overflow in rref kernel")
                    if basis[q * ncols + pivots[q]] < 0:
                        for j in range(ncols):
                            basis[q * ncols + j] = -basis[q * ncols + j]
            # insert keeping pivots sorted
            pos = rank
            while pos > 0 and pivots[pos - 1] > lead:
                pivots[pos] = pivots[pos - 1]
                for j in range(ncols):
                    basis[pos * ncols + j] = basis[(pos - 1) * ncols + j]
                pos -= 1
            pivots[pos] = lead
            for j in range(ncols):
                basis[pos * ncols + j] = row[j]
            rank += 1
            if rank == ncols:
                break
        return [from_c(&basis[q * ncols], ncols) for q in range(rank)]
    finally:
        free(basis)
        free(pivots)
        free(row)


def product_span(int n, object C, object A, object B):
    cdef long long *c = to_c(C, n * n * n)
    cdef Py_ssize_t na = len(A), nb = len(B)
    cdef long long *a
    cdef long long *b
    cdef long long *v = <long long *> calloc(n, sizeof(long long))
    cdef long long xy
    cdef int ia, ib, i, j, m, nz, ovf = 0
    gens = []
    a = b = NULL
    try:
        a = to_c([x for row in A for x in row], na * n)
        b = to_c([x for row in B for x in row], nb * n)
        for ia in range(na):
            for ib in range(nb):
                for m in range(n):
                    v[m] = 0
                for i in range(n):
                    if a[ia * n + i] == 0:
                        continue
                    for j in range(n):
                        if b[ib * n + j] == 0:
                            continue
                        if k_mul(a[ia * n + i], b[ib * n + j], &xy):
                            raise OverflowError("int64 overflow in product kernel")
                        for m in range(n):
                            if c[(i * n + j) * n + m]:
                                ovf |= fma_into(&v[m], xy, c[(i * n + j) * n + m])
                if ovf:
                    raise OverflowError("int64 overflow in product kernel")
                nz = 0
                for m in range(n):
                    if v[m]:
                        nz = 1
                        break
                if nz:
                    gens.append(from_c(v, n))
    finally:
        free(c)
        free(v)
        if a != NULL:
            free(a)
        if b != NULL:
            free(b)
    return int_rref(gens, n)
