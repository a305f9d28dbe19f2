"""Pure-Python integer kernels.

All kernels work on a dense, denominator-cleared structure tensor ``C`` of
length ``n**3`` where ``C[(i*n + j)*n + k]`` is the (scaled) coefficient of
e_k in [e_i, e_j], indices 0-based.  The Leibniz, derivation and
commutator identities are homogeneous in the structure constants, so
checking them on scaled integers is exact.

This module is the reference implementation and the fallback whenever the
compiled module is missing or an int64 overflow is detected there.
"""

from __future__ import annotations

from math import gcd


def _sparse(n, C):
    """Row lists of nonzero entries: rows[i*n + j] = [(k, c), ...]."""
    rows = []
    for ij in range(n * n):
        base = ij * n
        rows.append([(k, C[base + k]) for k in range(n) if C[base + k]])
    return rows


def _acc(out, coeff, pairs):
    for m, c in pairs:
        out[m] += coeff * c


def leibniz_defects(n, C, side):
    """Basis triples violating the right (side=0) or left (side=1) identity.

    Returns ``[(r, s, t, lhs, rhs), ...]`` in lexicographic order.
    """
    sp = _sparse(n, C)
    out = []
    for r in range(n):
        for s in range(n):
            rs = sp[r * n + s]
            for t in range(n):
                lhs = [0] * n
                for k, c in rs:
                    _acc(lhs, c, sp[k * n + t])
                rhs = [0] * n
                if side == 0:
                    # [[r,t],s] + [r,[s,t]]
                    for k, c in sp[r * n + t]:
                        _acc(rhs, c, sp[k * n + s])
                    for k, c in sp[s * n + t]:
                        _acc(rhs, c, sp[r * n + k])
                else:
                    # [r,[s,t]] - [s,[r,t]]
                    for k, c in sp[s * n + t]:
                        _acc(rhs, c, sp[r * n + k])
                    for k, c in sp[r * n + t]:
                        _acc(rhs, -c, sp[s * n + k])
                if lhs != rhs:
                    out.append((r, s, t, lhs, rhs))
    return out


def derivation_defects(n, C, M):
    """Pairs (i, j) where d([e_i,e_j]) != [d e_i, e_j] + [e_i, d e_j].

    ``M`` is row-major: M[row*n + col]; column k is d(e_k).
    """
    sp = _sparse(n, C)
    cols = [[(m, M[m * n + k]) for m in range(n) if M[m * n + k]] for k in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            lhs = [0] * n
            for k, c in sp[i * n + j]:
                _acc(lhs, c, cols[k])
            rhs = [0] * n
            for p, d in cols[i]:
                _acc(rhs, d, sp[p * n + j])
            for q, d in cols[j]:
                _acc(rhs, d, sp[i * n + q])
            if lhs != rhs:
                out.append((i, j, lhs, rhs))
    return out


def _mult_matrices(n, C, side):
    # right: R_t[m][r] = C[r,t,m]; left: L_s[m][j] = C[s,j,m]
    mats = []
    for a in range(n):
        mat = [[0] * n for _ in range(n)]
        for b in range(n):
            base = ((b * n + a) if side == 0 else (a * n + b)) * n
            for m in range(n):
                mat[m][b] = C[base + m]
        mats.append(mat)
    return mats


def _matmul(A, B, n):
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        oi = out[i]
        for k in range(n):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(n):
                    if Bk[j]:
                        oi[j] += a * Bk[j]
    return out


def commutator_defects(n, C, side):
    """Basis pairs (a, b) breaking the operator law.

    side=0: R_a R_b - R_b R_a == R_{[e_b, e_a]}
    side=1: L_a L_b - L_b L_a == L_{[e_a, e_b]}
    """
    mats = _mult_matrices(n, C, side)
    out = []
    for a in range(n):
        for b in range(n):
            P = _matmul(mats[a], mats[b], n)
            Q = _matmul(mats[b], mats[a], n)
            base = ((b * n + a) if side == 0 else (a * n + b)) * n
            target = [[0] * n for _ in range(n)]
            for k in range(n):
                c = C[base + k]
                if c:
                    Mk = mats[k]
                    for i in range(n):
                        for j in range(n):
                            target[i][j] += c * Mk[i][j]
            for i in range(n):
                if any(P[i][j] - Q[i][j] != target[i][j] for j in range(n)):
                    out.append((a, b))
                    break
    return out


def _primitive(row):
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        row = [v // g for v in row]
    return row


def int_rref(rows, ncols):
    """Integer reduced row echelon form.

    Rows come back primitive with a positive pivot, pivots strictly
    increasing, and every pivot column zero outside its own row.  Dividing
    each row by its pivot gives the rational RREF.
    """
    basis = []  # list of (pivot, row), kept sorted by pivot
    for raw in rows:
        row = list(raw)
        for piv, b in basis:
            v = row[piv]
            if v:
                p = b[piv]
                row = [p * x - v * y for x, y in zip(row, b)]
        lead = next((c for c in range(ncols) if row[c]), None)
        if lead is None:
            continue
        row = _primitive(row)
        if row[lead] < 0:
            row = [-x for x in row]
        # clear the new pivot column from earlier rows
        p = row[lead]
        new_basis = []
        for piv, b in basis:
            v = b[lead]
            if v:
                b = _primitive([p * x - v * y for x, y in zip(b, row)])
                if b[piv] < 0:
                    b = [-x for x in b]
            new_basis.append((piv, b))
        new_basis.append((lead, row))
        new_basis.sort(key=lambda pr: pr[0])
        basis = new_basis
        if len(basis) == ncols:
            break
    return [b for _, b in basis]


def product_span(n, C, A, B):
    """Integer RREF of span{[a, b] : a in A, b in B}."""
    sp = _sparse(n, C)
    gens = []
    for a in A:
        anz = [(i, x) for i, x in enumerate(a) if x]
        for b in B:
            bnz = [(j, y) for j, y in enumerate(b) if y]
            v = [0] * n
            for i, x in anz:
                for j, y in bnz:
                    pairs = sp[i * n + j]
                    if pairs:
                        _acc(v, x * y, pairs)
            if any(v):
                gens.append(v)
    return int_rref(gens, n)
