#!/usr/bin/env python3
"""Precompute exact integer skew-symmetric bases for the irreducible
(2k+1)-dimensional representations of so(3).

Model: harmonic homogeneous polynomials of degree k in (x,y,z), so(3)
acting by rotation vector fields.  The apolar form <p,q> = sum_a a! p_a q_a
is invariant, so the representation matrices are skew w.r.t. its Gram
matrix D.  We find a rational basis change W with W^T D W = c*I (c a
squarefree rational scale, forced mod squares for odd dimension), which
makes the matrices skew w.r.t. the identity, then rescale to integers.

Emits C++ initializer lists on stdout and self-checks everything.
"""

from fractions import Fraction
from itertools import product
from math import gcd, isqrt, factorial, lcm


def monomials(k):
    return [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]


def harmonic_basis(k):
    """Kernel of the Laplacian on degree-k monomial space, rational rref basis."""
    mons = monomials(k)
    idx = {m: i for i, m in enumerate(mons)}
    mons2 = monomials(k - 2)
    rows = []
    for j, (a, b, c) in enumerate(mons):
        col = {}
        if a >= 2:
            col[(a - 2, b, c)] = a * (a - 1)
        if b >= 2:
            col[(a, b - 2, c)] = b * (b - 1)
        if c >= 2:
            col[(a, b, c - 2)] = c * (c - 1)
        rows.append(col)
    # matrix: rows = mons2 (equations), cols = mons
    M = [[Fraction(rows[j].get(m2, 0)) for j in range(len(mons))] for m2 in mons2]
    # rational rref
    nr, nc = len(M), len(mons)
    piv_cols = []
    r = 0
    for c0 in range(nc):
        p = next((i for i in range(r, nr) if M[i][c0] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c0]
        M[r] = [v / pv for v in M[r]]
        for i in range(nr):
            if i != r and M[i][c0] != 0:
                f = M[i][c0]
                M[i] = [vi - f * vr for vi, vr in zip(M[i], M[r])]
        piv_cols.append(c0)
        r += 1
        if r == nr:
            break
    free = [c0 for c0 in range(nc) if c0 not in piv_cols]
    basis = []
    for f0 in free:
        v = [Fraction(0)] * nc
        v[f0] = Fraction(1)
        for ri, pc in enumerate(piv_cols):
            v[pc] = -M[ri][f0]
        basis.append(v)
    assert len(basis) == 2 * k + 1
    return mons, basis


def rho_matrices(k, mons, basis):
    """Matrices of p -> -(grad p).(E_a x) on the harmonic basis, for
    E1=E_23, E2=E_31, E3=E_12 with (E_ij)_kl = d_ik d_jl - d_il d_jk."""
    idx = {m: i for i, m in enumerate(mons)}

    def act(axis, coeffs):
        # E1: e3->e2, e2->-e3 ; E2: e1->e3, e3->-e1 ; E3: e2->e1, e1->-e2
        out = [Fraction(0)] * len(mons)
        for i, (a, b, c) in enumerate(mons):
            co = coeffs[i]
            if co == 0:
                continue
            # -(dp/dx * (Ex)_x + dp/dy * (Ex)_y + dp/dz * (Ex)_z)
            # E1 x = (0, -z, y): term = -( dp/dy * (-z) + dp/dz * (y) )
            if axis == 0:
                if b >= 1:
                    out[idx[(a, b - 1, c + 1)]] += co * b
                if c >= 1:
                    out[idx[(a, b + 1, c - 1)]] -= co * c
            # E2 x = (z, 0, -x): term = -( dp/dx * z + dp/dz * (-x) )
            elif axis == 1:
                if a >= 1:
                    out[idx[(a - 1, b, c + 1)]] -= co * a
                if c >= 1:
                    out[idx[(a + 1, b, c - 1)]] += co * c
            # E3 x = (-y, x, 0): term = -( dp/dx * (-y) + dp/dy * x )
            else:
                if a >= 1:
                    out[idx[(a - 1, b + 1, c)]] += co * a
                if b >= 1:
                    out[idx[(a + 1, b - 1, c)]] -= co * b
        return out

    # write act(basis_j) in terms of basis: solve via the free-column structure
    # basis vectors have identity pattern on the free columns, so coefficients
    # can be read off there.
    free_cols = []
    for v in basis:
        fc = next(i for i, x in enumerate(v) if x == 1 and all(
            basis[j][i] == 0 for j in range(len(basis)) if basis[j] is not v))
        free_cols.append(fc)
    mats = []
    for axis in range(3):
        cols = []
        for v in basis:
            w = act(axis, v)
            coef = [w[fc] for fc in free_cols]
            # verify reconstruction
            rec = [sum(coef[j] * basis[j][i] for j in range(len(basis)))
                   for i in range(len(mons))]
            assert rec == w, "image not harmonic?"
            cols.append(coef)
        m = len(basis)
        mats.append([[cols[j][i] for j in range(m)] for i in range(m)])
    return mats


def apolar_gram(mons, basis):
    m = len(basis)
    w = [factorial(a) * factorial(b) * factorial(c) for (a, b, c) in mons]
    G = [[sum(Fraction(w[t]) * basis[i][t] * basis[j][t] for t in range(len(mons)))
          for j in range(m)] for i in range(m)]
    return G


def squarefree(n):
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return out * n


def sqfree_frac(q):
    return Fraction(squarefree(q.numerator) * squarefree(q.denominator))


def gram_schmidt(G):
    """Diagonalize symmetric positive G by congruence; returns (B, d): rows of B
    are the new basis in old coordinates, d the diagonal norms."""
    m = len(G)
    B = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]

    def form(u, v):
        return sum(u[i] * G[i][j] * v[j] for i in range(m) for j in range(m))

    d = []
    for i in range(m):
        for j in range(i):
            f = form(B[i], B[j]) / d[j]
            B[i] = [a - f * b for a, b in zip(B[i], B[j])]
        d.append(form(B[i], B[i]))
        assert d[i] > 0
    return B, d


def is_square(n):
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def find_norm_vector(d, c, max_den=576):
    """Find rational v with sum d_i v_i^2 = c, preferring sparse support."""
    from itertools import combinations
    m = len(d)
    # integer search: sum d_i (z_i/s)^2 = c  <=>  sum D_i z_i^2 = C s^2 after
    # clearing denominators
    den_l = lcm(*[x.denominator for x in d + [c]])
    D = [int(x * den_l) for x in d]
    C = int(c * den_l)
    # support 1
    for i in range(m):
        for s in range(1, max_den + 1):
            t = C * s * s
            if t % D[i] == 0:
                z = is_square(t // D[i])
                if z:
                    v = [Fraction(0)] * m
                    v[i] = Fraction(z, s)
                    return v
    # support 2: one bounded loop plus a square test
    for i, j in combinations(range(m), 2):
        for s in range(1, max_den + 1):
            t = C * s * s
            for z1 in range(1, isqrt(t // D[i]) + 1):
                rem = t - D[i] * z1 * z1
                if rem <= 0:
                    break
                if rem % D[j] == 0:
                    z2 = is_square(rem // D[j])
                    if z2:
                        v = [Fraction(0)] * m
                        v[i], v[j] = Fraction(z1, s), Fraction(z2, s)
                        return v
    # support 3: modest bounds
    for sup in combinations(range(m), 3):
        for s in range(1, min(max_den, 40) + 1):
            t = C * s * s
            i, j, k = sup
            for z1 in range(1, isqrt(t // D[i]) + 1):
                r1 = t - D[i] * z1 * z1
                if r1 <= 0:
                    break
                for z2 in range(1, isqrt(r1 // D[j]) + 1):
                    r2 = r1 - D[j] * z2 * z2
                    if r2 <= 0:
                        break
                    if r2 % D[k] == 0:
                        z3 = is_square(r2 // D[k])
                        if z3:
                            v = [Fraction(0)] * m
                            v[i], v[j], v[k] = (Fraction(z1, s),
                                                Fraction(z2, s),
                                                Fraction(z3, s))
                            return v
    return None


def congruence_to_scalar(G, c):
    """Find rational W with W^T G W = c I. Rows of returned basis are vectors in
    the coordinates of G."""
    m = len(G)
    B, d = gram_schmidt(G)

    def form(u, v):
        return sum(u[i] * G[i][j] * v[j] for i in range(m) for j in range(m))

    result = []
    cur_basis = B  # rows: orthogonal basis with norms d
    cur_d = d
    while cur_basis:
        v_coords = find_norm_vector(cur_d, c)
        assert v_coords is not None, f"no vector of norm {c} found (d={cur_d})"
        v = [sum(v_coords[i] * cur_basis[i][t] for i in range(len(cur_basis)))
             for t in range(m)]
        assert form(v, v) == c
        result.append(v)
        # orthogonal complement within current span
        nb = []
        for i in range(len(cur_basis)):
            w = cur_basis[i]
            f = form(w, v) / c
            w2 = [a - f * b for a, b in zip(w, v)]
            if any(x != 0 for x in w2):
                nb.append(w2)
        # Gram-Schmidt the complement, drop dependent rows
        kept, kd = [], []
        for w in nb:
            for j in range(len(kept)):
                f = form(w, kept[j]) / kd[j]
                w = [a - f * b for a, b in zip(w, kept[j])]
            nn = form(w, w)
            if nn != 0:
                kept.append(w)
                kd.append(nn)
        assert len(kept) == len(cur_basis) - 1
        cur_basis, cur_d = kept, kd
    return result  # m vectors, pairwise G-orthogonal, norm c


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_inv(A):
    n = len(A)
    M = [row[:] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c0 in range(n):
        p = next(i for i in range(c0, n) if M[i][c0] != 0)
        M[c0], M[p] = M[p], M[c0]
        pv = M[c0][c0]
        M[c0] = [v / pv for v in M[c0]]
        for i in range(n):
            if i != c0 and M[i][c0] != 0:
                f = M[i][c0]
                M[i] = [vi - f * vr for vi, vr in zip(M[i], M[c0])]
    return [row[n:] for row in M]


def process(k):
    mons, basis = harmonic_basis(k)
    rho = rho_matrices(k, mons, basis)
    G = apolar_gram(mons, basis)
    m = 2 * k + 1
    # skewness sanity w.r.t. G
    for R in rho:
        RtG = mat_mul([[R[j][i] for j in range(m)] for i in range(m)], G)
        GR = mat_mul(G, R)
        assert all(RtG[i][j] == -GR[i][j] for i in range(m) for j in range(m))
    # forced scale class for odd dimension
    det_class = Fraction(1)
    _, dd = gram_schmidt(G)
    for x in dd:
        det_class *= x
    c = sqfree_frac(det_class)
    W_rows = congruence_to_scalar(G, c)
    # W: columns are the new basis vectors (in old harmonic-basis coords)
    W = [[W_rows[j][i] for j in range(m)] for i in range(m)]
    Winv = mat_inv(W)
    A = [mat_mul(Winv, mat_mul(R, W)) for R in rho]
    # integer rescale
    t = 1
    for M in A:
        for row in M:
            for x in row:
                t = lcm(t, x.denominator)
    A = [[[x * t for x in row] for row in M] for M in A]
    # checks: integer, skew
    for M in A:
        for i in range(m):
            for j in range(m):
                assert A is not None and M[i][j].denominator == 1
                assert M[i][j] == -M[j][i]
    # bracket closure with so(3) structure constants (scaled by t):
    # [E1,E2] = -E3 cyclic (for E1=E_23,E2=E_31,E3=E_12 in this convention)
    def brk(X, Y):
        return [[sum(X[i][t2] * Y[t2][j] - Y[i][t2] * X[t2][j]
                     for t2 in range(m)) for j in range(m)] for i in range(m)]
    # determine structure constants from the rho matrices themselves
    # (verify [A_a,A_b] = t * sum_c f_abc A_c with f from so(3) E-matrices)
    E = {}
    E[0] = [[0, 0, 0], [0, 0, 1], [0, -1, 0]]   # E_23: e3->e2, e2->-e3
    E[1] = [[0, 0, -1], [0, 0, 0], [1, 0, 0]]   # E_31: e1->e3, e3->-e1
    E[2] = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]   # E_12: e2->e1, e1->-e2
    for a in range(3):
        for b in range(3):
            eb = [[sum(E[a][i][t2] * E[b][t2][j] - E[b][i][t2] * E[a][t2][j]
                       for t2 in range(3)) for j in range(3)] for i in range(3)]
            # expand eb over E basis
            coef = [eb[2][1], eb[0][2], eb[1][0]]  # components on E_23,E_31,E_12
            got = brk(A[a], A[b])
            want = [[Fraction(t) * sum(coef[c0] * A[c0][i][j] for c0 in range(3))
                     for j in range(m)] for i in range(m)]
            assert got == want, (a, b)
    # Casimir scalar
    cas = [[sum(A[a][i][t2] * A[a][t2][j] for a in range(3) for t2 in range(m))
            for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(m):
            assert cas[i][j] == (cas[0][0] if i == j else 0)
    # irreducibility: commutant of {A} is scalars (solve [X,A_a]=0)
    rowsys = []
    for a in range(3):
        for i in range(m):
            for j in range(m):
                row = [Fraction(0)] * (m * m)
                for t2 in range(m):
                    row[i * m + t2] += A[a][t2][j]
                    row[t2 * m + j] -= A[a][i][t2]
                rowsys.append(row)
    # rank of commutant system should be m*m - 1
    rank = 0
    sys_ = [r[:] for r in rowsys]
    nc = m * m
    rr = 0
    for c0 in range(nc):
        p = next((i for i in range(rr, len(sys_)) if sys_[i][c0] != 0), None)
        if p is None:
            continue
        sys_[rr], sys_[p] = sys_[p], sys_[rr]
        pv = sys_[rr][c0]
        sys_[rr] = [v / pv for v in sys_[rr]]
        for i in range(len(sys_)):
            if i != rr and sys_[i][c0] != 0:
                f = sys_[i][c0]
                sys_[i] = [vi - f * vr for vi, vr in zip(sys_[i], sys_[rr])]
        rr += 1
    assert rr == m * m - 1, f"commutant dim {m*m-rr}"
    print(f"// so(3) irrep, dim {m} (k={k}); bracket scale t={t}, casimir={cas[0][0]}")
    for a in range(3):
        rows = ",\n     ".join(
            "{" + ", ".join(str(int(x)) for x in row) + "}" for row in A[a])
        print(f"    {{{rows}}},")
    print()
    return A, t


if __name__ == "__main__":
    for k in (2, 3, 4):
        process(k)
