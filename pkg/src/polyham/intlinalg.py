"""Exact linear algebra over Z, Q and GF(2).

Everything here is arbitrary precision: Python ints, Fractions for the
signature computation, and int bitmasks for GF(2) rows.  No floating
point anywhere.

The Smith normal form works on a sparse representation and prefers
unit pivots with a Markowitz fill estimate, falling back to Bezout
row/column operations for the (rare, small) residual part.  Transform
matrices are tracked only on request; the conventions are

    S = U * A * V,     kernel(A) = span of V columns at non-pivot columns.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional


# ---------------------------------------------------------------------------
# GF(2): rows as int bitmasks
# ---------------------------------------------------------------------------

class Gf2Space:
    """Incremental row space over GF(2) kept in echelon form."""

    def __init__(self):
        self.pivots: dict = {}  # pivot bit index -> row

    def reduce(self, row: int) -> int:
        while row:
            b = row.bit_length() - 1
            piv = self.pivots.get(b)
            if piv is None:
                return row
            row ^= piv
        return 0

    def add(self, row: int) -> bool:
        """Insert a row; returns True if it enlarged the space."""
        row = self.reduce(row)
        if row == 0:
            return False
        self.pivots[row.bit_length() - 1] = row
        return True

    def contains(self, row: int) -> bool:
        return self.reduce(row) == 0

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def copy(self) -> "Gf2Space":
        s = Gf2Space()
        s.pivots = dict(self.pivots)
        return s


def gf2_rank(rows: Iterable[int]) -> int:
    sp = Gf2Space()
    for r in rows:
        sp.add(r)
    return sp.dim


def gf2_kernel_basis(columns: list, n_cols: int) -> list:
    """Kernel of the matrix whose j-th column (a bitmask over rows) is
    columns[j]; returns kernel vectors as bitmasks over column indices."""
    sp = Gf2Space()
    combos: dict = {}  # pivot bit -> combo mask
    kernel = []
    for j in range(n_cols):
        vec = columns[j]
        combo = 1 << j
        while vec:
            b = vec.bit_length() - 1
            piv = sp.pivots.get(b)
            if piv is None:
                break
            vec ^= piv
            combo ^= combos[b]
        if vec == 0:
            kernel.append(combo)
        else:
            sp.pivots[vec.bit_length() - 1] = vec
            combos[vec.bit_length() - 1] = combo
    return kernel


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

class SmithForm:
    """Result of a Smith normal form computation.

    ``factors`` is the full list of invariant factors (positive, each
    dividing the next); ``rank`` equals ``len(factors)``.
    """

    def __init__(self, shape, factors, pivot_cols, pivot_rows,
                 V=None, Vinv=None, U=None, Uinv=None):
        self.shape = shape
        self.factors = tuple(factors)
        self.rank = len(self.factors)
        self.pivot_cols = tuple(pivot_cols)
        self.pivot_rows = tuple(pivot_rows)
        self.V = V          # list of columns, each a list of length n
        self.Vinv = Vinv    # list of rows
        self.U = U          # list of rows, each a list of length m
        self.Uinv = Uinv    # list of columns

    @property
    def nontrivial_factors(self) -> tuple:
        return tuple(d for d in self.factors if d != 1)

    def kernel_basis(self) -> list:
        """Integral basis of the kernel lattice (saturated), as vectors of
        length n.  Requires V."""
        if self.V is None:
            raise ValueError("kernel basis requires V tracking")
        m, n = self.shape
        piv = set(self.pivot_cols)
        return [self.V[j] for j in range(n) if j not in piv]

    def kernel_coordinates(self, vec) -> list:
        """Coordinates of a kernel vector in the kernel_basis ordering.
        Requires Vinv.  The vector must lie in the kernel."""
        if self.Vinv is None:
            raise ValueError("kernel coordinates require Vinv tracking")
        m, n = self.shape
        piv = set(self.pivot_cols)
        coords = []
        for j in range(n):
            c = sum(self.Vinv[j][i] * vec[i] for i in range(n) if vec[i])
            if j in piv:
                if c != 0:
                    raise ValueError("vector is not in the kernel")
            else:
                coords.append(c)
        return coords


def smith_normal_form(m: int, n: int, entries: Iterable[tuple],
                      want_v: bool = False, want_vinv: bool = False,
                      want_u: bool = False, want_uinv: bool = False) -> SmithForm:
    """Smith normal form of the m x n integer matrix given by (row, col,
    value) triples (repeated positions are summed)."""
    rows: list = [dict() for _ in range(m)]
    col_rows: list = [set() for _ in range(n)]
    for i, j, v in entries:
        if v == 0:
            continue
        d = rows[i]
        w = d.get(j, 0) + v
        if w == 0:
            del d[j]
            col_rows[j].discard(i)
        else:
            d[j] = w
            col_rows[j].add(i)

    V = [[1 if i == j else 0 for i in range(n)] for j in range(n)] if want_v else None
    Vinv = [[1 if i == j else 0 for i in range(n)] for j in range(n)] if want_vinv else None
    U = [[1 if i == j else 0 for i in range(m)] for j in range(m)] if want_u else None
    Uinv = [[1 if i == j else 0 for i in range(m)] for j in range(m)] if want_uinv else None

    # -- elementary operations (A and transforms kept in sync) --

    def row_axpy(dst, src, q):
        """row dst += q * row src (on A, U rows, Uinv columns)."""
        if q == 0:
            return
        rsrc = rows[src]
        rdst = rows[dst]
        for j, v in rsrc.items():
            w = rdst.get(j, 0) + q * v
            if w == 0:
                if j in rdst:
                    del rdst[j]
                    col_rows[j].discard(dst)
            else:
                rdst[j] = w
                col_rows[j].add(dst)
        if U is not None:
            ud, us = U[dst], U[src]
            for k in range(m):
                ud[k] += q * us[k]
        if Uinv is not None:
            cs, cd = Uinv[src], Uinv[dst]
            for k in range(m):
                cs[k] -= q * cd[k]

    def row_combine(r1, r2, a, b, c, d):
        """(row r1, row r2) <- (a*r1 + b*r2, c*r1 + d*r2), ad - bc = +-1."""
        r1d, r2d = rows[r1], rows[r2]
        cols = set(r1d) | set(r2d)
        for j in cols:
            x, y = r1d.get(j, 0), r2d.get(j, 0)
            nx, ny = a * x + b * y, c * x + d * y
            for (rd, ridx, w) in ((r1d, r1, nx), (r2d, r2, ny)):
                if w == 0:
                    if j in rd:
                        del rd[j]
                        col_rows[j].discard(ridx)
                else:
                    rd[j] = w
                    col_rows[j].add(ridx)
        if U is not None:
            u1, u2 = U[r1], U[r2]
            for k in range(m):
                x, y = u1[k], u2[k]
                u1[k], u2[k] = a * x + b * y, c * x + d * y
        if Uinv is not None:
            # inverse of [[a, b], [c, d]] is det * [[d, -b], [-c, a]]
            det = a * d - b * c
            c1, c2 = Uinv[r1], Uinv[r2]
            for k in range(m):
                x, y = c1[k], c2[k]
                c1[k] = det * (d * x - c * y)
                c2[k] = det * (-b * x + a * y)

    def col_axpy(dst, src, q):
        """col dst += q * col src."""
        if q == 0:
            return
        for i in list(col_rows[src]):
            v = rows[i][src]
            w = rows[i].get(dst, 0) + q * v
            if w == 0:
                if dst in rows[i]:
                    del rows[i][dst]
                    col_rows[dst].discard(i)
            else:
                rows[i][dst] = w
                col_rows[dst].add(i)
        if V is not None:
            vs, vd = V[src], V[dst]
            for k in range(n):
                vd[k] += q * vs[k]
        if Vinv is not None:
            rs, rd = Vinv[src], Vinv[dst]
            for k in range(n):
                rs[k] -= q * rd[k]

    def col_combine(c1, c2, a, b, c, d):
        """(col c1, col c2) <- (a*c1 + b*c2, c*c1 + d*c2), ad - bc = +-1."""
        touched = col_rows[c1] | col_rows[c2]
        for i in list(touched):
            x, y = rows[i].get(c1, 0), rows[i].get(c2, 0)
            nx, ny = a * x + b * y, c * x + d * y
            for (cidx, w) in ((c1, nx), (c2, ny)):
                if w == 0:
                    if cidx in rows[i]:
                        del rows[i][cidx]
                        col_rows[cidx].discard(i)
                else:
                    rows[i][cidx] = w
                    col_rows[cidx].add(i)
        if V is not None:
            v1, v2 = V[c1], V[c2]
            for k in range(n):
                x, y = v1[k], v2[k]
                v1[k], v2[k] = a * x + b * y, c * x + d * y
        if Vinv is not None:
            det = a * d - b * c
            r1, r2 = Vinv[c1], Vinv[c2]
            for k in range(n):
                x, y = r1[k], r2[k]
                r1[k] = det * (d * x - c * y)
                r2[k] = det * (-b * x + a * y)

    # -- pivoting loop --

    active_rows = {i for i in range(m) if rows[i]}
    pivots: list = []  # (row, col, value) in retirement order

    def choose_pivot():
        best = None
        best_cost = None
        # inspect a few sparsest rows for a unit pivot
        cand = sorted(active_rows, key=lambda r: len(rows[r]))[:48]
        for r in cand:
            for j, v in rows[r].items():
                if v in (1, -1):
                    cost = (len(rows[r]) - 1) * (len(col_rows[j]) - 1)
                    if best_cost is None or cost < best_cost:
                        best, best_cost = (r, j), cost
            if best is not None and best_cost == 0:
                break
        if best is not None:
            return best
        # no unit entry among candidates: global search for unit, then min abs
        small = None
        small_abs = None
        for r in active_rows:
            for j, v in rows[r].items():
                if v in (1, -1):
                    return (r, j)
                if small_abs is None or abs(v) < small_abs:
                    small, small_abs = (r, j), abs(v)
        return small

    def clear_pivot(pr, pc):
        while True:
            others = [i for i in col_rows[pc] if i != pr]
            for i in others:
                a = rows[pr][pc]
                b = rows[i][pc]
                if b % a == 0:
                    row_axpy(i, pr, -(b // a))
                else:
                    g, x, y = _xgcd(a, b)
                    row_combine(pr, i, x, y, -(b // g), a // g)
            others = [j for j in rows[pr] if j != pc]
            for j in others:
                a = rows[pr][pc]
                b = rows[pr][j]
                if b % a == 0:
                    col_axpy(j, pc, -(b // a))
                else:
                    g, x, y = _xgcd(a, b)
                    col_combine(pc, j, x, y, -(b // g), a // g)
            if len(col_rows[pc]) == 1 and len(rows[pr]) == 1:
                return

    while active_rows:
        pr, pc = choose_pivot()
        while True:
            clear_pivot(pr, pc)
            d = rows[pr][pc]
            if d in (1, -1):
                break
            # enforce the divisibility chain: d must divide every entry that
            # is still active; pulling an offending row into the pivot row
            # and re-clearing replaces d by the gcd
            fix = None
            for i in active_rows:
                if i == pr:
                    continue
                if any(v % d != 0 for v in rows[i].values()):
                    fix = i
                    break
            if fix is None:
                break
            row_axpy(pr, fix, 1)
        d = rows[pr][pc]
        pivots.append((pr, pc, abs(d)))
        active_rows.discard(pr)
        active_rows = {i for i in active_rows if rows[i]}

    factors = [v for _, _, v in pivots]
    assert all(factors[i + 1] % factors[i] == 0 for i in range(len(factors) - 1)), \
        "invariant factors must form a divisibility chain"
    return SmithForm((m, n), factors,
                     [c for _, c, _ in pivots], [r for r, _, _ in pivots],
                     V=V, Vinv=Vinv, U=U, Uinv=Uinv)


def _xgcd(a: int, b: int):
    """g, x, y with x*a + y*b = g = gcd(a, b), g > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def integer_rank(m: int, n: int, entries: Iterable[tuple]) -> int:
    """Rank over Q (equivalently over Z) of an integer matrix."""
    return smith_normal_form(m, n, entries).rank


# ---------------------------------------------------------------------------
# Dense helpers over Q
# ---------------------------------------------------------------------------

def det_bareiss(mat: list) -> int:
    """Exact determinant of a square integer matrix (fraction free)."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def invert_unimodular(mat: list) -> list:
    """Inverse of an integer matrix with det +-1, returned as integer rows."""
    n = len(mat)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for k in range(n):
        piv = next(i for i in range(k, n) if aug[i][k] != 0)
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [v * inv for v in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[k])]
    out = []
    for row in aug:
        vals = row[n:]
        assert all(v.denominator == 1 for v in vals), "matrix is not unimodular"
        out.append([int(v) for v in vals])
    return out


def symmetric_signature(mat: list) -> int:
    """Signature of a symmetric integer (or rational) matrix, exactly.

    Recursive diagonalization: a nonzero diagonal entry contributes its
    sign and is pivoted away; if the diagonal is all zero, an off-diagonal
    hyperbolic pair contributes 0 and both of its rows/columns are
    eliminated together.
    """
    a = [[Fraction(v) for v in row] for row in mat]
    n = len(a)
    idx = list(range(n))
    sig = 0
    while idx:
        # prefer a diagonal pivot
        k = next((i for i in idx if a[i][i] != 0), None)
        if k is not None:
            d = a[k][k]
            sig += 1 if d > 0 else -1
            idx.remove(k)
            for i in idx:
                f = a[i][k] / d
                if f:
                    for j in idx:
                        a[i][j] -= f * a[k][j]
            for i in idx:
                a[i][k] = a[k][i] = Fraction(0)
            continue
        # all-zero diagonal: find a hyperbolic pair
        pair = None
        for i in idx:
            for j in idx:
                if i != j and a[i][j] != 0:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break  # zero matrix remains
        p, q = pair
        c = a[p][q]
        idx.remove(p)
        idx.remove(q)
        # x e_p + y e_q block [[0, c], [c, 0]]: signature contribution 0;
        # eliminate both rows/columns by the 2x2 block inverse
        for i in idx:
            u, v = a[i][p], a[i][q]
            if u == 0 and v == 0:
                continue
            # subtract (u e_p + v e_q)-component:  w -> w - B * binv * [u, v]
            for j in idx:
                a[i][j] -= (u * a[q][j] + v * a[p][j]) / c
        for i in idx:
            a[i][p] = a[i][q] = a[p][i] = a[q][i] = Fraction(0)
    return sig


def gcd_list(vals) -> int:
    g = 0
    for v in vals:
        g = gcd(g, abs(v))
    return g
