"""Exact dense/sparse linear algebra over the scalar fields.

The public surface works on ``KMatrix`` (dense, row-major, entries are
``Scalar``).  Internally two accelerated paths exist:

* prime fields: matrices are transported to numpy ``int64`` arrays and
  eliminated with vectorized (and, for rank, blocked) modular arithmetic;
* cyclotomic fields: large rank computations run on a sparse
  integer-coefficient elimination that strips row content after every
  combination step, keeping coefficient growth in check.

All routines are deterministic: identical inputs yield identical outputs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .scalars import CycScalar, CyclotomicField, FpScalar, PrimeField


class NoSolution(ValueError):
    """The linear system has no solution."""


class DimensionMismatch(ValueError):
    """Operand shapes are incompatible."""


class KMatrix:
    """Dense matrix over an exact field."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, data, field, cols=None):
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        if self.rows:
            self.cols = len(self.data[0])
        else:
            self.cols = 0 if cols is None else cols
        self.field = field
        for row in self.data:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged rows")

    @classmethod
    def zeros(cls, rows, cols, field):
        z = field.zero
        return cls([[z] * cols for _ in range(rows)], field, cols=cols)

    @classmethod
    def identity(cls, n, field):
        m = cls.zeros(n, n, field)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    def copy(self):
        return KMatrix(self.data, self.field, cols=self.cols)

    def transpose(self):
        return KMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.field,
            cols=self.rows,
        )

    def matmul(self, other: "KMatrix") -> "KMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("matmul shape mismatch")
        z = self.field.zero
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.data[i][k]
                    b = other.data[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return KMatrix(out, self.field, cols=other.cols)

    def __eq__(self, other):
        return (
            isinstance(other, KMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"KMatrix({self.rows}x{self.cols} over {self.field!r})"


class Subspace:
    """Row space given by a reduced-echelon basis."""

    __slots__ = ("ambient", "basis", "pivots", "field")

    def __init__(self, ambient, basis_rows, pivots, field):
        self.ambient = ambient
        self.basis = basis_rows
        self.pivots = pivots
        self.field = field

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        """Reduce a vector modulo this subspace (eliminate pivot coordinates)."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for j in range(self.ambient):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
        return v

    def membership(self, v) -> bool:
        return all(c.is_zero() for c in self.reduce(v))


def rref(M: KMatrix):
    """Reduced row echelon form with pivot columns.

    Deterministic leftmost-pivot, topmost-row elimination.
    """
    data = [list(row) for row in M.data]
    rows, cols = M.rows, M.cols
    pivots = []
    r = 0
    for j in range(cols):
        if r == rows:
            break
        sel = None
        for i in range(r, rows):
            if data[i][j]:
                sel = i
                break
        if sel is None:
            continue
        data[r], data[sel] = data[sel], data[r]
        inv = data[r][j].inverse()
        data[r] = [x * inv for x in data[r]]
        prow = data[r]
        for i in range(rows):
            if i != r and data[i][j]:
                c = data[i][j]
                data[i] = [a - c * b for a, b in zip(data[i], prow)]
        pivots.append(j)
        r += 1
    return KMatrix(data, M.field, cols=cols), pivots


def rank(M: KMatrix) -> int:
    if isinstance(M.field, PrimeField):
        return rank_modp(to_numpy(M), M.field.p)
    return len(rref(M)[1])


def kernel(M: KMatrix) -> Subspace:
    """Right kernel {x : M x = 0}, echelonized basis rows."""
    R, pivots = rref(M)
    field = M.field
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * M.cols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -R.data[i][f]
        basis.append(v)
    # basis rows already reduced-echelon w.r.t. the free columns
    return Subspace(M.cols, basis, free, field)


def nullity(M: KMatrix) -> int:
    return M.cols - rank(M)


def solve(M: KMatrix, b, variant: str = "canonical"):
    """Solve M x = b exactly; free variables are set to zero.

    ``variant="reversed"`` prefers pivots in right-to-left column order
    (used to exercise lift-independence of Yoneda products).
    """
    return solve_many(M, [list(b)], variant=variant)[0]


def solve_many(M: KMatrix, bs, variant: str = "canonical"):
    """Solve M x = b for several right-hand sides at once."""
    if any(len(b) != M.rows for b in bs):
        raise DimensionMismatch("rhs length != rows")
    if isinstance(M.field, PrimeField):
        A = to_numpy(M)
        B = np.array(
            [[s.value for s in b] for b in bs], dtype=np.int64
        ).T.reshape(M.rows, len(bs))
        X = solve_modp(A, B, M.field.p, variant=variant)
        if X is None:
            raise NoSolution("inconsistent system")
        return [
            [FpScalar(int(X[i, k]), M.field) for i in range(M.cols)]
            for k in range(len(bs))
        ]
    return _solve_many_generic(M, bs, variant)


def _solve_many_generic(M, bs, variant):
    field = M.field
    colorder = list(range(M.cols))
    if variant == "reversed":
        colorder = colorder[::-1]
    aug = [
        list(row) + [b[i] for b in bs] for i, row in enumerate(M.data)
    ]
    rows = M.rows
    width = M.cols + len(bs)
    pivots = []
    r = 0
    for j in colorder:
        if r == rows:
            break
        sel = None
        for i in range(r, rows):
            if aug[i][j]:
                sel = i
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = aug[r][j].inverse()
        aug[r] = [x * inv for x in aug[r]]
        prow = aug[r]
        for i in range(rows):
            if i != r and aug[i][j]:
                c = aug[i][j]
                aug[i] = [a - c * bb for a, bb in zip(aug[i], prow)]
        pivots.append(j)
        r += 1
    for i in range(r, rows):
        if any(aug[i][M.cols + k] for k in range(len(bs))):
            raise NoSolution("inconsistent system")
    out = []
    for k in range(len(bs)):
        x = [field.zero] * M.cols
        for i, p in enumerate(pivots):
            x[p] = aug[i][M.cols + k]
        out.append(x)
    return out


def membership(S: Subspace, v) -> bool:
    return S.membership(v)


class QuotientSpace:
    """Coordinates on Z / C for subspaces C <= Z of a common ambient space."""

    def __init__(self, Z: Subspace, C: Subspace):
        self.Z = Z
        self.C = C
        field = Z.field
        reduced = []
        for row in Z.basis:
            w = C.reduce(row)
            if any(c for c in w):
                reduced.append(w)
        # echelonize the reduced representatives
        if reduced:
            R, pivots = rref(KMatrix(reduced, field, cols=Z.ambient))
            self.basis = [R.data[i] for i in range(len(pivots))]
            self.pivots = pivots
        else:
            self.basis = []
            self.pivots = []
        self.field = field
        self.ambient = Z.ambient

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, v):
        """Coordinates of [v] in the echelon basis of Z/C."""
        w = self.C.reduce(v)
        out = []
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            out.append(c)
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        if any(x for x in w):
            raise NoSolution("vector not in the cocycle space")
        return out


# ---------------------------------------------------------------------------
# numpy mod-p fast path


def to_numpy(M: KMatrix) -> np.ndarray:
    return np.array(
        [[s.value for s in row] for row in M.data], dtype=np.int64
    ).reshape(M.rows, M.cols)


def from_numpy(A: np.ndarray, field: PrimeField) -> KMatrix:
    return KMatrix(
        [[FpScalar(int(v), field) for v in row] for row in A], field, cols=A.shape[1]
    )


def rank_modp(A: np.ndarray, p: int, block: int = 64) -> int:
    """Rank over F_p by right-looking blocked forward elimination.

    Panels of up to ``block`` pivots are factored with vectorized row
    operations; the trailing submatrix update is a float64 matmul, exact
    because block * p**2 stays below 2**53.
    """
    A = np.ascontiguousarray(A % p, dtype=np.int64)
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    while block > 1 and block * p * p > 2**52:
        block //= 2
    rank_ = 0
    row = 0
    col = 0
    while row < m and col < n:
        hi = min(n, col + block)
        # panel phase: eliminate columns [col, hi) for rows >= row, touching
        # panel columns only; the multipliers are stored in place in the
        # eliminated column so that later row swaps carry them along
        panel = []  # (pivot row, pivot col, inv)
        r = row
        for j in range(col, hi):
            if r == m:
                break
            nz = np.nonzero(A[r:, j])[0]
            if nz.size == 0:
                continue
            sel = r + int(nz[0])
            if sel != r:
                A[[r, sel]] = A[[sel, r]]
            inv = pow(int(A[r, j]), -1, p)
            A[r, j:hi] = (A[r, j:hi] * inv) % p
            mult = A[r + 1 :, j].copy()
            if mult.size and np.any(mult):
                A[r + 1 :, j + 1 : hi] = (
                    A[r + 1 :, j + 1 : hi] - np.outer(mult, A[r, j + 1 : hi])
                ) % p
                A[r + 1 :, j] = mult
            panel.append((r, j, inv))
            r += 1
        npiv = len(panel)
        if npiv == 0:
            col = hi
            continue
        if hi < n:
            # replay the panel row operations on the trailing columns
            T = A[:, hi:]
            upto = row + npiv
            for rk, jk, inv in panel:
                T[rk] = (T[rk] * inv) % p
                seg = A[rk + 1 : upto, jk]
                if seg.size and np.any(seg):
                    T[rk + 1 : upto] = (
                        T[rk + 1 : upto] - np.outer(seg, T[rk])
                    ) % p
            # rows below the whole panel: one batched matmul update
            if upto < m:
                F = np.empty((m - upto, npiv), dtype=np.int64)
                for k, (rk, jk, inv) in enumerate(panel):
                    F[:, k] = A[upto:, jk]
                Tpiv = T[row:upto]
                if np.any(F):
                    prod = np.matmul(F.astype(np.float64), Tpiv.astype(np.float64))
                    T[upto:] -= prod.astype(np.int64)
                    T[upto:] %= p
        rank_ += npiv
        row += npiv
        col = hi
    return rank_


def rref_modp(A: np.ndarray, p: int):
    """Full reduced row echelon form over F_p (vectorized, unblocked)."""
    A = A.copy() % p
    m, n = A.shape
    pivots = []
    r = 0
    for j in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, j])[0]
        if nz.size == 0:
            continue
        sel = r + int(nz[0])
        if sel != r:
            A[[r, sel]] = A[[sel, r]]
        inv = pow(int(A[r, j]), -1, p)
        A[r] = (A[r] * inv) % p
        colvals = A[:, j].copy()
        colvals[r] = 0
        mask = colvals != 0
        if np.any(mask):
            A[mask] = (A[mask] - np.outer(colvals[mask], A[r])) % p
        pivots.append(j)
        r += 1
    return A, pivots


def solve_modp(A: np.ndarray, B: np.ndarray, p: int, variant: str = "canonical"):
    """Solve A X = B over F_p; returns X with free variables zero, or None."""
    m, n = A.shape
    k = B.shape[1]
    colorder = list(range(n)) if variant == "canonical" else list(range(n - 1, -1, -1))
    aug = np.concatenate([A % p, B % p], axis=1)
    pivots = []
    r = 0
    for j in colorder:
        if r == m:
            break
        nz = np.nonzero(aug[r:, j])[0]
        if nz.size == 0:
            continue
        sel = r + int(nz[0])
        if sel != r:
            aug[[r, sel]] = aug[[sel, r]]
        inv = pow(int(aug[r, j]), -1, p)
        aug[r] = (aug[r] * inv) % p
        colvals = aug[:, j].copy()
        colvals[r] = 0
        mask = colvals != 0
        if np.any(mask):
            aug[mask] = (aug[mask] - np.outer(colvals[mask], aug[r])) % p
        pivots.append(j)
        r += 1
    if r < m and np.any(aug[r:, n:]):
        return None
    X = np.zeros((n, k), dtype=np.int64)
    for i, j in enumerate(pivots):
        X[j] = aug[i, n:]
    return X


# ---------------------------------------------------------------------------
# sparse cyclotomic rank


def _content(ints):
    g = 0
    for v in ints:
        if v:
            g = gcd(g, abs(v))
            if g == 1:
                return 1
    return g if g else 1


class _CycRing:
    """Z[zeta_L] coefficient vectors (int tuples) for fraction-free rows."""

    def __init__(self, field: CyclotomicField):
        self.deg = field.deg
        # integer reduction rows: x^k = (1/den) * vec; Phi_L is monic over Z
        # so the Fraction reduction rows are in fact integral
        self.red = {
            k: tuple(int(c) for c in v) for k, v in field._reduction.items()
        }
        for k, v in field._reduction.items():
            assert all(c.denominator == 1 for c in v)

    def mul(self, a, b):
        d = self.deg
        if d == 1:
            return (a[0] * b[0],)
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                rk = self.red[k]
                for i in range(d):
                    if rk[i]:
                        out[i] += c * rk[i]
        return tuple(out)


def sparse_rank_cyclotomic(rows, ncols, field: CyclotomicField) -> int:
    """Rank of a sparse matrix over Q(zeta_L).

    ``rows``: list of dicts {col: CycScalar}.  Entries are scaled to
    integer coefficient vectors; elimination uses cross-multiplication and
    strips the integer content of every combined row.
    """
    ring = _CycRing(field)
    deg = field.deg
    work = []
    for row in rows:
        r = {}
        den = 1
        for c in row.values():
            for q in c.coeffs:
                den = den * q.denominator // gcd(den, q.denominator)
        for j, c in row.items():
            vec = tuple(int(q * den) for q in c.coeffs)
            if any(vec):
                r[j] = vec
        if r:
            work.append(r)
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(work):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    active = set(range(len(work)))
    rank_ = 0
    for j in sorted(col_rows):
        cand = [i for i in col_rows.get(j, ()) if i in active and j in work[i]]
        if not cand:
            continue
        cand.sort(key=lambda i: (len(work[i]), i))
        piv = cand[0]
        pivrow = work[piv]
        pivval = pivrow[j]
        for i in cand[1:]:
            r = work[i]
            v = r[j]
            new = {}
            for jj, coef in r.items():
                a = ring.mul(pivval, coef)
                if jj in pivrow:
                    b = ring.mul(v, pivrow[jj])
                    a = tuple(x - y for x, y in zip(a, b))
                if any(a):
                    new[jj] = a
            for jj, coef in pivrow.items():
                if jj not in r:
                    b = ring.mul(v, coef)
                    if any(b):
                        new[jj] = tuple(-x for x in b)
            new.pop(j, None)
            g = _content([x for vec in new.values() for x in vec])
            if g > 1:
                new = {
                    jj: tuple(x // g for x in vec) for jj, vec in new.items()
                }
            # update the column index
            for jj in r:
                if jj != j and jj not in new:
                    col_rows.get(jj, set()).discard(i)
            for jj in new:
                if jj not in r:
                    col_rows.setdefault(jj, set()).add(i)
            work[i] = new
            if not new:
                active.discard(i)
        active.discard(piv)
        rank_ += 1
    return rank_


def sparse_rank(rows, ncols, field) -> int:
    """Rank of a sparse matrix given as a list of {col: Scalar} rows."""
    if isinstance(field, PrimeField):
        A = np.zeros((len(rows), ncols), dtype=np.int64)
        for i, r in enumerate(rows):
            for j, s in r.items():
                A[i, j] = s.value
        return rank_modp(A, field.p)
    return sparse_rank_cyclotomic(rows, ncols, field)
