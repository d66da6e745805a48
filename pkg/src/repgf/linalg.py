"""Dense linear algebra over GF(q) on arrays of field codes.

Matrices act on column vectors from the left.  Subspaces are stored as
the rows of a reduced row echelon matrix; `spin` therefore works with
row vectors and right-multiplies by transposes.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .fields import FieldSpec
from .poly import trim

__all__ = [
    "MatrixGF",
    "rref",
    "rank",
    "nullspace",
    "inverse",
    "identity",
    "Echelon",
    "spin",
    "solve_commutant",
    "commutant_dim",
    "min_poly",
    "in_span",
]


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(F: FieldSpec, A):
    """Reduced row echelon form with leftmost-nonzero pivoting.

    Returns (R, pivots) where R holds only the nonzero rows.
    """
    A = np.array(A, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.mul(F.sinv(lead), A[r])
        col = A[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if len(idx):
            A[idx] = F.sub(A[idx], F.mul(col[idx, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: FieldSpec, A) -> int:
    return len(rref(F, A)[1])


def nullspace(F: FieldSpec, A) -> np.ndarray:
    """Basis of {v : A v = 0} as the rows of the returned array."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    R, piv = rref(F, A) if A.shape[0] else (A[:0], [])
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, c in enumerate(free):
        basis[t, c] = 1
        if piv:
            basis[t, piv] = F.neg(R[:, c])
    return basis


def inverse(F: FieldSpec, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(F, np.hstack([A, identity(n)]))
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


class Echelon:
    """A growing subspace of K^n held in reduced row echelon form."""

    def __init__(self, F: FieldSpec, n: int):
        self.F = F
        self.n = n
        self.R = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, X):
        X = np.asarray(X, dtype=np.int64)
        if not self.pivots or X.shape[0] == 0:
            return X.copy()
        return self.F.sub(X, self.F.matmul(X[:, self.pivots], self.R))

    def add(self, X):
        """Extend by the rows of X; return the new RREF rows (possibly none)."""
        X = self.reduce(np.atleast_2d(X))
        X = X[X.any(axis=1)]
        if X.shape[0] == 0:
            return X
        R2, piv2 = rref(self.F, X)
        if self.pivots:
            self.R = self.F.sub(self.R, self.F.matmul(self.R[:, piv2], R2))
        R = np.vstack([self.R, R2])
        piv = self.pivots + piv2
        order = np.argsort(piv, kind="stable")
        self.R = R[order]
        self.pivots = [piv[i] for i in order]
        return R2

    def contains(self, v) -> bool:
        return not self.reduce(np.atleast_2d(v)).any()


def in_span(F: FieldSpec, basis, v) -> bool:
    E = Echelon(F, np.asarray(v).shape[-1])
    E.add(basis)
    return E.contains(v)


def spin(F: FieldSpec, seeds, mats) -> np.ndarray:
    """Smallest subspace containing the seed vectors and closed under mats.

    Vectors are rows; each matrix acts on column vectors, so v -> A v is
    computed as v @ A^T.  Returns the RREF basis of the subspace.
    """
    seeds = np.atleast_2d(np.asarray(seeds, dtype=np.int64))
    E = Echelon(F, seeds.shape[1])
    frontier = E.add(seeds)
    mats_t = [np.asarray(A, dtype=np.int64).T for A in mats]
    while frontier.shape[0] and E.dim < E.n:
        images = np.vstack([F.matmul(frontier, At) for At in mats_t]) if mats_t else frontier[:0]
        frontier = E.add(images)
    return E.R


def _spin_tree(F: FieldSpec, mats, n: int):
    """A basis of K^n built by spinning standard vectors under mats.

    Returns (vecs, origin, n_seeds): vecs[k] is either a standard seed
    vector (origin ('seed', s)) or mats[i] @ vecs[j] (origin (j, i)).
    """
    E = Echelon(F, n)
    vecs = []
    origin = []
    n_seeds = 0
    for c in range(n):
        if E.dim == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[c] = 1
        if E.contains(e):
            continue
        E.add(e)
        vecs.append(e)
        origin.append(("seed", n_seeds))
        n_seeds += 1
        head = len(vecs) - 1
        while head < len(vecs):
            v = vecs[head]
            for i, A in enumerate(mats):
                w = F.matmul(A, v)
                if not E.contains(w):
                    E.add(w)
                    vecs.append(w)
                    origin.append((head, i))
            head += 1
    return np.array(vecs, dtype=np.int64).reshape(len(vecs), n), origin, n_seeds


def _commutant_system(F: FieldSpec, A, B, n: int, m: int):
    """Linear conditions on the images of the spin seeds of K^n.

    A homomorphism X (m x n) with X A_i = B_i X is fixed by the images of
    the seeds; Phi[k] maps those unknowns to X applied to basis vector k.
    Returns (constraint RREF, Phi, basis matrix of K^n, unknown count).
    """
    vecs, origin, r = _spin_tree(F, A, n)
    u = r * m
    Phi = np.zeros((n, m, u), dtype=np.int64)
    for k, (a, b) in enumerate(origin):
        if a == "seed":
            Phi[k, :, b * m : (b + 1) * m] = identity(m)
        else:
            Phi[k] = F.matmul(B[b], Phi[a])
    basis = vecs.T  # columns are the spin-tree vectors
    basis_inv = inverse(F, basis)
    E = Echelon(F, u)
    flat = Phi.reshape(n, m * u)
    for Ai, Bi in zip(A, B):
        C = F.matmul(basis_inv, F.matmul(Ai, basis))
        lhs = F.matmul(C.T, flat).reshape(n, m, u)
        rhs = F.matmul(Bi[None, :, :], Phi)
        rows = F.sub(lhs, rhs).reshape(n * m, u)
        rows = rows[rows.any(axis=1)]
        if rows.shape[0]:
            E.add(rows)
        if E.dim == u:
            break
    return E, Phi, basis_inv, u


def _check_pair(A, B, n, m):
    A = [np.asarray(a, dtype=np.int64) for a in A]
    B = [np.asarray(b, dtype=np.int64) for b in B]
    if len(A) != len(B):
        raise ValidationError("commutant systems need index-aligned generator lists")
    if A:
        n, m = A[0].shape[0], B[0].shape[0]
    if n is None or m is None:
        raise ValueError("dimensions are required when there are no generators")
    for a in A:
        if a.shape != (n, n):
            raise ValidationError("dimension mismatch in first action")
    for b in B:
        if b.shape != (m, m):
            raise ValidationError("dimension mismatch in second action")
    return A, B, n, m


def solve_commutant(F: FieldSpec, A, B, n: int | None = None, m: int | None = None) -> np.ndarray:
    """Basis of {X (m x n) : X A_i = B_i X for all i}, shape (dim, m, n)."""
    A, B, n, m = _check_pair(A, B, n, m)
    if n == 0 or m == 0:
        return np.zeros((0, m, n), dtype=np.int64)
    E, Phi, basis_inv, u = _commutant_system(F, A, B, n, m)
    U = nullspace(F, E.R) if E.dim else identity(u)
    if U.shape[0] == 0:
        return np.zeros((0, m, n), dtype=np.int64)
    Y = F.matmul(Phi, U.T)  # (n, m, s): column k of each solution
    Xcols = np.transpose(Y, (2, 1, 0))
    return F.matmul(Xcols, basis_inv[None, :, :])


def commutant_dim(F: FieldSpec, A, B, n: int | None = None, m: int | None = None) -> int:
    A, B, n, m = _check_pair(A, B, n, m)
    if n == 0 or m == 0:
        return 0
    E, _, _, u = _commutant_system(F, A, B, n, m)
    return u - E.dim


def min_poly(F: FieldSpec, M) -> np.ndarray:
    """Monic minimal polynomial of a square matrix (little-endian codes)."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    width = n * n + n + 1
    E = Echelon(F, width)
    P = identity(n)
    for k in range(n + 1):
        row = np.zeros(width, dtype=np.int64)
        row[: n * n] = P.ravel()
        row[n * n + k] = 1
        red = E.reduce(row[None, :])[0]
        if not red[: n * n].any():
            tail = red[n * n : n * n + k + 1]
            return trim(F.mul(F.sinv(int(tail[-1])), tail))
        E.add(row[None, :])
        P = F.matmul(M, P)
    raise AssertionError("Cayley-Hamilton violated")


class MatrixGF:
    """An immutable matrix over a FieldSpec.

    Thin object wrapper over the array functions in this module, for
    callers that prefer methods to (field, array) pairs.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, entries):
        arr = np.array(
            [[field.decode(x) for x in row] for row in entries] if not isinstance(entries, np.ndarray) else entries,
            dtype=np.int64,
        )
        if arr.ndim != 2:
            arr = arr.reshape(len(arr), -1) if arr.size else np.zeros((0, 0), dtype=np.int64)
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def from_codes(cls, field, codes):
        return cls(field, np.array(codes, dtype=np.int64))

    @classmethod
    def identity(cls, field, n):
        return cls(field, identity(n))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def _same(self, other):
        if self.field != other.field:
            raise ValidationError("mixed-field matrices")

    def __matmul__(self, other):
        self._same(other)
        return MatrixGF(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other):
        self._same(other)
        return MatrixGF(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other):
        self._same(other)
        return MatrixGF(self.field, self.field.sub(self.data, other.data))

    def __eq__(self, other):
        return isinstance(other, MatrixGF) and self.field == other.field and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.field, self.data.tobytes(), self.data.shape))

    @property
    def T(self):
        return MatrixGF(self.field, self.data.T.copy())

    def rank(self) -> int:
        return rank(self.field, self.data)

    def nullspace(self) -> np.ndarray:
        return nullspace(self.field, self.data)

    def inverse(self):
        return MatrixGF(self.field, inverse(self.field, self.data))

    def min_poly(self) -> np.ndarray:
        return min_poly(self.field, self.data)

    def tolist(self):
        return [[self.field.encode(x) for x in row] for row in self.data]

    def __repr__(self):
        return f"MatrixGF({self.field}, {self.tolist()})"
