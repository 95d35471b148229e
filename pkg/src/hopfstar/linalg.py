"""
Dense exact matrices over cyclotomic scalars.

Matrices are immutable; rows are tuples of Scalar.  Products skip zero
entries, which keeps the permutation-heavy checks of the tensor layer cheap.
"""

from functools import reduce

from .errors import DimensionMismatch, NotInvertible
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Matrix",
    "vector",
    "swap_matrix",
    "permutation_matrix",
    "block_diag",
    "kron_all",
    "same_span",
    "echelon_basis",
]


def vector(values, n=1):
    """Coerce an iterable into a tuple of Scalars."""
    return tuple(as_scalar(v, n) for v in values)


class Matrix:
    __slots__ = ("rows", "nrows", "ncols", "_nz")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(v if isinstance(v, Scalar) else as_scalar(v) for v in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._nz = None

    @classmethod
    def _raw(cls, rows, nrows, ncols):
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = nrows
        m.ncols = ncols
        m._nz = None
        return m

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, r, c):
        row = (ZERO,) * c
        return cls._raw((row,) * r, r, c)

    @classmethod
    def identity(cls, n):
        rows = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        return cls._raw(rows, n, n)

    @classmethod
    def scalar(cls, s):
        return cls._raw(((as_scalar(s),),), 1, 1)

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = [tuple(as_scalar(v) for v in c) for c in cols]
        if not cols:
            return cls.zeros(nrows or 0, 0)
        r = len(cols[0])
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(r)), r, len(cols))

    @classmethod
    def from_sparse(cls, r, c, entries):
        """Build from a mapping {(i, j): scalar}."""
        rows = [[ZERO] * c for _ in range(r)]
        for (i, j), v in entries.items():
            rows[i][j] = as_scalar(v)
        return cls._raw(tuple(tuple(x) for x in rows), r, c)

    # -- access -----------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    def _nonzeros(self):
        if self._nz is None:
            self._nz = tuple(tuple((j, v) for j, v in enumerate(r) if not v.is_zero()) for r in self.rows)
        return self._nz

    def nonzero_entries(self):
        for i, r in enumerate(self._nonzeros()):
            for j, v in r:
                yield i, j, v

    def submatrix(self, rows, cols):
        return Matrix._raw(
            tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(rows), len(cols)
        )

    # -- arithmetic -------------------------------------------------------

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        onz = other._nonzeros()
        if not any(onz):
            return self
        if not any(self._nonzeros()):
            return other
        rows = []
        for r, extra in zip(self.rows, onz):
            if extra:
                r = list(r)
                for j, v in extra:
                    r[j] = r[j] + v
                r = tuple(r)
            rows.append(r)
        return Matrix._raw(tuple(rows), self.nrows, self.ncols)

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.nrows, self.ncols)

    def scale(self, s):
        s = as_scalar(s)
        if s.is_zero():
            return Matrix.zeros(self.nrows, self.ncols)
        if s == ONE:
            return self
        return Matrix._raw(
            tuple(tuple(a if a.is_zero() else s * a for a in r) for r in self.rows), self.nrows, self.ncols
        )

    def __mul__(self, s):
        if isinstance(s, Matrix):
            return self @ s
        return self.scale(s)

    __rmul__ = scale

    def __matmul__(self, other):
        if isinstance(other, (tuple, list)):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        right = other._nonzeros()
        c = other.ncols
        out = []
        for r in self._nonzeros():
            acc = {}
            for k, a in r:
                for j, b in right[k]:
                    p = a * b
                    if j in acc:
                        acc[j] = acc[j] + p
                    else:
                        acc[j] = p
            row = [ZERO] * c
            for j, v in acc.items():
                row[j] = v
            out.append(tuple(row))
        return Matrix._raw(tuple(out), self.nrows, c)

    def apply(self, vec):
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        out = []
        for r in self._nonzeros():
            acc = ZERO
            for k, a in r:
                b = vec[k]
                if not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __pow__(self, k):
        out = Matrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    @property
    def T(self):
        if not (self.nrows and self.ncols):
            return Matrix.zeros(self.ncols, self.nrows)
        return Matrix._raw(tuple(zip(*self.rows)), self.ncols, self.nrows)

    def conj(self):
        return Matrix._raw(tuple(tuple(a.conj() for a in r) for r in self.rows), self.nrows, self.ncols)

    @property
    def H(self):
        return self.conj().T

    def kron(self, other):
        rows = []
        onz = other._nonzeros()
        for r in self.rows:
            for orow_i in range(other.nrows):
                row = [ZERO] * (self.ncols * other.ncols)
                for j, a in enumerate(r):
                    if a.is_zero():
                        continue
                    base = j * other.ncols
                    for k, b in onz[orow_i]:
                        row[base + k] = a * b
                rows.append(tuple(row))
        return Matrix._raw(tuple(rows), self.nrows * other.nrows, self.ncols * other.ncols)

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def is_zero(self):
        return all(not r for r in self._nonzeros())

    def is_identity(self):
        return self.nrows == self.ncols and self == Matrix.identity(self.nrows)

    def is_square(self):
        return self.nrows == self.ncols

    # -- elimination ------------------------------------------------------

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = None
            for i in range(r, self.nrows):
                if not rows[i][c].is_zero():
                    piv = i
                    break
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = rows[r][c].inv()
            rows[r] = [v * inv if not v.is_zero() else v for v in rows[r]]
            prow = rows[r]
            nzc = [(j, v) for j, v in enumerate(prow) if not v.is_zero()]
            for i in range(self.nrows):
                if i != r:
                    f = rows[i][c]
                    if not f.is_zero():
                        ri = rows[i]
                        for j, v in nzc:
                            ri[j] = ri[j] - f * v
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix._raw(tuple(tuple(x) for x in rows), self.nrows, self.ncols), pivots

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Kernel basis as column tuples, one free variable set to 1 per vector."""
        R, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        basis = []
        for f in free:
            v = [ZERO] * self.ncols
            v[f] = ONE
            for i, p in enumerate(pivots):
                v[p] = -R.rows[i][f]
            basis.append(tuple(v))
        return basis

    def inverse(self):
        if not self.is_square():
            raise NotInvertible("non-square matrix")
        n = self.nrows
        aug = Matrix._raw(
            tuple(r + Matrix.identity(n).rows[i] for i, r in enumerate(self.rows)), n, 2 * n
        )
        R, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise NotInvertible("singular matrix")
        return Matrix._raw(tuple(r[n:] for r in R.rows), n, n)

    def det(self):
        if not self.is_square():
            raise DimensionMismatch("determinant of non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        d = ONE
        for c in range(n):
            piv = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
            if piv is None:
                return ZERO
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                d = -d
            p = rows[c][c]
            d = d * p
            inv = p.inv()
            for i in range(c + 1, n):
                f = rows[i][c]
                if not f.is_zero():
                    f = f * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return d

    def leading_minors(self):
        return [self.submatrix(range(k), range(k)).det() for k in range(1, self.nrows + 1)]

    # -- layout -----------------------------------------------------------

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix._raw(
            tuple(a + b for a, b in zip(self.rows, other.rows)), self.nrows, self.ncols + other.ncols
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix._raw(self.rows + other.rows, self.nrows + other.nrows, self.ncols)

    def to_lists(self):
        return [list(r) for r in self.rows]

    def __str__(self):
        return "[" + "; ".join(", ".join(str(v) for v in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def block_diag(*blocks):
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append((ZERO,) * off + r + (ZERO,) * (m - off - b.ncols))
        off += b.ncols
    return Matrix._raw(tuple(rows), n, m)


def permutation_matrix(perm):
    """Matrix sending basis vector j to basis vector perm[j]."""
    n = len(perm)
    rows = [[ZERO] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = ONE
    return Matrix._raw(tuple(tuple(r) for r in rows), n, n)


def swap_matrix(m, n):
    """The flip V (x) W -> W (x) V for dim V = m, dim W = n (lexicographic bases)."""
    return permutation_matrix([q * m + p for p in range(m) for q in range(n)])


def kron_all(mats):
    return reduce(lambda a, b: a.kron(b), mats)


def echelon_basis(vectors, dim):
    """Canonical basis (RREF rows) of the span of the given vectors."""
    if not vectors:
        return Matrix.zeros(0, dim)
    R, piv = Matrix(vectors).rref()
    return R.submatrix(range(len(piv)), range(dim))


def same_span(a, b, dim):
    """Subspace equality by comparing reduced echelon forms."""
    return echelon_basis(list(a), dim) == echelon_basis(list(b), dim)
