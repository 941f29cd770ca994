"""Exact dense linear algebra over any field descriptor.

Deterministic by construction: pivots are the first nonzero entry scanning
left to right, and every subspace is stored as the canonical reduced
row-echelon basis, so equal subspaces have identical representations.
"""

from __future__ import annotations

from .errors import AmbientMismatch, QuivalgError


def vec_zero(field, n):
    return [field.zero] * n

def vec_add(a, b):
    return [x + y for x, y in zip(a, b)]

def vec_sub(a, b):
    return [x - y for x, y in zip(a, b)]

def vec_scale(a, c):
    return [x * c for x in a]

def vec_is_zero(a):
    return all(not x for x in a)


class Matrix:
    """A dense matrix of scalars over one field."""

    def __init__(self, field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise QuivalgError("ragged matrix rows")

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, [[field.zero] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    def copy(self):
        return Matrix(self.field, self.rows)

    def transpose(self):
        return Matrix(self.field,
                      [[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise QuivalgError("matrix shape mismatch")
            zero = self.field.zero
            out = []
            for i in range(self.nrows):
                row = []
                for j in range(other.ncols):
                    acc = zero
                    for k in range(self.ncols):
                        a = self.rows[i][k]
                        if a:
                            b = other.rows[k][j]
                            if b:
                                acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(self.field, out)
        return NotImplemented

    def times_vector(self, v):
        if len(v) != self.ncols:
            raise QuivalgError("vector length mismatch")
        zero = self.field.zero
        out = []
        for row in self.rows:
            acc = zero
            for a, x in zip(row, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.field == self.field
                and other.rows == self.rows)

    def rref(self):
        """Canonical reduced row echelon form; returns (matrix, pivot cols)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for col in range(self.ncols):
            pivot_row = None
            for r in range(pr, len(rows)):
                if rows[r][col]:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
            inv = rows[pr][col].inverse()
            rows[pr] = [x * inv for x in rows[pr]]
            for r in range(len(rows)):
                if r != pr and rows[r][col]:
                    c = rows[r][col]
                    rows[r] = [x - c * y for x, y in zip(rows[r], rows[pr])]
            pivots.append(col)
            pr += 1
            if pr == len(rows):
                break
        return Matrix(self.field, rows), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Canonical basis of the right null space."""
        R, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for j in free:
            v = vec_zero(self.field, self.ncols)
            v[j] = self.field.one
            for r, p in enumerate(pivots):
                v[p] = -R.rows[r][j]
            basis.append(v)
        return SubspaceBasis(self.field, self.ncols, basis)

    def solve(self, rhs):
        """One solution of self * x = rhs, or None."""
        aug = Matrix(self.field,
                     [row + [b] for row, b in zip(self.rows, rhs)])
        R, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = vec_zero(self.field, self.ncols)
        for r, p in enumerate(pivots):
            x[p] = R.rows[r][self.ncols]
        return x

    def inverse(self):
        if self.nrows != self.ncols:
            raise QuivalgError("only square matrices invert")
        n = self.nrows
        aug = Matrix(self.field,
                     [self.rows[i] + Matrix.identity(self.field, n).rows[i]
                      for i in range(n)])
        R, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            return None
        return Matrix(self.field, [R.rows[i][n:] for i in range(n)])

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix[{body}]"


class IncrementalSpan:
    """A row space maintained under insertion (echelon, not canonical).

    Rows keep a leading 1 at strictly increasing pivot columns but are not
    mutually reduced; forward elimination in pivot order is still exact.
    Convert through ``to_subspace`` when a canonical basis is needed.
    """

    def __init__(self, field, ambient, rows=()):
        self.field = field
        self.ambient = ambient
        self.rows = []
        self.pivots = []
        for r in rows:
            self.add(r)

    def copy(self):
        clone = IncrementalSpan(self.field, self.ambient)
        clone.rows = list(self.rows)
        clone.pivots = list(self.pivots)
        return clone

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def add(self, v):
        """Insert a vector; returns True when the dimension grew."""
        v = self.reduce(v)
        for p, x in enumerate(v):
            if x:
                inv = x.inverse()
                v = [y * inv for y in v]
                lo, hi = 0, len(self.pivots)
                while lo < hi:
                    mid = (lo + hi) // 2
                    if self.pivots[mid] < p:
                        lo = mid + 1
                    else:
                        hi = mid
                self.rows.insert(lo, v)
                self.pivots.insert(lo, p)
                return True
        return False

    def contains_vector(self, v):
        return vec_is_zero(self.reduce(v))

    def to_subspace(self):
        return SubspaceBasis(self.field, self.ambient, self.rows)


class SubspaceBasis:
    """A subspace stored as RREF rows; equality is representation equality."""

    def __init__(self, field, ambient, rows):
        self.field = field
        self.ambient = ambient
        if rows:
            R, pivots = Matrix(field, rows).rref()
            self.rows = [R.rows[i] for i in range(len(pivots))]
            self.pivots = pivots
        else:
            self.rows = []
            self.pivots = []

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, [])

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, Matrix.identity(field, ambient).rows)

    @property
    def dim(self):
        return len(self.rows)

    def _check(self, other):
        if self.ambient != other.ambient or self.field != other.field:
            raise AmbientMismatch(
                f"ambient {self.ambient} vs {other.ambient}")

    def reduce_vector(self, v):
        """Residue of v after eliminating against the basis."""
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains_vector(self, v):
        return vec_is_zero(self.reduce_vector(v))

    def coords_of(self, v):
        """Coefficients writing v in the basis rows, or None."""
        coords = []
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            coords.append(c)
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        if not vec_is_zero(v):
            return None
        return coords

    def sum_with(self, other):
        self._check(other)
        return SubspaceBasis(self.field, self.ambient,
                             self.rows + other.rows)

    def contains(self, other):
        self._check(other)
        return self.sum_with(other).dim == self.dim

    def intersect(self, other):
        """Intersection via the kernel of the stacked coefficient system."""
        self._check(other)
        if not self.rows or not other.rows:
            return SubspaceBasis.zero(self.field, self.ambient)
        # columns: coefficients on self.rows then on other.rows
        cols = len(self.rows) + len(other.rows)
        system = []
        for j in range(self.ambient):
            row = [self.rows[i][j] for i in range(len(self.rows))]
            row += [-other.rows[i][j] for i in range(len(other.rows))]
            system.append(row)
        ker = Matrix(self.field, system).kernel()
        vectors = []
        for lam in ker.rows:
            v = vec_zero(self.field, self.ambient)
            for c, row in zip(lam[:len(self.rows)], self.rows):
                if c:
                    v = vec_add(v, vec_scale(row, c))
            vectors.append(v)
        return SubspaceBasis(self.field, self.ambient, vectors)

    def complement_in(self, bigger):
        """Rows of ``bigger`` completing this basis inside it (coset reps)."""
        bigger._check(self)
        if not bigger.contains(self):
            raise QuivalgError("not a subspace of the bigger space")
        reps = []
        cur = self
        for row in bigger.rows:
            if not cur.contains_vector(row):
                reps.append(row)
                cur = SubspaceBasis(self.field, self.ambient,
                                    cur.rows + [row])
        return reps

    def __eq__(self, other):
        return (isinstance(other, SubspaceBasis)
                and other.field == self.field
                and other.ambient == self.ambient
                and other.rows == self.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient})"

    def to_json(self):
        return [[str(x) for x in row] for row in self.rows]
