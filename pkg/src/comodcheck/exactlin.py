"""Exact dense linear algebra over Q and F_p.

Matrices are immutable flat row-major arrays of exact scalars (see
``fields``).  Over Q, elimination clears denominators row-wise and runs
fraction-free Bareiss on integers, so intermediate entries stay
minor-sized; over F_p it is Gauss-Jordan with modular inverses.  The inner
loops live in the selected backend (``_backend.core``).

Tensor bookkeeping fixes one global convention used by every module
downstream: the basis vector e_i (x) e_j of a tensor product of spaces of
dimensions (m, n) sits at flat index ``i*n + j`` (left factor major).
``kron`` realizes maps f (x) g on these bases, and the row-major vec
identity  vec(L @ X @ R) = kron(L, R^T) @ vec(X)  turns "find a linear map
subject to linear conditions" into one rectangular solve
(``LinearSystem`` / ``solve_constrained``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ._backend import core
from .fields import Field

__all__ = [
    "ShapeError", "Matrix", "Subspace", "Chart", "kernel", "kron",
    "intersect", "swap_matrix", "LinearSystem", "solve_constrained",
]


class ShapeError(ValueError):
    """Dimension mismatch in a matrix or subspace operation."""


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimension")
        data = list(data)
        if len(data) != rows * cols:
            raise ShapeError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, "
                f"got {len(data)}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise ShapeError("ragged rows")
        data = [field.of(x) for r in rows for x in r]
        return cls(field, len(rows), n, data)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        data = [0] * (n * n)
        for i in range(n):
            data[i * n + i] = 1
        return cls(field, n, n, data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [0] * (rows * cols))

    @classmethod
    def basis_column(cls, field: Field, n: int, i: int) -> "Matrix":
        data = [0] * n
        data[i] = 1
        return cls(field, n, 1, data)

    # -- access ----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.cols + j]

    def column(self, j: int) -> "Matrix":
        return Matrix(self.field, self.rows, 1,
                      [self.data[i * self.cols + j] for i in range(self.rows)])

    def take_rows(self, indices) -> "Matrix":
        c = self.cols
        data = []
        for i in indices:
            data.extend(self.data[i * c:(i + 1) * c])
        return Matrix(self.field, len(indices), c, data)

    def is_zero(self) -> bool:
        return not any(self.data)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.field == self.field
                and other.rows == self.rows and other.cols == self.cols
                and other.data == self.data)

    def __hash__(self):
        raise TypeError("matrices are not hashable")

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    def pretty(self) -> str:
        c = self.cols
        return "\n".join(
            "[" + " ".join(str(self.data[i * c + j]) for j in range(c)) + "]"
            for i in range(self.rows))

    # -- arithmetic --------------------------------------------------------

    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise ShapeError("field mismatch")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.rows}x{self.cols} "
                             f"with {other.rows}x{other.cols}")
        p = self.field.char
        if p:
            data = core.mul_mod(self.data, other.data,
                                self.rows, self.cols, other.cols, p)
        else:
            data = core.mul_obj(self.data, other.data,
                                self.rows, self.cols, other.cols)
        return Matrix(self.field, self.rows, other.cols, data)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in addition")
        add = self.field.add
        return Matrix(self.field, self.rows, self.cols,
                      [add(x, y) for x, y in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in subtraction")
        sub = self.field.sub
        return Matrix(self.field, self.rows, self.cols,
                      [sub(x, y) for x, y in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols,
                      [neg(x) for x in self.data])

    def scale(self, a) -> "Matrix":
        a = self.field.of(a)
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols,
                      [mul(a, x) for x in self.data])

    def transpose(self) -> "Matrix":
        r, c = self.rows, self.cols
        data = [0] * (r * c)
        for i in range(r):
            for j in range(c):
                data[j * r + i] = self.data[i * c + j]
        return Matrix(self.field, c, r, data)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.rows != other.rows:
            raise ShapeError("row mismatch in hstack")
        data = []
        for i in range(self.rows):
            data.extend(self.data[i * self.cols:(i + 1) * self.cols])
            data.extend(other.data[i * other.cols:(i + 1) * other.cols])
        return Matrix(self.field, self.rows, self.cols + other.cols, data)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.cols:
            raise ShapeError("column mismatch in vstack")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      self.data + other.data)

    # -- elimination -------------------------------------------------------

    def _echelon(self):
        """Row echelon form with pivot columns.

        Over Q the rows are scaled to integers first (kernels, row spaces
        and solution sets are unchanged by row scaling) and Bareiss runs on
        ints; over F_p this is already the reduced form.
        """
        if self.field.char:
            data, pivots = core.rref_mod(self.data, self.rows, self.cols,
                                         self.field.char)
        else:
            data, pivots = core.bareiss_echelon(
                _clear_denominators(self.data, self.rows, self.cols),
                self.rows, self.cols)
        return data, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def rref(self):
        """Fully reduced row echelon form, returned as (Matrix, pivots)."""
        data, pivots = self._echelon()
        f, c = self.field, self.cols
        if not f.char:
            # normalize pivots to 1 and eliminate upwards, exact division
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                rc = r * c
                piv = data[rc + pc]
                data[rc + pc] = 1
                for j in range(pc + 1, c):
                    if data[rc + j]:
                        data[rc + j] = Fraction(data[rc + j], piv) \
                            if data[rc + j] % piv else data[rc + j] // piv
                for i in range(r):
                    x = data[i * c + pc]
                    if x:
                        ic = i * c
                        data[ic + pc] = 0
                        for j in range(pc + 1, c):
                            if data[rc + j]:
                                data[ic + j] -= x * data[rc + j]
        return Matrix(f, self.rows, c, data), pivots

    def kernel(self) -> "Subspace":
        """Basis of the null space {x : A x = 0}."""
        data, pivots = self._echelon()
        f, c = self.field, self.cols
        pivset = set(pivots)
        free = [j for j in range(c) if j not in pivset]
        basis_cols = []
        for fc in free:
            x = [0] * c
            x[fc] = 1
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                rc = r * c
                s = 0
                for j in range(pc + 1, c):
                    if data[rc + j] and x[j]:
                        s += data[rc + j] * x[j]
                if s:
                    x[pc] = f.div(f.neg(s), data[rc + pc])
            basis_cols.append(x)
        basis = Matrix(f, c, len(free),
                       [col[i] for i in range(c) for col in basis_cols])
        return Subspace(f, c, basis, _canonical=False)

    def image(self) -> "Subspace":
        return Subspace(self.field, self.rows, self, _canonical=False)

    def solve_right(self, b: "Matrix"):
        """One exact solution X of A X = B, or None if inconsistent."""
        self._check_field(b)
        if b.rows != self.rows:
            raise ShapeError("right-hand side row mismatch")
        aug = self.hstack(b)
        data, pivots = aug._echelon()
        ca, w = self.cols, aug.cols
        if pivots and pivots[-1] >= ca:
            return None
        f = self.field
        out = [0] * (ca * b.cols)
        for k in range(b.cols):
            x = [0] * ca
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                rc = r * w
                s = 0
                for j in range(pc + 1, ca):
                    if data[rc + j] and x[j]:
                        s += data[rc + j] * x[j]
                x[pc] = f.div(f.sub(data[rc + ca + k], s), data[rc + pc])
            for i in range(ca):
                out[i * b.cols + k] = x[i]
        return Matrix(f, ca, b.cols, out)

    def inverse(self):
        """Exact inverse, or None when not square or singular."""
        if self.rows != self.cols:
            return None
        inv = self.solve_right(Matrix.identity(self.field, self.rows))
        if inv is None:
            return None
        return inv if (inv @ self) == Matrix.identity(self.field, self.rows) \
            else None

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    # -- tensor structure ---------------------------------------------------

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product realizing f (x) g on the fixed tensor bases."""
        self._check_field(other)
        ra, ca, rb, cb = self.rows, self.cols, other.rows, other.cols
        mul = self.field.mul
        data = [0] * (ra * rb * ca * cb)
        ocols = ca * cb
        for i in range(ra):
            for j in range(ca):
                a = self.data[i * ca + j]
                if not a:
                    continue
                for k in range(rb):
                    orow = (i * rb + k) * ocols + j * cb
                    brow = k * cb
                    for l in range(cb):
                        bkl = other.data[brow + l]
                        if bkl:
                            data[orow + l] = mul(a, bkl)
        return Matrix(self.field, ra * rb, ca * cb, data)


def _clear_denominators(data, rows, cols):
    """Scale each row by the lcm of its denominators; returns int entries."""
    out = [0] * (rows * cols)
    for i in range(rows):
        base = i * cols
        l = 1
        for j in range(cols):
            x = data[base + j]
            if isinstance(x, Fraction):
                d = x.denominator
                if d != 1:
                    l = l * d // gcd(l, d)
        for j in range(cols):
            x = data[base + j]
            if x:
                out[base + j] = int(x * l) if l != 1 or isinstance(x, Fraction) \
                    else x
    return out


def kernel(m: Matrix) -> "Subspace":
    return m.kernel()


def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


def swap_matrix(field: Field, m: int, n: int) -> Matrix:
    """Transposition V (x) W -> W (x) V for dims (m, n): e_i(x)e_j -> e_j(x)e_i."""
    data = [0] * (m * n * m * n)
    for i in range(m):
        for j in range(n):
            data[(j * m + i) * (m * n) + (i * n + j)] = 1
    return Matrix(field, m * n, m * n, data)


class Subspace:
    """Subspace of k^ambient, stored as a canonical column basis.

    The basis is the unique one whose transpose is in reduced row echelon
    form, so equal subspaces have equal bases and the pivot coordinates of
    any member vector are literally its coordinates in the basis.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, basis: Matrix,
                 _canonical: bool = True):
        if basis.rows != ambient:
            raise ShapeError("basis does not live in the ambient space")
        if _canonical:
            if basis.rank() != basis.cols:
                raise ShapeError("basis columns are not independent")
        rref_t, pivots = basis.transpose().rref()
        rows = rref_t.take_rows(range(len(pivots)))
        self.field = field
        self.ambient = ambient
        self.basis = rows.transpose()
        self.pivots = pivots

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, Matrix.zeros(field, ambient, 0))

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, Matrix.identity(field, ambient))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def __eq__(self, other):
        return (isinstance(other, Subspace) and other.field == self.field
                and other.ambient == self.ambient
                and other.basis == self.basis)

    def __hash__(self):
        raise TypeError("subspaces are not hashable")

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient})"

    def coords(self, vectors: Matrix):
        """Coordinates of the given columns in the basis, or None.

        Because the basis restricted to its pivot rows is the identity, the
        candidate coordinates can be read off and verified with a single
        multiplication.
        """
        if vectors.rows != self.ambient:
            raise ShapeError("ambient mismatch")
        cand = vectors.take_rows(self.pivots)
        return cand if (self.basis @ cand) == vectors else None

    def contains_matrix(self, vectors: Matrix) -> bool:
        return self.coords(vectors) is not None

    def contains(self, other: "Subspace") -> bool:
        return self.coords(other.basis) is not None

    def annihilator(self) -> Matrix:
        """A matrix Q with kernel exactly this subspace (rows cut it out)."""
        return self.basis.transpose().kernel().basis.transpose()

    def sum_with(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient:
            raise ShapeError("ambient mismatch")
        return Subspace(self.field, self.ambient,
                        self.basis.hstack(other.basis), _canonical=False)

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient:
            raise ShapeError("ambient mismatch")
        # kernel of [B_u | -B_v]: pairs (x, y) with B_u x = B_v y
        paired = self.basis.hstack(-other.basis).kernel()
        top = paired.basis.take_rows(range(self.dim))
        return Subspace(self.field, self.ambient, self.basis @ top,
                        _canonical=False)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


class Chart:
    """Coordinate chart of a subspace of an iterated tensor product.

    A chart knows its flat ambient dimension, the embedding matrix of its
    basis, and how to compute coordinates of flat vectors in that basis
    without solving: identity charts read coordinates off directly, kron
    charts recurse factor-wise through reshapes, and restrictions read the
    pivot rows of a canonical subspace basis.  Every step verifies
    membership exactly and returns None for vectors outside the subspace.
    """

    __slots__ = ("field", "flat_dim", "dim", "embedding", "_kind", "_parts")

    def __init__(self, field, flat_dim, dim, embedding, kind, parts):
        self.field = field
        self.flat_dim = flat_dim
        self.dim = dim
        self.embedding = embedding
        self._kind = kind
        self._parts = parts

    @classmethod
    def identity(cls, field: Field, n: int) -> "Chart":
        return cls(field, n, n, Matrix.identity(field, n), "id", None)

    @classmethod
    def kron(cls, a: "Chart", b: "Chart") -> "Chart":
        emb = a.embedding.kron(b.embedding)
        return cls(a.field, a.flat_dim * b.flat_dim, a.dim * b.dim,
                   emb, "kron", (a, b))

    @classmethod
    def restrict(cls, parent: "Chart", sub: Subspace) -> "Chart":
        if sub.ambient != parent.dim:
            raise ShapeError("subspace does not live in the parent chart")
        emb = parent.embedding @ sub.basis
        return cls(parent.field, parent.flat_dim, sub.dim, emb,
                   "restrict", (parent, sub))

    def coords(self, flat: Matrix):
        """Coordinates of flat column vectors in this chart, or None."""
        if flat.rows != self.flat_dim:
            raise ShapeError("vector does not live in the flat ambient")
        if self._kind == "id":
            return flat
        if self._kind == "restrict":
            parent, sub = self._parts
            inner = parent.coords(flat)
            if inner is None:
                return None
            return sub.coords(inner)
        a, b = self._parts
        c = flat.cols
        na, nb = a.flat_dim, b.flat_dim
        # factor out a: reshape (na*nb) x c as na x (nb*c) for free
        w = a.coords(Matrix(self.field, na, nb * c, flat.data))
        if w is None:
            return None
        ma = a.dim
        # transpose the (ma, nb) block structure to pull out the b factor
        y2 = [0] * (nb * ma * c)
        wd = w.data
        for i in range(ma):
            for j in range(nb):
                src = i * (nb * c) + j * c
                dst = j * (ma * c) + i * c
                y2[dst:dst + c] = wd[src:src + c]
        v = b.coords(Matrix(self.field, nb, ma * c, y2))
        if v is None:
            return None
        mb = b.dim
        out = [0] * (ma * mb * c)
        vd = v.data
        for j in range(mb):
            for i in range(ma):
                src = j * (ma * c) + i * c
                dst = (i * mb + j) * c
                out[dst:dst + c] = vd[src:src + c]
        return Matrix(self.field, ma * mb, c, out)


class LinearSystem:
    """Affine-linear constraints on an unknown rows x cols matrix X.

    Each constraint has the form  sum_k  L_k @ X @ R_k == T  with None
    standing for an identity factor; it is flattened through the row-major
    vec identity  vec(L X R) = kron(L, R^T) vec(X).
    """

    def __init__(self, field: Field, rows: int, cols: int):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._blocks = []
        self._rhs = []

    def add(self, terms, rhs: Matrix | None = None):
        """Add one constraint; ``terms`` is an iterable of (L, R) pairs.

        Terms and right-hand side are compared in row-major flat order, so
        terms may present the same output index set with different
        row/column splits (e.g. (m, n*k) against (m*n, k)).
        """
        f, r, c = self.field, self.rows, self.cols
        coeff = None
        size = None
        for L, R in terms:
            if L is None:
                L = Matrix.identity(f, r)
            if R is None:
                R = Matrix.identity(f, c)
            if L.cols != r or R.rows != c:
                raise ShapeError("constraint term does not fit the unknown")
            term = L.kron(R.transpose())
            if size is None:
                size = term.rows
                coeff = term
            else:
                if term.rows != size:
                    raise ShapeError("constraint terms of different sizes")
                coeff = Matrix(f, size, r * c,
                               [f.add(x, y) for x, y in
                                zip(coeff.data, term.data)])
        if coeff is None:
            raise ShapeError("empty constraint")
        if rhs is None:
            rhs = Matrix.zeros(f, size, 1)
        if rhs.rows * rhs.cols != size:
            raise ShapeError(f"right-hand side must have {size} entries")
        self._blocks.append(coeff)
        self._rhs.append(Matrix(f, size, 1, rhs.data))

    def _stacked(self):
        coeff = self._blocks[0]
        rhs = self._rhs[0]
        for b, r in zip(self._blocks[1:], self._rhs[1:]):
            coeff = coeff.vstack(b)
            rhs = rhs.vstack(r)
        return coeff, rhs

    def solve(self) -> Matrix | None:
        """One exact solution, or None when the system is inconsistent."""
        coeff, rhs = self._stacked()
        x = coeff.solve_right(rhs)
        if x is None:
            return None
        return Matrix(self.field, self.rows, self.cols, x.data)

    def solution_basis(self) -> list[Matrix]:
        """Basis of the solution space of the homogeneous system."""
        if any(any(r.data) for r in self._rhs):
            raise ShapeError("solution_basis needs a homogeneous system")
        coeff, _ = self._stacked()
        ker = coeff.kernel()
        return [Matrix(self.field, self.rows, self.cols,
                       ker.basis.column(i).data)
                for i in range(ker.dim)]


def solve_constrained(field: Field, shape: tuple[int, int],
                      constraints) -> Matrix | None:
    """Solve for a shape[0] x shape[1] matrix under affine linear conditions.

    ``constraints`` is an iterable of (terms, rhs) pairs as accepted by
    ``LinearSystem.add``.  Returns one exact solution or None (certifying
    that the stacked linear system is inconsistent).
    """
    sys = LinearSystem(field, *shape)
    for terms, rhs in constraints:
        sys.add(terms, rhs)
    return sys.solve()
