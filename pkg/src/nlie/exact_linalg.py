"""Exact rational linear algebra.

Everything here works over the rationals with ``gmpy2.mpq`` scalars:
dense matrices, subspaces kept in reduced row-echelon form, nullspaces,
closure of a set of matrices to the associative algebra they generate,
and splitting of a matrix by its rational eigenvalues.

Matrices act on column vectors.  Vectors are plain tuples of scalars.
Batch eliminations (echelon forms, determinants, inverses, characteristic
polynomials, factorisation) are delegated to FLINT.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import flint
import gmpy2
from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)

_MPQ = type(mpq(0))
_MPZ = type(gmpy2.mpz(0))
_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

Vector = tuple


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


def scalar(x) -> mpq:
    """Convert ``x`` to an exact rational.

    Accepts ints, ``Fraction``, ``mpq`` and strings of the form ``"p"`` or
    ``"p/q"``.  Floats are refused on purpose.
    """
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, _MPZ)):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if not m:
            raise ValueError(f"not a rational number: {x!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {x!r}")
        return mpq(num, den)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_scalar(q) -> str:
    """Canonical string: ``"p/q"`` in lowest terms, or ``"p"`` when q = 1."""
    return str(scalar(q))


def vector(values: Iterable) -> Vector:
    return tuple(scalar(v) for v in values)


def unit_vector(d: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(d))


def zero_vector(d: int) -> Vector:
    return (ZERO,) * d


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def lin_comb(coeffs: Sequence, vectors: Sequence[Sequence], d: int) -> Vector:
    out = [ZERO] * d
    for c, v in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(v):
                if x:
                    out[i] += c * x
    return tuple(out)


def _to_flint(rows: Sequence[Sequence], ncols: int) -> "flint.fmpq_mat":
    entries = [flint.fmpq(int(x.numerator), int(x.denominator)) if x else 0
               for r in rows for x in r]
    return flint.fmpq_mat(len(rows), ncols, entries)


def _from_fmpq(x) -> mpq:
    return mpq(int(x.p), int(x.q))


def _echelon(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, list]]:
    """(pivot, row) pairs of the reduced row-echelon form, zero rows dropped."""
    rows = [r for r in rows if any(r)]
    if not rows or ncols == 0:
        return []
    red, rank = _to_flint(rows, ncols).rref()
    out = []
    for i in range(rank):
        row = [_from_fmpq(red[i, j]) for j in range(ncols)]
        p = next(j for j, x in enumerate(row) if x)
        out.append((p, row))
    return out


class Matrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "nrows", "ncols", "__weakref__")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(scalar(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged matrix rows")
        self._set(rows, len(rows), ncols)

    def _set(self, rows, nrows, ncols):
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        m = cls.__new__(cls)
        m._set(rows, len(rows), ncols)
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls._raw(((ZERO,) * ncols,) * nrows, ncols)

    @classmethod
    def identity(cls, d: int) -> "Matrix":
        return cls._raw(tuple(unit_vector(d, i) for i in range(d)), d)

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        d = len(values)
        return cls([[values[i] if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not columns:
            return cls._raw(((),) * (nrows or 0), 0)
        return cls._raw(tuple(tuple(r) for r in zip(*columns)), len(columns))

    @classmethod
    def from_flat(cls, flat: Sequence, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls._raw(
            tuple(tuple(flat[i * ncols:(i + 1) * ncols]) for i in range(nrows)), ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [tuple(c) for c in zip(*self.rows)] if self.nrows else [()] * self.ncols

    @property
    def T(self) -> "Matrix":
        if not self.nrows:
            return Matrix._raw(((),) * self.ncols, 0)
        return Matrix._raw(tuple(zip(*self.rows)), self.nrows)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in matrix sum")
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in matrix difference")
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = scalar(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError("shape mismatch in matrix product")
            cols = other.columns()
            return Matrix._raw(tuple(tuple(dot(r, c) for c in cols) for r in self.rows),
                               other.ncols)
        if len(other) != self.ncols:
            raise DimensionError("shape mismatch in matrix-vector product")
        return tuple(dot(r, other) for r in self.rows)

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.shape))), ZERO)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_symmetric(self) -> bool:
        return self.is_square and self.rows == self.T.rows

    def rank(self) -> int:
        return len(_echelon(self.rows, self.ncols))

    def det(self):
        if not self.is_square:
            raise DimensionError("determinant of a non-square matrix")
        if self.nrows == 0:
            return ONE
        return _from_fmpq(_to_flint(self.rows, self.ncols).det())

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise DimensionError("inverse of a non-square matrix")
        n = self.nrows
        if n == 0:
            return self
        if self.det() == 0:
            raise ZeroDivisionError("matrix is singular")
        inv = _to_flint(self.rows, n).inv()
        return Matrix._raw(tuple(tuple(_from_fmpq(inv[i, j]) for j in range(n))
                                 for i in range(n)), n)

    def is_invertible(self) -> bool:
        return self.is_square and self.det() != 0

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(x) for x in r] for r in self.rows]


class RowReducer:
    """Incrementally maintained reduced row-echelon basis of a row space.

    Rows are kept fully reduced, so reducing a vector is a single pass over
    the pivots in any order.
    """

    __slots__ = ("ncols", "_rows")

    def __init__(self, ncols: int, rows: Iterable[Sequence] = ()):
        self.ncols = ncols
        self._rows: dict[int, tuple[list, list]] = {}
        for p, row in _echelon(list(rows), ncols):
            self._rows[p] = (row, [j for j, x in enumerate(row) if x])

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for p, (row, nz) in self._rows.items():
            c = v[p]
            if c:
                for j in nz:
                    v[j] -= c * row[j]
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        w = self.reduce(v)
        p = next((j for j, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = 1 / w[p]
        if inv != ONE:
            w = [x * inv for x in w]
        nz = [j for j, x in enumerate(w) if x]
        for row, rnz in self._rows.values():
            c = row[p]
            if c:
                for j in nz:
                    row[j] -= c * w[j]
                rnz[:] = [j for j in range(self.ncols) if row[j]]
        self._rows[p] = (w, nz)
        return True

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> tuple[Vector, ...]:
        return tuple(tuple(self._rows[p][0]) for p in sorted(self._rows))


def rref(m: Matrix | Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, int]:
    """Reduced row-echelon form with zero rows dropped, and the rank."""
    if isinstance(m, Matrix):
        rows, ncols = m.rows, m.ncols
    else:
        rows = [vector(r) for r in m]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
    red = RowReducer(ncols, rows)
    basis = red.basis()
    return Matrix._raw(basis, ncols), len(basis)


def nullspace_vectors(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : r . x = 0 for every row r} (free-column parametrisation)."""
    red = RowReducer(ncols, rows)
    pivots = red._rows
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for p, (row, _) in pivots.items():
            if row[f]:
                x[p] = -row[f]
        out.append(tuple(x))
    return out


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^d stored by its unique reduced row-echelon basis.

    Two subspaces are equal exactly when their stored bases are equal.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in Q^{ambient_dim}")
        return cls(ambient_dim, tuple(tuple(r) for _, r in _echelon(vectors, ambient_dim)))

    @classmethod
    def zero(cls, d: int) -> "Subspace":
        return cls(d, ())

    @classmethod
    def full(cls, d: int) -> "Subspace":
        return cls(d, tuple(unit_vector(d, i) for i in range(d)))

    @classmethod
    def coordinate(cls, d: int, indices: Iterable[int]) -> "Subspace":
        return cls.span((unit_vector(d, i) for i in indices), d)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(b) if x) for b in self.basis)

    @cached_property
    def non_pivots(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in piv)

    @cached_property
    def _reducer(self) -> RowReducer:
        return RowReducer(self.ambient_dim, self.basis)

    def basis_matrix(self) -> Matrix:
        """Basis vectors as the columns of a d x k matrix."""
        return Matrix.from_columns(self.basis, self.ambient_dim) if self.basis else \
            Matrix._raw(((),) * self.ambient_dim, 0)

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError(
                f"subspaces of Q^{self.ambient_dim} and Q^{other.ambient_dim}")

    def __contains__(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        return self._reducer.contains(v)

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(b in self for b in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __ge__(self, other: "Subspace") -> bool:
        return self.contains(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """{y : b . y = 0 for all b in the space} (standard dot product)."""
        return Subspace.span(nullspace_vectors(self.basis, self.ambient_dim), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.contains(other):
            return other
        if other.contains(self):
            return self
        rows = self.annihilator().basis + other.annihilator().basis
        return Subspace.span(nullspace_vectors(rows, self.ambient_dim), self.ambient_dim)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` (assumed in the space) relative to ``basis``."""
        return tuple(v[p] for p in self.pivots)

    def reduce(self, v: Sequence) -> Vector:
        """Representative of v modulo the space, zero at pivot positions."""
        return tuple(self._reducer.reduce(v))

    def transform(self, m: Matrix) -> "Subspace":
        """Image of the space under the linear map ``m``."""
        return Subspace.span((m @ b for b in self.basis), m.nrows)

    def random_vector(self, rng, lo: int = -3, hi: int = 3) -> Vector:
        return lin_comb([mpq(rng.randint(lo, hi)) for _ in self.basis], self.basis,
                        self.ambient_dim)

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(x) for x in b] for b in self.basis]


def solve_nullspace(m: Matrix) -> Subspace:
    """{x : m x = 0} as a canonical subspace."""
    return Subspace.span(nullspace_vectors(m.rows, m.ncols), m.ncols)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def contains(a: Subspace, b: Subspace) -> bool:
    """True when ``b`` is a subspace of ``a``."""
    return a.contains(b)


def sum_of(spaces: Iterable[Subspace], d: int) -> Subspace:
    vecs = [b for s in spaces for b in s.basis]
    return Subspace.span(vecs, d)


def is_direct_sum(parts: Sequence[Subspace], d: int) -> bool:
    return sum(p.dim for p in parts) == sum_of(parts, d).dim


def solve_linear(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Vector | None:
    """One solution of ``rows . x = rhs`` or None when inconsistent."""
    aug = [tuple(r) + (scalar(b),) for r, b in zip(rows, rhs)]
    red = RowReducer(ncols + 1, aug)
    if ncols in red._rows:
        return None
    x = [ZERO] * ncols
    for p, (row, _) in red._rows.items():
        x[p] = row[ncols]
    return tuple(x)


# ---------------------------------------------------------------------------
# span-closed matrix algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperatorAlgebra:
    """Associative algebra spanned by products of d x d generator matrices.

    ``radical_basis`` spans the kernel of the trace form tr(a b) restricted
    to the algebra, which in characteristic zero is its largest nilpotent
    ideal.
    """

    ambient_dim: int
    generators: tuple[Matrix, ...]
    span_basis: tuple[Matrix, ...]
    radical_basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.span_basis)

    @cached_property
    def _reducer(self) -> RowReducer:
        return RowReducer(self.ambient_dim ** 2, (m.flat() for m in self.span_basis))

    def contains(self, m: Matrix) -> bool:
        return self._reducer.contains(m.flat())

    def is_closed(self) -> bool:
        return all(self.contains(a @ b) for a in self.span_basis for b in self.span_basis)

    def radical_is_nilpotent(self) -> bool:
        d = self.ambient_dim
        return all(r.power(d).is_zero() for r in self.radical_basis)

    def apply(self, space: Subspace) -> Subspace:
        """Span of a v over a in the algebra and v in ``space``."""
        return Subspace.span((a @ v for a in self.span_basis for v in space.basis),
                             self.ambient_dim)

    def cyclic(self, v: Sequence) -> Subspace:
        """Smallest invariant subspace containing ``v`` (identity adjoined)."""
        return Subspace.span([tuple(v)] + [a @ v for a in self.span_basis], self.ambient_dim)

    def annihilated(self, mats: Sequence[Matrix] | None = None) -> Subspace:
        """{v : a v = 0 for all a}; defaults to the whole algebra."""
        mats = self.span_basis if mats is None else mats
        rows = [r for a in mats for r in a.rows]
        return Subspace.span(nullspace_vectors(rows, self.ambient_dim), self.ambient_dim)


def span_basis_of(mats: Iterable[Matrix], d: int) -> list[Matrix]:
    red = RowReducer(d * d)
    for m in mats:
        red.add(m.flat())
    return [Matrix.from_flat(v, d) for v in red.basis()]


def independent_subset(mats: Iterable[Matrix], d: int) -> list[Matrix]:
    """The matrices that enlarge the span of those before them, unchanged."""
    red = RowReducer(d * d)
    return [m for m in mats if red.add(m.flat())]


def _flint_span_rows(mat: "flint.fmpq_mat") -> "flint.fmpq_mat":
    """Nonzero rows of the reduced echelon form of ``mat``."""
    red, rank = mat.rref()
    ncols = mat.ncols()
    return flint.fmpq_mat(rank, ncols, red.entries()[:rank * ncols])


def _right_multiplier(g: Matrix) -> "flint.fmpq_mat":
    """K with flat(x) K = flat(x g) for row-major flattening."""
    d = g.nrows
    entries = [0] * (d ** 4)
    n = d * d
    for i in range(d):
        for k in range(d):
            for j in range(d):
                c = g.rows[k][j]
                if c:
                    entries[(i * d + k) * n + i * d + j] = flint.fmpq(int(c.numerator),
                                                                    int(c.denominator))
    return flint.fmpq_mat(n, n, entries)


def close_operator_algebra(gens: Sequence[Matrix], d: int | None = None) -> OperatorAlgebra:
    """Close ``gens`` under products and linear span, then compute the radical.

    Each round replaces the span V by V + V g over all generators g until
    the dimension stops growing.
    """
    gens = tuple(gens)
    if d is None:
        if not gens:
            raise ValueError("need the ambient dimension when there are no generators")
        d = gens[0].nrows
    for g in gens:
        if g.shape != (d, d):
            raise DimensionError("generators must be square of a common size")
    n = d * d
    multipliers = independent_subset(gens, d)
    if not multipliers or n == 0:
        return OperatorAlgebra(d, gens, (), ())
    V = _flint_span_rows(_to_flint([m.flat() for m in multipliers], n))
    right = [_right_multiplier(g) for g in multipliers]
    while V.nrows() < n:
        before = V.nrows()
        entries = V.entries()
        for K in right:
            entries += (V * K).entries()
        V = _flint_span_rows(flint.fmpq_mat(before * (len(right) + 1), n, entries))
        if V.nrows() == before:
            break
    flats = [tuple(_from_fmpq(x) for x in V.entries()[i * n:(i + 1) * n])
             for i in range(V.nrows())]
    span = tuple(Matrix.from_flat(v, d) for v in flats)
    return OperatorAlgebra(d, gens, span, _trace_radical(span, d))


def _trace_radical(span: Sequence[Matrix], d: int) -> tuple[Matrix, ...]:
    """Kernel of the trace form tr(a b) on the span."""
    if not span:
        return ()
    n = d * d
    flats = [m.flat() for m in span]
    F = _to_flint(flats, n)
    Ft = _to_flint([m.T.flat() for m in span], n)
    gram = F * Ft.transpose()
    k = len(span)
    rows = [[_from_fmpq(gram[i, j]) for j in range(k)] for i in range(k)]
    coeffs = nullspace_vectors(rows, k)
    return tuple(Matrix.from_flat(lin_comb(c, flats, n), d) for c in coeffs)


def commutant(mats: Sequence[Matrix], d: int) -> list[Matrix]:
    """Basis of {X : X A = A X for all A in ``mats``}.

    Solves for the commutant of one generic combination first, then cuts that
    space down generator by generator in its own coordinates.
    """
    n = d * d
    gens = independent_subset(mats, d)
    if not gens:
        return [Matrix.from_flat(v, d) for v in Subspace.full(n).basis]
    flats = [g.flat() for g in gens]
    w = Matrix.from_flat(lin_comb([mpq(i + 1) for i in range(len(gens))], flats, n), d)
    wr = w.rows
    rows = []
    for i in range(d):
        for j in range(d):
            # (X W - W X)_{ij} = sum_k X_ik W_kj - W_ik X_kj
            row = [ZERO] * n
            for k in range(d):
                if wr[k][j]:
                    row[i * d + k] += wr[k][j]
                if wr[i][k]:
                    row[k * d + j] -= wr[i][k]
            rows.append(row)
    basis = [Matrix.from_flat(v, d) for v in nullspace_vectors(rows, n)]
    for a in gens:
        if not basis:
            break
        defects = [(x @ a - a @ x).flat() for x in basis]
        if not any(any(f) for f in defects):
            continue
        k = len(basis)
        system = [[defects[t][e] for t in range(k)] for e in range(n)]
        coeffs = nullspace_vectors(system, k)
        bflats = [x.flat() for x in basis]
        basis = [Matrix.from_flat(lin_comb(c, bflats, n), d) for c in coeffs]
    flat_basis = Subspace.span((x.flat() for x in basis), n).basis
    return [Matrix.from_flat(v, d) for v in flat_basis]


def restrict_operator(a: Matrix, space: Subspace) -> Matrix:
    """Matrix of ``a`` on an invariant subspace, in the coordinates of its basis."""
    cols = [space.coordinates(a @ b) for b in space.basis]
    return Matrix.from_columns(cols, space.dim)


# ---------------------------------------------------------------------------
# characteristic polynomials and rational spectral projections
# ---------------------------------------------------------------------------

class NotSplit:
    """Marker for the part of a spectrum with no rational eigenvalue."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NOT_SPLIT"


NOT_SPLIT = NotSplit()


def charpoly(a: Matrix) -> list:
    """Characteristic polynomial det(x I - a), coefficients from degree 0 up."""
    n = a.nrows
    if n == 0:
        return [ONE]
    return [_from_fmpq(c) for c in _to_flint(a.rows, n).charpoly().coeffs()]


def poly_eval(p: Sequence, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_eval_matrix(p: Sequence, a: Matrix) -> Matrix:
    n = a.nrows
    acc = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for c in reversed(p):
        acc = a @ acc + ident.scale(c)
    return acc


def _deflate(p: list, r) -> list:
    """Divide p by (x - r); the remainder is assumed zero."""
    n = len(p) - 1
    out = [ZERO] * n
    acc = ZERO
    for i in range(n, 0, -1):
        acc = acc * r + p[i]
        out[i - 1] = acc
    return out


def rational_roots(p: Sequence) -> list[tuple[mpq, int]]:
    """Rational roots of a rational polynomial with multiplicities, ascending.

    Coefficients run from degree 0 up.  Roots are read off the linear
    factors of the factorisation over Q.
    """
    p = [scalar(c) for c in p]
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    if len(p) <= 1:
        return []
    poly = flint.fmpq_poly([flint.fmpq(int(c.numerator), int(c.denominator)) for c in p])
    roots = []
    for factor, mult in poly.factor()[1]:
        if factor.degree() == 1:
            a, b = factor.coeffs()
            roots.append((_from_fmpq(-a / b), mult))
    return sorted(roots)


def rational_eigenprojection(a: Matrix) -> list[tuple[mpq | NotSplit, Matrix]]:
    """Spectral projections of ``a`` onto its rational generalised eigenspaces.

    Returns pairs ``(eigenvalue, projection)`` sorted by eigenvalue.  The
    part of the space belonging to irrational eigenvalues, if any, comes
    last with the eigenvalue slot set to ``NOT_SPLIT``.  The projections are
    idempotent, mutually annihilating, commute with ``a`` and sum to the
    identity.
    """
    if not a.is_square:
        raise DimensionError("eigenprojections need a square matrix")
    n = a.nrows
    if n == 0:
        return []
    chi = charpoly(a)
    roots = rational_roots(chi)
    rest = list(chi)
    for r, m in roots:
        for _ in range(m):
            rest = _deflate(rest, r)
    spaces: list[tuple[mpq | NotSplit, Subspace]] = []
    ident = Matrix.identity(n)
    for r, m in sorted(roots):
        spaces.append((r, solve_nullspace((a - ident.scale(r)).power(m))))
    if len(rest) > 1:
        spaces.append((NOT_SPLIT, solve_nullspace(poly_eval_matrix(rest, a))))
    cols = [b for _, s in spaces for b in s.basis]
    basis = Matrix.from_columns(cols, n)
    inv = basis.inverse()
    out = []
    start = 0
    for lam, s in spaces:
        k = s.dim
        sel = Matrix.diagonal([1 if start <= i < start + k else 0 for i in range(n)])
        out.append((lam, basis @ sel @ inv))
        start += k
    return out
