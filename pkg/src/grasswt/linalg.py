"""Exact linear algebra over F_q on integer element codes.

Vectors are tuples of codes; matrices are lists of such tuples.  Nothing
here uses floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .gf import FieldSpec

Vector = tuple[int, ...]


def rref(rows: Iterable[Sequence[int]], F: FieldSpec) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; zero rows are dropped.

    Returns ``(rows, pivots)`` with pivot columns strictly increasing.
    """
    A = [list(r) for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pr = next((i for i in range(top, len(A)) if A[i][col]), None)
        if pr is None:
            continue
        A[top], A[pr] = A[pr], A[top]
        s = inv[A[top][col]]
        if s != 1:
            A[top] = [mul[s][x] for x in A[top]]
        prow = A[top]
        for i in range(len(A)):
            if i != top and A[i][col]:
                f = neg[A[i][col]]
                mf = mul[f]
                A[i] = [add[x][mf[y]] for x, y in zip(A[i], prow)]
        pivots.append(col)
        top += 1
        if top == len(A):
            break
    return [tuple(r) for r in A[:top]], pivots


def rank(rows: Iterable[Sequence[int]], F: FieldSpec) -> int:
    return len(rref(rows, F)[0])


def right_kernel(rows: Sequence[Sequence[int]], ncols: int, F: FieldSpec) -> list[Vector]:
    """Basis of {x : A x = 0}, returned in RREF."""
    R, piv = rref(rows, F)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for r, pc in zip(R, piv):
            if r[fc]:
                x[pc] = F.neg_table[r[fc]]
        basis.append(x)
    return rref(basis, F)[0]


def left_kernel(rows: Sequence[Sequence[int]], F: FieldSpec) -> list[Vector]:
    """Basis of {y : y A = 0} for the matrix with the given rows."""
    if not rows:
        return []
    return right_kernel(transpose(rows), len(rows), F)


def transpose(rows: Sequence[Sequence[int]]) -> list[Vector]:
    return [tuple(c) for c in zip(*rows)]


def vec_add(u: Sequence[int], v: Sequence[int], F: FieldSpec) -> Vector:
    add = F.add_table
    return tuple(add[a][b] for a, b in zip(u, v))


def vec_scale(c: int, v: Sequence[int], F: FieldSpec) -> Vector:
    mc = F.mul_table[c]
    return tuple(mc[a] for a in v)


def vec_axpy(c: int, u: Sequence[int], v: Sequence[int], F: FieldSpec) -> Vector:
    """c*u + v."""
    add, mc = F.add_table, F.mul_table[c]
    return tuple(add[mc[a]][b] for a, b in zip(u, v))


def mat_vec_left(x: Sequence[int], rows: Sequence[Sequence[int]], F: FieldSpec) -> Vector:
    """Row vector times matrix: sum_i x_i * rows[i]."""
    ncols = len(rows[0]) if rows else 0
    acc = [0] * ncols
    add, mul = F.add_table, F.mul_table
    for xi, row in zip(x, rows):
        if xi:
            m = mul[xi]
            acc = [add[a][m[b]] for a, b in zip(acc, row)]
    return tuple(acc)


def dot(u: Sequence[int], v: Sequence[int], F: FieldSpec) -> int:
    add, mul = F.add_table, F.mul_table
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = add[s][mul[a][b]]
    return s


def normalize(v: Sequence[int], F: FieldSpec) -> Vector:
    """Scale so the first nonzero coordinate is 1."""
    for a in v:
        if a:
            return vec_scale(F.inv_table[a], v, F) if a != 1 else tuple(v)
    return tuple(v)


def index_of(v: Sequence[int], q: int) -> int:
    """Integer index sum v_c q^c used by the search kernels."""
    out = 0
    for c in reversed(v):
        out = out * q + c
    return out


def vector_of(index: int, q: int, k: int) -> Vector:
    return tuple((index // q ** c) % q for c in range(k))


def span_elements(basis: Sequence[Sequence[int]], F: FieldSpec, *, normalized: bool = False) -> Iterator[Vector]:
    """All elements of the span (including 0 unless ``normalized``).

    With ``normalized`` only one representative per projective point is
    produced: combinations whose first nonzero coefficient is 1.
    """
    r = len(basis)
    if not r:
        if not normalized:
            yield ()
        return
    n = len(basis[0])
    if normalized:
        for lead in range(r):
            for tail in product(range(F.q), repeat=r - lead - 1):
                coeffs = (1,) + tail
                yield mat_vec_left(coeffs, basis[lead:], F) if n else ()
        return
    for coeffs in product(range(F.q), repeat=r):
        yield mat_vec_left(coeffs, basis, F)


@dataclass(frozen=True, eq=True)
class Subspace:
    """Subspace of F_q^n stored by its canonical RREF basis.

    ``grade`` is ``(ell, m)`` when the ambient space is the exterior power
    of F_q^m of degree ell (coordinates in lexicographic multi-index order).
    """

    field: FieldSpec
    ambient_dim: int
    basis: tuple[Vector, ...]
    grade: tuple[int, int] | None = dc_field(default=None, compare=True)

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], F: FieldSpec, ambient_dim: int,
             grade: tuple[int, int] | None = None) -> "Subspace":
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        R, _ = rref(vecs, F)
        return cls(F, ambient_dim, tuple(R), grade)

    @classmethod
    def whole(cls, F: FieldSpec, n: int, grade=None) -> "Subspace":
        return cls(F, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), grade)

    @classmethod
    def zero(cls, F: FieldSpec, n: int, grade=None) -> "Subspace":
        return cls(F, n, (), grade)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, a in enumerate(r) if a) for r in self.basis]

    def reduce(self, v: Sequence[int]) -> Vector:
        F = self.field
        v = tuple(v)
        for row, pc in zip(self.basis, self.pivots):
            if v[pc]:
                v = vec_axpy(F.neg_table[v[pc]], row, v, F)
        return v

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def _check(self, other: "Subspace"):
        if other.field != self.field or other.ambient_dim != self.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.field, self.ambient_dim, self.grade)

    def orthogonal(self) -> "Subspace":
        """Complement under the standard dot product (dimension n - dim)."""
        if not self.basis:
            return Subspace.whole(self.field, self.ambient_dim, self.grade)
        return Subspace(self.field, self.ambient_dim,
                        tuple(right_kernel(self.basis, self.ambient_dim, self.field)), self.grade)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.orthogonal() + other.orthogonal()).orthogonal()

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def elements(self, *, normalized: bool = False) -> Iterator[Vector]:
        if not self.basis:
            if not normalized:
                yield (0,) * self.ambient_dim
            return
        yield from span_elements(self.basis, self.field, normalized=normalized)

    def complement_basis(self, sub: "Subspace") -> list[Vector]:
        """Vectors of self that extend a basis of ``sub`` (a subspace of self) to one of self."""
        out: list[Vector] = []
        cur = sub
        for v in self.basis:
            if not cur.contains(v):
                out.append(v)
                cur = cur + Subspace.span([v], self.field, self.ambient_dim)
        return out

    def to_json(self) -> dict:
        F = self.field
        return {
            "q": F.q,
            "ambient_dim": self.ambient_dim,
            "grade": list(self.grade) if self.grade else None,
            "basis": [[F.coeffs(c) if F.e > 1 else c for c in row] for row in self.basis],
        }


def rref_patterns(k: int, r: int) -> list[tuple[int, ...]]:
    """Pivot tuples in lexicographic order."""
    return list(combinations(range(k), r))


def free_columns(pivots: Sequence[int], k: int) -> list[list[int]]:
    ps = set(pivots)
    return [[c for c in range(p + 1, k) if c not in ps] for p in pivots]


def enumerate_rref(k: int, r: int, F: FieldSpec) -> Iterator[tuple[Vector, ...]]:
    """All r x k RREF matrices, i.e. one basis per r-dim subspace of F_q^k.

    Order: pivot tuples lexicographically; within a pivot pattern, matrices
    lexicographically by their row-major entries.  The search kernels use
    exactly this order.
    """
    q = F.q
    for piv in combinations(range(k), r):
        frees = free_columns(piv, k)
        row_choices = []
        for p, fc in zip(piv, frees):
            rows = []
            for vals in product(range(q), repeat=len(fc)):
                row = [0] * k
                row[p] = 1
                for c, a in zip(fc, vals):
                    row[c] = a
                rows.append(tuple(row))
            row_choices.append(rows)
        for combo in product(*row_choices):
            yield combo


def gaussian_binomial(m: int, ell: int, q: int) -> int:
    """Number of ell-dimensional subspaces of F_q^m (product formula)."""
    if ell < 0 or ell > m:
        return 0
    num = den = 1
    for i in range(ell):
        num *= q ** m - q ** i
        den *= q ** ell - q ** i
    assert num % den == 0
    return num // den
