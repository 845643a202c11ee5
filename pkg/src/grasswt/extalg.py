"""Exterior powers of V = F_q^m.

Coordinates of a degree-ell vector are indexed by strictly increasing
1-based multi-indices in lexicographic order; this order fixes the column
order of every generator matrix built downstream.  The top power is
identified with F_q via ``e_1 ^ ... ^ e_m = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatch,
    AmbientTooSmall,
    DegreeOverflow,
    NotDecomposable,
    WrongDegree,
    ZeroVector,
)
from .gf import FieldElement, FieldSpec, field_from_q
from .linalg import Subspace, Vector, left_kernel, rank, rref

MultiIndex = tuple[int, ...]


@lru_cache(maxsize=None)
def multi_indices(ell: int, m: int) -> tuple[MultiIndex, ...]:
    """I(ell, m) in lexicographic order."""
    return tuple(combinations(range(1, m + 1), ell))


@lru_cache(maxsize=None)
def index_position(ell: int, m: int) -> dict[MultiIndex, int]:
    return {a: i for i, a in enumerate(multi_indices(ell, m))}


def complement(alpha: Sequence[int], m: int) -> MultiIndex:
    s = set(alpha)
    return tuple(i for i in range(1, m + 1) if i not in s)


def shuffle_sign(alpha: Sequence[int], beta: Sequence[int]) -> int:
    """Sign taking e_alpha ^ e_beta to e_(alpha u beta); 0 if they overlap."""
    if set(alpha) & set(beta):
        return 0
    inversions = sum(1 for a in alpha for b in beta if a > b)
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def _wedge_table(l1: int, l2: int, m: int) -> tuple[tuple[int, int, int, int], ...]:
    """(i, j, out, sign) for every nonvanishing product of basis vectors."""
    pos = index_position(l1 + l2, m)
    out = []
    for i, a in enumerate(multi_indices(l1, m)):
        for j, b in enumerate(multi_indices(l2, m)):
            s = shuffle_sign(a, b)
            if s:
                out.append((i, j, pos[tuple(sorted(a + b))], s))
    return tuple(out)


@dataclass(frozen=True)
class ExteriorVector:
    field: FieldSpec
    m: int
    degree: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != comb(self.m, self.degree):
            raise ValueError(
                f"degree-{self.degree} vector in dimension {self.m} needs "
                f"{comb(self.m, self.degree)} coordinates, got {len(self.coords)}"
            )

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, F: FieldSpec, m: int, degree: int) -> "ExteriorVector":
        return cls(F, m, degree, (0,) * comb(m, degree))

    @classmethod
    def basis(cls, F: FieldSpec, m: int, alpha: Sequence[int], coef: int = 1) -> "ExteriorVector":
        alpha = tuple(alpha)
        coords = [0] * comb(m, len(alpha))
        coords[index_position(len(alpha), m)[alpha]] = coef
        return cls(F, m, len(alpha), tuple(coords))

    @classmethod
    def from_vector(cls, F: FieldSpec, v: Sequence[int]) -> "ExteriorVector":
        return cls(F, len(v), 1, tuple(v))

    @classmethod
    def from_dict(cls, F: FieldSpec, m: int, degree: int, terms: dict) -> "ExteriorVector":
        """``{(1, 2): 1, (3, 4): 2}`` -> 1*e_12 + 2*e_34."""
        coords = [0] * comb(m, degree)
        pos = index_position(degree, m)
        for alpha, c in terms.items():
            i = pos[tuple(alpha)]
            coords[i] = F.add(coords[i], F.code(c))
        return cls(F, m, degree, tuple(coords))

    # -- linear structure ---------------------------------------------------

    def _same(self, other: "ExteriorVector"):
        if other.field != self.field or other.m != self.m:
            raise AmbientMismatch("exterior vectors over different ambient spaces")

    def __add__(self, other: "ExteriorVector") -> "ExteriorVector":
        self._same(other)
        if other.degree != self.degree:
            raise WrongDegree("cannot add vectors of different degree")
        add = self.field.add_table
        return ExteriorVector(self.field, self.m, self.degree,
                              tuple(add[a][b] for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ExteriorVector":
        neg = self.field.neg_table
        return ExteriorVector(self.field, self.m, self.degree, tuple(neg[a] for a in self.coords))

    def __sub__(self, other: "ExteriorVector") -> "ExteriorVector":
        return self + (-other)

    def scale(self, c: int | FieldElement) -> "ExteriorVector":
        mc = self.field.mul_table[int(c)]
        return ExteriorVector(self.field, self.m, self.degree, tuple(mc[a] for a in self.coords))

    def __rmul__(self, c):
        return self.scale(c)

    def __xor__(self, other: "ExteriorVector") -> "ExteriorVector":
        return wedge(self, other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def coord(self, alpha: Sequence[int]) -> FieldElement:
        return FieldElement(self.field, self.coords[index_position(self.degree, self.m)[tuple(alpha)]])

    def terms(self) -> dict[MultiIndex, int]:
        return {a: c for a, c in zip(multi_indices(self.degree, self.m), self.coords) if c}

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for a, c in self.terms().items():
            name = "e" + "".join(map(str, a)) if a else "1"
            coef = self.field.format(c)
            parts.append(name if c == 1 else f"{coef}*{name}")
        return " + ".join(parts)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        return {
            "degree": self.degree,
            "m": self.m,
            "q": F.q,
            "coords": [[list(a), F.coeffs(c)] for a, c in zip(multi_indices(self.degree, self.m), self.coords)],
        }

    @classmethod
    def from_json(cls, data: dict, F: FieldSpec | None = None) -> "ExteriorVector":
        F = F or field_from_q(int(data["q"]))
        if F.q != int(data["q"]):
            raise AmbientMismatch(f"vector over q={data['q']} read into field q={F.q}")
        m, degree = int(data["m"]), int(data["degree"])
        pos = index_position(degree, m)
        coords = [0] * comb(m, degree)
        for alpha, c in data["coords"]:
            coords[pos[tuple(alpha)]] = F.parse(c)
        return cls(F, m, degree, tuple(coords))


def wedge(a: ExteriorVector, b: ExteriorVector) -> ExteriorVector:
    """Exterior product of a (degree l1) and b (degree l2)."""
    a._same(b)
    if a.degree + b.degree > a.m:
        raise DegreeOverflow(f"degree {a.degree}+{b.degree} exceeds m={a.m}")
    F = a.field
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    out = [0] * comb(a.m, a.degree + b.degree)
    ac, bc = a.coords, b.coords
    for i, j, k, s in _wedge_table(a.degree, b.degree, a.m):
        x, y = ac[i], bc[j]
        if x and y:
            t = mul[x][y]
            out[k] = add[out[k]][t if s > 0 else neg[t]]
    return ExteriorVector(F, a.m, a.degree + b.degree, tuple(out))


def wedge_vectors(F: FieldSpec, vectors: Sequence[Sequence[int]], m: int | None = None) -> ExteriorVector:
    """v_1 ^ ... ^ v_ell for vectors of V given as coordinate tuples."""
    if not vectors:
        if m is None:
            raise ValueError("ambient dimension needed for the empty wedge")
        return ExteriorVector(F, m, 0, (1,))
    acc = ExteriorVector.from_vector(F, vectors[0])
    for v in vectors[1:]:
        acc = wedge(acc, ExteriorVector.from_vector(F, v))
    return acc


def top_scalar(w: ExteriorVector) -> int:
    """Read a degree-m vector as a scalar via e_1 ^ ... ^ e_m = 1."""
    if w.degree != w.m:
        raise WrongDegree(f"expected degree {w.m}, got {w.degree}")
    return w.coords[0]


def annihilator(w: ExteriorVector) -> Subspace:
    """V_w = {v in V : v ^ w = 0}, in RREF."""
    F, m = w.field, w.m
    if w.degree >= m:
        return Subspace.whole(F, m)
    rows = [wedge(ExteriorVector.basis(F, m, (i,)), w).coords for i in range(1, m + 1)]
    return Subspace(F, m, tuple(left_kernel(rows, F)))


def is_decomposable(w: ExteriorVector) -> bool:
    if w.is_zero():
        raise ZeroVector("decomposability is defined for nonzero vectors only")
    # the annihilator criterion needs degree < m
    if w.degree == w.m:
        return True
    return annihilator(w).dim == w.degree


def decompose(w: ExteriorVector) -> tuple[FieldElement, list[Vector]]:
    """Return ``(c, [v_1, ..., v_ell])`` with w = c * v_1 ^ ... ^ v_ell."""
    if w.is_zero() or not is_decomposable(w):
        raise NotDecomposable(f"{w!r} is not decomposable")
    F, m, ell = w.field, w.m, w.degree
    if ell == m:
        factors = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    else:
        factors = list(annihilator(w).basis)
    prod = wedge_vectors(F, factors, m)
    i = next(i for i, x in enumerate(prod.coords) if x)
    c = F.mul(w.coords[i], F.inv(prod.coords[i]))
    assert prod.scale(c) == w
    return FieldElement(F, c), factors


def hodge_star(w: ExteriorVector) -> ExteriorVector:
    """Basis rule e_a -> (-1)^(a_1+...+a_ell + ell(ell+1)/2) e_(a^c)."""
    F, m, ell = w.field, w.m, w.degree
    out = [0] * comb(m, m - ell)
    pos = index_position(m - ell, m)
    neg = F.neg_table
    for alpha, c in zip(multi_indices(ell, m), w.coords):
        if c:
            e = sum(alpha) + ell * (ell + 1) // 2
            out[pos[complement(alpha, m)]] = neg[c] if e % 2 else c
    return ExteriorVector(F, m, m - ell, tuple(out))


@dataclass(frozen=True)
class SkewMatrix:
    field: FieldSpec
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        F, A = self.field, self.entries
        for i in range(len(A)):
            if A[i][i]:
                raise ValueError("skew matrix must have zero diagonal")
            for j in range(i + 1, len(A)):
                if A[i][j] != F.neg(A[j][i]):
                    raise ValueError("matrix is not skew-symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    def rank(self) -> int:
        r = rank(self.entries, self.field)
        assert r % 2 == 0, "skew-symmetric matrix of odd rank"
        return r


def sigma(w: ExteriorVector) -> SkewMatrix:
    """e_r ^ e_s -> E_rs - E_sr."""
    if w.degree != 2:
        raise WrongDegree(f"sigma takes degree 2, got {w.degree}")
    if w.m <= 2:
        raise AmbientTooSmall("sigma needs m > 2")
    F, m = w.field, w.m
    A = [[0] * m for _ in range(m)]
    for (r, s), c in zip(multi_indices(2, m), w.coords):
        A[r - 1][s - 1] = c
        A[s - 1][r - 1] = F.neg(c)
    return SkewMatrix(F, tuple(map(tuple, A)))


def pi(w: ExteriorVector) -> SkewMatrix:
    """A_w with (i, j) entry the scalar e_i ^ e_j ^ w."""
    if w.m <= 2:
        raise AmbientTooSmall("pi needs m > 2")
    if w.degree != w.m - 2:
        raise WrongDegree(f"pi takes degree m-2={w.m - 2}, got {w.degree}")
    F, m = w.field, w.m
    A = [[0] * m for _ in range(m)]
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i != j:
                eij = wedge(ExteriorVector.basis(F, m, (i,)), ExteriorVector.basis(F, m, (j,)))
                A[i - 1][j - 1] = top_scalar(wedge(eij, w))
    return SkewMatrix(F, tuple(map(tuple, A)))


def rank2form(w: ExteriorVector) -> int:
    if w.m <= 2:
        raise AmbientTooSmall("rank of a form needs m > 2")
    if w.degree == 2:
        return sigma(w).rank()
    if w.degree == w.m - 2:
        return pi(w).rank()
    raise WrongDegree(f"rank is defined for degree 2 or m-2, got {w.degree}")


def exterior_subspace(vectors: Iterable[ExteriorVector], F: FieldSpec | None = None,
                      ell: int | None = None, m: int | None = None) -> Subspace:
    """Span of exterior vectors of one degree, as a graded Subspace."""
    vectors = list(vectors)
    if vectors:
        F, ell, m = vectors[0].field, vectors[0].degree, vectors[0].m
        for v in vectors:
            vectors[0]._same(v)
            if v.degree != ell:
                raise WrongDegree("mixed degrees in a subspace")
    if F is None or ell is None or m is None:
        raise ValueError("empty span needs field, degree and m")
    return Subspace.span([v.coords for v in vectors], F, comb(m, ell), grade=(ell, m))


def subspace_vectors(E: Subspace) -> list[ExteriorVector]:
    """Basis of a graded subspace as exterior vectors."""
    ell, m = E.grade
    return [ExteriorVector(E.field, m, ell, row) for row in E.basis]


def as_exterior(E: Subspace, coords: Sequence[int]) -> ExteriorVector:
    ell, m = E.grade
    return ExteriorVector(E.field, m, ell, tuple(coords))


def space_rank(vectors: Sequence[Sequence[int]], F: FieldSpec) -> int:
    return len(rref(vectors, F)[0])
