"""Degree-q slices of Sköldberg's complex and graded HH_2 of A = KQ/R^n.

The degree-q part of ``A (x)_{A^e} P_i`` has one basis element per cycle
``a1 ... aq`` (with a marked starting arrow): the element
``a_{k+1} ... a_q (x) a_1 ... a_k`` where the right factor has length
``k = 1, n, n+1`` for ``i = 1, 2, 3``.  The left factor must survive in A,
so it has length at most ``n - 1``; that alone fixes the ranges in which a
slice is nonempty.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import TruncatedAlgebra
from .linalg import Matrix, Scalar, SparseVec, axpy, kernel_basis, mult_kernel_dim, rank, _Echelon
from .quiver import Path, Quiver, basic_orbit_count, cycles, orbit_count, orbit_decomposition


@dataclass(frozen=True)
class SliceElement:
    """``left (x) right`` with ``right . left`` a cycle."""

    left: Path
    right: Path

    @property
    def word(self) -> Tuple[int, ...]:
        """The underlying cycle, read from the start of the right factor."""
        return self.right.arrows + self.left.arrows

    def label(self) -> str:
        return f"{self.left.label()} (x) {self.right.label()}"


@dataclass(frozen=True)
class GradedSlice:
    degree: int
    term: int
    elements: Tuple[SliceElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def index(self) -> Dict[SliceElement, int]:
        return {e: i for i, e in enumerate(self.elements)}


@dataclass(frozen=True)
class SliceDifferential:
    source: GradedSlice
    target: GradedSlice
    matrix: Matrix


@dataclass(frozen=True)
class DualSliceVector:
    """A functional on the degree-q slice of ``A (x) P_2``, in the dual basis."""

    degree: int
    coeffs: Tuple[Tuple[int, Scalar], ...]

    @classmethod
    def from_dict(cls, degree: int, coeffs: Mapping[int, Scalar]) -> "DualSliceVector":
        return cls(degree, tuple(sorted((k, v) for k, v in coeffs.items() if v)))

    def as_dict(self) -> SparseVec:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs


def _right_length(A: TruncatedAlgebra, term: int) -> int:
    if term == 1:
        return 1
    if term == 2:
        return A.n
    if term == 3:
        return A.n + 1
    raise ValueError("term must be 1, 2 or 3")


def slice_basis(A: TruncatedAlgebra, term: int, q: int) -> GradedSlice:
    k = _right_length(A, term)
    if q < k or q - k > A.n - 1:
        return GradedSlice(q, term, ())
    quiver = A.quiver
    elems = []
    for c in cycles(quiver, q):
        w = c.arrows
        right = quiver.path(w[:k])
        left = quiver.path(w[k:], source=right.target)
        elems.append(SliceElement(left, right))
    elems.sort(key=lambda e: (e.right.arrows, e.left.arrows))
    return GradedSlice(q, term, tuple(elems))


def _element(quiver: Quiver, left: Sequence[int], right: Sequence[int]) -> SliceElement:
    r = quiver.path(right)
    return SliceElement(quiver.path(left, source=r.target), r)


def d2_matrix(A: TruncatedAlgebra, q: int) -> SliceDifferential:
    src = slice_basis(A, 2, q)
    tgt = slice_basis(A, 1, q)
    field = A.field
    idx = tgt.index()
    cols: List[SparseVec] = []
    for e in src.elements:
        col: SparseVec = {}
        if q - 1 <= A.n - 1:
            y, L = e.right.arrows, e.left.arrows
            for j in range(len(y)):
                left = y[j + 1:] + L + y[:j]
                axpy(field, col, field.one, {idx[_element(A.quiver, left, (y[j],))]: 1})
        cols.append(col)
    return SliceDifferential(src, tgt, Matrix.from_columns(field, len(tgt), cols))


def d3_matrix(A: TruncatedAlgebra, q: int) -> SliceDifferential:
    src = slice_basis(A, 3, q)
    tgt = slice_basis(A, 2, q)
    field = A.field
    idx = tgt.index()
    cols: List[SparseVec] = []
    for e in src.elements:
        col: SparseVec = {}
        if q - A.n <= A.n - 1:
            y, L = e.right.arrows, e.left.arrows
            axpy(field, col, field.one, {idx[_element(A.quiver, L + y[:1], y[1:])]: 1})
            axpy(field, col, field.neg(field.one), {idx[_element(A.quiver, y[-1:] + L, y[:-1])]: 1})
        cols.append(col)
    return SliceDifferential(src, tgt, Matrix.from_columns(field, len(tgt), cols))


def hh2_dimension(A: TruncatedAlgebra, q: int) -> int:
    """dim Ker (d2)_q - rank (d3)_q, from the matrices."""
    d2 = d2_matrix(A, q)
    d3 = d3_matrix(A, q)
    return len(d2.source) - rank(d2.matrix) - rank(d3.matrix)


def hh2_formula(quiver: Quiver, n: int, q: int, characteristic: int) -> int:
    """Closed form for dim HH_{2,q}(KQ/R^n) in terms of cycle orbit counts."""
    if n + 1 <= q <= 2 * n - 1:
        return orbit_count(quiver, q)
    if q == n:
        total = 0
        for r in range(1, n + 1):
            if n % r:
                continue
            b = basic_orbit_count(quiver, r)
            if b:
                g = gcd(n, r)
                total += b * (g - 1 + mult_kernel_dim(n // g, characteristic))
        return total
    return 0


def hh2_total(A: TruncatedAlgebra) -> int:
    return sum(hh2_dimension(A, q) for q in range(1, 2 * A.n + 1))


def dual_hh2_basis(A: TruncatedAlgebra, q: int) -> List[DualSliceVector]:
    """Representatives of a basis of D(HH_{2,q}) = Ker d3^T / Im d2^T.

    Unit functionals v_k* lying in the kernel are preferred, in basis order;
    the remaining classes come from the echelon kernel basis.
    """
    d2 = d2_matrix(A, q)
    d3 = d3_matrix(A, q)
    field = A.field
    size = len(d2.source)
    if size == 0:
        return []
    kernel = [{i: v for i, v in enumerate(vec) if v} for vec in kernel_basis(d3.matrix.transpose())]
    ech = _Echelon(field)
    for row in d2.matrix.rows:
        ech.add(row)
    # v_k* kills the image of d3 exactly when row k of d3 is zero
    candidates: List[SparseVec] = [{k: field.one} for k in range(size) if not d3.matrix.rows[k]]
    candidates.extend(kernel)
    chosen: List[DualSliceVector] = []
    for cand in candidates:
        if ech.add(cand):
            chosen.append(DualSliceVector.from_dict(q, cand))
    return chosen


def orbit_blocks_respected(A: TruncatedAlgebra, q: int) -> bool:
    """True when both differentials only connect elements in the same rotation orbit."""
    orbit_of: Dict[Tuple[int, ...], int] = {}
    for k, orb in enumerate(orbit_decomposition(A.quiver, cycles(A.quiver, q)) if q >= 1 else []):
        for m in orb.members:
            orbit_of[m.arrows] = k
    for diff in (d2_matrix(A, q), d3_matrix(A, q)):
        for r, row in enumerate(diff.matrix.rows):
            for c in row:
                if orbit_of[diff.target.elements[r].word] != orbit_of[diff.source.elements[c].word]:
                    return False
    return True


@dataclass(frozen=True)
class HomologyRow:
    degree: int
    computed: int
    formula: int

    @property
    def match(self) -> bool:
        return self.computed == self.formula


def homology_report(A: TruncatedAlgebra, degrees: Optional[Sequence[int]] = None) -> List[HomologyRow]:
    if degrees is None:
        degrees = range(1, 2 * A.n + 1)
    return [
        HomologyRow(q, hh2_dimension(A, q), hh2_formula(A.quiver, A.n, q, A.field.characteristic))
        for q in degrees
    ]


__all__ = [
    "DualSliceVector",
    "GradedSlice",
    "HomologyRow",
    "SliceDifferential",
    "SliceElement",
    "d2_matrix",
    "d3_matrix",
    "dual_hh2_basis",
    "hh2_dimension",
    "hh2_formula",
    "hh2_total",
    "homology_report",
    "orbit_blocks_respected",
    "slice_basis",
]
