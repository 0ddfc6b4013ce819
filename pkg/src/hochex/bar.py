"""Brute-force H^2(A, D(A)) and HH_2(A) from the bar complex.

This is a small-scale oracle: the cochain space in degree 3 has
``(dim A)^4`` coordinates, so it is meant for ``dim A <= 12``.  Both
complexes are assembled sparsely and the ranks are split along connected
components of the matrices, which follow the cycle grading.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Sequence

from .algebra import TruncatedAlgebra
from .cocycle import Cocycle
from .homology import hh2_total
from .linalg import Matrix, SparseVec, axpy, rank, rank_of_rows

MAX_ORACLE_DIM = 12


def _encode(tup: Sequence[int], d: int) -> int:
    code = 0
    for x in tup:
        code = code * d + x
    return code


def bar_coboundary_matrix(A: TruncatedAlgebra, k: int) -> Matrix:
    """delta_k : Hom(A^(k-1), D(A)) -> Hom(A^k, D(A)) for k in {2, 3}.

    Coordinates: cochain ``(a_1, ..., a_m) |-> t*`` sits at ``code(a) * d + t``.
    """
    if k not in (2, 3):
        raise ValueError("only k = 2 and k = 3 are supported")
    f = A.field
    one = f.one
    minus = f.neg(one)
    d = A.dim
    m = k - 1
    cols: List[SparseVec] = []
    for tau in product(range(d), repeat=m):
        for t in range(d):
            col: SparseVec = {}
            # a_1 f(a_2, ..., a_k)
            for a in range(d):
                s = A.left[a][t]
                if s >= 0:
                    axpy(f, col, one, {_encode((a,) + tau, d) * d + s: 1})
            # (-1)^i f(..., a_i a_{i+1}, ...)
            sign = minus
            for i in range(m):
                for x, y in A.factorizations[tau[i]]:
                    axpy(f, col, sign, {_encode(tau[:i] + (x, y) + tau[i + 1:], d) * d + t: 1})
                sign = f.neg(sign)
            # (-1)^k f(a_1, ..., a_m) a_k
            for a in range(d):
                s = A.right[a][t]
                if s >= 0:
                    axpy(f, col, sign, {_encode(tau + (a,), d) * d + s: 1})
            cols.append(col)
    return Matrix.from_columns(f, d ** (k + 1), cols)


def bar_boundary_matrix(A: TruncatedAlgebra, k: int) -> Matrix:
    """delta~_k : A^(k+1) -> A^k, the Hochschild boundary, for k in {2, 3}."""
    if k not in (2, 3):
        raise ValueError("only k = 2 and k = 3 are supported")
    f = A.field
    one = f.one
    d = A.dim
    mult = A.mult
    cols: List[SparseVec] = []
    for tup in product(range(d), repeat=k + 1):
        col: SparseVec = {}
        sign = one
        for i in range(k):
            c = mult[tup[i]][tup[i + 1]]
            if c >= 0:
                axpy(f, col, sign, {_encode(tup[:i] + (c,) + tup[i + 2:], d): 1})
            sign = f.neg(sign)
        c = mult[tup[k]][tup[0]]
        if c >= 0:
            axpy(f, col, sign, {_encode((c,) + tup[1:k], d): 1})
        cols.append(col)
    return Matrix.from_columns(f, d ** k, cols)


def _guard(A: TruncatedAlgebra) -> None:
    if A.dim > MAX_ORACLE_DIM:
        raise ValueError(f"dim A = {A.dim} exceeds the oracle limit {MAX_ORACLE_DIM}")


def bar_h2_dim(A: TruncatedAlgebra) -> int:
    """dim Ker delta_3 - rank delta_2 on the cochain complex."""
    _guard(A)
    d2 = bar_coboundary_matrix(A, 2)
    d3 = bar_coboundary_matrix(A, 3)
    return d3.ncols - rank(d3) - rank(d2)


def bar_hh2_dim(A: TruncatedAlgebra) -> int:
    """dim Ker delta~_2 - rank delta~_3 on the chain complex."""
    _guard(A)
    d2 = bar_boundary_matrix(A, 2)
    d3 = bar_boundary_matrix(A, 3)
    return d2.ncols - rank(d2) - rank(d3)


def cochain_vector(A: TruncatedAlgebra, alpha: Cocycle) -> SparseVec:
    """alpha as a coordinate vector in Hom(A (x) A, D(A))."""
    d = A.dim
    out: SparseVec = {}
    for (a, b), val in alpha.values.items():
        for t, c in val.items():
            out[(a * d + b) * d + t] = c
    return out


def class_rank(A: TruncatedAlgebra, cocycles: Sequence[Cocycle]) -> int:
    """Dimension of the span of the classes of ``cocycles`` in H^2(A, D(A))."""
    d2 = bar_coboundary_matrix(A, 2)
    boundaries = list(d2.transpose().rows)
    base = rank_of_rows(A.field, boundaries)
    return rank_of_rows(A.field, boundaries + [cochain_vector(A, c) for c in cocycles]) - base


@dataclass(frozen=True)
class OracleReport:
    s: int
    n: int
    char: int
    h2_bar: int
    hh2_bar: int
    hh2_skoldberg_sum: int

    @property
    def agree(self) -> bool:
        return self.h2_bar == self.hh2_bar == self.hh2_skoldberg_sum

    def to_json_obj(self) -> Dict[str, object]:
        return {
            "s": self.s,
            "n": self.n,
            "char": self.char,
            "h2_bar": self.h2_bar,
            "hh2_bar": self.hh2_bar,
            "hh2_skoldberg_sum": self.hh2_skoldberg_sum,
            "agree": self.agree,
        }


def oracle_report(A: TruncatedAlgebra) -> OracleReport:
    _guard(A)
    return OracleReport(
        A.quiver.vertex_count,
        A.n,
        A.field.characteristic,
        bar_h2_dim(A),
        bar_hh2_dim(A),
        hh2_total(A),
    )


__all__ = [
    "MAX_ORACLE_DIM",
    "OracleReport",
    "bar_boundary_matrix",
    "bar_coboundary_matrix",
    "bar_h2_dim",
    "bar_hh2_dim",
    "class_rank",
    "cochain_vector",
    "oracle_report",
]
