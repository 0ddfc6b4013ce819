"""Searching for a nondegenerate associative symmetric bilinear form.

An algebra is symmetric when such a form exists.  The forms satisfying the
two linear constraint families make up a subspace (``FormSpace``); the
question is whether it has a member of full rank.  Random members are tried
first.  Degeneracy of every member is certified when the space is zero, when
all basis forms share a kernel vector, or by exhaustive enumeration over a
tiny prime field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence

from .algebra import TruncatedAlgebra
from .extension import ExtensionAlgebra
from .linalg import Field, Matrix, Scalar, SparseVec, axpy, kernel_basis, rank, rank_of_rows

EXHAUSTIVE_LIMIT = 1 << 12


class StructureConstants:
    """A finite-dimensional algebra given by its multiplication table on a basis."""

    def __init__(self, field: Field, dim: int, table: Sequence[Mapping[int, Mapping[int, Scalar]]]):
        self.field = field
        self.dim = dim
        self.table = [dict((j, dict(v)) for j, v in row.items() if v) for row in table]

    @classmethod
    def of(cls, algebra) -> "StructureConstants":
        if isinstance(algebra, StructureConstants):
            return algebra
        if isinstance(algebra, ExtensionAlgebra):
            return cls(algebra.field, algebra.dim, algebra.table)
        if isinstance(algebra, TruncatedAlgebra):
            one = algebra.field.one
            table = [
                {j: {k: one} for j, k in enumerate(row) if k >= 0}
                for row in algebra.mult
            ]
            return cls(algebra.field, algebra.dim, table)
        raise TypeError(f"cannot read structure constants from {type(algebra).__name__}")

    @classmethod
    def ground_field(cls, field: Field) -> "StructureConstants":
        return cls(field, 1, [{0: {0: field.one}}])

    def product(self, i: int, j: int) -> Mapping[int, Scalar]:
        return self.table[i].get(j, {})


@dataclass(frozen=True)
class FormSpace:
    dim_algebra: int
    basis: tuple  # tuple of Gram matrices (tuple of row tuples)

    @property
    def dimension(self) -> int:
        return len(self.basis)


def form_space(algebra) -> FormSpace:
    """All B with B(xy, z) = B(x, yz) and B(x, y) = B(y, x), as Gram matrices."""
    S = StructureConstants.of(algebra)
    f = S.field
    n = S.dim
    one = f.one
    minus = f.neg(one)
    rows: List[SparseVec] = []
    # unknown B[i][j] sits at column i*n + j
    for i in range(n):
        for j in range(i + 1, n):
            rows.append({i * n + j: one, j * n + i: minus})
    seen = set()
    for x in range(n):
        for y in range(n):
            for z in range(n):
                xy = S.product(x, y)
                yz = S.product(y, z)
                if not xy and not yz:
                    continue
                if (x, y, z) in seen:
                    continue
                seen.add((x, y, z))
                row: SparseVec = {}
                for k, c in xy.items():
                    axpy(f, row, c, {k * n + z: 1})
                for k, c in yz.items():
                    axpy(f, row, f.neg(c), {x * n + k: 1})
                if row:
                    rows.append(row)
    m = Matrix(f, len(rows), n * n, tuple(rows))
    basis = []
    for vec in kernel_basis(m):
        basis.append(tuple(tuple(vec[i * n:(i + 1) * n]) for i in range(n)))
    return FormSpace(n, tuple(basis))


def check_form(algebra, gram: Sequence[Sequence[Scalar]]) -> Dict[str, bool]:
    """Exhaustive associativity and symmetry checks plus full rank."""
    S = StructureConstants.of(algebra)
    f = S.field
    n = S.dim

    def B(u: Mapping[int, Scalar], v: int) -> Scalar:
        acc = f.zero
        for k, c in u.items():
            acc = f.add(acc, f.mul(c, gram[k][v]))
        return acc

    def Bl(u: int, v: Mapping[int, Scalar]) -> Scalar:
        acc = f.zero
        for k, c in v.items():
            acc = f.add(acc, f.mul(c, gram[u][k]))
        return acc

    associative = all(
        B(S.product(x, y), z) == Bl(x, S.product(y, z)) for x in range(n) for y in range(n) for z in range(n)
    )
    symmetric = all(gram[i][j] == gram[j][i] for i in range(n) for j in range(n))
    nondegenerate = rank(Matrix.from_dense(f, gram, n)) == n
    return {"associative": associative, "symmetric": symmetric, "nondegenerate": nondegenerate}


class SymmetryKind(str, Enum):
    SYMMETRIC = "SYMMETRIC"
    NOT_SYMMETRIC = "NOT_SYMMETRIC"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class SymmetryVerdict:
    kind: SymmetryKind
    samples: int
    seed: int
    form_space_dim: int
    witness: Optional[List[List[Scalar]]] = None
    reason: str = ""
    miss_bound: Optional[str] = None

    def to_json_obj(self) -> dict:
        return {
            "verdict": self.kind.value,
            "samples": self.samples,
            "seed": self.seed,
            "form_space_dim": self.form_space_dim,
            "reason": self.reason,
            "miss_bound": self.miss_bound,
            "witness": None if self.witness is None else [[str(c) for c in row] for row in self.witness],
        }


def _combine(f: Field, basis: Sequence, coeffs: Sequence[Scalar], n: int) -> List[List[Scalar]]:
    gram = [[f.zero] * n for _ in range(n)]
    for c, g in zip(coeffs, basis):
        if not c:
            continue
        for i in range(n):
            row = g[i]
            out = gram[i]
            for j in range(n):
                if row[j]:
                    out[j] = f.add(out[j], f.mul(c, row[j]))
    return gram


def _full_rank(f: Field, gram: List[List[Scalar]], n: int) -> bool:
    return rank(Matrix.from_dense(f, gram, n)) == n


def symmetry_verdict(algebra, seed: int = 0, samples: int = 64) -> SymmetryVerdict:
    S = StructureConstants.of(algebra)
    f = S.field
    n = S.dim
    space = form_space(S)
    k = space.dimension
    if k == 0:
        return SymmetryVerdict(SymmetryKind.NOT_SYMMETRIC, 0, seed, 0, reason="form space is zero")
    # a vector killed by every basis form is killed by every member
    stacked = [
        {j: c for j, c in enumerate(g[i]) if c} for g in space.basis for i in range(n)
    ]
    if rank_of_rows(f, stacked) < n:
        return SymmetryVerdict(SymmetryKind.NOT_SYMMETRIC, 0, seed, k, reason="all forms share a kernel vector")
    rng = random.Random(seed)
    bound = None
    for t in range(1, samples + 1):
        if f.is_finite:
            coeffs = [rng.randrange(f.characteristic) for _ in range(k)]
        else:
            width = 2 * n * (1 << min(t // 8, 20))
            coeffs = [f(rng.randint(-width, width)) for _ in range(k)]
            # det is a polynomial of degree <= n in the coefficients
            bound = f"{n}/{2 * width + 1}"
        gram = _combine(f, space.basis, [f(c) for c in coeffs], n)
        if _full_rank(f, gram, n):
            return SymmetryVerdict(SymmetryKind.SYMMETRIC, t, seed, k, witness=gram, reason="nondegenerate sample", miss_bound=bound)
    if f.is_finite and f.characteristic in (2, 3) and k <= 12 and f.characteristic ** k <= EXHAUSTIVE_LIMIT:
        for coeffs in product(range(f.characteristic), repeat=k):
            gram = _combine(f, space.basis, list(coeffs), n)
            if _full_rank(f, gram, n):
                return SymmetryVerdict(SymmetryKind.SYMMETRIC, samples, seed, k, witness=gram, reason="exhaustive search")
        return SymmetryVerdict(SymmetryKind.NOT_SYMMETRIC, samples, seed, k, reason="exhaustive search found no nondegenerate form")
    return SymmetryVerdict(SymmetryKind.INCONCLUSIVE, samples, seed, k, reason="no nondegenerate sample", miss_bound=bound)


__all__ = [
    "FormSpace",
    "StructureConstants",
    "SymmetryKind",
    "SymmetryVerdict",
    "check_form",
    "form_space",
    "symmetry_verdict",
]
