"""The truncated quiver algebra A = K Q / R^n and its dual bimodule D(A).

A has the paths of length ``< n`` as basis and the product of two basis paths
is again a basis path or zero.  D(A) has the dual basis ``p*`` with actions

    (a . f)(x) = f(x a),        (f . a)(x) = f(a x),

so ``a . p*`` is the sum of ``p'*`` over basis paths with ``p' a = p`` and
``p* . a`` the sum of ``p'*`` with ``a p' = p``.  In particular
``x . x* = e*`` for an arrow ``x`` starting at ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .linalg import Field, Scalar, SparseVec, axpy, rank_of_rows
from .quiver import Path, Quiver, cyclic_quiver, paths_of_length


class TruncatedAlgebra:
    def __init__(self, quiver: Quiver, n: int, field: Union[Field, int] = 0):
        if n < 2:
            raise ValueError("truncation length must be at least 2")
        self.quiver = quiver
        self.n = n
        self.field = field if isinstance(field, Field) else Field(field)
        basis: List[Path] = []
        for length in range(n):
            basis.extend(paths_of_length(quiver, length))
        self.basis: Tuple[Path, ...] = tuple(basis)
        self.index: Dict[Path, int] = {p: i for i, p in enumerate(self.basis)}
        self._by_word: Dict[Tuple[int, ...], int] = {p.arrows: i for i, p in enumerate(self.basis) if p.arrows}
        self.dim = len(self.basis)
        self.idempotents: Tuple[int, ...] = tuple(self.index[Path.trivial(v)] for v in range(quiver.vertex_count))
        self.radical: Tuple[int, ...] = tuple(i for i, p in enumerate(self.basis) if p.arrows)
        self._build_tables()

    @classmethod
    def cyclic(cls, s: int, n: int, field: Union[Field, int] = 0) -> "TruncatedAlgebra":
        return cls(cyclic_quiver(s), n, field)

    def __repr__(self) -> str:
        return f"TruncatedAlgebra(vertices={self.quiver.vertex_count}, arrows={self.quiver.arrow_count}, n={self.n}, {self.field!r})"

    def _build_tables(self) -> None:
        d = self.dim
        basis = self.basis
        # mult[i][j] = index of basis[i] basis[j] or -1
        mult = [[-1] * d for _ in range(d)]
        for i, p in enumerate(basis):
            for j, q in enumerate(basis):
                r = p.concat(q)
                if r is not None and r.length < self.n:
                    mult[i][j] = self.index[r]
        self.mult = mult
        # factorizations[k] = [(i, j)] with basis[i] basis[j] = basis[k]
        factorizations: List[List[Tuple[int, int]]] = [[] for _ in range(d)]
        for i in range(d):
            row = mult[i]
            for j in range(d):
                k = row[j]
                if k >= 0:
                    factorizations[k].append((i, j))
        self.factorizations = factorizations
        # left[a][p] = p' with p' a = p ; right[a][p] = p' with a p' = p
        left = [[-1] * d for _ in range(d)]
        right = [[-1] * d for _ in range(d)]
        for k, pairs in enumerate(factorizations):
            for i, j in pairs:
                left[j][k] = i
                right[i][k] = j
        self.left = left
        self.right = right

    # -- lookup -----------------------------------------------------------

    def path_index(self, arrows: Sequence[int], vertex: Optional[int] = None) -> int:
        arrows = tuple(arrows)
        if not arrows:
            if vertex is None:
                raise ValueError("trivial path needs a vertex")
            return self.idempotents[vertex]
        try:
            return self._by_word[arrows]
        except KeyError:
            raise KeyError(f"{arrows} is not a basis path of length < {self.n}") from None

    def idempotent_index(self, vertex: int) -> int:
        return self.idempotents[vertex]

    # -- elements ---------------------------------------------------------

    def element(self, coeffs: Mapping[int, Union[int, Scalar, str]]) -> "AlgebraElement":
        return AlgebraElement(self, self._clean(coeffs))

    def dual_element(self, coeffs: Mapping[int, Union[int, Scalar, str]]) -> "DualElement":
        return DualElement(self, self._clean(coeffs))

    def path(self, arrows: Sequence[int], vertex: Optional[int] = None) -> "AlgebraElement":
        return AlgebraElement(self, {self.path_index(arrows, vertex): self.field.one})

    def dual_path(self, arrows: Sequence[int], vertex: Optional[int] = None) -> "DualElement":
        return DualElement(self, {self.path_index(arrows, vertex): self.field.one})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {i: self.field.one for i in self.idempotents})

    def _clean(self, coeffs: Mapping[int, Union[int, Scalar, str]]) -> SparseVec:
        out: SparseVec = {}
        for k, v in coeffs.items():
            if not 0 <= k < self.dim:
                raise ValueError(f"basis index {k} out of range")
            v = self.field(v)
            if v:
                out[k] = v
        return out

    # -- raw sparse operations (index dictionaries) -----------------------

    def mul_vec(self, a: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> SparseVec:
        f = self.field
        out: SparseVec = {}
        mult = self.mult
        for i, x in a.items():
            row = mult[i]
            for j, y in b.items():
                k = row[j]
                if k >= 0:
                    axpy(f, out, f.mul(x, y), {k: 1})
        return out

    def left_vec(self, a: Mapping[int, Scalar], g: Mapping[int, Scalar]) -> SparseVec:
        f = self.field
        out: SparseVec = {}
        for i, x in a.items():
            row = self.left[i]
            for p, y in g.items():
                k = row[p]
                if k >= 0:
                    axpy(f, out, f.mul(x, y), {k: 1})
        return out

    def right_vec(self, g: Mapping[int, Scalar], a: Mapping[int, Scalar]) -> SparseVec:
        f = self.field
        out: SparseVec = {}
        for i, x in a.items():
            row = self.right[i]
            for p, y in g.items():
                k = row[p]
                if k >= 0:
                    axpy(f, out, f.mul(x, y), {k: 1})
        return out

    # -- public operations --------------------------------------------------

    def _check(self, *items: Union["AlgebraElement", "DualElement"]) -> None:
        for it in items:
            if it.algebra is not self:
                raise ValueError("operands belong to a different algebra")

    def multiply(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        self._check(a, b)
        return AlgebraElement(self, self.mul_vec(a.coeffs, b.coeffs))

    def act_left(self, a: "AlgebraElement", g: "DualElement") -> "DualElement":
        self._check(a, g)
        return DualElement(self, self.left_vec(a.coeffs, g.coeffs))

    def act_right(self, g: "DualElement", a: "AlgebraElement") -> "DualElement":
        self._check(a, g)
        return DualElement(self, self.right_vec(g.coeffs, a.coeffs))

    def radical_power_basis(self, k: int) -> List[Path]:
        """Basis paths spanning J(A)^k, i.e. lengths ``k .. n-1``."""
        if k < 1:
            raise ValueError("k must be positive")
        return [p for p in self.basis if p.length >= k]

    def subspace_dim(self, vectors: Iterable[Union["AlgebraElement", "DualElement", Mapping[int, Scalar]]]) -> int:
        rows = [v.coeffs if isinstance(v, (AlgebraElement, DualElement)) else v for v in vectors]
        return rank_of_rows(self.field, rows)

    def dual_corner(self, i: int, j: int) -> List[int]:
        """Dual basis indices spanning ``e_i D(A) e_j``: paths from ``j`` to ``i``."""
        return [k for k, p in enumerate(self.basis) if p.target == i and p.source == j]

    def corner(self, i: int, j: int) -> List[int]:
        """Basis indices spanning ``e_i A e_j``."""
        return [k for k, p in enumerate(self.basis) if p.source == i and p.target == j]

    def arrow_counts(self) -> List[List[int]]:
        """Gabriel quiver of A: dim e_i J e_j / e_i J^2 e_j (arrows for n >= 2)."""
        s = self.quiver.vertex_count
        counts = [[0] * s for _ in range(s)]
        for src, tgt in self.quiver.arrows:
            counts[src][tgt] += 1
        return counts

    def label(self, k: int) -> str:
        return self.basis[k].label()


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: TruncatedAlgebra
    coeffs: SparseVec = dc_field(default_factory=dict)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self.algebra._check(other)
        out = dict(self.coeffs)
        axpy(self.algebra.field, out, self.algebra.field.one, other.coeffs)
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self.algebra._check(other)
        out = dict(self.coeffs)
        axpy(self.algebra.field, out, self.algebra.field.neg(self.algebra.field.one), other.coeffs)
        return AlgebraElement(self.algebra, out)

    def scale(self, c: Union[int, Scalar]) -> "AlgebraElement":
        f = self.algebra.field
        c = f(c)
        return AlgebraElement(self.algebra, {k: f.mul(c, v) for k, v in self.coeffs.items() if f.mul(c, v)})

    def __mul__(self, other: Union["AlgebraElement", "DualElement"]) -> Union["AlgebraElement", "DualElement"]:
        if isinstance(other, DualElement):
            return self.algebra.act_left(self, other)
        return self.algebra.multiply(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AlgebraElement) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_pairs(self) -> List[Tuple[List[int], str]]:
        return [(list(self.algebra.basis[k].arrows), str(v)) for k, v in sorted(self.coeffs.items())]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*{self.algebra.label(k)}" for k, v in sorted(self.coeffs.items()))


@dataclass(frozen=True, eq=False)
class DualElement:
    algebra: TruncatedAlgebra
    coeffs: SparseVec = dc_field(default_factory=dict)

    def __add__(self, other: "DualElement") -> "DualElement":
        self.algebra._check(other)
        out = dict(self.coeffs)
        axpy(self.algebra.field, out, self.algebra.field.one, other.coeffs)
        return DualElement(self.algebra, out)

    def __mul__(self, other: AlgebraElement) -> "DualElement":
        return self.algebra.act_right(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DualElement) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def evaluate(self, a: AlgebraElement) -> Scalar:
        f = self.algebra.field
        acc = f.zero
        for k, v in self.coeffs.items():
            acc = f.add(acc, f.mul(v, a.coeffs.get(k, f.zero)))
        return acc

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_pairs(self) -> List[Tuple[List[int], str]]:
        return [(list(self.algebra.basis[k].arrows), str(v)) for k, v in sorted(self.coeffs.items())]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*({self.algebra.label(k)})*" for k, v in sorted(self.coeffs.items()))


__all__ = ["AlgebraElement", "DualElement", "TruncatedAlgebra"]
