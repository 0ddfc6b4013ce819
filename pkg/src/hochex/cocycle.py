"""Hochschild 2-cocycles A x A -> D(A), the comparison map Theta, and coboundaries.

A cocycle is stored by its values on ordered pairs of basis paths.  Theta
turns a functional ``(a_{n+1} ... a_q (x) a_1 ... a_n)*`` on the degree-q
slice into the cocycle

    (b_1 ... b_{m1}, b_{m1+1} ... b_m)  |->  (a_{m+1} ... a_q)*

whenever ``n <= m <= q`` and the concatenation ``b_1 ... b_m`` (taken in the
path algebra, not in A) is the prefix ``a_1 ... a_m`` of the cycle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import AlgebraElement, DualElement, TruncatedAlgebra
from .homology import DualSliceVector, dual_hh2_basis, slice_basis
from .linalg import Matrix, Scalar, SparseVec, axpy, solve, _Echelon

Pair = Tuple[int, int]


@dataclass(eq=False)
class Cocycle:
    """Bilinear map A x A -> D(A) given on basis index pairs."""

    algebra: TruncatedAlgebra
    values: Dict[Pair, SparseVec] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        self.values = {k: dict(v) for k, v in self.values.items() if v}

    @classmethod
    def zero(cls, A: TruncatedAlgebra) -> "Cocycle":
        return cls(A, {})

    def value(self, i: int, j: int) -> SparseVec:
        return self.values.get((i, j), {})

    def __call__(self, a: AlgebraElement, b: AlgebraElement) -> DualElement:
        f = self.algebra.field
        out: SparseVec = {}
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                v = self.values.get((i, j))
                if v:
                    axpy(f, out, f.mul(x, y), v)
        return DualElement(self.algebra, out)

    def _combine(self, other: "Cocycle", c: Scalar) -> "Cocycle":
        if other.algebra is not self.algebra:
            raise ValueError("cocycles live on different algebras")
        f = self.algebra.field
        out = {k: dict(v) for k, v in self.values.items()}
        for k, v in other.values.items():
            tgt = out.setdefault(k, {})
            axpy(f, tgt, c, v)
            if not tgt:
                del out[k]
        return Cocycle(self.algebra, out)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return self._combine(other, self.algebra.field.one)

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        return self._combine(other, self.algebra.field.neg(self.algebra.field.one))

    def scale(self, c: Scalar) -> "Cocycle":
        f = self.algebra.field
        c = f(c)
        if not c:
            return Cocycle.zero(self.algebra)
        return Cocycle(self.algebra, {k: {t: f.mul(c, x) for t, x in v.items()} for k, v in self.values.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Cocycle) and other.algebra is self.algebra and other.values == self.values

    def is_zero(self) -> bool:
        return not self.values

    def support(self) -> List[Pair]:
        return sorted(self.values)

    def table(self) -> List[Tuple[str, str, str]]:
        """Human-readable rows ``(a, b, alpha(a, b))``."""
        A = self.algebra
        rows = []
        for (i, j) in self.support():
            val = " + ".join(
                (f"({A.label(t)})*" if c == A.field.one else f"{c}*({A.label(t)})*")
                for t, c in sorted(self.values[(i, j)].items())
            )
            rows.append((A.label(i), A.label(j), val))
        return rows

    def to_json_obj(self) -> List[list]:
        A = self.algebra
        return [
            [path_to_json(A, i), path_to_json(A, j), [[path_to_json(A, t), str(c)] for t, c in sorted(v.items())]]
            for (i, j), v in sorted(self.values.items())
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, A: TruncatedAlgebra, text: str) -> "Cocycle":
        values: Dict[Pair, SparseVec] = {}
        for a, b, val in json.loads(text):
            vec: SparseVec = {}
            for p, c in val:
                axpy(A.field, vec, A.field(c), {path_from_json(A, p): 1})
            values[(path_from_json(A, a), path_from_json(A, b))] = vec
        return cls(A, values)


def path_to_json(A: TruncatedAlgebra, k: int) -> dict:
    p = A.basis[k]
    return {"source": p.source + 1, "arrows": [a + 1 for a in p.arrows]}


def path_from_json(A: TruncatedAlgebra, obj: Mapping) -> int:
    return A.path_index([a - 1 for a in obj["arrows"]], vertex=int(obj["source"]) - 1)


# ---------------------------------------------------------------------------
# Theta


def theta(A: TruncatedAlgebra, u: DualSliceVector) -> Cocycle:
    """The cocycle attached to a functional on the degree-q slice of A (x) P_2."""
    q = u.degree
    n = A.n
    if not u.coeffs:
        return Cocycle.zero(A)
    if not n <= q <= 2 * n - 1:
        raise ValueError(f"degree {q} is outside [n, 2n-1] = [{n}, {2 * n - 1}]")
    sl = slice_basis(A, 2, q)
    f = A.field
    values: Dict[Pair, SparseVec] = {}
    for k, coeff in u.coeffs:
        if not 0 <= k < len(sl):
            raise ValueError(f"slice index {k} out of range")
        w = sl.elements[k].word
        start = A.quiver.source(w[0])
        for m in range(n, q + 1):
            rest = w[m:]
            target = A.path_index(rest, vertex=start)
            for m1 in range(max(1, m - n + 1), min(n - 1, m - 1) + 1):
                key = (A.path_index(w[:m1]), A.path_index(w[m1:m]))
                vec = values.setdefault(key, {})
                axpy(f, vec, f(coeff), {target: 1})
                if not vec:
                    del values[key]
    return Cocycle(A, values)


def theta_mixed(A: TruncatedAlgebra, parts: Iterable[DualSliceVector]) -> Cocycle:
    """Sum of per-degree Theta images."""
    total = Cocycle.zero(A)
    for u in parts:
        total = total + theta(A, u)
    return total


def combine_basis(A: TruncatedAlgebra, q: int, coefficients: Sequence) -> DualSliceVector:
    """``sum_k c_k u_k`` over the dual HH_{2,q} basis, coefficients taken positionally."""
    basis = dual_hh2_basis(A, q)
    if len(coefficients) != len(basis):
        raise ValueError(f"degree {q} needs {len(basis)} coefficient(s), got {len(coefficients)}")
    f = A.field
    acc: SparseVec = {}
    for c, u in zip(coefficients, basis):
        axpy(f, acc, f(c), u.as_dict())
    return DualSliceVector.from_dict(q, acc)


def cocycle_from_coefficients(A: TruncatedAlgebra, q: int, coefficients: Sequence) -> Cocycle:
    return theta(A, combine_basis(A, q, coefficients))


# ---------------------------------------------------------------------------
# checks


def cocycle_defect(A: TruncatedAlgebra, alpha: Cocycle) -> Dict[Tuple[int, int, int], SparseVec]:
    """Nonzero values of ``a alpha(b,c) - alpha(ab,c) + alpha(a,bc) - alpha(a,b) c`` on basis triples.

    Only triples touching the support of alpha can be nonzero, so the sum
    is scattered from the support instead of looping over all triples.
    """
    f = A.field
    one = f.one
    minus = f.neg(one)
    out: Dict[Tuple[int, int, int], SparseVec] = {}

    def add(key: Tuple[int, int, int], c: Scalar, vec: Mapping[int, Scalar]) -> None:
        tgt = out.setdefault(key, {})
        axpy(f, tgt, c, vec)

    d = A.dim
    for (j, k), val in alpha.values.items():
        for i in range(d):
            img = A.left_vec({i: one}, val)
            if img:
                add((i, j, k), one, img)
    for (m, k), val in alpha.values.items():
        for i, j in A.factorizations[m]:
            add((i, j, k), minus, val)
    for (i, m), val in alpha.values.items():
        for j, k in A.factorizations[m]:
            add((i, j, k), one, val)
    for (i, j), val in alpha.values.items():
        for k in range(d):
            img = A.right_vec(val, {k: one})
            if img:
                add((i, j, k), minus, img)
    return {k: v for k, v in out.items() if v}


def cocycle_check(A: TruncatedAlgebra, alpha: Cocycle) -> bool:
    return not cocycle_defect(A, alpha)


def cocycle_check_brute(A: TruncatedAlgebra, alpha: Cocycle) -> bool:
    """Literal loop over every basis triple; slow reference for tests."""
    f = A.field
    minus = f.neg(f.one)
    d = A.dim
    for i in range(d):
        ei = {i: f.one}
        for j in range(d):
            ij = A.mult[i][j]
            for k in range(d):
                jk = A.mult[j][k]
                acc: SparseVec = {}
                axpy(f, acc, f.one, A.left_vec(ei, alpha.value(j, k)))
                if ij >= 0:
                    axpy(f, acc, minus, alpha.value(ij, k))
                if jk >= 0:
                    axpy(f, acc, f.one, alpha.value(i, jk))
                axpy(f, acc, minus, A.right_vec(alpha.value(i, j), {k: f.one}))
                if acc:
                    return False
    return True


def coboundary(A: TruncatedAlgebra, fmap: Mapping[int, Mapping[int, Scalar]]) -> Cocycle:
    """``(a, b) |-> a f(b) - f(ab) + f(a) b`` for ``f`` given on basis paths."""
    fld = A.field
    one = fld.one
    minus = fld.neg(one)
    values: Dict[Pair, SparseVec] = {}
    d = A.dim
    for a in range(d):
        for b in range(d):
            acc: SparseVec = {}
            fb = fmap.get(b)
            if fb:
                axpy(fld, acc, one, A.left_vec({a: one}, fb))
            ab = A.mult[a][b]
            if ab >= 0 and fmap.get(ab):
                axpy(fld, acc, minus, fmap[ab])
            fa = fmap.get(a)
            if fa:
                axpy(fld, acc, one, A.right_vec(fa, {b: one}))
            if acc:
                values[(a, b)] = acc
    return Cocycle(A, values)


def coboundary_matrix(A: TruncatedAlgebra) -> Matrix:
    """Matrix of f |-> delta f; column ``p*d + r`` is f(p) = r*, row ``(a*d + b)*d + t``."""
    fld = A.field
    one = fld.one
    minus = fld.neg(one)
    d = A.dim
    cols: List[SparseVec] = []
    for p in range(d):
        for r in range(d):
            col: SparseVec = {}
            # f appears as f(b) with b = p: a . r*
            for a in range(d):
                t = A.left[a][r]
                if t >= 0:
                    axpy(fld, col, one, {(a * d + p) * d + t: 1})
            # as f(ab) with ab = p
            for a, b in A.factorizations[p]:
                axpy(fld, col, minus, {(a * d + b) * d + r: 1})
            # as f(a) with a = p: r* . b
            for b in range(d):
                t = A.right[b][r]
                if t >= 0:
                    axpy(fld, col, one, {(p * d + b) * d + t: 1})
            cols.append(col)
    return Matrix.from_columns(fld, d ** 3, cols)


def is_coboundary(A: TruncatedAlgebra, alpha: Cocycle, check: bool = True) -> Optional[Dict[int, SparseVec]]:
    """Some ``f: A -> D(A)`` with ``delta f = alpha``, or None when the class is nonzero."""
    if check and not cocycle_check(A, alpha):
        raise ValueError("not a 2-cocycle")
    fld = A.field
    d = A.dim
    m = coboundary_matrix(A)
    rhs = [fld.zero] * (d ** 3)
    for (a, b), val in alpha.values.items():
        for t, c in val.items():
            rhs[(a * d + b) * d + t] = c
    x = solve(m, rhs)
    if x is None:
        return None
    fmap: Dict[int, SparseVec] = {}
    for idx, c in enumerate(x):
        if c:
            fmap.setdefault(idx // d, {})[idx % d] = c
    return fmap


def vanishes_on_idempotents(A: TruncatedAlgebra, alpha: Cocycle) -> bool:
    idem = set(A.idempotents)
    return not any(i in idem or j in idem for (i, j) in alpha.values)


def bimodule_radical_span(A: TruncatedAlgebra) -> List[SparseVec]:
    """Spanning set of J(A) D(A) + D(A) J(A) inside D(A)."""
    one = A.field.one
    rows: List[SparseVec] = []
    for a in A.radical:
        for p in range(A.dim):
            for vec in (A.left_vec({a: one}, {p: one}), A.right_vec({p: one}, {a: one})):
                if vec:
                    rows.append(vec)
    return rows


def radical_image_contained(A: TruncatedAlgebra, alpha: Cocycle) -> bool:
    """alpha(J, J) inside J D(A) + D(A) J."""
    ech = _Echelon(A.field)
    for row in bimodule_radical_span(A):
        ech.add(row)
    rad = set(A.radical)
    return all(ech.contains(v) for (i, j), v in alpha.values.items() if i in rad and j in rad)


__all__ = [
    "Cocycle",
    "DualSliceVector",
    "bimodule_radical_span",
    "coboundary",
    "coboundary_matrix",
    "cocycle_check",
    "cocycle_check_brute",
    "cocycle_defect",
    "cocycle_from_coefficients",
    "combine_basis",
    "is_coboundary",
    "path_from_json",
    "path_to_json",
    "radical_image_contained",
    "theta",
    "theta_mixed",
    "vanishes_on_idempotents",
]
