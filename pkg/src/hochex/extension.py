"""Hochschild extension algebras T_alpha(A) = A + D(A) and their Gabriel quivers.

T has basis ``(p, 0)`` (indices ``0 .. d-1``) followed by ``(0, p*)``
(indices ``d .. 2d-1``) and product

    (a, x)(b, y) = (ab, a.y + x.b + alpha(a, b)).

Arrow counts N(i, j) are read as ``dim e_i J e_j / e_i J^2 e_j`` with the
arrow running from i to j.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import TruncatedAlgebra
from .cocycle import (
    Cocycle,
    bimodule_radical_span,
    cocycle_check,
    combine_basis,
    is_coboundary,
    radical_image_contained,
    theta,
)
from .homology import DualSliceVector
from .linalg import Scalar, SparseVec, _Echelon, axpy, rank_of_rows

Counts = List[List[int]]


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; signals a convention bug."""


class ExtensionAlgebra:
    def __init__(self, A: TruncatedAlgebra, alpha: Cocycle, check: bool = True):
        if alpha.algebra is not A:
            raise ValueError("cocycle belongs to a different algebra")
        if check and not cocycle_check(A, alpha):
            raise ValueError("alpha is not a 2-cocycle")
        self.A = A
        self.alpha = alpha
        self.field = A.field
        d = A.dim
        self.dim = 2 * d
        one = self.field.one
        table: List[Dict[int, SparseVec]] = [dict() for _ in range(2 * d)]
        for i in range(d):
            for j in range(d):
                vec: SparseVec = {}
                k = A.mult[i][j]
                if k >= 0:
                    vec[k] = one
                for t, c in alpha.value(i, j).items():
                    vec[d + t] = c
                if vec:
                    table[i][j] = vec
            for p in range(d):
                k = A.left[i][p]
                if k >= 0:
                    table[i][d + p] = {d + k: one}
                k = A.right[i][p]
                if k >= 0:
                    table[d + p][i] = {d + k: one}
        self.table = table

    def __repr__(self) -> str:
        return f"ExtensionAlgebra({self.A!r}, support={len(self.alpha.values)})"

    def label(self, k: int) -> str:
        d = self.A.dim
        if k < d:
            return f"({self.A.label(k)},0)"
        return f"(0,{self.A.label(k - d)}*)"

    def mul(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> SparseVec:
        f = self.field
        out: SparseVec = {}
        table = self.table
        for i, x in u.items():
            row = table[i]
            if not row:
                continue
            for j, y in v.items():
                prod = row.get(j)
                if prod:
                    axpy(f, out, f.mul(x, y), prod)
        return out

    def basis_product(self, i: int, j: int) -> SparseVec:
        return dict(self.table[i].get(j, {}))

    def identity(self) -> SparseVec:
        """``(1_A, -alpha(1, 1))``."""
        A = self.A
        f = self.field
        out: SparseVec = {e: f.one for e in A.idempotents}
        for e1 in A.idempotents:
            for e2 in A.idempotents:
                for t, c in self.alpha.value(e1, e2).items():
                    axpy(f, out, f.neg(c), {A.dim + t: 1})
        return out

    # -- associativity ----------------------------------------------------

    def associativity_defects(self, limit: int = 1) -> List[Tuple[int, int, int]]:
        """Basis triples with ``(xy)z != x(yz)``.

        A triple can only fail if ``xy`` or ``yz`` is nonzero, so only those
        triples are evaluated; every other triple has both sides zero.
        """
        n = self.dim
        table = self.table
        done = set()
        bad: List[Tuple[int, int, int]] = []

        def test(i: int, j: int, k: int) -> None:
            if (i, j, k) in done:
                return
            done.add((i, j, k))
            left = self.mul(table[i].get(j, {}), {k: self.field.one})
            right = self.mul({i: self.field.one}, table[j].get(k, {}))
            if left != right:
                bad.append((i, j, k))

        for i in range(n):
            for j in table[i]:
                for k in range(n):
                    test(i, j, k)
                    if len(bad) >= limit:
                        return bad
        for j in range(n):
            for k in table[j]:
                for i in range(n):
                    test(i, j, k)
                    if len(bad) >= limit:
                        return bad
        return bad

    def is_associative(self) -> bool:
        return not self.associativity_defects()

    def is_associative_brute(self) -> bool:
        one = self.field.one
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i].get(j, {})
                for k in range(self.dim):
                    if self.mul(ij, {k: one}) != self.mul({i: one}, self.table[j].get(k, {})):
                        return False
        return True


def build_extension(A: TruncatedAlgebra, alpha: Cocycle, verify: bool = True) -> ExtensionAlgebra:
    """T_alpha(A); with ``verify`` the product is checked to be associative."""
    T = ExtensionAlgebra(A, alpha)
    if verify and not T.is_associative():
        raise ConsistencyError(f"T_alpha is not associative at {T.associativity_defects()[0]}")
    return T


def trivial_extension(A: TruncatedAlgebra) -> ExtensionAlgebra:
    return ExtensionAlgebra(A, Cocycle.zero(A), check=False)


# ---------------------------------------------------------------------------
# idempotents and radical


def lifted_idempotents(T: ExtensionAlgebra) -> List[SparseVec]:
    """The elements ``(e_i, 0)``, after checking they form a complete orthogonal set."""
    A = T.A
    idem = set(A.idempotents)
    if any(i in idem or j in idem for (i, j) in T.alpha.values):
        raise ValueError("alpha does not vanish on idempotents")
    one = T.field.one
    elems = [{e: one} for e in A.idempotents]
    for a, ea in enumerate(elems):
        for b, eb in enumerate(elems):
            expected = ea if a == b else {}
            if T.mul(ea, eb) != expected:
                raise ConsistencyError("(e_i, 0) are not orthogonal idempotents")
    total: SparseVec = {}
    for e in elems:
        axpy(T.field, total, one, e)
    if total != T.identity():
        raise ConsistencyError("(e_i, 0) do not sum to the identity")
    return elems


def _span_basis(T: ExtensionAlgebra, vectors: Sequence[Mapping[int, Scalar]]) -> List[SparseVec]:
    ech = _Echelon(T.field)
    out = []
    for v in vectors:
        if v and ech.add(v):
            out.append(dict(v))
    return out


@dataclass(frozen=True)
class RadicalData:
    basis: Tuple[int, ...]
    power_dims: Tuple[int, ...]

    @property
    def nilpotency_index(self) -> int:
        """Least k with J^k = 0."""
        return len(self.power_dims) + 1


def radical_powers(T: ExtensionAlgebra, generators: Sequence[Mapping[int, Scalar]]) -> List[List[SparseVec]]:
    """Bases of J, J^2, ... until zero, for J spanned by ``generators``."""
    powers = [_span_basis(T, generators)]
    while powers[-1]:
        prods = [T.mul(x, r) for x in powers[-1] for r in powers[0]]
        powers.append(_span_basis(T, prods))
        if len(powers) > T.dim + 1:
            raise ConsistencyError("radical is not nilpotent")
    return powers


def radical_basis(T: ExtensionAlgebra) -> RadicalData:
    """J(T) = J(A) + D(A), verified to be a nilpotent ideal with basic semisimple quotient."""
    A = T.A
    d = A.dim
    one = T.field.one
    basis = tuple(A.radical) + tuple(range(d, 2 * d))
    rad = set(basis)
    idem = list(A.idempotents)
    for b in range(T.dim):
        for r in basis:
            for prod in (T.table[b].get(r), T.table[r].get(b)):
                if prod and any(k not in rad for k in prod):
                    raise ConsistencyError("J(A) + D(A) is not an ideal")
    for a, ea in enumerate(idem):
        for b, eb in enumerate(idem):
            prod = T.table[ea].get(eb, {})
            head = {k: v for k, v in prod.items() if k not in rad}
            if head != ({ea: one} if a == b else {}):
                raise ConsistencyError("T/J is not the product of s copies of K")
    powers = radical_powers(T, [{r: one} for r in basis])
    return RadicalData(basis, tuple(len(p) for p in powers[:-1]))


# ---------------------------------------------------------------------------
# Gabriel quivers


def _corner_dim(T: ExtensionAlgebra, vectors: Sequence[Mapping[int, Scalar]], ei: SparseVec, ej: SparseVec) -> int:
    return rank_of_rows(T.field, [T.mul(T.mul(ei, v), ej) for v in vectors])


def gabriel_quiver_direct(T: ExtensionAlgebra) -> Counts:
    """dim (e_i,0) J (e_j,0) - dim (e_i,0) J^2 (e_j,0), computed inside T."""
    idem = lifted_idempotents(T)
    one = T.field.one
    J = [{r: one} for r in radical_basis(T).basis]
    J2 = _span_basis(T, [T.mul(x, y) for x in J for y in J])
    s = len(idem)
    return [[_corner_dim(T, J, idem[i], idem[j]) - _corner_dim(T, J2, idem[i], idem[j]) for j in range(s)] for i in range(s)]


def _filter_corner(A: TruncatedAlgebra, vec: Mapping[int, Scalar], i: int, j: int, dual: bool) -> SparseVec:
    out = {}
    for k, c in vec.items():
        p = A.basis[k]
        if (dual and p.target == i and p.source == j) or (not dual and p.source == i and p.target == j):
            out[k] = c
    return out


def base_counts(A: TruncatedAlgebra) -> Counts:
    """N_A(i, j) = dim e_i J e_j / e_i J^2 e_j for A itself."""
    s = A.quiver.vertex_count
    counts = [[0] * s for _ in range(s)]
    for p in A.basis:
        if p.length == 1:
            counts[p.source][p.target] += 1
    return counts


def _dual_quotient_counts(A: TruncatedAlgebra, extra: Sequence[Mapping[int, Scalar]]) -> Counts:
    s = A.quiver.vertex_count
    sub = bimodule_radical_span(A) + [dict(v) for v in extra]
    counts = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(s):
            full = len(A.dual_corner(i, j))
            part = rank_of_rows(A.field, [_filter_corner(A, v, i, j, True) for v in sub])
            counts[i][j] = full - part
    return counts


def _add(a: Counts, b: Counts) -> Counts:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def gabriel_quiver_formula(A: TruncatedAlgebra, alpha: Cocycle) -> Counts:
    """N_A(i,j) + dim e_i D e_j / e_i (J D + D J + alpha(J, J)) e_j."""
    rad = set(A.radical)
    extra = [v for (i, j), v in alpha.values.items() if i in rad and j in rad]
    return _add(base_counts(A), _dual_quotient_counts(A, extra))


def trivial_extension_counts(A: TruncatedAlgebra) -> Counts:
    """Arrow counts of T_0(A): N_A(i,j) + dim e_i D e_j / e_i (J D + D J) e_j."""
    return _add(base_counts(A), _dual_quotient_counts(A, []))


def gabriel_quiver(T: ExtensionAlgebra) -> Counts:
    """Arrow counts of T, computed in T and by the decomposition formula; both must agree."""
    direct = gabriel_quiver_direct(T)
    formula = gabriel_quiver_formula(T.A, T.alpha)
    if direct != formula:
        raise ConsistencyError(f"Gabriel quiver routes disagree: {direct} vs {formula}")
    return direct


class Verdict(str, Enum):
    BASE = "BASE"
    TRIVIAL_EXT = "TRIVIAL_EXT"
    OTHER = "OTHER"


@dataclass(frozen=True)
class QuiverVerdict:
    verdict: Verdict
    counts: Tuple[Tuple[int, ...], ...]


def classify(A: TruncatedAlgebra, counts: Counts) -> QuiverVerdict:
    frozen = tuple(tuple(r) for r in counts)
    if counts == trivial_extension_counts(A):
        return QuiverVerdict(Verdict.TRIVIAL_EXT, frozen)
    if counts == base_counts(A):
        return QuiverVerdict(Verdict.BASE, frozen)
    return QuiverVerdict(Verdict.OTHER, frozen)


def sandwich_holds(A: TruncatedAlgebra, counts: Counts) -> bool:
    """N_A <= counts <= N_{T_0} entrywise."""
    low = base_counts(A)
    high = trivial_extension_counts(A)
    s = len(counts)
    return all(low[i][j] <= counts[i][j] <= high[i][j] for i in range(s) for j in range(s))


def corollary46_predicate(s: int, n: int) -> bool:
    """True iff 2n = 1 mod s, i.e. the top degree 2n-1 carries cycles."""
    if s < 1 or n < 2:
        raise ValueError("need s >= 1 and n >= 2")
    return (2 * n - 1) % s == 0


# ---------------------------------------------------------------------------
# verdict reports


@dataclass
class ExtensionReport:
    s: int
    n: int
    char: int
    degrees: Dict[int, List[str]]
    quiver_counts: Counts
    verdict: Verdict
    lemma42: bool
    dim_T: int
    zero_class: bool
    top_class_nonzero: bool = False

    def to_json_obj(self) -> dict:
        obj = {
            "s": self.s,
            "n": self.n,
            "char": self.char,
            "coefficients": {str(q): c for q, c in sorted(self.degrees.items())},
            "quiver_counts": self.quiver_counts,
            "verdict": self.verdict.value,
            "lemma42": self.lemma42,
            "dim_T": self.dim_T,
            "zero_class": self.zero_class,
        }
        if len(self.degrees) == 1:
            (q,) = self.degrees
            obj["q"] = q
            obj["coefficients"] = self.degrees[q]
        obj["top_class_nonzero"] = self.top_class_nonzero
        return obj


def _check_degree(s: int, n: int, q: int) -> None:
    if not n <= q <= 2 * n - 1:
        raise ValueError(f"degree {q} must lie in [n, 2n-1] = [{n}, {2 * n - 1}]")
    if q % s:
        raise ValueError(f"degree {q} is not a multiple of s = {s}; HH_2 vanishes there")


def build_mixed_cocycle(A: TruncatedAlgebra, per_degree: Mapping[int, Sequence]) -> Tuple[Cocycle, Dict[int, DualSliceVector]]:
    s, n = A.quiver.vertex_count, A.n
    parts: Dict[int, DualSliceVector] = {}
    alpha = Cocycle.zero(A)
    for q, coeffs in sorted(per_degree.items()):
        _check_degree(s, n, q)
        u = combine_basis(A, q, coeffs)
        parts[q] = u
        alpha = alpha + theta(A, u)
    return alpha, parts


def mixed_verdict(
    s: int,
    n: int,
    characteristic: int,
    per_degree: Mapping[int, Sequence],
    A: Optional[TruncatedAlgebra] = None,
) -> ExtensionReport:
    """Verdict for a sum of Theta images over several degrees."""
    if A is None:
        A = TruncatedAlgebra.cyclic(s, n, characteristic)
    alpha, parts = build_mixed_cocycle(A, per_degree)
    T = build_extension(A, alpha)
    counts = gabriel_quiver(T)
    verdict = classify(A, counts).verdict
    zero_class = is_coboundary(A, alpha, check=False) is not None
    top = 2 * n - 1
    top_nonzero = top in parts and is_coboundary(A, theta(A, parts[top]), check=False) is None
    return ExtensionReport(
        s,
        n,
        characteristic,
        {q: [str(A.field(c)) for c in cs] for q, cs in per_degree.items()},
        counts,
        verdict,
        radical_image_contained(A, alpha),
        T.dim,
        zero_class,
        top_nonzero,
    )


def theorem44_verdict(
    s: int,
    n: int,
    q: int,
    characteristic: int,
    coefficients: Sequence,
    A: Optional[TruncatedAlgebra] = None,
) -> ExtensionReport:
    """Build alpha from the degree-q dual basis and classify the quiver of T_alpha."""
    return mixed_verdict(s, n, characteristic, {q: list(coefficients)}, A)


def coefficient_patterns(k: int) -> List[Tuple[int, ...]]:
    """Unit vectors, all ones and (1, 2, ..., k), without repeats; empty when k = 0."""
    if k == 0:
        return []
    pats: List[Tuple[int, ...]] = []
    for i in range(k):
        pats.append(tuple(1 if j == i else 0 for j in range(k)))
    pats.append(tuple([1] * k))
    pats.append(tuple(range(1, k + 1)))
    out: List[Tuple[int, ...]] = []
    for p in pats:
        if p not in out:
            out.append(p)
    return out


__all__ = [
    "ConsistencyError",
    "ExtensionAlgebra",
    "ExtensionReport",
    "QuiverVerdict",
    "RadicalData",
    "Verdict",
    "base_counts",
    "build_extension",
    "build_mixed_cocycle",
    "classify",
    "coefficient_patterns",
    "corollary46_predicate",
    "gabriel_quiver",
    "gabriel_quiver_direct",
    "gabriel_quiver_formula",
    "lifted_idempotents",
    "mixed_verdict",
    "radical_basis",
    "radical_powers",
    "sandwich_holds",
    "theorem44_verdict",
    "trivial_extension",
    "trivial_extension_counts",
]
