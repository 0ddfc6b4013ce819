"""Checking that T is presented by a quiver with relations, K Q' / <R>.

Arrow images are searched in the form ``(a, x)`` with a prescribed A-part
``a`` and an unknown ``x`` in the corner ``e_src D(A) e_tgt``.  Since
``D(A)^2 = 0`` every relation is affine-linear in the unknowns, so the
candidates form an affine space that is found by one exact solve.

A presentation is accepted when the images lie in J(T), are independent
modulo J(T)^2 with the right arrow counts, satisfy every relation, generate
T, and ``dim K Q' / <R> = dim T``.  The last two facts make the induced
surjection an isomorphism.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import TruncatedAlgebra
from .cocycle import Cocycle, cocycle_from_coefficients
from .extension import ExtensionAlgebra, build_extension, gabriel_quiver, radical_basis, trivial_extension
from .linalg import Matrix, Scalar, SparseVec, _Echelon, axpy, kernel_basis, rank_of_rows, solve
from .quiver import Quiver

Term = Tuple[Scalar, Tuple[int, ...]]
Relation = List[Term]


# ---------------------------------------------------------------------------
# the quotient K Q' / <R>


def _extend_layers(quiver: Quiver, weights: Sequence[int], layers: List[List[Tuple[int, ...]]]) -> None:
    """Append the sorted list of paths of weight ``len(layers)``."""
    m = len(layers)
    out = [(a,) for a in range(quiver.arrow_count) if weights[a] == m]
    for a in range(quiver.arrow_count):
        prev = m - weights[a]
        if prev >= 1:
            out.extend(w + (a,) for w in layers[prev] if quiver.target(w[-1]) == quiver.source(a))
    out.sort()
    layers.append(out)


def _relation_weight(rel: Relation, weights: Sequence[int]) -> int:
    ws = {sum(weights[a] for a in word) for _, word in rel}
    if len(ws) != 1:
        raise ValueError("relation is not homogeneous for the given arrow weights")
    return ws.pop()


def quotient_dimension(
    quiver: Quiver,
    relations: Sequence[Relation],
    field,
    weights: Optional[Sequence[int]] = None,
    cap: int = 64,
) -> Tuple[int, List[int]]:
    """dim K Q' / <R> and its weight-graded pieces (weight 0 = vertices).

    The relations must be homogeneous.  Once ``max weight`` consecutive
    weights have zero quotient, every longer path lies in the ideal.
    Raises ValueError if the quotient is still nonzero at weight ``cap``.
    """
    if weights is None:
        weights = [1] * quiver.arrow_count
    if any(w < 1 for w in weights):
        raise ValueError("arrow weights must be positive")
    rels: Dict[int, List[Relation]] = {}
    for rel in relations:
        rel = [(field(c), tuple(word)) for c, word in rel if field(c)]
        if not rel:
            continue
        if any(len(word) < 2 for _, word in rel):
            raise ValueError("relations must lie in the square of the arrow ideal")
        for _, word in rel:
            quiver.path(word)
        rels.setdefault(_relation_weight(rel, weights), []).append(rel)
    wmax = max(weights)
    layers: List[List[Tuple[int, ...]]] = [[]]
    index: List[Dict[Tuple[int, ...], int]] = [{}]
    ideal_vecs: List[List[SparseVec]] = [[] for _ in range(cap + 1)]
    graded = [quiver.vertex_count]
    zero_run = 0
    for m in range(1, cap + 1):
        _extend_layers(quiver, weights, layers)
        index.append({p: i for i, p in enumerate(layers[m])})
        ech = _Echelon(field)
        kept: List[SparseVec] = []

        def push(vec: SparseVec) -> None:
            if vec and ech.add(vec):
                kept.append(vec)

        for rel in rels.get(m, []):
            vec: SparseVec = {}
            for c, word in rel:
                axpy(field, vec, c, {index[m][word]: 1})
            push(vec)
        for a in range(quiver.arrow_count):
            prev = m - weights[a]
            if prev < 1:
                continue
            for vec in ideal_vecs[prev]:
                left: SparseVec = {}
                right: SparseVec = {}
                for k, c in vec.items():
                    word = layers[prev][k]
                    if quiver.target(a) == quiver.source(word[0]):
                        left[index[m][(a,) + word]] = c
                    if quiver.target(word[-1]) == quiver.source(a):
                        right[index[m][word + (a,)]] = c
                push(left)
                push(right)
        ideal_vecs[m] = kept
        piece = len(layers[m]) - len(kept)
        graded.append(piece)
        zero_run = zero_run + 1 if piece == 0 else 0
        if zero_run >= wmax:
            while graded and graded[-1] == 0 and len(graded) > 1:
                graded.pop()
            return sum(graded), graded
    raise ValueError(f"quotient still nonzero at weight {cap}; the relations are not admissible")


# ---------------------------------------------------------------------------
# images and checks


def evaluate_path(T: ExtensionAlgebra, images: Sequence[Mapping[int, Scalar]], word: Sequence[int]) -> SparseVec:
    out: SparseVec = dict(images[word[0]])
    for a in word[1:]:
        out = T.mul(out, images[a])
        if not out:
            break
    return out


def evaluate_relation(T: ExtensionAlgebra, images: Sequence[Mapping[int, Scalar]], rel: Relation) -> SparseVec:
    f = T.field
    out: SparseVec = {}
    for c, word in rel:
        axpy(f, out, f(c), evaluate_path(T, images, word))
    return out


def generated_dimension(T: ExtensionAlgebra, images: Sequence[Mapping[int, Scalar]]) -> int:
    """Dimension of the subalgebra generated by the vertex idempotents and the images."""
    one = T.field.one
    ech = _Echelon(T.field)
    frontier: List[SparseVec] = []
    for v in [{e: one} for e in T.A.idempotents] + [dict(x) for x in images]:
        if v and ech.add(v):
            frontier.append(v)
    while frontier:
        nxt = []
        for v in frontier:
            for g in images:
                w = T.mul(v, g)
                if w and ech.add(w):
                    nxt.append(w)
        frontier = nxt
    return len(ech)


@dataclass
class PresentationResult:
    ok: bool
    checks: Dict[str, bool]
    quotient_dim: int
    dim_T: int
    graded_dims: List[int] = dc_field(default_factory=list)
    images: List[Dict[str, str]] = dc_field(default_factory=list)

    def failed(self) -> List[str]:
        return [k for k, v in self.checks.items() if not v]


def _corner(T: ExtensionAlgebra, v: Mapping[int, Scalar], i: int, j: int) -> SparseVec:
    one = T.field.one
    return T.mul(T.mul({T.A.idempotents[i]: one}, v), {T.A.idempotents[j]: one})


def verify_presentation(
    T: ExtensionAlgebra,
    quiver: Quiver,
    relations: Sequence[Relation],
    images: Sequence[Mapping[int, Scalar]],
    weights: Optional[Sequence[int]] = None,
) -> PresentationResult:
    if quiver.vertex_count != T.A.quiver.vertex_count:
        raise ValueError("presented quiver has the wrong number of vertices")
    if len(images) != quiver.arrow_count:
        raise ValueError("one image per arrow is required")
    qdim, graded = quotient_dimension(quiver, relations, T.field, weights)
    rad = radical_basis(T)
    radset = set(rad.basis)
    one = T.field.one
    checks: Dict[str, bool] = {}
    checks["images_in_radical"] = all(v and all(k in radset for k in v) for v in images)
    checks["images_in_corners"] = all(
        _corner(T, v, quiver.source(a), quiver.target(a)) == dict(v) for a, v in enumerate(images)
    )
    J = [{r: one} for r in rad.basis]
    J2 = [T.mul(x, y) for x in J for y in J]
    base = rank_of_rows(T.field, J2)
    checks["independent_mod_J2"] = rank_of_rows(T.field, J2 + [dict(v) for v in images]) - base == len(images)
    s = quiver.vertex_count
    qcounts = [[0] * s for _ in range(s)]
    for src, tgt in quiver.arrows:
        qcounts[src][tgt] += 1
    checks["arrow_counts_match"] = qcounts == gabriel_quiver(T)
    checks["relations_vanish"] = all(not evaluate_relation(T, images, rel) for rel in relations)
    checks["images_generate"] = generated_dimension(T, images) == T.dim
    checks["dimension_match"] = qdim == T.dim
    return PresentationResult(all(checks.values()), checks, qdim, T.dim, graded, _describe(T, images))


def _describe(T: ExtensionAlgebra, images: Sequence[Mapping[int, Scalar]]) -> List[Dict[str, str]]:
    out = []
    for v in images:
        out.append({T.label(k): str(c) for k, c in sorted(v.items())})
    return out


@dataclass
class ImageSearch:
    images: List[SparseVec]
    unknown_labels: List[str]
    scalars: List[Scalar]
    solution_dim: int
    attempts: int


def search_arrow_images(
    T: ExtensionAlgebra,
    quiver: Quiver,
    relations: Sequence[Relation],
    a_parts: Sequence[Optional[Sequence[int]]],
    weights: Optional[Sequence[int]] = None,
    seed: int = 0,
    tries: int = 32,
) -> Optional[Tuple[ImageSearch, PresentationResult]]:
    """Find images ``(a_part, x)`` with x in ``e_src D e_tgt`` that present T.

    ``a_parts[k]`` is the arrow word of the prescribed A-part (or None for
    a zero A-part).  The affine solution set of the relation equations is
    computed exactly; candidates are tried in a fixed order (particular
    solution plus the sum of the kernel basis, the particular solution,
    then seeded random combinations).
    """
    A = T.A
    f = T.field
    d = A.dim
    unknowns: List[Tuple[int, int]] = []  # (arrow, dual index)
    for a in range(quiver.arrow_count):
        for p in A.dual_corner(quiver.source(a), quiver.target(a)):
            unknowns.append((a, p))
    base: List[SparseVec] = []
    for a, word in enumerate(a_parts):
        base.append({A.path_index(word): f.one} if word else {})

    def images_for(z: Sequence[Scalar]) -> List[SparseVec]:
        imgs = [dict(b) for b in base]
        for (a, p), c in zip(unknowns, z):
            if c:
                axpy(f, imgs[a], c, {d + p: 1})
        return imgs

    # relation values are affine in z: value(z) = value(0) + sum_k z_k * col_k
    zero = [f.zero] * len(unknowns)
    const: SparseVec = {}
    cols: List[SparseVec] = [dict() for _ in unknowns]
    rows_offset = 0
    for rel in relations:
        base_val = evaluate_relation(T, images_for(zero), rel)
        for k, c in base_val.items():
            const[rows_offset + k] = c
        for u in range(len(unknowns)):
            z = list(zero)
            z[u] = f.one
            val = evaluate_relation(T, images_for(z), rel)
            diff = dict(val)
            axpy(f, diff, f.neg(f.one), base_val)
            for k, c in diff.items():
                cols[u][rows_offset + k] = c
        rows_offset += T.dim
    m = Matrix.from_columns(f, rows_offset, cols)
    rhs = [f.neg(const.get(r, f.zero)) for r in range(rows_offset)]
    x0 = solve(m, rhs) if unknowns else []
    if x0 is None:
        return None
    kernel = kernel_basis(m) if unknowns else []
    candidates: List[List[Scalar]] = []
    summed = list(x0)
    for vec in kernel:
        summed = [f.add(a, b) for a, b in zip(summed, vec)]
    candidates.append(summed)
    candidates.append(list(x0))
    rng = random.Random(seed)
    pool = f.elements() if f.is_finite else list(range(-3, 4))
    for _ in range(tries):
        z = list(x0)
        for vec in kernel:
            c = f(rng.choice(pool))
            z = [f.add(a, f.mul(c, b)) for a, b in zip(z, vec)]
        candidates.append(z)
    labels = [f"{quiver_arrow_label(quiver, a)}:({A.label(p)})*" for a, p in unknowns]
    for attempt, z in enumerate(candidates, 1):
        imgs = images_for(z)
        res = verify_presentation(T, quiver, relations, imgs, weights)
        if res.ok:
            return ImageSearch(imgs, labels, list(z), len(kernel), attempt), res
    return None


def quiver_arrow_label(quiver: Quiver, a: int) -> str:
    return f"a{a + 1}"


# ---------------------------------------------------------------------------
# fixtures on three vertices


def _rel(*terms: Tuple[int, Sequence[int]]) -> Relation:
    return [(c, tuple(w)) for c, w in terms]


@dataclass
class Fixture:
    name: str
    T: ExtensionAlgebra
    quiver: Quiver
    relations: List[Relation]
    a_parts: List[Optional[Tuple[int, ...]]]
    weights: List[int]
    arrow_names: List[str]

    def search(self, seed: int = 0):
        return search_arrow_images(self.T, self.quiver, self.relations, self.a_parts, self.weights, seed)


def _names(s: int) -> List[str]:
    return [f"x{i + 1}" for i in range(s)] + [f"x'{i + 1}" for i in range(s)]


def fixture_n4(characteristic: int = 0, trivial: bool = False) -> Fixture:
    """s=3, n=4: loops x'_i at every vertex.

    Relations: x'_i x_i - x_i x'_{i+1}, x_i x_{i+1} x_{i+2} x_{i+3} - x'_i x_i
    (dropped for the trivial extension, where the loop relation is
    x_i x_{i+1} x_{i+2} x_{i+3}) and x'_i^2.  Weights x = 1, x' = 3.
    """
    s, n = 3, 4
    A = TruncatedAlgebra.cyclic(s, n, characteristic)
    alpha = Cocycle.zero(A) if trivial else cocycle_from_coefficients(A, 6, [1])
    T = build_extension(A, alpha)
    arrows = [(i, (i + 1) % s) for i in range(s)] + [(i, i) for i in range(s)]
    Q = Quiver(s, tuple(arrows))
    x = lambda i: i % s  # noqa: E731
    xp = lambda i: s + i % s  # noqa: E731
    rels: List[Relation] = []
    for i in range(s):
        rels.append(_rel((1, (xp(i), x(i))), (-1, (x(i), xp(i + 1)))))
        if trivial:
            rels.append(_rel((1, (x(i), x(i + 1), x(i + 2), x(i + 3)))))
        else:
            rels.append(_rel((1, (x(i), x(i + 1), x(i + 2), x(i + 3))), (-1, (xp(i), x(i)))))
        rels.append(_rel((1, (xp(i), xp(i)))))
    a_parts: List[Optional[Tuple[int, ...]]] = [(i,) for i in range(s)] + [None] * s
    return Fixture("n4-trivial" if trivial else "n4", T, Q, rels, a_parts, [1] * s + [3] * s, _names(s))


def fixture_n3(k1, k2, characteristic: int = 0) -> Fixture:
    """s=3, n=3 with beta = k1 Theta(v1*) + k2 Theta(v2*); x'_i runs i -> i+1.

    Relations: x_i x'_{i+1} - x'_i x_{i+1}, x'_i x'_{i+1},
    x1x2x3 - k1 x1x2x'3, x2x3x1 - k2 x2x3x'1, x3x1x2.
    """
    s, n = 3, 3
    A = TruncatedAlgebra.cyclic(s, n, characteristic)
    T = build_extension(A, cocycle_from_coefficients(A, 3, [k1, k2]))
    arrows = [(i, (i + 1) % s) for i in range(s)] * 2
    Q = Quiver(s, tuple(arrows))
    x = lambda i: i % s  # noqa: E731
    xp = lambda i: s + i % s  # noqa: E731
    f = A.field
    rels: List[Relation] = []
    for i in range(s):
        rels.append(_rel((1, (x(i), xp(i + 1))), (-1, (xp(i), x(i + 1)))))
        rels.append(_rel((1, (xp(i), xp(i + 1)))))
    rels.append(_rel((1, (x(0), x(1), x(2))), (f.neg(f(k1)), (x(0), x(1), xp(2)))))
    rels.append(_rel((1, (x(1), x(2), x(0))), (f.neg(f(k2)), (x(1), x(2), xp(0)))))
    rels.append(_rel((1, (x(2), x(0), x(1)))))
    a_parts: List[Optional[Tuple[int, ...]]] = [(i,) for i in range(s)] + [None] * s
    return Fixture(f"n3-({k1},{k2})", T, Q, rels, a_parts, [1] * (2 * s), _names(s))


def fixture_n2_trivial(characteristic: int = 0) -> Fixture:
    """T_0 for s=3, n=2 with reversed arrows x'_i : i+1 -> i.

    Relations: x_i x'_i - x'_{i+2} x_{i+2}, x_i x_{i+1}, x'_i x'_{i-1}.
    """
    s = 3
    A = TruncatedAlgebra.cyclic(s, 2, characteristic)
    T = trivial_extension(A)
    arrows = [(i, (i + 1) % s) for i in range(s)] + [((i + 1) % s, i) for i in range(s)]
    Q = Quiver(s, tuple(arrows))
    x = lambda i: i % s  # noqa: E731
    xp = lambda i: s + i % s  # noqa: E731
    rels: List[Relation] = []
    for i in range(s):
        rels.append(_rel((1, (x(i), xp(i))), (-1, (xp(i + 2), x(i + 2)))))
        rels.append(_rel((1, (x(i), x(i + 1)))))
        rels.append(_rel((1, (xp(i), xp(i - 1)))))
    a_parts: List[Optional[Tuple[int, ...]]] = [(i,) for i in range(s)] + [None] * s
    return Fixture("n2-trivial", T, Q, rels, a_parts, [1] * (2 * s), _names(s))


def fixture_n2_gamma(characteristic: int = 0) -> Fixture:
    """T_gamma for s=3, n=2 against K Delta / R^4."""
    s = 3
    A = TruncatedAlgebra.cyclic(s, 2, characteristic)
    T = build_extension(A, cocycle_from_coefficients(A, 3, [1]))
    Q = Quiver(s, tuple((i, (i + 1) % s) for i in range(s)))
    rels = [_rel((1, tuple((i + k) % s for k in range(4)))) for i in range(s)]
    a_parts: List[Optional[Tuple[int, ...]]] = [(i,) for i in range(s)]
    return Fixture("n2-gamma", T, Q, rels, a_parts, [1] * s, [f"x{i + 1}" for i in range(s)])


__all__ = [
    "Fixture",
    "ImageSearch",
    "PresentationResult",
    "evaluate_path",
    "evaluate_relation",
    "fixture_n2_gamma",
    "fixture_n2_trivial",
    "fixture_n3",
    "fixture_n4",
    "generated_dimension",
    "quotient_dimension",
    "search_arrow_images",
    "verify_presentation",
]
