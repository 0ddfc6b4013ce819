"""Exact linear algebra over prime fields and the rationals.

Scalars are plain Python values: residues ``0 <= x < p`` for a prime field and
``fractions.Fraction`` for characteristic zero.  Matrices are stored as sparse
rows (``dict`` column -> nonzero scalar) and are never mutated after
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
SparseVec = Dict[int, Scalar]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """The ground field: ``Field(0)`` is Q, ``Field(p)`` is F_p."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int):
        characteristic = int(characteristic)
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic

    def __repr__(self) -> str:
        return "Field(Q)" if self.characteristic == 0 else f"Field(F_{self.characteristic})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, value: Union[int, Fraction, str]) -> Scalar:
        """Coerce ``value`` to its canonical representative."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value.strip())
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"{value} has no image in F_{p}")
            return value.numerator * pow(den, -1, p) % p
        return int(value) % p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a: Scalar) -> Scalar:
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a: Scalar) -> Scalar:
        p = self.characteristic
        if p:
            if a % p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, p - 2, p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def elements(self) -> List[Scalar]:
        if not self.characteristic:
            raise ValueError("Q is infinite")
        return list(range(self.characteristic))

    def format(self, a: Scalar) -> str:
        return str(a)


# ---------------------------------------------------------------------------
# sparse vector helpers


def axpy(field: Field, target: SparseVec, coeff: Scalar, source: Mapping[int, Scalar]) -> None:
    """``target += coeff * source`` in place, dropping zeros."""
    p = field.characteristic
    if p:
        for k, v in source.items():
            nv = (target.get(k, 0) + coeff * v) % p
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)
    else:
        for k, v in source.items():
            nv = target.get(k, 0) + coeff * v
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)


def _clean(field: Field, vec: Mapping[int, Scalar]) -> SparseVec:
    out: SparseVec = {}
    for k, v in vec.items():
        v = field(v)
        if v:
            out[k] = v
    return out


class _Echelon:
    """Incremental row echelon form; pivot rows are normalised to a leading 1.

    Pivoting takes the first nonzero entry in column order, so the result only
    depends on the order in which rows are inserted.
    """

    def __init__(self, field: Field):
        self.field = field
        self.pivots: Dict[int, SparseVec] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def _leading_reduce(self, row: Mapping[int, Scalar]) -> SparseVec:
        """Reduce only until the leading entry is a non-pivot column."""
        field = self.field
        p = field.characteristic
        r = dict(row)
        while r:
            c = min(r)
            piv = self.pivots.get(c)
            if piv is None:
                return r
            f = r[c]
            if p:
                for k, v in piv.items():
                    nv = (r.get(k, 0) - f * v) % p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            else:
                for k, v in piv.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        return r

    def add(self, row: Mapping[int, Scalar]) -> bool:
        """Insert a row; return True when it raised the rank."""
        r = self._leading_reduce(row)
        if not r:
            return False
        c = min(r)
        inv = self.field.inv(r[c])
        if inv != 1:
            p = self.field.characteristic
            if p:
                r = {k: v * inv % p for k, v in r.items()}
            else:
                r = {k: v * inv for k, v in r.items()}
        self.pivots[c] = r
        return True

    def contains(self, row: Mapping[int, Scalar]) -> bool:
        return not self._leading_reduce(row)

    def rref(self) -> Dict[int, SparseVec]:
        """Fully reduced rows keyed by pivot column."""
        field = self.field
        cols = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in cols}
        for c in reversed(cols):
            pr = rows[c]
            for c2 in cols:
                if c2 >= c:
                    break
                r2 = rows[c2]
                f = r2.get(c)
                if f:
                    axpy(field, r2, field.neg(f), pr)
        return rows


def _components(rows: Sequence[Mapping[int, Scalar]]) -> List[List[int]]:
    """Group row indices into blocks that share no column."""
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for row in rows:
        cols = iter(row)
        first = next(cols, None)
        if first is None:
            continue
        parent.setdefault(first, first)
        ra = find(first)
        for c in cols:
            parent.setdefault(c, c)
            rb = find(c)
            if rb != ra:
                parent[rb] = ra
    groups: Dict[int, List[int]] = {}
    for i, row in enumerate(rows):
        if row:
            groups.setdefault(find(next(iter(row))), []).append(i)
    return list(groups.values())


@dataclass(frozen=True, eq=False)
class Matrix:
    field: Field
    nrows: int
    ncols: int
    rows: Tuple[SparseVec, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.nrows:
            raise ValueError("row count does not match nrows")
        for r in self.rows:
            for c in r:
                if not 0 <= c < self.ncols:
                    raise ValueError(f"column {c} out of range for {self.ncols} columns")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_dense(cls, field: Field, data: Sequence[Sequence[Union[int, Fraction, str]]], ncols: Optional[int] = None) -> "Matrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for line in data:
            if len(line) != ncols:
                raise ValueError("ragged matrix")
            rows.append(_clean(field, dict(enumerate(line))))
        return cls(field, len(rows), ncols, tuple(rows))

    @classmethod
    def from_entries(cls, field: Field, nrows: int, ncols: int, entries: Mapping[Tuple[int, int], Union[int, Fraction]]) -> "Matrix":
        rows: List[SparseVec] = [dict() for _ in range(nrows)]
        for (i, j), v in entries.items():
            v = field(v)
            if v:
                rows[i][j] = v
        return cls(field, nrows, ncols, tuple(rows))

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[Mapping[int, Scalar]]) -> "Matrix":
        rows: List[SparseVec] = [dict() for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                v = field(v)
                if v:
                    rows[i][j] = v
        return cls(field, nrows, len(columns), tuple(rows))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, tuple({} for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, tuple({i: field.one} for i in range(n)))

    # -- views ------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i].get(j, self.field.zero)

    def to_dense(self) -> List[List[Scalar]]:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    def columns(self) -> List[SparseVec]:
        cols: List[SparseVec] = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(self.columns()))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def apply(self, vec: Sequence[Scalar]) -> List[Scalar]:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        f = self.field
        out = []
        for r in self.rows:
            acc = f.zero
            for j, v in r.items():
                acc = f.add(acc, f.mul(v, vec[j]))
            out.append(acc)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        f = self.field
        rows = []
        for r in self.rows:
            acc: SparseVec = {}
            for k, v in r.items():
                axpy(f, acc, v, other.rows[k])
            rows.append(acc)
        return Matrix(f, self.nrows, other.ncols, tuple(rows))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and all(a == b for a, b in zip(self.rows, other.rows))
        )

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, nnz={sum(map(len, self.rows))})"


# ---------------------------------------------------------------------------
# public kernel


def rank_of_rows(field: Field, rows: Iterable[Mapping[int, Scalar]]) -> int:
    rows = [r for r in rows if r]
    total = 0
    for block in _components(rows):
        ech = _Echelon(field)
        for i in block:
            ech.add(rows[i])
        total += len(ech)
    return total


def rank(m: Matrix) -> int:
    return rank_of_rows(m.field, m.rows)


def row_space_basis(field: Field, rows: Iterable[Mapping[int, Scalar]]) -> List[SparseVec]:
    """Reduced echelon basis of the span, ordered by pivot column."""
    ech = _Echelon(field)
    for r in rows:
        ech.add(r)
    red = ech.rref()
    return [red[c] for c in sorted(red)]


def kernel_basis(m: Matrix) -> List[List[Scalar]]:
    """Basis of the right null space, one vector per free column (ascending)."""
    f = m.field
    ech = _Echelon(f)
    for r in m.rows:
        ech.add(r)
    red = ech.rref()
    basis = []
    for free in range(m.ncols):
        if free in red:
            continue
        v = [f.zero] * m.ncols
        v[free] = f.one
        for c, row in red.items():
            coeff = row.get(free)
            if coeff:
                v[c] = f.neg(coeff)
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence[Scalar]) -> Optional[List[Scalar]]:
    """Some ``x`` with ``m x = b`` (free variables set to zero), or None."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side length does not match row count")
    f = m.field
    x = [f.zero] * m.ncols
    aug_col = m.ncols
    rows = []
    for r, bi in zip(m.rows, b):
        bi = f(bi)
        if bi:
            rr = dict(r)
            rr[aug_col] = bi
            rows.append(rr)
        elif r:
            rows.append(r)
    # blocks whose right-hand side vanishes are solved by zero
    for block in _components(rows):
        if not any(aug_col in rows[i] for i in block):
            continue
        ech = _Echelon(f)
        for i in block:
            ech.add(rows[i])
        if aug_col in ech.pivots:
            return None
        for c, row in ech.rref().items():
            x[c] = row.get(aug_col, f.zero)
    return x


def in_span(field: Field, basis_rows: Iterable[Mapping[int, Scalar]], vec: Mapping[int, Scalar]) -> bool:
    ech = _Echelon(field)
    for r in basis_rows:
        ech.add(r)
    return ech.contains(vec)


def mult_kernel_dim(m: int, characteristic: int) -> int:
    """Dimension of the kernel of multiplication by the integer ``m`` on K."""
    if characteristic == 0:
        return 1 if m == 0 else 0
    return 1 if m % characteristic == 0 else 0


__all__ = [
    "Field",
    "Matrix",
    "Scalar",
    "axpy",
    "in_span",
    "kernel_basis",
    "mult_kernel_dim",
    "rank",
    "rank_of_rows",
    "row_space_basis",
    "solve",
]
