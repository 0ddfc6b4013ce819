from __future__ import annotations

import pytest

from hochex.algebra import TruncatedAlgebra
from hochex.bar import (
    bar_boundary_matrix,
    bar_coboundary_matrix,
    bar_h2_dim,
    bar_hh2_dim,
    class_rank,
    cochain_vector,
    oracle_report,
)
from hochex.cocycle import theta
from hochex.homology import dual_hh2_basis, hh2_total


def test_matrix_shapes() -> None:
    A = TruncatedAlgebra.cyclic(3, 2)
    m = bar_coboundary_matrix(A, 3)
    assert (m.nrows, m.ncols) == (1296, 216)
    with pytest.raises(ValueError):
        bar_coboundary_matrix(A, 4)


@pytest.mark.parametrize("s,n,ch", [(1, 2, 0), (1, 3, 2), (2, 2, 3), (3, 2, 0)])
def test_complexes(s: int, n: int, ch: int) -> None:
    A = TruncatedAlgebra.cyclic(s, n, ch)
    assert (bar_coboundary_matrix(A, 3) @ bar_coboundary_matrix(A, 2)).is_zero()
    assert (bar_boundary_matrix(A, 2) @ bar_boundary_matrix(A, 3)).is_zero()


def test_known_values() -> None:
    assert bar_h2_dim(TruncatedAlgebra.cyclic(1, 2, 0)) == 1
    assert bar_h2_dim(TruncatedAlgebra.cyclic(1, 2, 2)) == 2
    assert bar_hh2_dim(TruncatedAlgebra.cyclic(1, 2, 2)) == 2
    assert bar_h2_dim(TruncatedAlgebra.cyclic(3, 2)) == 1
    assert bar_hh2_dim(TruncatedAlgebra.cyclic(3, 2)) == 1
    assert bar_h2_dim(TruncatedAlgebra.cyclic(3, 3, 0)) == 2


def test_guard() -> None:
    with pytest.raises(ValueError):
        oracle_report(TruncatedAlgebra.cyclic(4, 4))


@pytest.mark.parametrize("s,n", [(1, 2), (1, 3), (2, 2), (3, 2)])
@pytest.mark.parametrize("ch", [0, 2, 3])
def test_oracle_agrees(s: int, n: int, ch: int) -> None:
    A = TruncatedAlgebra.cyclic(s, n, ch)
    r = oracle_report(A)
    assert r.agree and r.hh2_skoldberg_sum == hh2_total(A)
    assert r.to_json_obj()["agree"] is True


@pytest.mark.parametrize("s,n,ch", [(1, 2, 2), (1, 3, 3), (2, 2, 2), (3, 3, 0), (3, 2, 3)])
def test_theta_classes_span_h2(s: int, n: int, ch: int) -> None:
    A = TruncatedAlgebra.cyclic(s, n, ch)
    alphas = [theta(A, u) for q in range(n, 2 * n) for u in dual_hh2_basis(A, q)]
    v3 = bar_coboundary_matrix(A, 3)
    for a in alphas:
        vec = [A.field.zero] * v3.ncols
        for k, c in cochain_vector(A, a).items():
            vec[k] = c
        assert all(x == 0 for x in v3.apply(vec))
    assert class_rank(A, alphas) == len(alphas) == bar_h2_dim(A)
