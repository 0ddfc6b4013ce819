from __future__ import annotations

import pytest

from hochex.algebra import TruncatedAlgebra
from hochex.cocycle import cocycle_from_coefficients
from hochex.extension import build_extension
from hochex.linalg import Field
from hochex.presentation import (
    fixture_n2_gamma,
    fixture_n2_trivial,
    fixture_n3,
    fixture_n4,
    quotient_dimension,
    verify_presentation,
)
from hochex.quiver import Quiver, cyclic_quiver


def test_quotient_of_truncated_cycle() -> None:
    Q = cyclic_quiver(3)
    rels = [[(1, tuple((i + k) % 3 for k in range(4)))] for i in range(3)]
    dim, graded = quotient_dimension(Q, rels, Field(0))
    assert dim == 12 and graded == [3, 3, 3, 3]


def test_quotient_commutative_polynomials() -> None:
    # K<x, y>/(xy - yx, x^2, y^2) has basis 1, x, y, xy
    Q = Quiver(1, ((0, 0), (0, 0)))
    rels = [[(1, (0, 1)), (-1, (1, 0))], [(1, (0, 0))], [(1, (1, 1))]]
    assert quotient_dimension(Q, rels, Field(0)) == (4, [1, 2, 1])


def test_quotient_weighted() -> None:
    # x of weight 1, y of weight 2: K<x, y>/(xy, yx, x^3, y^2) has basis 1, x, x^2, y
    Q = Quiver(1, ((0, 0), (0, 0)))
    rels = [[(1, (0, 1))], [(1, (1, 0))], [(1, (0, 0, 0))], [(1, (1, 1))]]
    assert quotient_dimension(Q, rels, Field(0), weights=[1, 2]) == (4, [1, 1, 2])
    with pytest.raises(ValueError):
        quotient_dimension(Q, [[(1, (0, 0)), (1, (0, 1))]], Field(0), weights=[1, 2])


def test_quotient_rejects_bad_relations() -> None:
    Q = cyclic_quiver(1)
    with pytest.raises(ValueError):
        quotient_dimension(Q, [[(1, (0, 0)), (1, (0, 0, 0))]], Field(0))
    with pytest.raises(ValueError):
        quotient_dimension(Q, [], Field(0), cap=8)
    with pytest.raises(ValueError):
        quotient_dimension(Q, [[(1, (0,))]], Field(0))


@pytest.mark.parametrize("ch", [0, 3])
def test_fixture_n4(ch: int) -> None:
    for fx in (fixture_n4(ch), fixture_n4(ch, trivial=True)):
        search, res = fx.search()
        assert res.ok and res.quotient_dim == 24 == res.dim_T
        assert res.graded_dims == [3, 3, 3, 6, 3, 3, 3]


@pytest.mark.parametrize("k", [(1, 0), (0, 1), (1, 1)])
def test_fixture_n3(k) -> None:
    search, res = fixture_n3(*k).search()
    assert res.ok and res.quotient_dim == 18


def test_fixtures_n2() -> None:
    for fx in (fixture_n2_trivial(), fixture_n2_gamma(), fixture_n2_gamma(2)):
        found = fx.search()
        assert found is not None
        assert found[1].quotient_dim == 12


def test_search_is_reproducible() -> None:
    a = fixture_n3(1, 1).search(seed=7)
    b = fixture_n3(1, 1).search(seed=7)
    assert a[0].scalars == b[0].scalars and a[0].images == b[0].images


def test_wrong_presentation_rejected() -> None:
    # T_gamma is not K Delta / R^3: dimensions differ
    A = TruncatedAlgebra.cyclic(3, 2)
    T = build_extension(A, cocycle_from_coefficients(A, 3, [1]))
    Q = cyclic_quiver(3)
    rels = [[(1, tuple((i + k) % 3 for k in range(3)))] for i in range(3)]
    one = A.field.one
    images = [{A.path_index((i,)): one} for i in range(3)]
    res = verify_presentation(T, Q, rels, images)
    assert not res.ok
    assert "dimension_match" in res.failed()


def test_wrong_images_rejected() -> None:
    fx = fixture_n2_gamma()
    one = fx.T.field.one
    d = fx.T.A.dim
    images = [{d + fx.T.A.path_index((i,)): one} for i in range(3)]
    res = verify_presentation(fx.T, fx.quiver, fx.relations, images)
    assert not res.ok
