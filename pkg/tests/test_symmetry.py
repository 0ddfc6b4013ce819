from __future__ import annotations

import pytest

from hochex.algebra import TruncatedAlgebra
from hochex.cocycle import cocycle_from_coefficients
from hochex.extension import build_extension, trivial_extension
from hochex.homology import dual_hh2_basis
from hochex.linalg import Field
from hochex.symmetry import (
    StructureConstants,
    SymmetryKind,
    check_form,
    form_space,
    symmetry_verdict,
)


def t_gamma(ch: int = 0):
    A = TruncatedAlgebra.cyclic(3, 2, ch)
    return build_extension(A, cocycle_from_coefficients(A, 3, [1]))


def test_ground_field() -> None:
    K = StructureConstants.ground_field(Field(0))
    space = form_space(K)
    assert space.dimension == 1
    v = symmetry_verdict(K)
    assert v.kind is SymmetryKind.SYMMETRIC and v.witness == [[1]]


@pytest.mark.parametrize("s,n", [(1, 2), (2, 3), (3, 2)])
def test_trivial_extension_has_forms(s: int, n: int) -> None:
    assert form_space(trivial_extension(TruncatedAlgebra.cyclic(s, n))).dimension >= 1


@pytest.mark.parametrize("ch", [0, 2, 3])
def test_gamma_symmetric(ch: int) -> None:
    T = t_gamma(ch)
    v = symmetry_verdict(T)
    assert v.kind is SymmetryKind.SYMMETRIC
    assert check_form(T, v.witness) == {"associative": True, "symmetric": True, "nondegenerate": True}


def test_trivial_extension_symmetric() -> None:
    T = trivial_extension(TruncatedAlgebra.cyclic(3, 3))
    assert symmetry_verdict(T).kind is SymmetryKind.SYMMETRIC


def test_base_algebra_not_symmetric() -> None:
    # every associative symmetric form on K Delta / R^2 shares a kernel vector
    A = TruncatedAlgebra.cyclic(3, 2)
    assert form_space(A).dimension == 3
    v = symmetry_verdict(A)
    assert v.kind is SymmetryKind.NOT_SYMMETRIC
    assert "kernel" in v.reason


def test_one_sided_unit_toy() -> None:
    f = Field(2)
    one = f.one
    toy = StructureConstants(f, 2, [{0: {0: one}, 1: {1: one}}, {}])
    assert symmetry_verdict(toy).kind is SymmetryKind.NOT_SYMMETRIC


def test_few_samples_fall_back_to_enumeration() -> None:
    T = trivial_extension(TruncatedAlgebra.cyclic(2, 2, 2))
    v = symmetry_verdict(T, seed=0, samples=1)
    assert v.kind is SymmetryKind.SYMMETRIC and v.reason == "exhaustive search"
    assert check_form(T, v.witness)["nondegenerate"]


def test_reproducible() -> None:
    T = t_gamma(5)
    a = symmetry_verdict(T, seed=11).to_json_obj()
    b = symmetry_verdict(T, seed=11).to_json_obj()
    assert a == b


def test_check_form_detects_bad_gram() -> None:
    T = t_gamma()
    zero = [[0] * T.dim for _ in range(T.dim)]
    assert check_form(T, zero)["nondegenerate"] is False


@pytest.mark.parametrize("s,n", [(1, 2), (1, 3), (1, 4), (3, 2), (3, 5)])
def test_top_degree_extensions_symmetric(s: int, n: int) -> None:
    A = TruncatedAlgebra.cyclic(s, n)
    q = 2 * n - 1
    k = len(dual_hh2_basis(A, q))
    T = build_extension(A, cocycle_from_coefficients(A, q, [1] * k))
    v = symmetry_verdict(T)
    assert v.kind is SymmetryKind.SYMMETRIC
    assert all(check_form(T, v.witness).values())
