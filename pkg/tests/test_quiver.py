from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from hochex.quiver import (
    Path,
    Quiver,
    basic_orbit_count,
    cycles,
    cyclic_quiver,
    is_basic,
    orbit_count,
    orbit_decomposition,
    paths_of_length,
    rotate,
)


def test_cyclic_quiver_shapes() -> None:
    q1 = cyclic_quiver(1)
    assert q1.vertex_count == 1 and q1.arrows == ((0, 0),)
    assert cyclic_quiver(2).arrows == ((0, 1), (1, 0))
    assert cyclic_quiver(3).arrows == ((0, 1), (1, 2), (2, 0))
    with pytest.raises(ValueError):
        cyclic_quiver(0)


def test_paths_of_length_triangle() -> None:
    q = cyclic_quiver(3)
    assert [p.arrows for p in paths_of_length(q, 0)] == [(), (), ()]
    assert sorted(p.arrows for p in paths_of_length(q, 2)) == [(0, 1), (1, 2), (2, 0)]


def test_cycles_triangle() -> None:
    q = cyclic_quiver(3)
    assert sorted(c.arrows for c in cycles(q, 3)) == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    assert cycles(q, 4) == []
    assert len(cycles(cyclic_quiver(1), 7)) == 1


def test_orbits() -> None:
    q = cyclic_quiver(3)
    orbs = orbit_decomposition(q, cycles(q, 6))
    assert len(orbs) == 1 and orbs[0].size == 3
    assert len(orbit_decomposition(q, cycles(q, 3))) == 1
    loop = cyclic_quiver(1)
    orbs = orbit_decomposition(loop, cycles(loop, 2))
    assert len(orbs) == 1 and orbs[0].size == 1


def test_basic_cycles() -> None:
    loop = cyclic_quiver(1)
    assert is_basic(loop.path((0,)))
    assert not is_basic(loop.path((0, 0)))
    assert is_basic(cyclic_quiver(3).path((0, 1, 2)))
    assert basic_orbit_count(cyclic_quiver(3), 6) == 0
    assert basic_orbit_count(cyclic_quiver(3), 3) == 1


def test_path_composition_checked() -> None:
    q = cyclic_quiver(3)
    with pytest.raises(ValueError):
        q.path((0, 2))
    a = q.path((0,))
    assert a.concat(q.path((1,))).arrows == (0, 1)
    assert a.concat(q.path((2,))) is None
    assert Path.trivial(1).concat(q.path((1,))).arrows == (1,)


def test_quiver_json_roundtrip() -> None:
    q = Quiver(2, ((0, 1), (1, 1), (1, 0)))
    assert Quiver.from_json(q.to_json()) == q


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 12))
def test_cycle_and_orbit_counts(s: int, L: int) -> None:
    q = cyclic_quiver(s)
    cs = cycles(q, L)
    assert len(cs) == (s if L % s == 0 else 0)
    assert orbit_count(q, L) == (1 if L % s == 0 else 0)
    orbs = orbit_decomposition(q, cs)
    assert sum(o.size for o in orbs) == len(cs)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 10), st.data())
def test_rotation_order(s: int, k: int, data) -> None:
    q = cyclic_quiver(s)
    L = s * k
    c = data.draw(st.sampled_from(cycles(q, L)))
    r = c
    for _ in range(L):
        r = rotate(q, r)
    assert r == c


def test_two_loop_quiver_orbits() -> None:
    # two loops at one vertex: necklaces of length 4 over 2 letters
    q = Quiver(1, ((0, 0), (0, 0)))
    assert len(cycles(q, 4)) == 16
    assert orbit_count(q, 4) == 6
    assert basic_orbit_count(q, 4) == 3
