"""End-to-end acceptance runs; each prints one PASS/FAIL line with its wall time."""

from __future__ import annotations

import sys
import time
from typing import Callable, List, Tuple

import pytest

from hochex.algebra import TruncatedAlgebra
from hochex.bar import bar_h2_dim, bar_hh2_dim
from hochex.cocycle import cocycle_check_brute, is_coboundary, theta, vanishes_on_idempotents
from hochex.extension import (
    Verdict,
    build_extension,
    build_mixed_cocycle,
    coefficient_patterns,
    corollary46_predicate,
    gabriel_quiver,
    gabriel_quiver_direct,
    gabriel_quiver_formula,
    mixed_verdict,
    radical_basis,
    sandwich_holds,
    theorem44_verdict,
    trivial_extension,
    trivial_extension_counts,
)
from hochex.homology import dual_hh2_basis, hh2_dimension, hh2_formula, hh2_total
from hochex.presentation import fixture_n2_gamma, fixture_n3, fixture_n4
from hochex.symmetry import SymmetryKind, symmetry_verdict

CHARS = (0, 2, 3, 5)
Outcome = Tuple[bool, str]


def _run(capsys, number: int, limit: float, body: Callable[[], Outcome]) -> None:
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    line = f"criterion {number}: {status}  {detail}  ({elapsed:.2f}s, limit {limit:.0f}s)"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line
    assert in_time, line


def _sweep_1() -> Outcome:
    bad: List[tuple] = []
    total = 0
    for s in range(1, 5):
        for n in range(2, 7):
            for ch in CHARS:
                A = TruncatedAlgebra.cyclic(s, n, ch)
                for q in range(1, 2 * n + 1):
                    total += 1
                    if hh2_dimension(A, q) != hh2_formula(A.quiver, n, q, ch):
                        bad.append((s, n, ch, q))
    return not bad, f"{total - len(bad)}/{total} (s,n,char,q) match" + (f", mismatches {bad[:5]}" if bad else "")


def test_criterion_1_formula(capsys) -> None:
    _run(capsys, 1, 30, _sweep_1)


def _sweep_2() -> Outcome:
    bad = []
    total = 0
    for s, n in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]:
        for ch in (0, 2, 3):
            A = TruncatedAlgebra.cyclic(s, n, ch)
            total += 1
            vals = (bar_h2_dim(A), bar_hh2_dim(A), hh2_total(A))
            if len(set(vals)) != 1:
                bad.append((s, n, ch, vals))
    return not bad, f"{total - len(bad)}/{total} algebras agree" + (f", disagreements {bad}" if bad else "")


def test_criterion_2_oracle(capsys) -> None:
    _run(capsys, 2, 180, _sweep_2)


def _sweep_3() -> Outcome:
    bad = []
    total = 0
    for s in range(1, 5):
        for n in range(2, 7):
            for ch in CHARS:
                A = TruncatedAlgebra.cyclic(s, n, ch)
                for q in range(n, 2 * n):
                    for k, u in enumerate(dual_hh2_basis(A, q)):
                        total += 1
                        alpha = theta(A, u)
                        if not (cocycle_check_brute(A, alpha) and vanishes_on_idempotents(A, alpha)):
                            bad.append((s, n, ch, q, k))
    return bool(total) and not bad, f"{total - len(bad)}/{total} theta outputs are cocycles" + (f", failures {bad[:5]}" if bad else "")


def test_criterion_3_cocycles(capsys) -> None:
    _run(capsys, 3, 120, _sweep_3)


def _sweep_4() -> Outcome:
    bad = []
    total = 0
    for s in range(1, 5):
        for n in range(2, 6):
            for ch in CHARS:
                A = TruncatedAlgebra.cyclic(s, n, ch)
                for q in range(n, 2 * n):
                    if q % s:
                        continue
                    for pat in coefficient_patterns(len(dual_hh2_basis(A, q))):
                        total += 1
                        r = theorem44_verdict(s, n, q, ch, pat, A)
                        low = q <= 2 * n - 2
                        expected = Verdict.TRIVIAL_EXT if low else Verdict.BASE
                        if r.verdict is not expected or r.lemma42 != low or r.zero_class:
                            bad.append((s, n, ch, q, pat, r.verdict.value, r.lemma42))
    return bool(total) and not bad, f"{total - len(bad)}/{total} verdicts as predicted" + (f", failures {bad[:5]}" if bad else "")


def test_criterion_4_verdicts(capsys) -> None:
    _run(capsys, 4, 300, _sweep_4)


def _sweep_5() -> Outcome:
    failures = []
    # n = 4
    A4 = TruncatedAlgebra.cyclic(3, 4)
    nonzero = {q: hh2_dimension(A4, q) for q in range(1, 9) if hh2_dimension(A4, q)}
    if nonzero != {6: 1}:
        failures.append(f"n=4 HH_2 {nonzero}")
    fx = fixture_n4()
    if gabriel_quiver(fx.T) != trivial_extension_counts(A4):
        failures.append("n=4 quiver")
    found = fx.search()
    if found is None or found[1].quotient_dim != 24:
        failures.append("n=4 presentation")
    # n = 3
    A3 = TruncatedAlgebra.cyclic(3, 3)
    if hh2_dimension(A3, 3) != 2:
        failures.append("n=3 HH_2,3")
    for k in ((1, 0), (0, 1), (1, 1)):
        fx = fixture_n3(*k)
        if gabriel_quiver(fx.T) != trivial_extension_counts(A3):
            failures.append(f"n=3 quiver {k}")
        found = fx.search()
        if found is None or found[1].quotient_dim != 18:
            failures.append(f"n=3 presentation {k}")
    b1, b2 = (theta(A3, u) for u in dual_hh2_basis(A3, 3))
    if is_coboundary(A3, b1 - b2) is not None:
        failures.append("beta1 - beta2 is a coboundary")
    # n = 2
    fx = fixture_n2_gamma()
    A2 = fx.T.A
    if gabriel_quiver(fx.T) != A2.arrow_counts():
        failures.append("n=2 quiver")
    found = fx.search()
    if found is None or found[1].quotient_dim != 12:
        failures.append("n=2 presentation")
    if symmetry_verdict(fx.T).kind is not SymmetryKind.SYMMETRIC:
        failures.append("n=2 symmetry")
    if not corollary46_predicate(3, 2):
        failures.append("n=2 predicate")
    return not failures, "fixtures n=4, n=3 (x3), n=2 verified" if not failures else f"failures {failures}"


def test_criterion_5_fixtures(capsys) -> None:
    _run(capsys, 5, 120, _sweep_5)


def _sweep_6() -> Outcome:
    bad = []
    total = 0
    for s, n in [(1, 2), (1, 3), (3, 2)]:
        for ch in (0, 2, 3):
            A = TruncatedAlgebra.cyclic(s, n, ch)
            top = 2 * n - 1
            sizes = {q: len(dual_hh2_basis(A, q)) for q in range(n, 2 * n) if q % s == 0}
            low = {q: [1] * k for q, k in sizes.items() if q != top and k}
            for top_coeff, expected in ((0, Verdict.TRIVIAL_EXT), (1, Verdict.BASE)):
                total += 1
                per_degree = {**low, top: [top_coeff] * sizes[top]}
                r = mixed_verdict(s, n, ch, per_degree, A)
                if r.verdict is not expected or r.top_class_nonzero != bool(top_coeff):
                    bad.append((s, n, ch, top_coeff, r.verdict.value))
    return not bad, f"{total - len(bad)}/{total} mixed cocycles classified" + (f", failures {bad}" if bad else "")


def test_criterion_6_mixed(capsys) -> None:
    _run(capsys, 6, 60, _sweep_6)


def _sweep_7() -> Outcome:
    bad = []
    total = 0
    for s in range(1, 5):
        for n in range(2, 6):
            for ch in CHARS:
                A = TruncatedAlgebra.cyclic(s, n, ch)
                algebras = [trivial_extension(A)]
                for q in range(n, 2 * n):
                    for u in dual_hh2_basis(A, q):
                        algebras.append(build_extension(A, theta(A, u), verify=False))
                    if q % s == 0 and len(dual_hh2_basis(A, q)) > 1:
                        alpha, _ = build_mixed_cocycle(A, {q: [1] * len(dual_hh2_basis(A, q))})
                        algebras.append(build_extension(A, alpha, verify=False))
                for T in algebras:
                    total += 1
                    direct = gabriel_quiver_direct(T)
                    checks = (
                        T.is_associative(),
                        sandwich_holds(A, direct),
                        direct == gabriel_quiver_formula(A, T.alpha),
                        T.dim == 2 * A.dim,
                        radical_basis(T).nilpotency_index <= 2 * n,
                    )
                    if not all(checks):
                        bad.append((s, n, ch, checks))
    return bool(total) and not bad, f"{total - len(bad)}/{total} extensions satisfy all invariants" + (f", failures {bad[:5]}" if bad else "")


def test_criterion_7_invariants(capsys) -> None:
    _run(capsys, 7, 120, _sweep_7)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
