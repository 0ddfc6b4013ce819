"""Command line front end.

    hochex homology --vertices 3 --truncation 4
    hochex extend   --vertices 3 --truncation 2 --degree 3 --coeffs 1
    hochex verify   --vertices 3 --truncation 2 --char 3
    hochex oracle   --vertices 3 --truncation 2

Exit status: 0 on success, 1 when a check fails, 2 on a usage error.
Set HOCHEX_THREADS to fan the verify sweep out over worker processes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import TruncatedAlgebra
from .bar import MAX_ORACLE_DIM, oracle_report
from .cocycle import cocycle_check, is_coboundary, theta, vanishes_on_idempotents
from .extension import (
    ConsistencyError,
    base_counts,
    Verdict,
    build_extension,
    build_mixed_cocycle,
    coefficient_patterns,
    corollary46_predicate,
    gabriel_quiver,
    mixed_verdict,
    radical_basis,
    sandwich_holds,
)
from .homology import dual_hh2_basis, homology_report
from .linalg import Field
from .symmetry import SymmetryKind, symmetry_verdict

SCHEMA = 1


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    vertices: int
    truncation: int
    characteristic: int = 0
    degrees: List[int] = dc_field(default_factory=list)
    coefficients: List[List[str]] = dc_field(default_factory=list)
    seed: int = 0
    samples: int = 64
    output: str = "text"

    def validate(self) -> None:
        if self.vertices < 1:
            raise UsageError("--vertices must be at least 1")
        if self.truncation < 2:
            raise UsageError("--truncation must be at least 2")
        try:
            field = Field(self.characteristic)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for cs in self.coefficients:
            for c in cs:
                try:
                    field(c)
                except (ValueError, ZeroDivisionError):
                    raise UsageError(f"coefficient {c!r} is not an element of the field") from None
        if self.samples < 1:
            raise UsageError("--samples must be positive")

    def algebra(self) -> TruncatedAlgebra:
        return TruncatedAlgebra.cyclic(self.vertices, self.truncation, self.characteristic)


# ---------------------------------------------------------------------------
# output helpers


def _emit(cfg: RunConfig, payload: dict, text_lines: List[str]) -> None:
    if cfg.output == "json":
        payload = {"schema": SCHEMA, "command": cfg.command, **payload}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _header(cfg: RunConfig) -> Dict[str, int]:
    return {"s": cfg.vertices, "n": cfg.truncation, "char": cfg.characteristic}


def _counts_lines(counts: Sequence[Sequence[int]]) -> List[str]:
    lines = []
    for i, row in enumerate(counts):
        arrows = [f"{i + 1}->{j + 1}" + (f" (x{c})" if c > 1 else "") for j, c in enumerate(row) if c]
        lines.append("  " + (", ".join(arrows) if arrows else f"{i + 1}: none"))
    return lines


# ---------------------------------------------------------------------------
# commands


def cmd_homology(cfg: RunConfig) -> int:
    A = cfg.algebra()
    rows = homology_report(A)
    ok = all(r.match for r in rows)
    payload = {
        **_header(cfg),
        "rows": [{"q": r.degree, "dim": r.computed, "formula": r.formula, "match": r.match} for r in rows],
        "all_match": ok,
    }
    lines = [f"HH_2,q of K Delta/R^{A.n}, s={cfg.vertices}, char {cfg.characteristic}", f"{'q':>4} {'dim':>5} {'formula':>8}  match"]
    for r in rows:
        lines.append(f"{r.degree:>4} {r.computed:>5} {r.formula:>8}  {'yes' if r.match else 'NO'}")
    lines.append("all rows match" if ok else "MISMATCH")
    _emit(cfg, payload, lines)
    return 0 if ok else 1


def cmd_extend(cfg: RunConfig) -> int:
    A = cfg.algebra()
    if not cfg.degrees:
        raise UsageError("extend needs --degree")
    per_degree: Dict[int, List[str]] = {}
    for k, q in enumerate(cfg.degrees):
        if q in per_degree:
            raise UsageError(f"degree {q} given twice")
        if k < len(cfg.coefficients):
            coeffs = cfg.coefficients[k]
        else:
            coeffs = ["1"] * _basis_size(A, q)
        per_degree[q] = coeffs
    try:
        report = mixed_verdict(cfg.vertices, cfg.truncation, cfg.characteristic, per_degree, A)
        alpha, _ = build_mixed_cocycle(A, per_degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if report.zero_class:
        print("warning: the chosen coefficients give the zero class; T_alpha is the trivial extension", file=sys.stderr)
    payload = {**report.to_json_obj(), "cocycle": [list(r) for r in alpha.table()]}
    lines = [f"T_alpha(A) for s={cfg.vertices}, n={cfg.truncation}, char {cfg.characteristic}"]
    for q, cs in sorted(per_degree.items()):
        lines.append(f"degree {q}: coefficients {', '.join(cs)}")
    lines.append("cocycle values:")
    for a, b, v in alpha.table():
        lines.append(f"  alpha({a}, {b}) = {v}")
    lines.append(f"dim T = {report.dim_T}")
    lines.append("arrows:")
    lines.extend(_counts_lines(report.quiver_counts))
    lines.append(f"verdict: {report.verdict.value}")
    lines.append(f"alpha(J,J) in JD+DJ: {report.lemma42}")
    _emit(cfg, payload, lines)
    return 0 if report.verdict is not Verdict.OTHER else 1


def _basis_size(A: TruncatedAlgebra, q: int) -> int:
    return len(dual_hh2_basis(A, q)) if A.n <= q <= 2 * A.n - 1 else 0


def cmd_oracle(cfg: RunConfig) -> int:
    A = cfg.algebra()
    if A.dim > MAX_ORACLE_DIM:
        raise UsageError(f"dim A = {A.dim} is above the oracle limit {MAX_ORACLE_DIM}; the bar complex would have {A.dim ** 4} rows")
    r = oracle_report(A)
    lines = [
        f"bar H^2(A, D(A))   {r.h2_bar}",
        f"bar HH_2(A)        {r.hh2_bar}",
        f"sum_q HH_2,q(A)    {r.hh2_skoldberg_sum}",
        "agree" if r.agree else "DISAGREE",
    ]
    _emit(cfg, r.to_json_obj(), lines)
    return 0 if r.agree else 1


# -- verify ------------------------------------------------------------------

Item = Tuple[str, bool, str]


def _sweep_item(args: Tuple[int, int, int, int, Tuple[int, ...]]) -> List[Item]:
    s, n, ch, q, pattern = args
    A = TruncatedAlgebra.cyclic(s, n, ch)
    name = f"q={q} coeffs={','.join(map(str, pattern))}"
    items: List[Item] = []
    try:
        rep = mixed_verdict(s, n, ch, {q: list(pattern)}, A)
        alpha, _ = build_mixed_cocycle(A, {q: list(pattern)})
        T = build_extension(A, alpha)
        rad = radical_basis(T)
    except ConsistencyError as exc:
        return [(name, False, f"consistency error: {exc}")]
    expected = Verdict.TRIVIAL_EXT if q <= 2 * n - 2 else Verdict.BASE
    items.append((f"{name} verdict", rep.verdict is expected and not rep.zero_class, rep.verdict.value))
    items.append((f"{name} radical image flag", rep.lemma42 == (q <= 2 * n - 2), str(rep.lemma42)))
    items.append((f"{name} sandwich", sandwich_holds(A, rep.quiver_counts), ""))
    items.append((f"{name} nilpotent", rad.nilpotency_index <= 2 * n, f"J^{rad.nilpotency_index} = 0"))
    items.append((f"{name} dim T", T.dim == 2 * A.dim, str(T.dim)))
    return items


def _fixture_items(cfg: RunConfig) -> List[Item]:
    from . import presentation as pres

    n, ch = cfg.truncation, cfg.characteristic
    fixtures = []
    if n == 4:
        fixtures = [pres.fixture_n4(ch), pres.fixture_n4(ch, trivial=True)]
    elif n == 3:
        fixtures = [pres.fixture_n3(k1, k2, ch) for k1, k2 in ((1, 0), (0, 1), (1, 1))]
    elif n == 2:
        fixtures = [pres.fixture_n2_trivial(ch), pres.fixture_n2_gamma(ch)]
    items = []
    for fx in fixtures:
        found = fx.search(cfg.seed)
        items.append((f"presentation {fx.name}", found is not None, "" if found is None else f"dim {found[1].quotient_dim}"))
    if n == 3:
        A = cfg.algebra()
        b1 = theta(A, dual_hh2_basis(A, 3)[0])
        b2 = theta(A, dual_hh2_basis(A, 3)[1])
        items.append(("beta1 - beta2 not a coboundary", is_coboundary(A, b1 - b2) is None, ""))
    return items


def _pool_map(func: Callable, jobs: Sequence) -> List:
    threads = int(os.environ.get("HOCHEX_THREADS", "1") or 1)
    if threads <= 1 or len(jobs) <= 1:
        return [func(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(func, jobs))


def cmd_verify(cfg: RunConfig) -> int:
    A = cfg.algebra()
    s, n, ch = cfg.vertices, cfg.truncation, cfg.characteristic
    items: List[Item] = []
    rows = homology_report(A)
    items.append(("homology formula", all(r.match for r in rows), ""))
    valid = [q for q in range(n, 2 * n) if q % s == 0]
    for q in range(n, 2 * n):
        for k, u in enumerate(dual_hh2_basis(A, q)):
            alpha = theta(A, u)
            items.append((f"theta q={q} #{k + 1} cocycle", cocycle_check(A, alpha) and vanishes_on_idempotents(A, alpha), ""))
    jobs = [(s, n, ch, q, pat) for q in valid for pat in coefficient_patterns(_basis_size(A, q))]
    for chunk in _pool_map(_sweep_item, jobs):
        items.extend(chunk)
    top = 2 * n - 1
    if top in valid:
        for low in valid:
            if low == top:
                continue
            base = {low: ["1"] * _basis_size(A, low)}
            r0 = mixed_verdict(s, n, ch, base, A)
            r1 = mixed_verdict(s, n, ch, {**base, top: ["1"] * _basis_size(A, top)}, A)
            items.append((f"mixed q={low} only", r0.verdict is Verdict.TRIVIAL_EXT, r0.verdict.value))
            items.append((f"mixed q={low}+{top}", r1.verdict is Verdict.BASE, r1.verdict.value))
    if corollary46_predicate(s, n):
        alpha, _ = build_mixed_cocycle(A, {top: ["1"] * _basis_size(A, top)})
        T = build_extension(A, alpha)
        sv = symmetry_verdict(T, seed=cfg.seed, samples=cfg.samples)
        items.append(("T_alpha symmetric (top degree)", sv.kind is SymmetryKind.SYMMETRIC, sv.kind.value))
        items.append(("quiver of T_alpha is the base quiver", gabriel_quiver(T) == base_counts(A), ""))
    if A.dim <= MAX_ORACLE_DIM:
        r = oracle_report(A)
        items.append(("bar oracle agrees", r.agree, f"{r.h2_bar}/{r.hh2_bar}/{r.hh2_skoldberg_sum}"))
    if s == 3 and n in (2, 3, 4):
        items.extend(_fixture_items(cfg))
    ok = all(i[1] for i in items)
    payload = {
        **_header(cfg),
        "checks": [{"name": name, "ok": good, "detail": detail} for name, good, detail in items],
        "passed": ok,
    }
    width = max(len(i[0]) for i in items)
    lines = [f"{name:<{width}}  {'ok' if good else 'FAIL'}  {detail}".rstrip() for name, good, detail in items]
    lines.append("PASS" if ok else "FAIL: " + ", ".join(i[0] for i in items if not i[1]))
    _emit(cfg, payload, lines)
    return 0 if ok else 1


COMMANDS = {
    "homology": cmd_homology,
    "extend": cmd_extend,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


# ---------------------------------------------------------------------------
# argument parsing


def _coeff_list(text: str) -> List[str]:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise argparse.ArgumentTypeError(f"bad coefficient list {text!r}")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hochex",
        description="Hochschild extensions of truncated cyclic quiver algebras K Delta / R^n.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Coefficients are positional: the k-th value multiplies the k-th\n"
            "representative of the dual HH_2,q basis, in the order printed by\n"
            "`extend`.  Repeat --degree/--coeffs pairs for mixed-degree cocycles."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("homology", "graded HH_2 table against the closed formula"),
        ("extend", "build T_alpha(A) and classify its quiver"),
        ("verify", "run every check for one (s, n, char)"),
        ("oracle", "bar-complex cross-check (dim A <= 12)"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--vertices", "-s", type=int, required=True, help="number of vertices s")
        p.add_argument("--truncation", "-n", type=int, required=True, help="truncation length n >= 2")
        p.add_argument("--char", type=int, default=0, dest="characteristic", help="0 or a prime (default 0)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=64, help="random forms tried by the symmetry search")
        if name == "extend":
            p.add_argument("--degree", "-q", type=int, action="append", default=[], help="homological degree q (repeatable)")
            p.add_argument("--coeffs", type=_coeff_list, action="append", default=[], help="comma list, e.g. 1,0 or 1/2,3")
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        vertices=args.vertices,
        truncation=args.truncation,
        characteristic=args.characteristic,
        degrees=list(getattr(args, "degree", [])),
        coefficients=list(getattr(args, "coeffs", [])),
        seed=args.seed,
        samples=args.samples,
        output=args.format,
    )
    cfg.validate()
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"hochex: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
