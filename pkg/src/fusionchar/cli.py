"""Command-line front end.

Exit status: 0 success, 1 validation or invariant failure, 2 usage, file or
parse errors.  All output is deterministic for fixed inputs.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .analysis import (ProvenanceError, RestrictionError, analyze,
                       constraints_from_restriction, cross_validate, load_restriction,
                       render_vector)
from .chartab import TableError, TableFormatError, check_p_group, class_function_of, \
    column_orthogonality_failures, parse_table
from .cyclotomic import CycloSyntaxError
from .fusion import CHECK_LEVEL, FusionError, constraints_of, k_of, load_fusion, validate_fusion
from .hilbert import HilbertBasis, brute_force_basis, hilbert_basis_kernel
from .hilbert.oracle import OracleLimitError

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2
COMMANDS = ("validate", "kcount", "basis", "analyze", "oracle", "cross")


class UsageError(Exception):
    pass


class InvalidInput(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    table: Path | None = None
    fusion: Path | None = None
    restriction: Path | None = None
    basis: Path | None = None
    out: Path | None = None
    oracle_bound: int | None = None
    as_json: bool = False
    p_group: bool = False
    no_validate: bool = False
    reduce: bool = False
    method: str = "auto"
    backend: str | None = None
    extra: dict = field(default_factory=dict)

    def check(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for name in ("table", "fusion", "restriction", "basis"):
            path = getattr(self, name)
            if path is not None and not Path(path).is_file():
                raise UsageError(f"{name} file not found: {path}")
        if self.command == "basis":
            if self.restriction is None and (self.table is None or self.fusion is None):
                raise UsageError("basis needs --table and --fusion, or --restriction")
            if self.restriction is not None and self.fusion is not None:
                raise UsageError("basis takes either --fusion or --restriction, not both")
        if self.command == "analyze":
            if self.basis is None:
                raise UsageError("analyze needs --basis")
            if self.fusion is None and self.restriction is None:
                raise UsageError("analyze needs --fusion or --restriction")
            if self.fusion is not None and self.table is None:
                raise UsageError("--fusion needs --table")
        if self.command == "oracle":
            if self.oracle_bound is None:
                raise UsageError("oracle needs --bound")
            if self.restriction is None and (self.table is None or self.fusion is None):
                raise UsageError("oracle needs --table and --fusion, or --restriction")
        if self.command == "cross" and None in (self.table, self.fusion, self.restriction):
            raise UsageError("cross needs --table, --fusion and --restriction")
        if self.oracle_bound is not None and self.oracle_bound < 1:
            raise UsageError("the oracle bound must be positive")


def _table(cfg: RunConfig):
    return parse_table(cfg.table, validate=not cfg.no_validate)


def _fusion_system(cfg: RunConfig):
    table = _table(cfg)
    spec = load_fusion(cfg.fusion)
    violations = validate_fusion(table, spec)
    if violations:
        raise InvalidInput("invalid fusion:\n  " + "\n  ".join(violations))
    return table, spec, constraints_of(table, spec, reduce=cfg.reduce)


def _emit(text: str, out):
    out.write(text)


def cmd_validate(cfg: RunConfig, out) -> int:
    table = parse_table(cfg.table, validate=False)
    lines = [f"table {table.name}: order {table.order}, {table.nclasses} classes, "
             f"conductor {table.conductor}"]
    try:
        from .chartab import validate_table
        validate_table(table)
    except TableError as exc:
        lines.append(f"INVALID: {exc}")
        for i, j, res in exc.failures:
            lines.append(f"  rows {i}, {j}: residual {res}")
        _emit("\n".join(lines) + "\n", out)
        return EXIT_INVALID
    lines.append(f"degrees: {list(table.degrees)} (sum of squares {sum(d * d for d in table.degrees)})")
    lines.append("first orthogonality: all residuals 0")
    cols = column_orthogonality_failures(table)
    lines.append("second orthogonality: " + ("all residuals 0" if not cols else f"{len(cols)} failures"))
    rho = class_function_of(table, table.degrees)
    lines.append(f"regular character: {[str(v) for v in rho]}")
    status = EXIT_OK if not cols else EXIT_INVALID
    if not table.has_power_maps:
        lines.append("power maps: absent (fusion power-map checks will be skipped)")
    if cfg.p_group:
        bad = check_p_group(table)
        lines.append("p-group element orders: " + ("ok" if not bad else "; ".join(bad)))
        if bad:
            status = EXIT_INVALID
    lines.append("VALID" if status == EXIT_OK else "INVALID")
    _emit("\n".join(lines) + "\n", out)
    return status


def cmd_kcount(cfg: RunConfig, out) -> int:
    spec = load_fusion(cfg.fusion)
    status = EXIT_OK
    lines = []
    if cfg.table is not None:
        violations = validate_fusion(_table(cfg), spec)
        lines += [f"VIOLATION: {v}" for v in violations]
        if violations:
            status = EXIT_INVALID
    lines.insert(0, f"k(F) = {k_of(spec)}")
    _emit("\n".join(lines) + "\n", out)
    return status


def _compute_basis(cfg: RunConfig):
    if cfg.restriction is not None:
        A = load_restriction(cfg.restriction)
        system = constraints_from_restriction(A)
        if cfg.reduce:
            system = system.reduced()
        k_f = A.rank()
        return system, k_f, list(A.row_labels), f"restriction {A.name}"
    table, spec, system = _fusion_system(cfg)
    return system, k_of(spec), None, f"fusion on {table.name} ({CHECK_LEVEL})"


def _oracle_compare(system, basis: HilbertBasis, bound: int) -> list[str]:
    oracle = brute_force_basis(system, bound)
    solver = {v for v in basis.vectors if max(v) <= bound}
    problems = []
    for v in sorted(solver - oracle):
        problems.append(f"solver only: {list(v)}")
    for v in sorted(oracle - solver):
        problems.append(f"oracle only: {list(v)}")
    return problems


def cmd_basis(cfg: RunConfig, out) -> int:
    system, k_f, labels, source = _compute_basis(cfg)
    basis = hilbert_basis_kernel(system, method=cfg.method, backend=cfg.backend)
    lines = [
        f"# source: {source}",
        f"# constraint rows: {system.nrows}, rank {system.rank()}, k = {system.k}",
        f"# k(F) = {k_f}",
        f"# |Ind_F(P)| = {len(basis)}",
        f"# constraint_hash: {basis.constraint_hash}",
    ]
    lines += [f"{render_vector(v, labels)}\t{list(v)}" for v in basis.vectors]
    status = EXIT_OK
    if cfg.oracle_bound is not None:
        problems = _oracle_compare(system, basis, cfg.oracle_bound)
        lines.append(f"# oracle (bound {cfg.oracle_bound}): "
                     + ("agrees" if not problems else f"{len(problems)} MISMATCHES"))
        lines += [f"#   {p}" for p in problems]
        if problems:
            status = EXIT_INVALID
    if cfg.out is not None:
        Path(cfg.out).write_text(basis.to_json(), encoding="utf-8")
    _emit("\n".join(lines) + "\n", out)
    return status


def cmd_analyze(cfg: RunConfig, out) -> int:
    try:
        doc = json.loads(Path(cfg.basis).read_text(encoding="utf-8"))
        basis = HilbertBasis.from_document(doc)
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"cannot read basis file: {exc}") from exc
    table = _table(cfg) if cfg.table is not None else None
    spec = load_fusion(cfg.fusion) if cfg.fusion is not None else None
    A = load_restriction(cfg.restriction) if cfg.restriction is not None else None
    labels = list(A.row_labels) if A is not None and spec is None else None
    report = analyze(basis, table=table, spec=spec, restriction=A)
    if cfg.as_json:
        _emit(json.dumps(report.to_document(), indent=2) + "\n", out)
    else:
        _emit(report.render(basis, labels), out)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_oracle(cfg: RunConfig, out) -> int:
    system, _, _, source = _compute_basis(cfg)
    basis = hilbert_basis_kernel(system, method=cfg.method, backend=cfg.backend)
    problems = _oracle_compare(system, basis, cfg.oracle_bound)
    lines = [f"# source: {source}", f"# bound: {cfg.oracle_bound}",
             "oracle agrees" if not problems else f"{len(problems)} mismatches"]
    lines += problems
    _emit("\n".join(lines) + "\n", out)
    return EXIT_OK if not problems else EXIT_INVALID


def cmd_cross(cfg: RunConfig, out) -> int:
    table = _table(cfg)
    spec = load_fusion(cfg.fusion)
    A = load_restriction(cfg.restriction)
    report = cross_validate(table, spec, A)
    if cfg.as_json:
        _emit(json.dumps(report.to_document(), indent=2) + "\n", out)
    else:
        _emit(report.render(), out)
    return EXIT_OK if report.equal else EXIT_INVALID


HANDLERS = {
    "validate": cmd_validate,
    "kcount": cmd_kcount,
    "basis": cmd_basis,
    "analyze": cmd_analyze,
    "oracle": cmd_oracle,
    "cross": cmd_cross,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        cfg.check()
        return HANDLERS[cfg.command](cfg, out)
    except (UsageError, TableFormatError, CycloSyntaxError, OracleLimitError,
            json.JSONDecodeError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (InvalidInput, TableError, FusionError, RestrictionError, ProvenanceError,
            OverflowError) as exc:
        err.write(f"invalid: {exc}\n")
        return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionchar",
        description="Indecomposable fusion-invariant characters as Hilbert bases.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver progress")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_opts(p):
        p.add_argument("--method", choices=("auto", "incremental", "completion"), default="auto")
        p.add_argument("--backend", choices=("numba", "numpy"), default=None,
                       help="kernel backend (default: $FUSIONCHAR_BACKEND or numba)")

    p = sub.add_parser("validate", help="check a character table")
    p.add_argument("table", type=Path)
    p.add_argument("--p-group", action="store_true",
                   help="also require element orders to be powers of p")

    p = sub.add_parser("kcount", help="number of F-classes")
    p.add_argument("--fusion", type=Path, required=True)
    p.add_argument("--table", type=Path, help="validate the partition against this table")
    p.add_argument("--no-validate", action="store_true")

    p = sub.add_parser("basis", help="compute Ind_F(P)")
    p.add_argument("--table", type=Path)
    p.add_argument("--fusion", type=Path)
    p.add_argument("--restriction", type=Path)
    p.add_argument("--oracle-bound", type=int, metavar="N")
    p.add_argument("--out", type=Path)
    p.add_argument("--reduce", action="store_true", help="Hermite-reduce the constraint rows")
    p.add_argument("--no-validate", action="store_true")
    solver_opts(p)

    p = sub.add_parser("analyze", help="compare |Ind_F(P)| with k(F) and run summand checks")
    p.add_argument("--basis", type=Path, required=True)
    p.add_argument("--table", type=Path)
    p.add_argument("--fusion", type=Path)
    p.add_argument("--restriction", type=Path)
    p.add_argument("--json", action="store_true", dest="as_json")
    p.add_argument("--no-validate", action="store_true")

    p = sub.add_parser("oracle", help="cross-check the solver against brute force")
    p.add_argument("--table", type=Path)
    p.add_argument("--fusion", type=Path)
    p.add_argument("--restriction", type=Path)
    p.add_argument("--bound", type=int, required=True, dest="oracle_bound")
    p.add_argument("--no-validate", action="store_true")
    solver_opts(p)

    p = sub.add_parser("cross", help="compare fusion and restriction constraint row spaces")
    p.add_argument("--table", type=Path, required=True)
    p.add_argument("--fusion", type=Path, required=True)
    p.add_argument("--restriction", type=Path, required=True)
    p.add_argument("--json", action="store_true", dest="as_json")
    p.add_argument("--no-validate", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if not args.verbose:
        logging.getLogger("numba").setLevel(logging.WARNING)
    opts = vars(args)
    opts.pop("verbose")
    cfg = RunConfig(**opts)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
