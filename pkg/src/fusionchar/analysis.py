"""Comparisons of |Ind_F(P)| with k(F) and the summand checks.

The restriction pipeline works in multiplicity coordinates: for an overgroup
G of P with restriction matrix A (rows Irr(P), columns Irr(G)), the
F-invariant characters are the m >= 0 in the rational column space of A,
i.e. the kernel of any matrix C whose rows span the orthogonal complement.
Generalised characters of G restrict onto every invariant character, so no
lattice-index correction is needed.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import intlinalg
from .chartab import CharacterTable
from .fusion import (CHECK_LEVEL, ConstraintSystem, FusionSpec, constraints_of, k_of,
                     make_constraints)
from .hilbert import HilbertBasis

TAU_NOTE = ("restriction constraints pair each candidate with the irreducibles "
            "lambda_i of P")

# multiplicities of the exhibited Aut(M22) character, per degree block
ZETA_PATTERN = {1: (1, 1, 1, 2), 2: (1, 1, 1, 2), 4: (1, 2), 8: (1, 2)}


class RestrictionError(ValueError):
    pass


class ProvenanceError(ValueError):
    pass


@dataclass(frozen=True)
class RestrictionMatrix:
    name: str
    matrix: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    g_degrees: tuple[int, ...] | None = None
    p_degrees: tuple[int, ...] | None = None

    @property
    def nrows(self) -> int:
        return len(self.matrix)

    @property
    def ncols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)

    def rank(self) -> int:
        return intlinalg.rank(self.matrix)


def load_restriction(document) -> RestrictionMatrix:
    if isinstance(document, Mapping):
        doc = document
    elif isinstance(document, (str, os.PathLike)) and os.path.exists(document):
        with open(document, encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = json.loads(document)
    try:
        matrix = tuple(tuple(int(x) for x in row) for row in doc["matrix"])
        name = str(doc.get("name", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise RestrictionError(f"malformed restriction document: {exc}") from exc
    if not matrix or len({len(r) for r in matrix}) != 1 or not matrix[0]:
        raise RestrictionError("matrix must be a non-empty rectangular list of rows")
    m, t = len(matrix), len(matrix[0])
    row_labels = tuple(doc.get("row_labels") or (f"lambda{i + 1}" for i in range(m)))
    col_labels = tuple(doc.get("col_labels") or (f"chi{j + 1}" for j in range(t)))
    g_degrees = tuple(int(x) for x in doc["g_degrees"]) if doc.get("g_degrees") else None
    p_degrees = tuple(int(x) for x in doc["p_degrees"]) if doc.get("p_degrees") else None
    A = RestrictionMatrix(name, matrix, row_labels, col_labels, g_degrees, p_degrees)
    validate_restriction(A)
    return A


def restriction_to_document(A: RestrictionMatrix) -> dict:
    doc = {"name": A.name, "row_labels": list(A.row_labels), "col_labels": list(A.col_labels)}
    if A.g_degrees is not None:
        doc["g_degrees"] = list(A.g_degrees)
    if A.p_degrees is not None:
        doc["p_degrees"] = list(A.p_degrees)
    doc["matrix"] = [list(r) for r in A.matrix]
    return doc


def validate_restriction(A: RestrictionMatrix, p_degrees: Sequence[int] | None = None) -> None:
    if len(A.row_labels) != A.nrows or len(A.col_labels) != A.ncols:
        raise RestrictionError("label counts do not match the matrix shape")
    if any(x < 0 for row in A.matrix for x in row):
        raise RestrictionError("restriction multiplicities must be non-negative")
    for i, row in enumerate(A.matrix):
        if not any(row):
            raise RestrictionError(
                f"row {i} ({A.row_labels[i]}) is zero: that irreducible of P "
                "occurs in no restriction"
            )
    degs = p_degrees if p_degrees is not None else A.p_degrees
    if degs is not None and len(degs) != A.nrows:
        raise RestrictionError("p_degrees length does not match the row count")
    if A.g_degrees is not None:
        if len(A.g_degrees) != A.ncols:
            raise RestrictionError("g_degrees length does not match the column count")
        if degs is not None:
            for j in range(A.ncols):
                d = sum(a * x for a, x in zip(A.column(j), degs))
                if d != A.g_degrees[j]:
                    raise RestrictionError(
                        f"column {j} ({A.col_labels[j]}): restriction has degree {d}, "
                        f"expected {A.g_degrees[j]}"
                    )


def constraints_from_restriction(A: RestrictionMatrix) -> ConstraintSystem:
    """Primitive integer rows spanning the orthogonal complement of the column space of A."""
    validate_restriction(A)
    rows = intlinalg.left_kernel(A.matrix)
    prov = [f"orthogonal complement of col(A), vector {i}" for i in range(len(rows))]
    return make_constraints(A.nrows, rows, prov)


@dataclass(frozen=True)
class Witness:
    vector: tuple[int, ...]
    first: tuple[tuple[tuple[int, ...], int], ...]
    second: tuple[tuple[tuple[int, ...], int], ...]
    relation: tuple[int, ...]


def _sum_decomposition(dec, k: int) -> tuple[int, ...]:
    total = [0] * k
    for vec, mult in dec:
        for i, x in enumerate(vec):
            total[i] += mult * x
    return tuple(total)


def nonuniqueness_witness(basis: HilbertBasis) -> Witness | None:
    """Two distinct decompositions of one vector, or None if the basis is independent.

    Uses an integer relation sum c_h h = 0 among the basis vectors; the
    positive and negative parts of c give the two sides.
    """
    vecs = basis.vectors
    if not vecs:
        return None
    relations = intlinalg.left_kernel(vecs)
    if not relations:
        return None
    c = relations[0]
    first = tuple((vecs[i], x) for i, x in enumerate(c) if x > 0)
    second = tuple((vecs[i], -x) for i, x in enumerate(c) if x < 0)
    v = _sum_decomposition(first, basis.k)
    if v != _sum_decomposition(second, basis.k) or not first or not second:
        raise ArithmeticError("integer relation does not balance")
    return Witness(v, first, second, tuple(c))


def regular_summand_violations(basis: HilbertBasis, degrees: Sequence[int]) -> list[int]:
    """Indices of basis vectors that are not summands of the regular character."""
    if len(degrees) != basis.k:
        raise ValueError("degree vector length does not match the basis dimension")
    return [i for i, v in enumerate(basis.vectors)
            if any(x > d for x, d in zip(v, degrees))]


def restriction_summand_violations(basis: HilbertBasis, A: RestrictionMatrix) -> list[int]:
    """Indices of basis vectors lying below no column of A."""
    if A.nrows != basis.k:
        raise ValueError(f"restriction has {A.nrows} rows, basis dimension is {basis.k}")
    cols = [A.column(j) for j in range(A.ncols)]
    return [i for i, v in enumerate(basis.vectors)
            if not any(all(x <= y for x, y in zip(v, col)) for col in cols)]


def degree_pattern(v: Sequence[int], degrees: Sequence[int]) -> dict[int, tuple[int, ...]]:
    """Sorted nonzero multiplicities of v grouped by the degree of the irreducible."""
    blocks: dict[int, list[int]] = {}
    for x, d in zip(v, degrees):
        if x:
            blocks.setdefault(d, []).append(x)
    return {d: tuple(sorted(xs)) for d, xs in sorted(blocks.items())}


def find_pattern(basis: HilbertBasis, degrees: Sequence[int],
                 pattern: Mapping[int, Sequence[int]] = ZETA_PATTERN) -> list[int]:
    """Basis indices matching ``pattern`` up to permutation within degree blocks."""
    want = {d: tuple(sorted(xs)) for d, xs in pattern.items()}
    return [i for i, v in enumerate(basis.vectors) if degree_pattern(v, degrees) == want]


_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_GREEK = {"chi": "χ", "lambda": "λ", "psi": "ψ"}


def pretty_label(label: str) -> str:
    m = re.fullmatch(r"(chi|lambda|psi)_?(\d+)", label)
    if m:
        return _GREEK[m.group(1)] + m.group(2).translate(_SUB)
    return label


def render_vector(v: Sequence[int], labels: Sequence[str] | None = None) -> str:
    """Sum of irreducible labels, e.g. ``χ₃+χ₆`` or ``λ₁+2λ₄``."""
    if labels is None:
        labels = [f"chi{i + 1}" for i in range(len(v))]
    terms = []
    for x, lab in zip(v, labels):
        if x:
            terms.append(("" if x == 1 else str(x)) + pretty_label(lab))
    return "+".join(terms) if terms else "0"


def render_decomposition(dec, labels=None) -> str:
    parts = []
    for vec, mult in dec:
        s = f"({render_vector(vec, labels)})"
        parts.append(s if mult == 1 else f"{mult}{s}")
    return " + ".join(parts)


@dataclass
class AnalysisReport:
    k_f: int
    ind_count: int
    basis_rank: int
    classification: str
    regular_violators: list[int] | None
    restriction_violators: list[int] | None
    witness: Witness | None
    constraint_hash: str
    source: str
    notes: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    zeta_matches: list[int] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_document(self) -> dict:
        w = None
        if self.witness is not None:
            w = {"vector": list(self.witness.vector),
                 "first": [[list(v), m] for v, m in self.witness.first],
                 "second": [[list(v), m] for v, m in self.witness.second]}
        return {
            "k_f": self.k_f,
            "ind_count": self.ind_count,
            "basis_rank": self.basis_rank,
            "classification": self.classification,
            "regular_violators": self.regular_violators,
            "restriction_violators": self.restriction_violators,
            "witness": w,
            "zeta_matches": self.zeta_matches,
            "constraint_hash": self.constraint_hash,
            "source": self.source,
            "notes": self.notes,
            "violations": self.violations,
        }

    def render(self, basis: HilbertBasis, labels=None) -> str:
        rel = "=" if self.classification == "Equal" else ">"
        lines = [
            f"source: {self.source}",
            f"k(F) = {self.k_f}",
            f"|Ind_F(P)| = {self.ind_count}  ({self.ind_count} {rel} {self.k_f}: {self.classification})",
            f"rank of span(Ind_F(P)) = {self.basis_rank}",
        ]
        if self.regular_violators is not None:
            lines.append(f"not summands of the regular character: {len(self.regular_violators)}")
            lines += [f"  {render_vector(basis[i], labels)}" for i in self.regular_violators]
        if self.restriction_violators is not None:
            lines.append(
                f"not summands of a restricted irreducible: {len(self.restriction_violators)}")
            lines += [f"  {render_vector(basis[i], labels)}" for i in self.restriction_violators]
        if self.zeta_matches is not None:
            lines.append(f"vectors with the (1,1,1,2|1,1,1,2|1,2|1,2) degree pattern: "
                         f"{len(self.zeta_matches)}")
            lines += [f"  {render_vector(basis[i], labels)}" for i in self.zeta_matches]
        if self.witness is None:
            lines.append("decompositions are unique (no witness)")
        else:
            w = self.witness
            lines.append(f"non-unique decomposition of {render_vector(w.vector, labels)}:")
            lines.append(f"  {render_decomposition(w.first, labels)}")
            lines.append(f"  = {render_decomposition(w.second, labels)}")
        lines += [f"note: {n}" for n in self.notes]
        lines += [f"VIOLATION: {v}" for v in self.violations]
        return "\n".join(lines) + "\n"


def analyze(basis: HilbertBasis, table: CharacterTable | None = None,
            spec: FusionSpec | None = None,
            restriction: RestrictionMatrix | None = None) -> AnalysisReport:
    """Fill an :class:`AnalysisReport` for a basis computed from spec or restriction."""
    if spec is None and restriction is None:
        raise ValueError("need a fusion spec or a restriction matrix")
    systems: list[tuple[str, ConstraintSystem]] = []
    notes = []
    if spec is not None:
        if table is None:
            raise ValueError("a fusion spec needs its character table")
        systems.append(("fusion", constraints_of(table, spec)))
        k_f = k_of(spec)
        notes.append(f"fusion checked for {CHECK_LEVEL}")
    if restriction is not None:
        systems.append(("restriction", constraints_from_restriction(restriction)))
        notes.append(TAU_NOTE)
        if spec is None:
            k_f = restriction.rank()
    matching = [name for name, s in systems if s.digest() == basis.constraint_hash]
    if not matching:
        raise ProvenanceError(
            f"basis hash {basis.constraint_hash} matches none of the supplied constraint "
            f"systems ({', '.join(f'{n}: {s.digest()}' for n, s in systems)})"
        )
    for name, s in systems:
        if s.k != basis.k:
            raise ProvenanceError(f"{name} system has {s.k} columns, basis has {basis.k}")

    violations = []
    ind = len(basis)
    brank = intlinalg.rank(basis.vectors) if ind else 0
    if restriction is not None and spec is not None and restriction.rank() != k_f:
        violations.append(f"rank(A) = {restriction.rank()} differs from k(F) = {k_f}")
    if ind < k_f:
        violations.append(f"|Ind_F(P)| = {ind} < k(F) = {k_f}")
    if brank != k_f:
        violations.append(f"basis spans dimension {brank}, expected k(F) = {k_f}")

    degrees = None
    if table is not None:
        degrees = table.degrees
    elif restriction is not None and restriction.p_degrees is not None:
        degrees = restriction.p_degrees
    regular = regular_summand_violations(basis, degrees) if degrees is not None else None
    restr = restriction_summand_violations(basis, restriction) if restriction is not None else None
    zeta = None
    if degrees is not None and set(ZETA_PATTERN) <= set(degrees):
        zeta = find_pattern(basis, degrees)

    witness = nonuniqueness_witness(basis)
    if (witness is not None) != (ind > k_f):
        violations.append("witness existence disagrees with |Ind_F(P)| > k(F)")
    return AnalysisReport(
        k_f=k_f,
        ind_count=ind,
        basis_rank=brank,
        classification="Equal" if ind == k_f else "Strict",
        regular_violators=regular,
        restriction_violators=restr,
        witness=witness,
        constraint_hash=basis.constraint_hash,
        source=", ".join(matching),
        notes=notes,
        violations=violations,
        zeta_matches=zeta,
    )


@dataclass
class CrossReport:
    equal: bool
    fusion_rank: int
    restriction_rank: int
    fusion_in_restriction: bool
    restriction_in_fusion: bool
    separating: tuple[int, ...] | None = None
    separating_side: str | None = None
    reason: str | None = None

    def to_document(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}

    def render(self) -> str:
        lines = [
            f"rank(B_fusion) = {self.fusion_rank}, rank(C_restriction) = {self.restriction_rank}",
            f"fusion rows in restriction row space: {self.fusion_in_restriction}",
            f"restriction rows in fusion row space: {self.restriction_in_fusion}",
            "row spaces EQUAL" if self.equal else "row spaces DIFFER",
        ]
        if self.reason:
            lines.append(f"reason: {self.reason}")
        if self.separating is not None:
            lines.append(f"separating vector ({self.separating_side}): "
                         f"{list(self.separating)}")
        return "\n".join(lines) + "\n"


def _separate(kernel_of: ConstraintSystem, violated: ConstraintSystem):
    for x in intlinalg.kernel(kernel_of.rows, kernel_of.k) if kernel_of.rows else (
            [[int(i == j) for i in range(kernel_of.k)] for j in range(kernel_of.k)]):
        if any(violated.apply(x)):
            return tuple(x)
    return None


def cross_validate(table: CharacterTable, spec: FusionSpec,
                   A: RestrictionMatrix) -> CrossReport:
    """Compare the rational row spaces of the fusion and restriction constraint systems."""
    B = constraints_of(table, spec)
    if A.nrows != B.k:
        return CrossReport(False, B.rank(), 0, False, False,
                           reason=f"table has {B.k} irreducibles, restriction has {A.nrows} rows")
    C = constraints_from_restriction(A)
    rb, rc = B.rank(), C.rank()
    both = intlinalg.rank(list(B.rows) + list(C.rows)) if (B.rows or C.rows) else 0
    b_in_c, c_in_b = both == rc, both == rb
    report = CrossReport(b_in_c and c_in_b, rb, rc, b_in_c, c_in_b)
    if not c_in_b:
        report.separating = _separate(B, C)
        report.separating_side = "fusion-invariant, violates restriction constraints"
    elif not b_in_c:
        report.separating = _separate(C, B)
        report.separating_side = "in span of restrictions, violates fusion constraints"
    return report
