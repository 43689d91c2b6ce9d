"""Fusion data as a partition of the classes of P, and the invariance constraints.

Only necessary conditions are checked (identity singleton, equal element
orders, closure under power maps).  A partition passing them need not come
from a saturated fusion system; reports label this ``necessary-conditions-only``.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from math import lcm
from typing import Mapping, Sequence

from . import intlinalg
from .chartab import CharacterTable
from .cyclotomic import to_rational_vector

log = logging.getLogger(__name__)

CHECK_LEVEL = "necessary-conditions-only"


class FusionError(ValueError):
    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = list(violations)


@dataclass(frozen=True)
class FusionSpec:
    table_name: str
    parts: tuple[tuple[int, ...], ...]

    @classmethod
    def from_parts(cls, table_name: str, parts) -> "FusionSpec":
        return cls(table_name, tuple(tuple(sorted(int(i) for i in p)) for p in parts))

    @classmethod
    def trivial(cls, table: CharacterTable) -> "FusionSpec":
        return cls(table.name, tuple((i,) for i in range(table.nclasses)))


@dataclass(frozen=True)
class ConstraintSystem:
    """Integer matrix B; F-invariant multiplicity vectors are the c >= 0 with Bc = 0."""

    k: int
    rows: tuple[tuple[int, ...], ...]
    provenance: tuple[str, ...] = field(default=(), compare=False)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def rank(self) -> int:
        return intlinalg.rank(self.rows) if self.rows else 0

    def digest(self) -> str:
        """Content digest of the rational row space (invariant under row operations)."""
        red = intlinalg.echelon(self.rows)[0] if self.rows else []
        payload = json.dumps({"k": self.k, "rows": red}, separators=(",", ":"))
        return "sha256:" + hashlib.sha256(payload.encode()).hexdigest()

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.k:
            raise ValueError(f"vector of length {len(v)} for a system with {self.k} columns")
        return [sum(b * x for b, x in zip(row, v)) for row in self.rows]

    def reduced(self) -> "ConstraintSystem":
        """Row-style Hermite normal form of the row lattice."""
        hnf = intlinalg.hermite_normal_form(self.rows)
        return ConstraintSystem(self.k, tuple(tuple(r) for r in hnf),
                                tuple(f"hnf row {i}" for i in range(len(hnf))))


def make_constraints(k: int, rows, provenance: Sequence[str] | None = None) -> ConstraintSystem:
    """Primitive, sign-normalised, deduplicated, zero rows dropped."""
    seen = {}
    prov = list(provenance) if provenance is not None else [f"row {i}" for i in range(len(rows))]
    for row, origin in zip(rows, prov):
        if len(row) != k:
            raise ValueError(f"row of length {len(row)} in a system with {k} columns")
        prim = tuple(intlinalg.primitive(row))
        if any(prim) and prim not in seen:
            seen[prim] = origin
    return ConstraintSystem(k, tuple(seen), tuple(seen.values()))


def load_fusion(document) -> FusionSpec:
    if isinstance(document, Mapping):
        doc = document
    elif isinstance(document, (str, os.PathLike)) and os.path.exists(document):
        with open(document, encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = json.loads(document)
    try:
        table = doc["table"]
        parts = doc["partition"]
    except (KeyError, TypeError) as exc:
        raise FusionError(f"fusion document needs 'table' and 'partition': {exc}") from exc
    if not isinstance(parts, list) or not all(isinstance(p, list) for p in parts):
        raise FusionError("'partition' must be a list of lists of class indices")
    for p in parts:
        for i in p:
            if isinstance(i, bool) or not isinstance(i, int) or i < 0:
                raise FusionError(f"bad class index {i!r}")
    return FusionSpec.from_parts(str(table), parts)


def fusion_to_document(spec: FusionSpec) -> dict:
    return {"table": spec.table_name, "partition": [list(p) for p in spec.parts]}


def validate_fusion(table: CharacterTable, spec: FusionSpec) -> list[str]:
    """List of violated necessary conditions; empty means ok."""
    n = table.nclasses
    violations = []
    seen: dict[int, int] = {}
    for pi, part in enumerate(spec.parts):
        if not part:
            violations.append(f"part {pi} is empty")
        for i in part:
            if not 0 <= i < n:
                violations.append(f"part {pi}: class index {i} out of range 0..{n - 1}")
            elif i in seen:
                violations.append(f"class {i} occurs in parts {seen[i]} and {pi}")
            else:
                seen[i] = pi
    missing = sorted(set(range(n)) - set(seen))
    if missing:
        violations.append(f"classes not covered: {missing}")
    if violations:
        return violations
    if len(spec.parts[seen[0]]) != 1:
        violations.append("identity class is fused with other classes")
    for pi, part in enumerate(spec.parts):
        orders = {table.classes[i].element_order for i in part}
        if len(orders) > 1:
            violations.append(f"part {pi} mixes element orders {sorted(orders)}")
    if table.has_power_maps:
        primes = sorted({q for c in table.classes for q in c.power_maps})
        for q in primes:
            for pi, part in enumerate(spec.parts):
                images = {seen[table.classes[i].power_maps[q]] for i in part
                          if q in table.classes[i].power_maps}
                if len(images) > 1:
                    violations.append(
                        f"part {pi} is not closed under the {q}-th power map "
                        f"(images in parts {sorted(images)})"
                    )
    else:
        log.warning("table %s has no power maps; power-map closure not checked", table.name)
    return violations


def k_of(spec: FusionSpec) -> int:
    """Number of F-conjugacy classes."""
    return len(spec.parts)


def constraints_of(table: CharacterTable, spec: FusionSpec, reduce: bool = False) -> ConstraintSystem:
    """Rows forcing each part's class functions to agree with its representative.

    For every part with lowest member r, every other member g and every
    power-basis coordinate t, the row is the t-th rational coordinate of
    chi_i(g) - chi_i(r), cleared to integers.
    """
    violations = validate_fusion(table, spec)
    if violations:
        raise FusionError("invalid fusion: " + "; ".join(violations), violations)
    n = table.conductor
    k = len(table.irreducibles)
    rows, prov = [], []
    for part in spec.parts:
        r = part[0]
        for g in part[1:]:
            diffs = [to_rational_vector(row[g] - row[r], n) for row in table.irreducibles]
            for t in range(len(diffs[0])):
                coords = [d[t] for d in diffs]
                den = lcm(*(x.denominator for x in coords))
                rows.append([int(x * den) for x in coords])
                prov.append(f"class {g} vs {r}, coordinate {t}")
    system = make_constraints(k, rows, prov)
    return system.reduced() if reduce else system
