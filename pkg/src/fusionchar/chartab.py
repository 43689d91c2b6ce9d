"""Character tables: data model, JSON ingestion and exact validation."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .cyclotomic import CycloSyntaxError, Cyclotomic, parse_cyclo

MultiplicityVector = tuple[int, ...]


class TableError(ValueError):
    """A table document is malformed or violates a character-table invariant."""

    def __init__(self, message: str, failures: Sequence = ()):
        super().__init__(message)
        self.failures = list(failures)


class TableFormatError(TableError):
    """The document cannot be read as a table at all (JSON, fields, entry syntax)."""


@dataclass(frozen=True)
class ConjClass:
    name: str
    size: int
    element_order: int
    power_maps: Mapping[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class CharacterTable:
    name: str
    order: int
    conductor: int
    classes: tuple[ConjClass, ...]
    irreducibles: tuple[tuple[Cyclotomic, ...], ...]

    @property
    def nclasses(self) -> int:
        return len(self.classes)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(row[0].as_fraction()) for row in self.irreducibles)

    @property
    def has_power_maps(self) -> bool:
        return all(c.power_maps for c in self.classes)

    def column(self, c: int) -> tuple[Cyclotomic, ...]:
        return tuple(row[c] for row in self.irreducibles)


def _load_document(document) -> dict:
    if isinstance(document, Mapping):
        return dict(document)
    if isinstance(document, (str, os.PathLike)) and os.path.exists(document):
        with open(document, encoding="utf-8") as fh:
            return json.load(fh)
    if isinstance(document, str):
        return json.loads(document)
    return json.load(document)


def _require(doc: Mapping, key: str, kind) -> Any:
    if key not in doc:
        raise TableFormatError(f"missing field {key!r}")
    value = doc[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise TableFormatError(f"field {key!r} must be an integer")
    if kind is not int and not isinstance(value, kind):
        raise TableFormatError(f"field {key!r} must be of type {kind.__name__}")
    return value


def parse_table(document, validate: bool = True) -> CharacterTable:
    """Build a :class:`CharacterTable` from a JSON document, path, or mapping.

    With ``validate`` (the default) every invariant is checked exactly and a
    :class:`TableError` is raised on the first kind of failure found.
    """
    try:
        doc = _load_document(document)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"malformed JSON: {exc}") from exc
    name = _require(doc, "name", str)
    order = _require(doc, "order", int)
    conductor = _require(doc, "conductor", int)
    if order < 1 or conductor < 1:
        raise TableError("order and conductor must be positive")
    classes = []
    for i, c in enumerate(_require(doc, "classes", list)):
        if not isinstance(c, Mapping):
            raise TableFormatError(f"class {i} is not an object")
        pm = c.get("power_maps") or {}
        try:
            power_maps = {int(q): int(v) for q, v in pm.items()}
        except (TypeError, ValueError, AttributeError) as exc:
            raise TableFormatError(f"class {i}: bad power_maps") from exc
        classes.append(ConjClass(
            name=_require(c, "name", str),
            size=_require(c, "size", int),
            element_order=_require(c, "element_order", int),
            power_maps=power_maps,
        ))
    rows = []
    for i, row in enumerate(_require(doc, "irreducibles", list)):
        if not isinstance(row, list):
            raise TableFormatError(f"irreducible {i} is not a list")
        values = []
        for j, entry in enumerate(row):
            try:
                values.append(parse_cyclo(str(entry)))
            except CycloSyntaxError as exc:
                raise TableFormatError(f"irreducible {i}, class {j}: {exc}") from exc
        rows.append(tuple(values))
    table = CharacterTable(name, order, conductor, tuple(classes), tuple(rows))
    if validate:
        validate_table(table)
    return table


def table_from_file(path, validate: bool = True) -> CharacterTable:
    with open(path, encoding="utf-8") as fh:
        return parse_table(json.load(fh), validate=validate)


def table_to_document(table: CharacterTable) -> dict:
    classes = []
    for c in table.classes:
        entry = {"name": c.name, "size": c.size, "element_order": c.element_order}
        if c.power_maps:
            entry["power_maps"] = {str(q): v for q, v in sorted(c.power_maps.items())}
        classes.append(entry)
    return {
        "name": table.name,
        "order": table.order,
        "conductor": table.conductor,
        "classes": classes,
        "irreducibles": [[str(v) for v in row] for row in table.irreducibles],
    }


def inner_product(table: CharacterTable, f: Sequence[Cyclotomic], g: Sequence[Cyclotomic]) -> Cyclotomic:
    """|G| * [f, g]: the unnormalised scalar product, kept exact."""
    total = Cyclotomic.rational(0)
    for c, x, y in zip(table.classes, f, g):
        if not x.is_zero() and not y.is_zero():
            total = total + c.size * (x * y.conjugate())
    return total


def validate_table(table: CharacterTable) -> None:
    k = table.nclasses
    if k == 0:
        raise TableError("table has no classes")
    if len(table.irreducibles) != k or any(len(r) != k for r in table.irreducibles):
        raise TableError(
            f"dimension mismatch: {k} classes, "
            f"{len(table.irreducibles)} rows of lengths {sorted({len(r) for r in table.irreducibles})}"
        )
    first = table.classes[0]
    if first.size != 1 or first.element_order != 1:
        raise TableError("class 0 must be the identity (size 1, element order 1)")
    for i, c in enumerate(table.classes):
        if c.size < 1 or table.order % c.size:
            raise TableError(f"class {i} ({c.name}): size {c.size} does not divide {table.order}")
        if c.element_order < 1:
            raise TableError(f"class {i} ({c.name}): element order must be positive")
        for q, img in c.power_maps.items():
            if not 0 <= img < k:
                raise TableError(f"class {i}: power map {q} points outside the table")
    total = sum(c.size for c in table.classes)
    if total != table.order:
        raise TableError(f"class sizes sum to {total}, expected {table.order}")
    for i, row in enumerate(table.irreducibles):
        for j, v in enumerate(row):
            if table.conductor % v.conductor:
                raise TableError(
                    f"irreducible {i}, class {j}: conductor {v.conductor} "
                    f"does not divide {table.conductor}"
                )
    degrees = []
    for i, row in enumerate(table.irreducibles):
        d = row[0]
        if not d.is_rational() or d.as_fraction().denominator != 1 or d.as_fraction() <= 0:
            raise TableError(f"irreducible {i}: degree {d} is not a positive integer")
        degrees.append(int(d.as_fraction()))
    if sum(d * d for d in degrees) != table.order:
        raise TableError(
            f"degree-sum failure: sum of squared degrees is {sum(d * d for d in degrees)}, "
            f"expected {table.order}"
        )
    failures = orthogonality_failures(table)
    if failures:
        i, j, residual = failures[0]
        raise TableError(
            f"orthogonality failure between irreducibles {i} and {j}: "
            f"residual {residual}",
            failures,
        )


def orthogonality_failures(table: CharacterTable) -> list[tuple[int, int, Cyclotomic]]:
    """Row pairs (i <= j) whose scaled inner product differs from order * delta_ij.

    The residual is reported exactly as a cyclotomic number.
    """
    rows = table.irreducibles
    out = []
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            residual = inner_product(table, rows[i], rows[j])
            if i == j:
                residual = residual - table.order
            if not residual.is_zero():
                out.append((i, j, residual))
    return out


def column_orthogonality_failures(table: CharacterTable) -> list[tuple[int, int, Cyclotomic]]:
    """Column pairs violating sum_i chi_i(c) conj(chi_i(c')) = delta * |C_G(c)|."""
    out = []
    cols = [table.column(c) for c in range(table.nclasses)]
    for a in range(len(cols)):
        for b in range(a, len(cols)):
            total = Cyclotomic.rational(0)
            for x, y in zip(cols[a], cols[b]):
                if not x.is_zero() and not y.is_zero():
                    total = total + x * y.conjugate()
            if a == b:
                total = total - Fraction(table.order, table.classes[a].size)
            if not total.is_zero():
                out.append((a, b, total))
    return out


def prime_of_p_group(table: CharacterTable) -> int | None:
    """The prime p if the order is a power of p (None for the trivial group)."""
    n = table.order
    if n == 1:
        return None
    p = 2
    while n % p:
        p += 1
    while n % p == 0:
        n //= p
    if n != 1:
        raise TableError(f"order {table.order} is not a prime power")
    return p


def check_p_group(table: CharacterTable) -> list[str]:
    """Classes whose element order is not a power of p (p inferred from the order)."""
    p = prime_of_p_group(table)
    bad = []
    for i, c in enumerate(table.classes):
        m = c.element_order
        while p and m % p == 0:
            m //= p
        if m != 1:
            bad.append(f"class {i} ({c.name}) has element order {c.element_order}")
    return bad


def class_function_of(table: CharacterTable, v: Sequence[int]) -> tuple[Cyclotomic, ...]:
    """Values sum_i v_i chi_i(c) for every class c."""
    if len(v) != len(table.irreducibles):
        raise ValueError(f"vector of length {len(v)} for {len(table.irreducibles)} irreducibles")
    values = []
    for c in range(table.nclasses):
        total = Cyclotomic.rational(0)
        for m, row in zip(v, table.irreducibles):
            if m:
                total = total + int(m) * row[c]
        values.append(total)
    return tuple(values)


def regular_character(table: CharacterTable) -> MultiplicityVector:
    """Multiplicities of the regular character: the degrees themselves."""
    rho = table.degrees
    values = class_function_of(table, rho)
    if values[0] != table.order or any(not x.is_zero() for x in values[1:]):
        raise TableError("regular character does not vanish off the identity")
    return rho
