import itertools

import pytest

from fusionchar import data_path
from fusionchar.chartab import class_function_of, parse_table, regular_character
from fusionchar.fusion import (CHECK_LEVEL, FusionError, FusionSpec, constraints_of,
                               fusion_to_document, k_of, load_fusion, make_constraints,
                               validate_fusion)
from fusionchar.intlinalg import echelon

from conftest import fixture_json


def test_d16_constraint_row(d16, d16_fusion):
    system = constraints_of(d16, d16_fusion)
    assert system.rows == ((0, 0, 1, 1, 1, -1, -1),)
    assert k_of(d16_fusion) == 6
    assert system.rank() == 1


def test_trivial_fusion_has_no_constraints(d16):
    system = constraints_of(d16, FusionSpec.trivial(d16))
    assert system.rows == () and system.k == 7


def test_d8_s4_rank(d8, d8_fusion):
    system = constraints_of(d8, d8_fusion)
    assert k_of(d8_fusion) == 4
    assert system.rank() == d8.nclasses - k_of(d8_fusion)


def test_check_level_label():
    assert CHECK_LEVEL == "necessary-conditions-only"


@pytest.mark.parametrize("parts,needle", [
    ([[0, 1], [2], [3], [4], [5], [6]], "identity"),
    ([[0], [1, 3], [2], [4], [5], [6]], "element orders"),
    ([[0], [1], [2], [3], [4], [5]], "not covered"),
    ([[0], [1], [2], [3], [4, 5], [6], [6]], "occurs in parts"),
    ([[0], [1], [2], [3], [4, 5], [6, 9]], "out of range"),
])
def test_invalid_partitions(d16, parts, needle):
    spec = FusionSpec.from_parts("D16", parts)
    violations = validate_fusion(d16, spec)
    assert any(needle in v for v in violations)
    with pytest.raises(FusionError):
        constraints_of(d16, spec)


def test_power_map_closure(d8):
    # fusing r^2 with s is order-compatible but r squares to r^2 only
    doc = fixture_json("d8.json")
    doc["classes"][2]["power_maps"] = {"2": 1}
    table = parse_table(doc)
    assert validate_fusion(table, FusionSpec.from_parts("D8", [[0], [1, 3], [2], [4]])) == []
    doc["classes"][3]["element_order"] = 4
    doc["classes"][3]["power_maps"] = {"2": 1}
    doc["classes"][2]["power_maps"] = {"2": 4}
    relaxed = parse_table(doc, validate=False)
    out = validate_fusion(relaxed, FusionSpec.from_parts("D8", [[0], [1], [2, 3], [4]]))
    assert any("power map" in v for v in out)


def test_fused_values_constant(d16, d16_fusion):
    # a vector is annihilated iff its class function is constant on every part
    system = constraints_of(d16, d16_fusion)
    for v in itertools.product(range(3), repeat=7):
        values = class_function_of(d16, v)
        constant = all(len({values[i] for i in part}) == 1 for part in d16_fusion.parts)
        assert constant == (not any(system.apply(v)))


def test_representative_independence(d16):
    # taking a different representative gives the same row space
    spec = FusionSpec.from_parts("D16", [[0], [1], [2], [3], [4, 5], [6]])
    system = constraints_of(d16, spec)
    swapped = FusionSpec("D16", ((0,), (1,), (2,), (3,), (5, 4), (6,)))
    other = constraints_of(d16, swapped)
    assert echelon(system.rows)[0] == echelon(other.rows)[0]
    assert system.digest() == other.digest()


@pytest.mark.parametrize("table,fusion", [
    ("d16.json", "d16_pgl27.json"), ("d8.json", "s4_on_d8_fusion.json"),
    ("s4_sylow2_table.json", "s4_sylow2_fusion.json"),
    ("pgl27_sylow2_table.json", "pgl27_sylow2_fusion.json"),
    ("autm22_sylow2_table.json", "autm22_sylow2_fusion.json"),
])
def test_regular_character_is_invariant(table, fusion):
    t = parse_table(data_path(table))
    spec = load_fusion(data_path(fusion))
    assert validate_fusion(t, spec) == []
    system = constraints_of(t, spec)
    assert not any(system.apply(regular_character(t)))
    assert system.rank() == t.nclasses - k_of(spec)


def test_make_constraints_normalises():
    system = make_constraints(3, [[0, 0, 0], [2, -4, 6], [-1, 2, -3], [0, -3, 3]])
    assert system.rows == ((1, -2, 3), (0, 1, -1))


def test_digest_is_a_row_space_invariant():
    a = make_constraints(3, [[1, 1, 0], [0, 1, 1]])
    b = make_constraints(3, [[1, 2, 1], [1, 0, -1]])
    c = make_constraints(3, [[1, 1, 0]])
    assert a.digest() == b.digest() != c.digest()
    assert a.reduced().digest() == a.digest()


def test_fusion_round_trip(d16_fusion):
    assert load_fusion(fusion_to_document(d16_fusion)) == d16_fusion


@pytest.mark.parametrize("doc", [{"partition": [[0]]}, {"table": "x", "partition": [0]},
                                 {"table": "x", "partition": [[-1]]}])
def test_bad_fusion_documents(doc):
    with pytest.raises(FusionError):
        load_fusion(doc)


def _compose(p, q):
    # apply q first, then p
    return tuple(p[q[i]] for i in range(len(q)))


def _inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _closure(gens):
    elems = {tuple(range(4))}
    frontier = list(elems)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                x = _compose(g, h)
                if x not in elems:
                    elems.add(x)
                    nxt.append(x)
        frontier = nxt
    return elems


def _classes(group, acting):
    seen, classes = set(), []
    for g in sorted(group):
        if g in seen:
            continue
        cls = {_compose(_compose(h, g), _inverse(h)) for h in acting} & group
        seen |= cls
        classes.append(frozenset(cls))
    return classes


def _order(g):
    e, x, n = tuple(range(4)), g, 1
    while x != e:
        x, n = _compose(x, g), n + 1
    return n


def test_s4_fusion_on_d8_from_permutations(d8, d8_fusion):
    r = (1, 2, 3, 0)          # (1234)
    s = (2, 1, 0, 3)          # (13)
    d8_elems = _closure([r, s])
    s4 = set(itertools.permutations(range(4)))
    assert len(d8_elems) == 8
    p_classes = _classes(d8_elems, d8_elems)
    # name the D8 classes as in the table: 1, r^2, r, s, rs
    r2 = _compose(r, r)
    by_rep = {}
    for c in p_classes:
        if tuple(range(4)) in c:
            by_rep[0] = c
        elif r2 in c:
            by_rep[1] = c
        elif r in c:
            by_rep[2] = c
        elif s in c:
            by_rep[3] = c
        else:
            by_rep[4] = c
    assert [len(by_rep[i]) for i in range(5)] == [c.size for c in d8.classes]
    assert [_order(next(iter(by_rep[i]))) for i in range(5)] == [c.element_order for c in d8.classes]
    # S4-conjugacy restricted to D8
    parts = []
    for i in range(5):
        rep = next(iter(by_rep[i]))
        orbit = {_compose(_compose(h, rep), _inverse(h)) for h in s4}
        part = sorted(j for j in range(5) if by_rep[j] <= orbit)
        if part not in parts:
            parts.append(part)
    assert FusionSpec.from_parts("D8", parts).parts == tuple(sorted(d8_fusion.parts))
    assert validate_fusion(d8, d8_fusion) == []
