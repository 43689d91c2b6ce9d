import copy
import json

import pytest

from fusionchar import data_path
from fusionchar.chartab import (TableError, TableFormatError, check_p_group, class_function_of,
                                column_orthogonality_failures, inner_product,
                                orthogonality_failures, parse_table, prime_of_p_group,
                                regular_character, table_to_document)
from fusionchar.cyclotomic import parse_cyclo

from conftest import fixture_json

ALL_TABLES = ["d16.json", "c2.json", "d8.json", "s4_sylow2_table.json", "pgl27_sylow2_table.json",
              "autm22_sylow2_table.json", "s10_sylow2_table.json", "s12_sylow3_table.json"]


@pytest.mark.parametrize("name", ALL_TABLES)
def test_shipped_tables_are_valid(name):
    table = parse_table(data_path(name))
    assert orthogonality_failures(table) == []
    assert column_orthogonality_failures(table) == []
    assert check_p_group(table) == []
    assert sum(d * d for d in table.degrees) == table.order


def test_d16_metadata(d16):
    assert d16.order == 16 and d16.nclasses == 7
    assert d16.degrees == (1, 1, 1, 1, 2, 2, 2)
    assert prime_of_p_group(d16) == 2


def test_sign_flip_breaks_orthogonality():
    doc = fixture_json("d16.json")
    doc["irreducibles"][5][1] = "-E(8)-E(8)^7"
    with pytest.raises(TableError) as info:
        parse_table(doc)
    pairs = {(i, j) for i, j, _ in info.value.failures}
    assert (5, 6) in pairs
    assert not isinstance(info.value, TableFormatError)
    residual = dict(((i, j), r) for i, j, r in info.value.failures)[(5, 6)]
    assert not residual.is_zero()


def _broken(mutate):
    doc = fixture_json("d16.json")
    mutate(doc)
    return doc


@pytest.mark.parametrize("mutate,message", [
    (lambda d: d.update(order=32), "sum to 16"),
    (lambda d: d["classes"][1].update(size=3), "does not divide"),
    (lambda d: d["irreducibles"].pop(), "dimension mismatch"),
    (lambda d: d["irreducibles"][4].__setitem__(0, "3"), "degree-sum"),
    (lambda d: d.update(conductor=4), "conductor 8 does not divide 4"),
    (lambda d: d["classes"][0].update(element_order=2), "identity"),
])
def test_invariant_failures(mutate, message):
    with pytest.raises(TableError, match=message):
        parse_table(_broken(mutate))


@pytest.mark.parametrize("doc", [
    "{not json",
    {"name": "x", "order": 1},
    {"name": "x", "order": 1, "conductor": 1, "classes": [{"name": "1", "size": 1,
     "element_order": 1}], "irreducibles": [["E(0)"]]},
    {"name": "x", "order": "1", "conductor": 1, "classes": [], "irreducibles": []},
])
def test_format_errors(doc):
    with pytest.raises(TableFormatError):
        parse_table(doc)


def test_unvalidated_parse_keeps_bad_table():
    doc = _broken(lambda d: d["irreducibles"][5].__setitem__(1, "-E(8)-E(8)^7"))
    table = parse_table(doc, validate=False)
    assert orthogonality_failures(table)


def test_non_p_group_flagged():
    doc = {"name": "C6", "order": 6, "conductor": 6,
           "classes": [{"name": str(i), "size": 1, "element_order": 6 // __import__("math").gcd(i, 6)}
                       for i in range(6)],
           "irreducibles": [[f"E(6)^{i * j}" for j in range(6)] for i in range(6)]}
    table = parse_table(doc)
    with pytest.raises(TableError, match="prime power"):
        check_p_group(table)


def test_class_function_examples(d16):
    assert class_function_of(d16, [1, 0, 0, 0, 0, 0, 0]) == tuple(d16.irreducibles[0])
    chi36 = class_function_of(d16, [0, 0, 1, 0, 0, 1, 0])
    sqrt2 = parse_cyclo("E(8)+E(8)^7")
    assert chi36 == (3, sqrt2 - 1, -sqrt2 - 1, 1, -1, -1, 1)
    with pytest.raises(ValueError):
        class_function_of(d16, [1, 2])


def test_class_function_is_linear(d16):
    u, v = [1, 0, 2, 0, 1, 3, 0], [0, 4, 1, 1, 0, 0, 2]
    w = [a + b for a, b in zip(u, v)]
    fu, fv = class_function_of(d16, u), class_function_of(d16, v)
    assert class_function_of(d16, w) == tuple(a + b for a, b in zip(fu, fv))


@pytest.mark.parametrize("name", ALL_TABLES)
def test_regular_character(name):
    table = parse_table(data_path(name))
    rho = regular_character(table)
    assert rho == table.degrees
    values = class_function_of(table, rho)
    assert values[0] == table.order


def test_inner_product_normalisation(d16):
    for i, chi in enumerate(d16.irreducibles):
        assert inner_product(d16, chi, chi) == 16


def test_document_round_trip(d16):
    doc = table_to_document(d16)
    again = parse_table(json.dumps(doc))
    assert again == d16
    assert table_to_document(again) == doc


def test_class_function_spec_values(d16):
    sqrt2 = parse_cyclo("E(8)+E(8)^7")
    assert class_function_of(d16, [0, 0, 0, 0, 1, 1, 0]) == (4, sqrt2, -sqrt2, -2, 0, 0, 0)
    assert all(x.is_zero() for x in class_function_of(d16, [0] * 7))
    assert class_function_of(d16, [1, 1, 1, 1, 2, 2, 2]) == (16, 0, 0, 0, 0, 0, 0)
