import copy
import json

import pytest
from hypothesis import given, strategies as st

from parsumlab.combinatorics import DeltaMap, Germ
from parsumlab.errors import InvalidStructure, SchemaViolation
from parsumlab.fincat import Functor, chaotic_category, ordinal_category, terminal_category
from parsumlab.io import (decode_value, dumps, encode_value, envelope, load, same_category, same_sset, save,
                          tabulate, validate_document)
from parsumlab.parsummable import example_finite_subsets
from parsumlab.sset import boundary_simplex, nerve
from parsumlab.symmon import capped_finite_sets, relabelled_copy, strictify_unit


def test_roundtrip_finite_subsets_parsummable():
    T = tabulate(example_finite_subsets(3))
    assert load(dumps(save(T))) == T
    assert validate_document(save(T)) == (True, {})


@pytest.mark.parametrize("C", [chaotic_category("ab"), ordinal_category(3), terminal_category()])
def test_roundtrip_category(C):
    assert same_category(load(save(C)), C)


def test_roundtrip_sset_keeps_degeneracies():
    for X in (boundary_simplex(2, 2), nerve(chaotic_category("ab"), 2)):
        assert same_sset(load(json.loads(dumps(save(X)))), X)


def test_roundtrip_symmon_and_functor(tmp_path):
    for C in (capped_finite_sets(2), relabelled_copy(capped_finite_sets(1), 2), strictify_unit(capped_finite_sets(1)).C0):
        back = load(save(C))
        assert back.tensor_table == C.tensor_table and back.assoc == C.assoc and back.sym == C.sym
    F = Functor.constant(ordinal_category(1), terminal_category(), "*")
    path = tmp_path / "f.json"
    save(F, str(path))
    G = load(str(path))
    assert G.obj == F.obj and G.mor == F.mor


def test_roundtrip_delta_map():
    d = DeltaMap(2, 3, (0, 2, 3))
    assert load(save(d)) == d


def test_save_is_deterministic():
    T = tabulate(example_finite_subsets(3))
    assert dumps(save(T)) == dumps(save(tabulate(example_finite_subsets(3))))


def test_malformed_composition_table():
    doc = save(chaotic_category("ab"))
    doc["data"]["composition"][0] = [0, 1]
    with pytest.raises(SchemaViolation) as exc:
        load(doc)
    assert exc.value.path == "$.data.composition[0]"
    ok, ce = validate_document(doc)
    assert not ok and ce["path"] == "$.data.composition[0]"


def test_version_mismatch():
    doc = save(chaotic_category("ab"))
    doc["version"] = 99
    with pytest.raises(SchemaViolation) as exc:
        load(doc)
    assert exc.value.path == "$.version"


def test_bad_json_and_kind():
    with pytest.raises(SchemaViolation):
        load("{not json")
    with pytest.raises(SchemaViolation) as exc:
        load(envelope("bogus", {}))
    assert exc.value.path == "$.kind"


def test_out_of_range_index():
    doc = save(chaotic_category("ab"))
    doc["data"]["morphisms"][0]["src"] = 7
    with pytest.raises(SchemaViolation) as exc:
        load(doc)
    assert exc.value.path == "$.data.morphisms[0].src"


def test_validate_rejects_law_violations():
    doc = save(chaotic_category("ab"))
    bad = copy.deepcopy(doc)
    rows = bad["data"]["composition"]
    ident = bad["data"]["identities"][0]
    for row in rows:
        if row[2] != ident and row[0] != ident and row[1] != ident:
            row[2] = ident
            break
    ok, ce = validate_document(bad)
    assert not ok
    ok, ce = validate_document(envelope("delta_map", {"m": 2, "n": 2, "values": [0, 2, 1]}))
    assert not ok and ce["error"] == "InvalidStructure"
    with pytest.raises(InvalidStructure):
        load(envelope("delta_map", {"m": 2, "n": 2, "values": [0, 2, 1]}))


def test_corrupted_sum_table_rejected():
    T = tabulate(example_finite_subsets(3))
    doc = save(T)
    rows = doc["data"]["sums"]
    row = next(r for r in rows if r[0] != r[2] and r[1] != r[2])
    row[2] = row[0]
    ok, ce = validate_document(doc)
    assert not ok and ce["violations"]


hashable = st.recursive(
    st.one_of(st.none(), st.booleans(), st.integers(-5, 50), st.text(max_size=4),
              st.dictionaries(st.integers(1, 9), st.integers(1, 9), max_size=4)
              .filter(lambda d: len(set(d.values())) == len(d)).map(Germ)),
    lambda inner: st.one_of(st.lists(inner, max_size=3).map(tuple), st.frozensets(inner, max_size=3)),
    max_leaves=10)
values = st.one_of(hashable, st.lists(hashable, max_size=3))


@given(values)
def test_value_roundtrip(v):
    assert decode_value(json.loads(json.dumps(encode_value(v)))) == v
