import json

import pytest
from hypothesis import given, settings, strategies as st

from cellres import io
from cellres.algebra import Ring, QQ
from cellres.complex import polygon_complex
from cellres.resolution import taylor, koszul, cellular_free_complex
from cellres.morphism import CellResMorphism, ChainMap, multiplication_morphism
from cellres.constructions import Category, Diagram
from cellres.morse import greedy_matching_search
from cellres.sampling import make_rng, random_generators, random_labeled_complex, face_inclusion

R = Ring("xyz")
seeds = st.integers(0, 10 ** 6)


def _through_text(obj):
    return json.loads(io.dumps(obj))


def test_ids_round_trip():
    for x in [0, "a", (0, 1), ((0, 1), "G", 2), ()]:
        assert io.decode_id(_through_text(io.encode_id(x))) == x


def test_parse_field():
    assert io.parse_field("q") is QQ and io.parse_field(None) is QQ
    assert io.parse_field("fp:7").p == 7
    for bad in ["fp:4", "fp:1", "gf7", "fp:"]:
        with pytest.raises(io.FormatError):
            io.parse_field(bad)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_complex_round_trip(seed):
    X = random_labeled_complex(make_rng(seed), R)
    Y = io.complex_from_json(_through_text(io.complex_to_json(X)))
    assert sorted(Y.ids(), key=repr) == sorted(X.ids(), key=repr)
    assert Y.labels() == X.labels()
    assert cellular_free_complex(Y) == cellular_free_complex(X)


def test_complex_with_overrides_round_trip():
    Y = polygon_complex(R, {"a": "x", "b": "y", "c": "z", "d": "x*y"}, [("a", "b", "c", "d")])
    Z = io.complex_from_json(_through_text(io.complex_to_json(Y)))
    assert Z.labels() == Y.labels()


def test_ideal_round_trip():
    ring, gens = io.ideal_from_json({"variables": ["a", "b"], "generators": ["a*b", [0, 2], "a^3"]})
    assert gens == [(1, 1), (0, 2), (3, 0)]
    assert io.ideal_from_json(io.ideal_to_json(ring, gens))[1] == gens


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_resolution_round_trip(seed):
    rng = make_rng(seed)
    F = taylor(R, random_generators(rng, R, rng.randint(1, 4)))
    G = io.resolution_from_json(_through_text(io.resolution_to_json(F)))
    assert G == F and G.complex is not None


def test_resolution_from_other_files():
    F = taylor(R, ["x", "y*z"])
    assert io.resolution_from_json({"variables": list("xyz"), "generators": ["x", "y*z"]}) == F
    assert io.resolution_from_json(io.complex_to_json(F.complex)) == F
    # without a complex one is derived from the labels
    data = io.resolution_to_json(F)
    del data["complex"]
    G = io.resolution_from_json(data)
    assert G.complex is not None and G == cellular_free_complex(G.complex)


def test_resolution_format_errors():
    with pytest.raises(io.FormatError):
        io.resolution_from_json({"variables": ["x"]})
    with pytest.raises(io.FormatError):
        io.resolution_from_json({"cells": []})
    data = io.resolution_to_json(koszul(Ring("xy")))
    data["differentials"].pop()
    with pytest.raises(io.FormatError):
        io.resolution_from_json(data)
    with pytest.raises(io.FormatError):
        io.complex_from_json({"variables": ["x"], "cells": [{"id": 0}]})
    with pytest.raises(io.FormatError):
        io.complex_from_json({"variables": ["x"], "cells": [{"id": 0, "dim": 0}], "vertex_labels": {"1": [1]}})


def test_morphism_round_trip(tmp_path):
    F = taylor(R, ["x", "y"])
    G = taylor(R, ["x", "y", "z"])
    i = face_inclusion(F, G, [0, 1])
    m = io.morphism_from_json(_through_text(io.morphism_to_json(i)))
    assert isinstance(m, CellResMorphism) and m.verified
    assert m.chain == i.chain
    # by-reference source and target
    (tmp_path / "f.json").write_text(io.dumps(io.resolution_to_json(F)))
    (tmp_path / "g.json").write_text(io.dumps(io.resolution_to_json(G)))
    data = _through_text(io.morphism_to_json(i, "f.json", "g.json"))
    assert io.morphism_from_json(data, str(tmp_path)).chain == i.chain
    # no carrier table: a bare chain map
    del data["carrier"]
    h = io.morphism_from_json(data, str(tmp_path))
    assert isinstance(h, ChainMap) and h == i.chain


def test_diagram_round_trip():
    F = taylor(R, ["x", "y"])
    G = taylor(R, ["x", "y", "z"])
    mu = multiplication_morphism(G, (0, 0, 1))
    cat = Category(["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c")})
    D = Diagram(cat, {"a": F, "b": G, "c": G}, {"f": face_inclusion(F, G, [0, 1]), "g": mu})
    E = io.diagram_from_json(_through_text(io.diagram_to_json(D)))
    assert sorted(E.category.objects) == ["a", "b", "c"]
    for a in ("f", "g"):
        assert E.arrows[a].chain == D.arrows[a].chain and E.arrows[a].verified


def test_matching_and_steps():
    F = taylor(R, ["x", "x"])
    M = greedy_matching_search(F, allow_degree_zero=False)
    kind, back = io.matching_from_json(_through_text(io.matching_to_json(M)))
    assert kind == "gamma" and back == list(M)
    assert io.matching_from_json({"cells": [[[0, 1], [1]], [[0], None]]}) == \
        ("cells", [((0, 1), (1,)), ((0,), None)])
    steps = [("collapse", (0, 1, 2), (0, 2)), ("expand", (0,), "lo", "up", (1, 1, 0))]
    assert io.steps_from_json(_through_text(io.steps_to_json(steps))) == steps
    with pytest.raises(io.FormatError):
        io.steps_from_json([["twist", 1, 2]])


def test_write_json(tmp_path):
    p = tmp_path / "x.json"
    text = io.write_json({"b": 1, "a": [2]}, str(p))
    assert io.read_json(str(p)) == {"a": [2], "b": 1}
    assert text == io.dumps({"a": [2], "b": 1})
    assert io.write_json({"a": 1}, "-") == '{\n "a": 1\n}\n'
