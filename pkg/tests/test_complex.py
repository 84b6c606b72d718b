from hypothesis import given, settings, strategies as st

from cellres.algebra import Ring, exp_lcm_all, exp_divides
from cellres.complex import (Cell, LabeledComplex, validate_cw, reduced_homology_ranks, is_acyclic_cells,
                             simplex_complex, path_complex, polygon_complex, point_complex, empty_complex,
                             join_complex, disjoint_union, glue_complexes, product_complex, cone_complex,
                             subcomplex_leq, rename_cells, hasse_dot, ComplexError)
from cellres.sampling import make_rng, random_labeled_complex

import pytest

R = Ring("xyz")
seeds = st.integers(0, 10 ** 6)


def _rand(seed, **kw):
    return random_labeled_complex(make_rng(seed), R, **kw)


def _euler(X):
    return sum((-1) ** d * f for d, f in enumerate(X.f_vector()))


def test_simplex_and_sphere():
    S = simplex_complex(R, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert S.f_vector() == [3, 3, 1]
    assert reduced_homology_ranks(S) == [0, 0, 0, 0]
    B = S.with_cells([c for c in S.cells() if c.dim < 2], S.vertex_labels)
    assert reduced_homology_ranks(B) == [0, 0, 1]
    assert S.label((0, 1, 2)) == (1, 1, 1)
    assert validate_cw(S, require_regular=True).regular


def test_empty_and_point():
    E = empty_complex(R)
    assert E.is_empty() and reduced_homology_ranks(E) == [1]
    P = point_complex(R, (1, 0, 0))
    assert is_acyclic_cells(P, P.cells())


def test_polygon_complex():
    V = {"a": "x", "b": "y", "c": "z", "d": "x*y"}
    Y = polygon_complex(R, V, [("a", "b", "c", "d")])
    assert Y.f_vector() == [4, 4, 1]
    assert validate_cw(Y, True).ok
    assert reduced_homology_ranks(Y) == [0, 0, 0, 0]
    assert Y.label(("a", "b", "c", "d")) == (1, 1, 1)


@settings(max_examples=60)
@given(seeds)
def test_random_complexes_valid(seed):
    X = _rand(seed)
    rep = validate_cw(X, require_regular=True)
    assert rep.ok and rep.regular
    lab = X.labels()
    for c in X.cells():
        for f in c.facets():
            assert exp_divides(lab[f], lab[c.id])
        assert lab[c.id] == X.natural_label(c.id)


@settings(max_examples=60)
@given(seeds)
def test_euler_characteristic(seed):
    X = _rand(seed)
    h = reduced_homology_ranks(X)
    # reduced homology starts in degree -1
    assert sum((-1) ** (d - 1) * v for d, v in enumerate(h)) == _euler(X) - 1


@settings(max_examples=40)
@given(seeds)
def test_cone_is_acyclic(seed):
    X = _rand(seed, max_cells=6)
    C = cone_complex(X)
    assert validate_cw(C).ok
    assert all(v == 0 for v in reduced_homology_ranks(C))
    assert len(C) == 2 * len(X) + 1


@settings(max_examples=40)
@given(seeds, seeds)
def test_product_complex(s1, s2):
    X, Y = _rand(s1, max_cells=5), _rand(s2, max_cells=5)
    P = product_complex(X, Y)
    assert validate_cw(P).ok
    assert _euler(P) == _euler(X) * _euler(Y)
    lab = P.labels()
    for (a, b) in P.ids():
        assert lab[(a, b)] == exp_lcm_all([X.label(a), Y.label(b)], 3)


@settings(max_examples=40)
@given(seeds, seeds)
def test_join_and_union(s1, s2):
    X, Y = _rand(s1, max_cells=5), _rand(s2, max_cells=5)
    J = join_complex(X, Y)
    assert validate_cw(J).ok
    assert len(J) == (len(X) + 1) * (len(Y) + 1) - 1
    U = disjoint_union(X, Y)
    assert U.num_components() == X.num_components() + Y.num_components()
    assert U.f_vector()[0] == X.f_vector()[0] + Y.f_vector()[0]


def test_glue_along_vertex():
    X = path_complex(R, [(1, 0, 0), (0, 1, 0)])
    Y = rename_cells(path_complex(R, [(0, 1, 0), (0, 0, 1)]), {0: "p", 1: "q", (0, 1): "pq"})
    G = glue_complexes(X, Y, {"p": 1})
    assert G.f_vector() == [3, 2] and G.num_components() == 1
    assert is_acyclic_cells(G, G.cells())


def test_glue_rejects_mismatch():
    X = path_complex(R, [(1, 0, 0), (0, 1, 0)])
    Y = rename_cells(path_complex(R, [(1, 0, 0), (0, 1, 0)]), {0: "p", 1: "q", (0, 1): "pq"})
    with pytest.raises(ComplexError):
        glue_complexes(X, Y, {"pq": (0, 1)})


def test_validation_failures():
    lab = {0: (1, 0, 0), 1: (0, 1, 0)}
    bad_sign = LabeledComplex(R, [Cell(0, 0), Cell(1, 0), Cell("e", 1, ((0, 1), (1, 1)))], lab)
    assert not validate_cw(bad_sign).ok
    missing = LabeledComplex(R, [Cell(0, 0), Cell("e", 1, ((0, -1), (9, 1)))], lab)
    assert not validate_cw(missing).ok
    nolabel = LabeledComplex(R, [Cell(5, 0)], {})
    assert not validate_cw(nolabel).ok
    # boundary of boundary nonzero
    X = LabeledComplex(R, [Cell(0, 0), Cell(1, 0), Cell("e", 1, ((0, -1), (1, 1))),
                           Cell("f", 2, (("e", 2),))], lab)
    assert not validate_cw(X).ok
    # a digon attached with incidences 2 and -2 is valid but not regular
    D = LabeledComplex(R, [Cell(0, 0), Cell(1, 0), Cell("e", 1, ((0, -1), (1, 1))),
                           Cell("g", 1, ((0, -1), (1, 1))), Cell("f", 2, (("e", 2), ("g", -2)))], lab)
    rep = validate_cw(D)
    assert rep.ok and not rep.regular
    assert not validate_cw(D, require_regular=True).ok
    with pytest.raises(ComplexError):
        LabeledComplex(R, [Cell(0, 0), Cell(0, 0)], lab)


def test_subcomplex_leq():
    S = simplex_complex(R, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    Xb = subcomplex_leq(S, (1, 1, 0))
    assert sorted(Xb.ids()) == sorted([(0,), (1,), (0, 1)])
    assert sorted(subcomplex_leq(S, (1, 1, 0), strict=True).ids()) == [(0,), (1,)]


def test_hasse_dot():
    text = hasse_dot(path_complex(R, [(1, 0, 0), (0, 1, 0)]))
    assert text.startswith("digraph")
    assert '"0" -> "(0,1)" [label="-1"];' in text and '"(0,1)" [label="(0,1)\\nx*y"];' in text
