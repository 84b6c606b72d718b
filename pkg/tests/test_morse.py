import pytest
from hypothesis import given, settings, strategies as st

from cellres.algebra import Ring
from cellres.complex import path_complex
from cellres.resolution import (taylor, cellular_free_complex, is_acyclic_complex, tor_betti, is_minimal)
from cellres.constructions import simplex_resolution
from cellres import morse as mo
from cellres.sampling import make_rng, random_generators, random_exponent

R = Ring("xyz")
seeds = st.integers(0, 10 ** 6)


def _taylor(seed, k=None):
    rng = make_rng(seed)
    return taylor(R, random_generators(rng, R, k or rng.randint(1, 4)))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_greedy_reduction(seed):
    F = _taylor(seed)
    M = mo.greedy_matching_search(F)
    assert mo.validate_matching(mo.gamma_graph(F), M).ok
    red = mo.morse_reduce(F, M)
    ids = mo.identities_hold(F, mo._reduce(F, M))
    assert all(ids.values()), ids
    assert red.dual_route_ok
    G = red.reduced
    assert mo.strands_agree(F, G)[0]
    assert is_acyclic_complex(G).ok
    assert tor_betti(G) == tor_betti(F)
    # critical cells count the reduced generators
    assert [len(red.critical[i]) for i in range(F.top + 1)][:G.top + 1] == G.ranks()
    if red.morse_morphism is not None:
        assert red.morse_morphism.verified


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_matching_transfer_round_trip(seed):
    F = _taylor(seed)
    M = mo.greedy_matching_search(F)
    P = mo.matching_transfer(M, F, to="poset")
    assert mo.matching_transfer(P, F, to="gamma") == M
    assert mo.validate_matching(mo.face_poset(F.complex), P).ok


def test_empty_matching_is_identity():
    F = taylor(R, ["x", "y"])
    red = mo.morse_reduce(F, [])
    assert red.reduced == F


def test_reduction_to_minimal():
    # a repeated generator: the Taylor complex on x, x collapses to that of x
    F = taylor(R, ["x", "x"])
    M = mo.greedy_matching_search(F, allow_degree_zero=False)
    red = mo.morse_reduce(F, M)
    assert red.reduced.ranks() == [1, 1] and is_minimal(red.reduced)


def test_invalid_matchings():
    F = taylor(R, ["x", "y"])
    G = mo.gamma_graph(F)
    e = ((2, (0, 1)), (1, (0,)))
    # the entry is y, not a unit
    rep = mo.validate_matching(G, [e])
    assert not rep.ok and any("invertible" in r for r in rep.reasons)
    with pytest.raises(mo.MorseError):
        mo.morse_reduce(F, [e])
    rep = mo.validate_matching(G, [((2, (0, 1)), (0, 0))])
    assert not rep.ok and "not an edge" in rep.reasons[0]
    T = simplex_resolution(R, 2)
    G = mo.gamma_graph(T)
    rep = mo.validate_matching(G, [((2, (0, 1)), (1, (0,))), ((2, (0, 1)), (1, (1,)))])
    assert not rep.ok and any("twice" in r for r in rep.reasons)


def test_cycle_detected():
    T = simplex_resolution(R, 3)
    M = mo.matching_from_cells(T, [((0, 1), (0,)), ((1, 2), (1,)), ((0, 2), (2,))])
    rep = mo.validate_matching(mo.gamma_graph(T), M)
    assert not rep.ok and rep.cycle
    with pytest.raises(mo.MorseError) as e:
        mo.morse_reduce(T, M)
    assert e.value.witness


def test_matching_with_empty_face():
    T = simplex_resolution(R, 2)
    M = mo.matching_from_cells(T, [((0,), None), ((0, 1), (1,))])
    # the edge with unit labels resolves S/S = 0 and collapses completely
    red = mo.morse_reduce(T, M)
    assert red.reduced.ranks() == [0]


def test_dot_export():
    F = taylor(R, ["x", "x"])
    M = mo.greedy_matching_search(F, allow_degree_zero=False)
    text = mo.gamma_graph(F).to_dot(M)
    assert text.startswith("digraph") and "dir=back" in text


@settings(max_examples=40, deadline=None)
@given(seeds, st.booleans())
def test_expand_then_collapse(seed, bump):
    rng = make_rng(seed)
    F = _taylor(seed)
    like = rng.choice([g for i in range(1, F.top + 1) for g in F.module(i).ids])
    i = next(k for k in range(1, F.top + 1) if like in F.module(k))
    lab = F.degree(i, like)
    if bump:
        lab = tuple(a + b for a, b in zip(lab, random_exponent(rng, 3, 1, allow_one=True)))
    up = mo.elementary_expansion(F, like, "lo", "up", lab)
    assert up.after.ranks()[i] == F.ranks()[i] + 1
    assert is_acyclic_complex(up.after).ok
    assert tor_betti(up.after) == tor_betti(F)
    assert mo.elementary_collapse(up.after, ("up", "lo")).after == F


def test_expansion_errors():
    F = taylor(R, ["x", "y"])
    with pytest.raises(mo.MorseError):
        mo.elementary_expansion(F, (0,), "a", "b", (0, 1, 0))
    with pytest.raises(mo.MorseError):
        mo.elementary_expansion(F, (0,), (1,), "b")
    with pytest.raises(mo.MorseError):
        mo.elementary_expansion(F, 0, "a", "b")


def test_collapse_errors():
    F = taylor(R, ["x", "x*y"])
    # (1,) is a facet of the edge but with a different label
    with pytest.raises(mo.MorseError):
        mo.elementary_collapse(F, ((0, 1), (0,)))
    step = mo.elementary_collapse(F, ((0, 1), (1,)))
    assert step.free_face and step.after.ranks() == [1, 1]


def test_deformation_reports():
    S = Ring("abcd")
    F = taylor(S, ["ab", "bc", "cd"])
    G = cellular_free_complex(path_complex(S, [S.monomial(g) for g in ["ab", "bc", "cd"]]))
    assert mo.verify_formal_deformation(F, G, [("collapse", (0, 1, 2), (0, 2))]).ok
    bad = mo.verify_formal_deformation(F, G, [])
    assert not bad.ok and bad.failed_step == 0
    bad = mo.verify_formal_deformation(F, G, [("collapse", (0, 1, 2), (0, 1))])
    assert not bad.ok and bad.failed_step == 0
    with pytest.raises(mo.MorseError):
        mo.apply_step(F, ("twist", 1, 2))
