"""regenerate the sample input files used by the README and the CLI tests"""

import json
import os

from cellres import io
from cellres.algebra import Ring, GradedMatrix, Polynomial
from cellres.complex import path_complex
from cellres.resolution import taylor, cellular_free_complex
from cellres.morphism import CellularMap, ChainMap, CellResMorphism, morphism_from_cellular
from cellres.sampling import face_inclusion

HERE = os.path.dirname(os.path.abspath(__file__))


def put(name, obj):
    with open(os.path.join(HERE, name), "w") as fh:
        fh.write(io.dumps(obj))


def main():
    R = Ring("abcd")
    put("ideal_abcd.json", {"variables": list("abcd"), "generators": ["ab", "bc", "cd"]})
    put("koszul_xy.json", {"variables": ["x", "y"]})
    put("itercone_good.json", {"variables": ["x", "y"], "generators": ["x^2", "x*y", "y^2"]})
    put("itercone_bad.json", {"variables": ["x", "y"], "generators": ["x^2", "y^2", "x*y"]})
    # an edge whose boundary does not square to zero with the augmentation
    put("bad_complex.json", {"variables": ["x", "y"],
                             "cells": [{"id": 0, "dim": 0, "boundary": []},
                                       {"id": 1, "dim": 0, "boundary": []},
                                       {"id": "e", "dim": 1, "boundary": [[0, 1], [1, 1]]}],
                             "vertex_labels": {"0": [1, 0], "1": [0, 1]}})
    F = taylor(R, ["ab", "bc", "cd"])
    put("taylor_abcd.json", io.resolution_to_json(F))
    put("morse_edge.json", {"cells": [[[0, 1, 2], [0, 2]]]})
    put("matching_empty.json", [])
    put("deformation_taylor_min.json", {"steps": [["collapse", [0, 1, 2], [0, 2]]]})
    P = cellular_free_complex(path_complex(R, [R.monomial(s) for s in ("ab", "bc", "cd")]))
    put("path_abcd.json", io.resolution_to_json(P))
    # identity embedding of the minimal resolution into the Taylor resolution
    car = {0: {(0,)}, 1: {(1,)}, 2: {(2,)},
           (0, 1): set(F.complex.closure([(0, 1)])), (1, 2): set(F.complex.closure([(1, 2)]))}
    m = morphism_from_cellular(CellularMap(P.complex, F.complex, car), P, F)
    put("cone_morphism.json", io.morphism_to_json(m, "path_abcd.json", "taylor_abcd.json"))

    # a vertex-to-vertex candidate that is cellular but has no f_2
    S = Ring("xy")
    K = taylor(S, ["x", "y"])
    G = taylor(S, ["x*y", "x*y"])
    # f_0 is induced by the labels, f_1 sends vertices to vertices, f_2 = 0
    one = Polynomial.constant(2)
    f1 = GradedMatrix(K.module(1), G.module(1), {((0,), (0,)): one, ((1,), (1,)): one})
    h = ChainMap(K, G, {0: None, 1: f1})
    g = CellularMap(K.complex, G.complex, {(0,): {(0,)}, (1,): {(1,)}, (0, 1): set(G.complex.ids())})
    put("koszul_xy_res.json", io.resolution_to_json(K))
    put("koszul_xyxy_res.json", io.resolution_to_json(G))
    put("bad_morphism.json", io.morphism_to_json(CellResMorphism(h, g), "koszul_xy_res.json",
                                                 "koszul_xyxy_res.json"))

    # the span x, y -> x, y, z and x, y -> path xy, y^2, yz
    T = Ring("xyz")
    A = taylor(T, ["x", "y"])
    B = taylor(T, ["x", "y", "z"])
    C = cellular_free_complex(path_complex(T, [T.monomial(s) for s in ("x*y", "y^2", "y*z")]))
    fAB = face_inclusion(A, B, [0, 1])
    gAC = morphism_from_cellular(CellularMap(A.complex, C.complex,
                                             {(0,): {0}, (1,): {1}, (0, 1): {0, 1, (0, 1)}}), A, C)
    put("span_a.json", io.resolution_to_json(A))
    put("span_b.json", io.resolution_to_json(B))
    put("span_c.json", io.resolution_to_json(C))
    put("span_diagram.json", {
        "objects": {"a": "span_a.json", "b": "span_b.json", "c": "span_c.json"},
        "arrows": [{"name": "f", "src": "a", "dst": "b",
                    "morphism": io.morphism_to_json(fAB, "span_a.json", "span_b.json")},
                   {"name": "g", "src": "a", "dst": "c",
                    "morphism": io.morphism_to_json(gAC, "span_a.json", "span_c.json")}],
        "identify": []})


if __name__ == "__main__":
    main()
