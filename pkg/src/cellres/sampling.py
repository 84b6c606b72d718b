"""
Random small instances for property suites. Everything is driven by an
explicit random.Random so runs with the same seed are identical.
"""

import random

from .algebra import GradedMatrix, Polynomial
from .complex import simplex_complex
from .resolution import taylor, minimal_generators
from .morphism import CellularMap, morphism_from_cellular


def make_rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_exponent(rng, n, maxdeg=2, allow_one=False):
    while True:
        e = tuple(rng.randint(0, maxdeg) for _ in range(n))
        if allow_one or any(e):
            return e


def random_generators(rng, ring, k, maxdeg=2, minimal=True):
    "k distinct nonconstant monomials, an antichain when minimal"
    out = []
    tries = 0
    while len(out) < k and tries < 200:
        tries += 1
        e = random_exponent(rng, ring.n, maxdeg)
        if e in out:
            continue
        cand = out + [e]
        if minimal and len(minimal_generators(cand)) != len(cand):
            continue
        out.append(e)
    return out


def random_labeled_complex(rng, ring, max_cells=8, max_vertices=4, maxdeg=2):
    """a random simplicial subcomplex of a simplex with random vertex labels,
    at most max_cells cells"""
    nv = rng.randint(1, max_vertices)
    labels = [random_exponent(rng, ring.n, maxdeg, allow_one=rng.random() < 0.1) for _ in range(nv)]
    S = simplex_complex(ring, labels)
    faces = S.ids()
    rng.shuffle(faces)
    keep = set()
    for f in faces:
        if rng.random() < 0.5:
            continue
        new = keep | set(S.closure([f]))
        if len(new) <= max_cells:
            keep = new
    if not keep:
        keep = {(0,)}
    cells = [c for c in S.cells() if c.id in keep]
    vl = {v: e for v, e in S.vertex_labels.items() if v in keep}
    return S.with_cells(cells, vl, {})


def face_inclusion(F, G, vmap, f0=None):
    """the cellular morphism between simplex-supported resolutions sending the
    vertex (i,) of F to (vmap[i],) of G and faces to the spanned faces"""
    car = {}
    for c in F.complex.ids():
        img = tuple(sorted(vmap[i] for i in c))
        car[c] = set(G.complex.closure([img]))
    g = CellularMap(F.complex, G.complex, car)
    return morphism_from_cellular(g, F, G, f0=f0)


def random_span(rng, ring, maxdeg=2):
    """F = Taylor(A), G = Taylor(A + B), H = Taylor(mA + C) with the face
    inclusions F -> G and F -> H; the second one shifts by m"""
    A = random_generators(rng, ring, rng.randint(1, 2), maxdeg)
    B = [e for e in random_generators(rng, ring, 3, maxdeg) if e not in A][:rng.randint(0, 1)]
    m = random_exponent(rng, ring.n, 1, allow_one=True)
    mA = [tuple(a + b for a, b in zip(e, m)) for e in A]
    C = [e for e in random_generators(rng, ring, 3, maxdeg) if e not in mA][:rng.randint(0, 1)]
    F = taylor(ring, A)
    G = taylor(ring, A + B)
    H = taylor(ring, mA + C)
    iG = face_inclusion(F, G, list(range(len(A))))
    f0 = GradedMatrix(F.module(0), H.module(0),
                      {(H.module(0).ids[0], F.module(0).ids[0]): Polynomial.monomial(m)})
    iH = face_inclusion(F, H, list(range(len(A))), f0=f0)
    return F, G, H, iG, iH
