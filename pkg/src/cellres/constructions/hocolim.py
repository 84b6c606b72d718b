"""
Homotopy colimits of diagrams of cellular resolutions, built two ways: by
gluing mapping cylinders (with simplices patching composable chains) on the
algebraic side, and as a quotient of products with nerves on the cell side.
"""

from ..algebra import Polynomial, GradedFreeModule, GradedMatrix, exp_zero, exp_add
from ..complex import product_complex, validate_cw
from ..resolution import (CellularFreeComplex, cellular_free_complex, attach_complex, betti,
                          find_isomorphism, generator_components)
from .cone import ConstructionError, _shifts
from .limits import nerve_under, quotient_complex, union_of, _cell_image


def _chain_key(i, chain):
    "generator id part for a chain of morphisms starting at i"
    return (i,) + tuple(m.path for m in chain)


def _component_classes(D):
    "union-find of (object, F_0 generator) along all arrows"
    parent = {}
    order = []
    for o in D.category.objects:
        for c in D.objects[o].module(0).ids:
            parent[(o, c)] = (o, c)
            order.append((o, c))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pos = {x: k for k, x in enumerate(order)}
    for a, (s, t) in D.category.arrows.items():
        for c, (r, _) in _shifts(D.arrows[a].chain).items():
            if r is None:
                continue
            x, y = find((s, c)), find((t, r))
            if x != y:
                if pos[y] < pos[x]:
                    x, y = y, x
                parent[y] = x
    return {x: find(x) for x in order}, [x for x in order if find(x) == x]


def hocolim_cylinders(D, check=True):
    """generators (chain, x) for a chain i0 -> i1 -> ... -> ik of non-identity
    morphisms and a cell x of D^i0, in homological degree k + deg x and
    multidegree a_x + shift of the composite; F_0 is one generator per glued
    component. The differential is the alternating sum of the faces, with the
    first face pushing x forward and the last one multiplying by the shift of
    the dropped morphism, followed by (-1)^k chain x dx."""
    if check:
        D.require("homotopy colimit")
    cat = D.category
    ring = D.ring
    n = ring.n
    one = Polynomial.constant(n)
    comp_of, roots = _component_classes(D)
    shifts = {}
    for m in cat.non_identity():
        shifts[m] = _shifts(D.map(m).chain)
    gcomp = {o: generator_components(D.objects[o]) for o in cat.objects}

    def chain_shift(i, chain, x_comp):
        s = exp_zero(n)
        c = x_comp
        for m in chain:
            r, u = shifts[m][c]
            if r is None:
                return None, None
            s = exp_add(s, u)
            c = r
        return s, c

    gens = {}   # degree -> list of (id, degree)
    info = {}
    for i in cat.objects:
        F = D.objects[i]
        for chain in cat.all_chains(i):
            k = len(chain)
            for h in range(1, F.top + 1):
                for x, a in F.module(h):
                    s, _ = chain_shift(i, chain, gcomp[i][(h, x)])
                    if s is None:
                        # the chain kills this component; the cell does not survive
                        continue
                    gid = (_chain_key(i, chain), x)
                    gens.setdefault(k + h, []).append((gid, exp_add(a, s)))
                    info[gid] = (i, chain, h, x)
    top = max(gens) if gens else 0
    mods = [GradedFreeModule([(r, exp_zero(n)) for r in roots], n)]
    for d in range(1, top + 1):
        mods.append(GradedFreeModule(gens.get(d, []), n))
    diffs = []
    for d in range(1, top + 1):
        ent = {}

        def add(r, c, p):
            if p.is_zero():
                return
            q = ent.get((r, c))
            q = p if q is None else q + p
            if q.is_zero():
                ent.pop((r, c), None)
            else:
                ent[(r, c)] = q

        for gid, _ in mods[d]:
            i, chain, h, x = info[gid]
            k = len(chain)
            F = D.objects[i]
            if k >= 1:
                # first face: push x along the first morphism
                g1 = chain[0]
                j = g1.dst
                rest = chain[1:]
                col = D.map(g1).chain[h].column(x)
                for y, p in col.items():
                    add((_chain_key(j, rest), y), gid, p)
                for m in range(1, k):
                    comp = cat.compose(chain[m], chain[m - 1])
                    ch2 = chain[:m - 1] + (comp,) + chain[m + 1:]
                    add((_chain_key(i, ch2), x), gid, one if m % 2 == 0 else -one)
                # last face
                s_all, _ = chain_shift(i, chain, gcomp[i][(h, x)])
                s_pre, _ = chain_shift(i, chain[:-1], gcomp[i][(h, x)])
                u = tuple(a - b for a, b in zip(s_all, s_pre))
                add((_chain_key(i, chain[:-1]), x), gid, Polynomial.monomial(u, (-1) ** k))
            sg = (-1) ** k
            if h >= 2:
                for f, p in F.d(h).column(x).items():
                    add((_chain_key(i, chain), f), gid, p if sg == 1 else -p)
            elif k == 0:
                for c, p in F.d(1).column(x).items():
                    add(comp_of[(i, c)], gid, p)
        diffs.append(GradedMatrix(mods[d], mods[d - 1], ent))
    C = CellularFreeComplex(ring, mods, diffs)
    return attach_complex(C)


def hocolim_nerve(D, check=True):
    """the union of nerve(i under I) x X^i over all objects, with
    (p precomposed with a, x) identified with (p, a(x)) for every
    non-identity a : i -> j; labels glue by lcm"""
    if check:
        D.require("homotopy colimit")
    cat = D.category
    ring = D.ring
    pieces = []
    nerves = {}
    for i in cat.objects:
        N = nerve_under(cat, i, ring)
        nerves[i] = N
        X = D.objects[i].complex
        pieces.append((i, product_complex(N, X) if not X.is_empty() else X))
    U = union_of(ring, pieces)
    pairs, kill = [], []
    for a in cat.non_identity():
        i, j = a.src, a.dst
        m = D.map(a)
        imgs = {x: _cell_image(m, x) for x in D.objects[i].complex.ids()}
        for tau in nerves[j].ids():
            pre = (cat.compose(tau[0], a),) + tau[1:]
            for x, img in imgs.items():
                cell = (i, (pre, x))
                if img is None:
                    kill.append(cell)
                    continue
                y, sg = img
                pairs.append((cell, (j, (tau, y)), sg))
    Q, _, _ = quotient_complex(U, pairs, kill)
    rep = validate_cw(Q)
    if not rep.ok:
        raise ConstructionError("glued complex is not a CW complex: " + "; ".join(rep.messages))
    return cellular_free_complex(Q)


def hocolim(D, method="cylinders"):
    if method == "cylinders":
        return hocolim_cylinders(D)
    if method == "nerve":
        return hocolim_nerve(D)
    raise ValueError("unknown method %s" % method)


def hocolim_compare(D):
    "Betti tables of both constructions and whether they are isomorphic"
    A = hocolim_cylinders(D)
    B = hocolim_nerve(D)
    return {"cylinders": A, "nerve": B, "betti_equal": betti(A) == betti(B),
            "isomorphic": find_isomorphism(A, B) is not None}
