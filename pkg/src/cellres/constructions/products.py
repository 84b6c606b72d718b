"""
Coproducts, tensor products and products with simplices.
"""

from dataclasses import dataclass
from math import comb

from ..algebra import (Polynomial, GradedFreeModule, GradedMatrix, Unknown, solve_graded_system,
                       exp_zero, exp_add, exp_sub, exp_lcm, exp_gcd)
from ..complex import (Cell, LabeledComplex, disjoint_union, product_complex, simplex_complex)
from ..resolution import CellularFreeComplex, cellular_free_complex, attach_complex
from ..morphism import ChainMap, CellularMap, CellResMorphism, identity_morphism, initial_morphism
from .cone import ConstructionError


def _need_complex(F, what):
    if F.complex is None:
        raise ConstructionError("%s needs a resolution with a supporting complex" % what)


# ---------------------------------------------------------------------------
# coproducts

@dataclass
class Coproduct:
    complex: CellularFreeComplex
    inclusions: list  # morphisms from each summand


def _inclusion(F, C, tag):
    "inclusion of F into the union C whose cells are (tag, cell)"
    n = F.n
    one = Polynomial.constant(n)
    X, Y = F.complex, C.complex
    maps = {}
    ent = {}
    for k in range(X.num_components()):
        cells = X.component_cells(k)
        if cells:
            kk = Y.component_of((tag, cells[0].id))
            ent[(C.component_generator(kk), F.component_generator(k))] = one
    maps[0] = GradedMatrix(F.module(0), C.module(0), ent)
    for i in range(1, F.top + 1):
        maps[i] = GradedMatrix(F.module(i), C.module(i), {((tag, x), x): one for x in F.module(i).ids})
    car = {x: {(tag, x)} for x in X.ids()}
    return CellResMorphism(ChainMap(F, C, maps), CellularMap(X, Y, car))


def coproduct(F, G):
    """disjoint union; the empty resolution is the initial object and adds
    nothing"""
    _need_complex(F, "coproduct")
    _need_complex(G, "coproduct")
    if F.complex.is_empty():
        return Coproduct(G, [initial_morphism(F, G), identity_morphism(G)])
    if G.complex.is_empty():
        return Coproduct(F, [identity_morphism(F), initial_morphism(G, F)])
    U = disjoint_union(F.complex, G.complex)
    C = cellular_free_complex(U)
    return Coproduct(C, [_inclusion(F, C, 0), _inclusion(G, C, 1)])


def coproduct_factor(cp, maps):
    """the factorization u with u . inclusion_k = maps[k]; built blockwise
    and checked"""
    C = cp.complex
    Z = maps[0].target
    C.n
    if len(maps) != len(cp.inclusions):
        raise ConstructionError("need one map per summand")
    for m, inc in zip(maps, cp.inclusions):
        if m.source != inc.source or m.target != Z:
            raise ConstructionError("cocone does not match the coproduct")
    # solve u . inc_k = m_k jointly; inclusions are shift 0 so this is a
    # plain linear system
    top = max(C.top, Z.top)
    unknowns = [Unknown(C.module(i), Z.module(i)) for i in range(top + 1)]
    eqs = []
    for m, inc in zip(maps, cp.inclusions):
        for i in range(top + 1):
            if i == 0 and m.chain.f0 is None:
                continue
            eqs.append(([(None, i, inc.chain[i])], m.chain[i]))
    sol = solve_graded_system(unknowns, eqs)
    if sol is None:
        return None
    chain = ChainMap(C, Z, {i: M for i, M in enumerate(sol)})
    car = {}
    for m, inc in zip(maps, cp.inclusions):
        for x, ys in inc.cell.carrier.items():
            (y,) = ys
            car[y] = m.cell.carrier[x]
    return CellResMorphism(chain, CellularMap(C.complex, Z.complex, car))


def coproduct_factor_unique(cp, maps):
    "True when the factorization system has a single solution"
    C = cp.complex
    Z = maps[0].target
    top = max(C.top, Z.top)
    unknowns = [Unknown(C.module(i), Z.module(i)) for i in range(top + 1)]
    eqs = []
    shifts = set()
    for m, inc in zip(maps, cp.inclusions):
        for i in range(top + 1):
            eqs.append(([(None, i, inc.chain[i])], m.chain[i]))
            shifts |= m.chain[i].shifts()
    if not shifts:
        shifts = {exp_zero(C.n)}
    rk, nv = solve_graded_system(unknowns, eqs, shifts, count_only=True)
    return rk is not None and rk == nv


def copower(k, F):
    "k-fold coproduct of F with itself; cells are (copy, cell)"
    assert k >= 0
    from ..resolution import initial_object
    _need_complex(F, "copower")
    if k == 0:
        return initial_object(F.ring)
    X = F.complex
    if X.is_empty():
        return F
    cells, vlab, over = [], {}, {}
    for t in range(k):
        for c in X.cells():
            cells.append(Cell((t, c.id), c.dim, tuple(((t, f), v) for f, v in c.boundary)))
        vlab.update({(t, v): e for v, e in X.vertex_labels.items()})
        over.update({(t, v): e for v, e in X.label_overrides.items()})
    return cellular_free_complex(LabeledComplex(X.ring, cells, vlab, over))


# ---------------------------------------------------------------------------
# tensor products

def _scalar_shift0(D, i, what):
    out = {}
    for (r, c), p in D.entries.items():
        if len(p.terms) != 1:
            raise ConstructionError("%s d_%d is not monomial" % (what, i))
        out[(r, c)] = p.single_term()
    return out


def _tensor_ids(F, G):
    def fid(i, x):
        return ("*", x) if i == 0 else x
    return fid


def tensor(F, G, mode="entry"):
    """tensor product of two resolutions.

    mode 'entry': generator x (x) y has degree lcm(a_x, a_y) and each entry is
    the scalar of the factor entry times the monomial forced by the degrees,
    which is the cellular complex of the componentwise join.
    mode 'column': the ordinary tensor product with degrees a_x + a_y,
    rescaled degree by degree so that every column of d_2, d_3, ... has
    monomial gcd 1 (d_1 keeps the labels).
    """
    assert mode in ("entry", "column")
    n = F.n
    top = F.top + G.top
    tag = _tensor_ids(F, G)
    gens = []
    for k in range(top + 1):
        g = []
        for i in range(max(0, k - G.top), min(F.top, k) + 1):
            j = k - i
            for x, a in F.module(i):
                for y, b in G.module(j):
                    g.append(((i, x, j, y), a, b))
        gens.append(g)
    Fd = {i: _scalar_shift0(F.d(i), i, "first factor") for i in range(1, F.top + 1)}
    Gd = {j: _scalar_shift0(G.d(j), j, "second factor") for j in range(1, G.top + 1)}
    Fcols = {i: {} for i in Fd}
    for i, ent in Fd.items():
        for (r, c), t in ent.items():
            Fcols[i].setdefault(c, []).append((r, t))
    Gcols = {j: {} for j in Gd}
    for j, ent in Gd.items():
        for (r, c), t in ent.items():
            Gcols[j].setdefault(c, []).append((r, t))

    def key(i, x, j, y):
        return (tag(i, x), tag(j, y))

    if mode == "entry":
        deg = {}
        mods = []
        for k in range(top + 1):
            gl = []
            for (i, x, j, y), a, b in gens[k]:
                e = exp_lcm(a, b)
                deg[key(i, x, j, y)] = e
                gl.append((key(i, x, j, y), e))
            mods.append(GradedFreeModule(gl, n))
        diffs = []
        for k in range(1, top + 1):
            ent = {}
            for (i, x, j, y), a, b in gens[k]:
                c = key(i, x, j, y)
                for r, (_, v) in Fcols.get(i, {}).get(x, []):
                    rr = key(i - 1, r, j, y)
                    ent[(rr, c)] = Polynomial.monomial(exp_sub(deg[c], deg[rr]), v)
                sg = (-1) ** i
                for s, (_, v) in Gcols.get(j, {}).get(y, []):
                    rr = key(i, x, j - 1, s)
                    ent[(rr, c)] = Polynomial.monomial(exp_sub(deg[c], deg[rr]), sg * v)
            diffs.append(GradedMatrix(mods[k], mods[k - 1], ent))
        T = CellularFreeComplex(F.ring, mods, diffs)
        return attach_complex(T)
    # column mode
    resc = {}  # generator -> gcd divided out
    deg = {}
    mods = []
    raw = []
    for k in range(top + 1):
        cols = {}
        for (i, x, j, y), a, b in gens[k]:
            c = key(i, x, j, y)
            col = {}
            if k >= 1:
                for r, (e, v) in Fcols.get(i, {}).get(x, []):
                    rr = key(i - 1, r, j, y)
                    col[rr] = (exp_add(e, resc[rr]), v)
                sg = (-1) ** i
                for s, (e, v) in Gcols.get(j, {}).get(y, []):
                    rr = key(i, x, j - 1, s)
                    col[rr] = (exp_add(e, resc[rr]), sg * v)
            if col and k >= 2:
                g = None
                for e, _ in col.values():
                    g = e if g is None else exp_gcd(g, e)
            else:
                g = exp_zero(n)
            resc[c] = g
            deg[c] = exp_sub(exp_add(a, b), g)
            cols[c] = {rr: Polynomial.monomial(exp_sub(e, g), v) for rr, (e, v) in col.items()}
        mods.append(GradedFreeModule([(c, deg[c]) for c in cols], n))
        raw.append(cols)
    diffs = []
    for k in range(1, top + 1):
        ent = {}
        for c, col in raw[k].items():
            for rr, p in col.items():
                ent[(rr, c)] = p
        diffs.append(GradedMatrix(mods[k], mods[k - 1], ent))
    T = CellularFreeComplex(F.ring, mods, diffs, check=False)
    if not T.check_d2():
        raise ConstructionError("column-normalized tensor product has d^2 != 0")
    return attach_complex(T)


def ordinary_tensor(F, G):
    "plain tensor product of chain complexes, degrees add, no normalization"
    n = F.n
    top = F.top + G.top
    tag = _tensor_ids(F, G)
    mods = []
    for k in range(top + 1):
        gl = []
        for i in range(max(0, k - G.top), min(F.top, k) + 1):
            j = k - i
            for x, a in F.module(i):
                for y, b in G.module(j):
                    gl.append(((tag(i, x), tag(j, y)), exp_add(a, b)))
        mods.append(GradedFreeModule(gl, n))
    diffs = []
    for k in range(1, top + 1):
        ent = {}
        for i in range(max(0, k - G.top), min(F.top, k) + 1):
            j = k - i
            for (r, x), p in F.d(i).entries.items() if i >= 1 else ():
                for y in G.module(j).ids:
                    ent[((tag(i - 1, r), tag(j, y)), (tag(i, x), tag(j, y)))] = p
            if j >= 1:
                for (s, y), p in G.d(j).entries.items():
                    for x in F.module(i).ids:
                        ent[((tag(i, x), tag(j - 1, s)), (tag(i, x), tag(j, y)))] = p * ((-1) ** i)
        diffs.append(GradedMatrix(mods[k], mods[k - 1], ent))
    return CellularFreeComplex(F.ring, mods, diffs)


def tensor_rank_formula(F, G):
    rf, rg = F.ranks(), G.ranks()
    out = []
    for k in range(F.top + G.top + 1):
        out.append(sum(rf[i] * rg[k - i] for i in range(len(rf)) if 0 <= k - i < len(rg)))
    return out


# ---------------------------------------------------------------------------
# products

@dataclass
class Product:
    complex: CellularFreeComplex
    first: object   # projection to the first factor
    second: object  # projection to the second factor


def simplex_resolution(ring, k):
    "the simplex on k vertices with all labels 1"
    return cellular_free_complex(simplex_complex(ring, [exp_zero(ring.n)] * k))


def product_with_simplex(F, k):
    """F x T where T is the simplex on k vertices labeled 1; returns the
    product with both projections"""
    _need_complex(F, "product")
    n = F.n
    T = simplex_resolution(F.ring, k)
    X, D = F.complex, T.complex
    P = cellular_free_complex(product_complex(X, D))
    Y = P.complex
    one = Polynomial.constant(n)
    lab = X.labels()
    # components of the product follow those of X
    p1_0, p2_0 = {}, {}
    for kk in range(Y.num_components()):
        cells = Y.component_cells(kk)
        s, t = cells[0].id
        p1_0[(F.component_generator(X.component_of(s)), P.component_generator(kk))] = one
        p2_0[(T.component_generator(0), P.component_generator(kk))] = one
    m1 = {0: GradedMatrix(P.module(0), F.module(0), p1_0)}
    m2 = {0: GradedMatrix(P.module(0), T.module(0), p2_0)}
    car1, car2 = {}, {}
    e1 = {i: {} for i in range(1, P.top + 1)}
    e2 = {i: {} for i in range(1, P.top + 1)}
    for c in Y.cells():
        s, t = c.id
        i = c.dim + 1
        car1[c.id] = {s}
        car2[c.id] = {t}
        if D.cell(t).dim == 0:
            e1[i][(s, c.id)] = one
        if X.cell(s).dim == 0:
            e2[i][(t, c.id)] = Polynomial.monomial(lab[s])
    for i in range(1, P.top + 1):
        m1[i] = GradedMatrix(P.module(i), F.module(i), e1[i])
        m2[i] = GradedMatrix(P.module(i), T.module(i), e2[i])
    p1 = CellResMorphism(ChainMap(P, F, m1), CellularMap(Y, X, car1))
    p2 = CellResMorphism(ChainMap(P, T, m2), CellularMap(Y, D, car2))
    return Product(P, p1, p2)


def product_simplex_ranks(F, k):
    "P_0 = F_0, P_i = sum_j C(k, j+1) rank F_{i-j}"
    a = F.ranks()
    out = [a[0]]
    for i in range(1, F.top + k):
        out.append(sum(comb(k, j + 1) * a[i - j] for j in range(k) if 1 <= i - j < len(a)))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def product_coprime(F, G):
    """product of resolutions whose vertex labels are pairwise coprime across
    the two factors; raises with a witness pair otherwise"""
    _need_complex(F, "product")
    _need_complex(G, "product")
    X, Y = F.complex, G.complex
    lx, ly = X.labels(), Y.labels()
    for v in X.ids(0):
        for w in Y.ids(0):
            if exp_gcd(lx[v], ly[w]) != exp_zero(F.n):
                raise ConstructionError("labels are not coprime",
                                        witness=(lx[v], ly[w]))
    P = cellular_free_complex(product_complex(X, Y))
    Z = P.complex
    n = F.n
    one = Polynomial.constant(n)
    m1 = {0: {}, }
    m2 = {0: {}}
    for kk in range(Z.num_components()):
        s, t = Z.component_cells(kk)[0].id
        m1[0][(F.component_generator(X.component_of(s)), P.component_generator(kk))] = one
        m2[0][(G.component_generator(Y.component_of(t)), P.component_generator(kk))] = one
    for i in range(1, P.top + 1):
        m1[i], m2[i] = {}, {}
    car1, car2 = {}, {}
    for c in Z.cells():
        s, t = c.id
        i = c.dim + 1
        car1[c.id] = {s}
        car2[c.id] = {t}
        if Y.cell(t).dim == 0:
            m1[i][(s, c.id)] = Polynomial.monomial(ly[t])
        if X.cell(s).dim == 0:
            m2[i][(t, c.id)] = Polynomial.monomial(lx[s])
    c1 = ChainMap(P, F, {i: GradedMatrix(P.module(i), F.module(i), e) for i, e in m1.items()})
    c2 = ChainMap(P, G, {i: GradedMatrix(P.module(i), G.module(i), e) for i, e in m2.items()})
    return Product(P, CellResMorphism(c1, CellularMap(Z, X, car1)),
                   CellResMorphism(c2, CellularMap(Z, Y, car2)))


def factor_through_product(h, k, prod):
    """the morphism beta : Z -> P with p1 beta = h and p2 beta = k. Carriers
    are products of carrier closures in dimensions adding up to the cell;
    the chain part is the basic solution of the linear system on them."""
    P = prod.complex
    p1, p2 = prod.first, prod.second
    Z = h.source
    if k.source != Z or h.target != p1.target or k.target != p2.target:
        raise ConstructionError("maps do not form a cone over the product")
    X, D, Y, W = h.target.complex, k.target.complex, P.complex, Z.complex
    car = {}
    for z in W.cells():
        A = X.closure(h.cell.carrier[z.id]) if h.cell.carrier[z.id] else set()
        B = D.closure(k.cell.carrier[z.id]) if k.cell.carrier[z.id] else set()
        car[z.id] = {(s, t) for s in A for t in B
                     if X.cell(s).dim + D.cell(t).dim <= z.dim}
    top = max(Z.top, P.top)
    unknowns = []
    for i in range(top + 1):
        sup = None
        if i >= 1:
            sup = set()
            for z in Z.module(i).ids:
                for y in car[z]:
                    if Y.cell(y).dim == i - 1:
                        sup.add((y, z))
        unknowns.append(Unknown(Z.module(i), P.module(i), sup))
    eqs = []
    for i in range(top + 1):
        eqs.append(([(p1.chain[i], i, None)], h.chain[i]))
        eqs.append(([(p2.chain[i], i, None)], k.chain[i]))
        if i >= 1:
            eqs.append(([(P.d(i), i, None), (None, i - 1, -Z.d(i))],
                        GradedMatrix.zero(Z.module(i), P.module(i - 1))))
    sol = solve_graded_system(unknowns, eqs)
    if sol is None:
        return None
    chain = ChainMap(Z, P, {i: M for i, M in enumerate(sol)})
    # carriers: closure of the support, together with the facet carriers
    cells = {z: set() for z in W.ids()}
    for i in range(1, top + 1):
        for (y, z) in chain[i].entries:
            cells[z].add(y)
    carrier = {}
    for d in range(W.dim + 1):
        for z in W.cells(d):
            c = Y.closure(cells[z.id]) if cells[z.id] else set()
            for f in z.facets():
                c |= carrier[f]
            carrier[z.id] = c
    cell = CellularMap(W, Y, carrier)
    return CellResMorphism(chain, cell)
