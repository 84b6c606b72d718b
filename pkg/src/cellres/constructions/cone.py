"""
Mapping cones, mapping cylinders and iterated cones along linear quotients.
"""

from dataclasses import dataclass

from ..algebra import (Polynomial, GradedFreeModule, GradedMatrix, Unknown, solve_graded_system,
                       exp_zero, exp_add, exp_sub, exp_gcd, exp_deg)
from ..complex import fmt_id
from ..resolution import (CellularFreeComplex, attach_complex, generator_components, taylor,
                          minimal_generators)
from ..morphism import (ChainMap, CellularMap, CellResMorphism)


class ConstructionError(Exception):
    def __init__(self, msg, witness=None):
        Exception.__init__(self, msg)
        self.witness = witness


def _shifts(h):
    "per source component: (target component or None, shift)"
    n = h.source.n
    if h.f0 is None:
        raise ConstructionError("the map on F_0 is label induced; a monomial f_0 is needed")
    out = {}
    for c in h.source.module(0).ids:
        col = h.f0.column(c)
        if not col:
            out[c] = (None, exp_zero(n))
            continue
        if len(col) != 1:
            raise ConstructionError("component %s maps to several components" % fmt_id(c))
        (r, p), = col.items()
        if len(p.terms) != 1:
            raise ConstructionError("component %s does not map by a monomial" % fmt_id(c))
        e, v = p.single_term()
        if v != 1:
            raise ConstructionError("component %s maps with coefficient %s" % (fmt_id(c), v))
        out[c] = (r, e)
    return out


def _check_homogeneous(h, comp, shifts):
    F = h.source
    for i in range(1, F.top + 1):
        M = h[i]
        for (r, c), p in M.entries.items():
            s = shifts[comp[(i, c)]][1]
            for e in p.terms:
                got = exp_sub(exp_add(e, h.target.degree(i, r)), F.degree(i, c))
                if got != s:
                    raise ConstructionError("map is not homogeneous of the component shift at %s" % fmt_id(c))


def _ftag(i):
    "apex tag for F_0, cell tag above"
    return "A" if i == 0 else "F"


def cone_of_chain_map(h):
    """C_i = G_i + F_{i-1}, d(g, f) = (d g + h f, -d f); the F part is shifted
    by the degree of h on each component. Returns the complex with its
    supporting complex attached when one can be derived."""
    F, G = h.source, h.target
    n = F.n
    shifts = _shifts(h)
    comp = generator_components(F)
    _check_homogeneous(h, comp, shifts)
    top = max(G.top, F.top + 1)
    mods = []
    for i in range(top + 1):
        gens = [(("G", y), a) for y, a in G.module(i)]
        if i >= 1:
            gens += [((_ftag(i - 1), x), exp_add(a, shifts[comp[(i - 1, x)]][1]))
                     for x, a in F.module(i - 1)]
        mods.append(GradedFreeModule(gens, n))
    diffs = []
    for i in range(1, top + 1):
        ent = {}
        for (r, c), p in G.d(i).entries.items():
            ent[(("G", r), ("G", c))] = p
        for (r, c), p in h[i - 1].entries.items():
            ent[(("G", r), (_ftag(i - 1), c))] = p
        if i >= 2:
            for (r, c), p in F.d(i - 1).entries.items():
                ent[((_ftag(i - 2), r), ("F", c))] = -p
        diffs.append(GradedMatrix(mods[i], mods[i - 1], ent))
    C = CellularFreeComplex(F.ring, mods, diffs)
    return attach_complex(C)


def mapping_cone(m):
    "cone over a verified morphism"
    if isinstance(m, CellResMorphism):
        m.require("mapping cone")
        h = m.chain
    else:
        h = m
    return cone_of_chain_map(h)


@dataclass
class Cylinder:
    complex: CellularFreeComplex
    include_source: object  # F -> cylinder
    include_target: object  # G -> cylinder
    retraction: object      # cylinder -> G, only when all shifts vanish


def mapping_cylinder(m):
    """D_0 = G_0, D_1 = F_1 + G_1, D_i = F_i + G_i + F_{i-1}; a cylinder cell
    over x has differential u x - h(x) - cyl(d x), u the shift monomial"""
    if isinstance(m, CellResMorphism):
        m.require("mapping cylinder")
        h = m.chain
    else:
        h = m
    F, G = h.source, h.target
    n = F.n
    shifts = _shifts(h)
    for c, (r, e) in shifts.items():
        if r is None:
            raise ConstructionError("component %s has zero image" % fmt_id(c))
    comp = generator_components(F)
    _check_homogeneous(h, comp, shifts)
    top = max(G.top, F.top + 1)
    mods = []
    for i in range(top + 1):
        if i == 0:
            gens = [(("G", y), a) for y, a in G.module(0)]
        else:
            gens = [(("F", x), a) for x, a in F.module(i)]
            gens += [(("G", y), a) for y, a in G.module(i)]
            if i >= 2:
                gens += [(("M", x), exp_add(a, shifts[comp[(i - 1, x)]][1])) for x, a in F.module(i - 1)]
        mods.append(GradedFreeModule(gens, n))
    diffs = []
    for i in range(1, top + 1):
        ent = {}
        for (r, c), p in G.d(i).entries.items():
            ent[(("G", r), ("G", c))] = p
        for (r, c), p in F.d(i).entries.items():
            if i == 1:
                ent[(("G", shifts[r][0]), ("F", c))] = p
            else:
                ent[(("F", r), ("F", c))] = p
        if i >= 2:
            for x in F.module(i - 1).ids:
                u = Polynomial.monomial(shifts[comp[(i - 1, x)]][1])
                ent[(("F", x), ("M", x))] = u
            for (r, c), p in h[i - 1].entries.items():
                ent[(("G", r), ("M", c))] = -p
        if i >= 3:
            for (r, c), p in F.d(i - 1).entries.items():
                ent[(("M", r), ("M", c))] = -p
        diffs.append(GradedMatrix(mods[i], mods[i - 1], ent))
    D = attach_complex(CellularFreeComplex(F.ring, mods, diffs))
    one = Polynomial.constant(n)
    # inclusions
    inc_f = {0: GradedMatrix(F.module(0), D.module(0),
                             {(("G", shifts[c][0]), c): one for c in F.module(0).ids})}
    for i in range(1, F.top + 1):
        inc_f[i] = GradedMatrix(F.module(i), D.module(i), {(("F", x), x): one for x in F.module(i).ids})
    inc_g = {i: GradedMatrix(G.module(i), D.module(i), {(("G", y), y): one for y in G.module(i).ids})
             for i in range(G.top + 1)}
    iF = ChainMap(F, D, inc_f)
    iG = ChainMap(G, D, inc_g)
    retr = None
    if all(e == exp_zero(n) for _, e in shifts.values()):
        rm = {}
        for i in range(D.top + 1):
            ent = {}
            for (r, c), p in h[i].entries.items():
                if i >= 1:
                    ent[(r, ("F", c))] = p
            for y in G.module(i).ids:
                ent[(y, ("G", y))] = one
            rm[i] = GradedMatrix(D.module(i), G.module(i), ent)
        retr = ChainMap(D, G, rm)
    if isinstance(m, CellResMorphism) and D.complex is not None:
        # cellular parts of the structure maps
        Y = D.complex
        iF = CellResMorphism(iF, CellularMap(F.complex, Y, {x: {("F", x)} for x in F.complex.ids()}))
        iG = CellResMorphism(iG, CellularMap(G.complex, Y, {y: {("G", y)} for y in G.complex.ids()}))
        if retr is not None:
            car = {("G", y): {y} for y in G.complex.ids()}
            for x in F.complex.ids():
                car[("F", x)] = m.cell.carrier[x]
                if ("M", x) in Y:
                    car[("M", x)] = m.cell.carrier[x]
            retr = CellResMorphism(retr, CellularMap(Y, G.complex, car))
    return Cylinder(D, iF, iG, retr)


# ---------------------------------------------------------------------------
# iterated cones

def colon_generators(gens, j):
    "(u_1..u_{j-1}) : u_j as minimal monomial generators"
    uj = gens[j]
    return minimal_generators([exp_sub(u, exp_gcd(u, uj)) for u in gens[:j]])


def linear_quotient_sets(gens):
    """for each j >= 1 the set of variables generating (u_1..u_{j-1}) : u_j;
    raises ConstructionError with a witness when some colon is not linear"""
    out = [None]
    for j in range(1, len(gens)):
        col = colon_generators(gens, j)
        vars_ = []
        for m in col:
            if exp_deg(m) != 1:
                raise ConstructionError(
                    "colon ideal at position %d is not generated by variables" % (j + 1),
                    witness={"position": j + 1, "generator": m, "colon": col})
            vars_.append(m.index(1))
        out.append(sorted(vars_))
    return out


def iterated_cone(ring, gens):
    """resolution of S/(u_1..u_r) by iterated mapping cones over Koszul
    complexes, for an order with linear quotients"""
    gens = [ring.monomial(g) if not isinstance(g, tuple) else g for g in gens]
    sets = linear_quotient_sets(gens)
    ring.n
    Fj = taylor(ring, [gens[0]])
    steps = [Fj]
    for j in range(1, len(gens)):
        K = taylor(ring, [ring.var(ring.variables[k]) for k in sets[j]])
        uj = gens[j]
        # psi_0 is multiplication by u_j, higher psi_i solved degree by degree
        f0 = GradedMatrix(K.module(0), Fj.module(0),
                          {(Fj.module(0).ids[0], K.module(0).ids[0]): Polynomial.monomial(uj)})
        maps = {0: f0}
        for i in range(1, max(K.top, Fj.top) + 1):
            rhs = maps[i - 1] @ K.d(i)
            U = Unknown(K.module(i), Fj.module(i))
            sol = solve_graded_system([U], [([(Fj.d(i), 0, None)], rhs)])
            if sol is None:
                raise ConstructionError("no lift of multiplication by u_%d at degree %d" % (j + 1, i))
            maps[i] = sol[0]
        psi = ChainMap(K, Fj, maps)
        Fj = _retag(cone_of_chain_map(psi), j)
        steps.append(Fj)
    return Fj, steps


def _retag(C, j):
    "flatten cone ids so that iterated cones keep readable ids"
    def f(x):
        tag, y = x
        if tag == "G":
            return y
        if tag == "A":
            return "c%d" % (j + 1)
        return ("c%d" % (j + 1), y)
    mods = [M.relabel(f) for M in C.modules]
    diffs = [D.reindex(mods[i + 1], mods[i], f, f) for i, D in enumerate(C.diffs)]
    out = CellularFreeComplex(C.ring, mods, diffs)
    return attach_complex(out)
