"""
Finite index categories, diagrams of cellular resolutions, colimits, gluing
along sub-resolutions and morphisms, inverse limits over trees, and nerves of
under-categories.
"""

from collections import namedtuple
from dataclasses import dataclass

import networkx as nx

from ..algebra import Unknown, solve_graded_system, exp_zero, exp_lcm_all, AlgebraError
from ..complex import Cell, LabeledComplex, validate_cw, fmt_id, _with_natural_overrides
from ..resolution import (CellularFreeComplex, cellular_free_complex, is_acyclic_complex,
                          find_isomorphism)
from ..morphism import (ChainMap, CellularMap, CellResMorphism, identity_morphism, compose,
                        morphism_from_cellular)
from .cone import ConstructionError


# ---------------------------------------------------------------------------
# index categories

Morphism = namedtuple("Morphism", "src dst path")


class Category:
    """free category on a finite acyclic quiver modulo identified parallel
    paths. arrows: name -> (src, dst); identify: pairs of arrow-name paths,
    listed in the order the arrows are applied."""

    def __init__(self, objects, arrows, identify=()):
        self.objects = list(objects)
        assert len(set(self.objects)) == len(self.objects), "object names must be unique"
        if not isinstance(arrows, dict):
            arrows = {a: (s, t) for a, s, t in arrows}
        self.arrows = dict(arrows)
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.objects)
        for a, (s, t) in self.arrows.items():
            if s not in g or t not in g:
                raise ConstructionError("arrow %s has an unknown end" % a)
            g.add_edge(s, t, key=a)
        if not nx.is_directed_acyclic_graph(g):
            cyc = nx.find_cycle(g)
            raise ConstructionError("index quiver has a directed cycle", witness=[e[:2] for e in cyc])
        self.graph = g
        self.identify = [(tuple(p), tuple(q)) for p, q in identify]
        for p, q in self.identify:
            for a in p + q:
                if a not in self.arrows:
                    raise ConstructionError("identification uses unknown arrow %s" % a)
        self._paths = self._all_paths()
        self._canon = self._congruence()

    def _all_paths(self):
        out = []
        for o in self.objects:
            stack = [(o, ())]
            while stack:
                cur, p = stack.pop()
                out.append((o, p))
                for a in sorted(self.arrows):
                    s, t = self.arrows[a]
                    if s == cur:
                        stack.append((t, p + (a,)))
        return out

    def end(self, src, path):
        cur = src
        for a in path:
            s, t = self.arrows[a]
            if s != cur:
                raise ConstructionError("path %s is not composable" % (path,))
            cur = t
        return cur

    def _congruence(self):
        parent = {p: p for p in self._paths}

        def find(p):
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        def key(p):
            return (len(p[1]), p[1])

        into = {}
        outof = {}
        for s, p in self._paths:
            into.setdefault(self.end(s, p), []).append((s, p))
            outof.setdefault(s, []).append(p)
        for p, q in self.identify:
            if not p or not q:
                raise ConstructionError("identified paths must be nonempty")
            sp, sq = self.arrows[p[0]][0], self.arrows[q[0]][0]
            tp, tq = self.end(sp, p), self.end(sq, q)
            if (sp, tp) != (sq, tq):
                raise ConstructionError("identified paths %s and %s are not parallel" % (p, q))
            # close under whiskering on both sides
            for s0, a in into[sp]:
                for b in outof[tp]:
                    x, y = find((s0, a + p + b)), find((s0, a + q + b))
                    if x != y:
                        if key(y) < key(x):
                            x, y = y, x
                        parent[y] = x
        canon = {}
        for sp in self._paths:
            canon[sp] = find(sp)
        # the representative of each class is its shortest, then least, path
        best = {}
        for sp, r in canon.items():
            if r not in best or key(sp) < key(best[r]):
                best[r] = sp
        return {sp: best[r] for sp, r in canon.items()}

    def morphism(self, src, path=()):
        path = tuple(path)
        s, p = self._canon[(src, path)]
        return Morphism(s, self.end(s, p), p)

    def identity(self, o):
        return Morphism(o, o, ())

    @staticmethod
    def is_identity(m):
        return not m.path

    def compose(self, g, f):
        "g after f"
        assert f.dst == g.src, "morphisms are not composable"
        return self.morphism(f.src, f.path + g.path)

    def hom(self, i=None, j=None):
        "distinct morphisms, optionally filtered by source and target"
        seen = []
        got = set()
        for s, p in self._paths:
            m = self.morphism(s, p)
            if m in got:
                continue
            if (i is None or m.src == i) and (j is None or m.dst == j):
                got.add(m)
                seen.append(m)
        return seen

    def paths_of(self, m):
        "all paths in the class of m"
        return [p for (s, p), c in self._canon.items() if s == m.src and c == (m.src, m.path)]

    def non_identity(self, i=None):
        return [m for m in self.hom(i) if m.path]

    def chains(self, i, k):
        "sequences of k composable non-identity morphisms starting at i"
        out = [()]
        for _ in range(k):
            nxt = []
            for ch in out:
                cur = ch[-1].dst if ch else i
                for g in self.non_identity(cur):
                    nxt.append(ch + (g,))
            out = nxt
        return out

    def all_chains(self, i):
        out = []
        k = 0
        while True:
            ch = self.chains(i, k)
            if not ch:
                return out
            out.extend(ch)
            k += 1


# ---------------------------------------------------------------------------
# diagrams

class Diagram:
    "objects -> resolutions with complexes attached, arrows -> morphisms"

    def __init__(self, category, objects, arrows):
        self.category = category
        self.objects = dict(objects)
        self.arrows = dict(arrows)
        self._cache = {}
        for o in category.objects:
            if o not in self.objects:
                raise ConstructionError("object %s has no resolution" % o)
            if self.objects[o].complex is None:
                raise ConstructionError("object %s has no supporting complex" % o)
        for a, (s, t) in category.arrows.items():
            if a not in self.arrows:
                raise ConstructionError("arrow %s has no morphism" % a)
            m = self.arrows[a]
            if m.source != self.objects[s] or m.target != self.objects[t]:
                raise ConstructionError("morphism of arrow %s does not match its ends" % a)

    @property
    def ring(self):
        return self.objects[self.category.objects[0]].ring

    def path_map(self, src, path):
        m = identity_morphism(self.objects[src])
        for a in path:
            m = compose(self.arrows[a], m)
        return m

    def map(self, mor):
        "the morphism assigned to a morphism of the index category"
        if mor not in self._cache:
            self._cache[mor] = self.path_map(mor.src, mor.path)
        return self._cache[mor]

    def check(self):
        "problems: unverified arrows and identified paths with different composites"
        out = []
        for a, m in self.arrows.items():
            if not m.verified:
                out.append("arrow %s: %s" % (a, "; ".join(m.reasons())))
        cat = self.category
        for mor in cat.hom():
            paths = cat.paths_of(mor)
            if len(paths) < 2:
                continue
            ref = self.path_map(mor.src, paths[0])
            for p in paths[1:]:
                other = self.path_map(mor.src, p)
                if other.chain != ref.chain or other.cell != ref.cell:
                    out.append("paths %s and %s have different composites" % (paths[0], p))
        return out

    def require(self, what):
        probs = self.check()
        if probs:
            raise ConstructionError("%s needs a valid diagram: %s" % (what, "; ".join(probs)))


# ---------------------------------------------------------------------------
# quotients of complexes

def quotient_complex(X, pairs, kill=()):
    """identify cells of X: pairs are (a, b, sign) meaning a = sign * b as
    oriented cells; cells in kill collapse to lower dimension. Returns the
    quotient complex and the class map cell -> (rep, sign) or None.
    Representatives are the first cells of their class in the order of X.
    Vertex labels of a class are the lcm of its members. The third value maps
    every cell to the root of its class, collapsed or not."""
    order = {c: k for k, c in enumerate(X.ids())}
    parent = {c: c for c in order}
    par = {c: 1 for c in order}
    dead = set()

    def find(x):
        s = 1
        path = []
        while parent[x] != x:
            path.append(x)
            s *= par[x]
            x = parent[x]
        # path compression keeping parities
        root = x
        acc = s
        for y in path:
            t = par[y]
            parent[y] = root
            par[y] = acc
            acc *= t
        return root, s

    for a, b, sg in pairs:
        if X.cell(a).dim != X.cell(b).dim:
            raise ConstructionError("identified cells %s and %s differ in dimension" % (fmt_id(a), fmt_id(b)))
        ra, sa = find(a)
        rb, sb = find(b)
        if ra == rb:
            if sa != sg * sb:
                raise ConstructionError("orientation conflict when identifying %s with %s" % (fmt_id(a), fmt_id(b)))
            continue
        # keep the earlier root
        if order[rb] < order[ra]:
            ra, rb, sa, sb = rb, ra, sb, sa
        # a = sa ra, b = sb rb and a = sg b, so rb = sa sg sb ra
        parent[rb] = ra
        par[rb] = sa * sg * sb
        if rb in dead:
            dead.add(ra)
    for k in kill:
        dead.add(find(k)[0])
    members = {}
    cls = {}
    roots = {}
    for c in X.ids():
        r, s = find(c)
        roots[c] = r
        if r in dead:
            cls[c] = None
            continue
        cls[c] = (r, s)
        members.setdefault(r, []).append((c, s))
    lab = X.labels() if not X.is_empty() else {}

    def mapped_boundary(c):
        out = {}
        for f, v in X.cell(c).boundary:
            t = cls[f]
            if t is None:
                continue
            out[t[0]] = out.get(t[0], 0) + v * t[1]
        return {k: v for k, v in out.items() if v}

    cells = []
    vlab = {}
    want = {}
    for r in X.ids():
        if r not in members:
            continue
        bd = mapped_boundary(r)
        for c, s in members[r]:
            if c == r:
                continue
            got = mapped_boundary(c)
            if got != {k: s * v for k, v in bd.items()}:
                raise ConstructionError("identified cells %s and %s have different boundaries"
                                        % (fmt_id(c), fmt_id(r)))
        cells.append(Cell(r, X.cell(r).dim, tuple(sorted(bd.items(), key=lambda t: order[t[0]]))))
    # labels grow along the glued vertices, so go up by dimension
    for c in sorted(cells, key=lambda c: c.dim):
        r = c.id
        want[r] = exp_lcm_all([lab[m] for m, _ in members[r]] + [want[f] for f in c.facets()], X.n)
        if c.dim == 0:
            vlab[r] = want[r]
    Q = _with_natural_overrides(X.ring, cells, vlab, want)
    return Q, cls, roots


def union_of(ring, pieces):
    "disjoint union of named complexes, cells (name, cell)"
    cells, vlab, over = [], {}, {}
    for name, X in pieces:
        for c in X.cells():
            cells.append(Cell((name, c.id), c.dim, tuple(((name, f), v) for f, v in c.boundary)))
        vlab.update({(name, v): e for v, e in X.vertex_labels.items()})
        over.update({(name, v): e for v, e in X.label_overrides.items()})
    return LabeledComplex(ring, cells, vlab, over)


def _cell_image(m, x):
    """the single cell and sign that x maps to under m, or None when x
    degenerates; refuses subdividing maps"""
    X = m.cell.source
    top = m.cell.top_cells(x)
    if not top:
        return None
    if len(top) > 1:
        raise ConstructionError("cell %s is subdivided by the map" % fmt_id(x))
    (y,) = top
    i = X.cell(x).dim + 1
    p = m.chain[i].get(y, x)
    if p.is_zero() or len(p.terms) != 1:
        raise ConstructionError("chain image of %s is not a single term" % fmt_id(x))
    _, v = p.single_term()
    if v not in (1, -1):
        raise ConstructionError("cell %s maps with coefficient %s" % (fmt_id(x), v))
    return y, int(v)


# ---------------------------------------------------------------------------
# colimits

@dataclass
class Colimit:
    complex: CellularFreeComplex
    injections: dict     # object -> morphism into the colimit
    classes: dict        # (object, cell) -> (representative, sign) or None
    acyclic: object
    problems: list = None


def colimit(D, check=True):
    """colimit of a diagram whose cellular maps send every cell onto a single
    cell or collapse it: glue the complexes along the maps, label by lcm,
    take the cellular free complex"""
    if check:
        D.require("colimit")
    cat = D.category
    ring = D.ring
    U = union_of(ring, [(o, D.objects[o].complex) for o in cat.objects])
    pairs, kill, pushed = [], [], {}
    for a, (s, t) in cat.arrows.items():
        m = D.arrows[a]
        for x in m.cell.source.ids():
            img = _cell_image(m, x)
            if img is None:
                kill.append((s, x))
                pushed.setdefault((s, x), []).extend((t, y) for y in m.cell.carrier[x])
            else:
                pairs.append(((s, x), (t, img[0]), img[1]))
    Q, cls, roots = quotient_complex(U, pairs, kill)
    dead_push = {}
    for cell, ys in pushed.items():
        dead_push.setdefault(roots[cell], []).extend(ys)
    rep = validate_cw(Q)
    if not rep.ok:
        raise ConstructionError("glued complex is not a CW complex: " + "; ".join(rep.messages))
    C = cellular_free_complex(Q)

    def image(cell):
        "alive quotient cells a cell of the union lands on"
        t = cls[cell]
        if t is not None:
            return {t[0]}
        out = set()
        for y in dead_push.get(roots[cell], ()):
            out |= image(y)
        return out

    inj = {}
    problems = []
    for o in cat.objects:
        F = D.objects[o]
        X = F.complex
        car = {}
        for x in X.ids():
            hit = set()
            for y in X.closure(x):
                hit |= image((o, y))
            car[x] = Q.closure(hit) if hit else set()
        g = CellularMap(X, Q, car)
        m = morphism_from_cellular(g, F, C)
        if m is None or not m.verified:
            # glued labels grew by different monomials on one component
            problems.append("injection of %s is not a morphism" % o)
            m = None
        inj[o] = m
    return Colimit(C, inj, cls, is_acyclic_complex(C), problems)


def _cocone_problems(D, cocone):
    out = []
    for a, (s, t) in D.category.arrows.items():
        lhs = compose(cocone[t], D.arrows[a])
        if lhs.chain != cocone[s].chain:
            out.append("cocone square of arrow %s does not commute" % a)
    return out


def colimit_factor(col, D, cocone):
    """the unique u with u . injection_o = cocone[o] for all objects, as a
    morphism, or None when the cocone does not factor"""
    probs = _cocone_problems(D, cocone)
    if probs:
        raise ConstructionError("; ".join(probs))
    C = col.complex
    Z = next(iter(cocone.values())).target
    top = max(C.top, Z.top)
    unknowns = [Unknown(C.module(i), Z.module(i)) for i in range(top + 1)]
    eqs = []
    for o, g in cocone.items():
        inj = col.injections[o]
        for i in range(top + 1):
            if i == 0 and (g.chain.f0 is None or inj.chain.f0 is None):
                continue
            eqs.append(([(None, i, inj.chain[i])], g.chain[i]))
    try:
        sol = solve_graded_system(unknowns, eqs)
    except AlgebraError as e:
        raise ConstructionError("factorization needs homogeneous injections: %s" % e)
    if sol is None:
        return None
    chain = ChainMap(C, Z, dict(enumerate(sol)))
    car = {}
    for o, g in cocone.items():
        for x, ys in col.injections[o].cell.carrier.items():
            t = col.classes[(o, x)]
            if t is None:
                continue
            car.setdefault(t[0], set()).update(g.cell.carrier[x])
    u = CellResMorphism(chain, CellularMap(C.complex, Z.complex, car))
    return u


def colimit_factor_unique(col, cocone):
    "True when the factorization system has a single solution"
    C = col.complex
    Z = next(iter(cocone.values())).target
    top = max(C.top, Z.top)
    unknowns = [Unknown(C.module(i), Z.module(i)) for i in range(top + 1)]
    eqs = []
    shifts = set()
    for o, g in cocone.items():
        inj = col.injections[o]
        for i in range(top + 1):
            if i == 0 and (g.chain.f0 is None or inj.chain.f0 is None):
                continue
            eqs.append(([(None, i, inj.chain[i])], g.chain[i]))
            shifts |= g.chain[i].shifts()
    if not shifts:
        shifts = {exp_zero(C.n)}
    rk, nv = solve_graded_system(unknowns, eqs, shifts, count_only=True)
    return rk is not None and rk == nv


def span_diagram(H, F, G, iF, iG, names=("h", "f", "g")):
    "the diagram F <- H -> G"
    h, f, g = names
    cat = Category([h, f, g], {"i": (h, f), "j": (h, g)})
    return Diagram(cat, {h: H, f: F, g: G}, {"i": iF, "j": iG})


def glue_along_subresolution(F, G, H, iF, iG):
    "glue F and G along the common sub-resolution H: the colimit of the span"
    return colimit(span_diagram(H, F, G, iF, iG))


def glue_along_morphism(m):
    """glue the source onto the target along m; returns the colimit and an
    isomorphism onto the target"""
    cat = Category(["s", "t"], {"m": ("s", "t")})
    D = Diagram(cat, {"s": m.source, "t": m.target}, {"m": m})
    col = colimit(D)
    iso = find_isomorphism(col.complex, m.target)
    return col, iso


# ---------------------------------------------------------------------------
# inverse limits over trees

@dataclass
class InverseLimit:
    complex: CellularFreeComplex
    top: object
    projections: dict   # object -> morphism from the limit


def inverse_limit_tree(D):
    """D is an inverse system: arrows go from larger to smaller objects, the
    Hasse diagram is a tree and there is a largest object. The limit is that
    object with the composed maps."""
    cat = D.category
    und = nx.MultiGraph()
    und.add_nodes_from(cat.objects)
    for a, (s, t) in cat.arrows.items():
        und.add_edge(s, t)
    if und.number_of_edges() != len(cat.objects) - 1 or not nx.is_connected(nx.Graph(und)):
        raise ConstructionError("the index poset is not a tree", witness=sorted(cat.arrows))
    tops = [o for o in cat.objects if cat.graph.in_degree(o) == 0]
    if len(tops) != 1:
        raise ConstructionError("the index poset has no largest element", witness=tops)
    (r,) = tops
    for o in cat.objects:
        if not cat.hom(r, o):
            raise ConstructionError("object %s is not below the top" % o)
    D.require("inverse limit")
    L = D.objects[r]
    proj = {o: D.map(cat.hom(r, o)[0]) for o in cat.objects}
    return InverseLimit(L, r, proj)


def inverse_limit_check(lim, D):
    "the projections commute with every arrow"
    out = []
    for a, (s, t) in D.category.arrows.items():
        lhs = compose(D.arrows[a], lim.projections[s])
        if lhs.chain != lim.projections[t].chain or lhs.cell != lim.projections[t].cell:
            out.append("projection square of arrow %s does not commute" % a)
    return out


def inverse_limit_factor(lim, D, cone):
    """the factorization u : Z -> L with p_o . u = cone[o]; it is cone[top]
    because p_top is the identity, so it is unique whenever it exists"""
    for a, (s, t) in D.category.arrows.items():
        if compose(D.arrows[a], cone[s]).chain != cone[t].chain:
            raise ConstructionError("cone over arrow %s does not commute" % a)
    u = cone[lim.top]
    for o, p in lim.projections.items():
        if compose(p, u).chain != cone[o].chain:
            return None
    return u


# ---------------------------------------------------------------------------
# nerves

def _fmt_mor(m):
    return "%s:%s" % (m.src, ".".join(m.path)) if m.path else "id_%s" % m.src


def nerve_under(cat, i, ring):
    """nerve of the category under i with labels 1: a k-simplex is a morphism
    a0 out of i followed by k composable non-identity morphisms; the face
    dropping vertex m has sign (-1)^m"""
    simplices = []
    for a0 in cat.hom(i):
        for ch in cat.all_chains(a0.dst):
            simplices.append((a0,) + ch)
    cells = []
    vlab = {}
    zero = exp_zero(ring.n)
    for s in sorted(simplices, key=len):
        k = len(s) - 1
        bd = []
        if k >= 1:
            bd.append(((cat.compose(s[1], s[0]),) + s[2:], 1))
            for m in range(1, k):
                bd.append((s[:m] + (cat.compose(s[m + 1], s[m]),) + s[m + 2:], (-1) ** m))
            bd.append((s[:k], (-1) ** k))
        cells.append(Cell(s, k, tuple(bd)))
        if k == 0:
            vlab[s] = zero
    return LabeledComplex(ring, cells, vlab)
