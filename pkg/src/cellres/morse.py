"""
Discrete and algebraic Morse theory on cellular resolutions: the graph of a
free complex and the face poset, matchings, the splitting homotopy phi, the
reduced complex, the collapsed complex, the Morse morphism, and elementary
collapses and expansions.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import networkx as nx

from .algebra import (Polynomial, GradedFreeModule, GradedMatrix, exp_zero, exp_sub, exp_nonneg, QQ,
                      lcm_closure)
from .complex import LabeledComplex, validate_cw, fmt_id
from .resolution import (CellularFreeComplex, derive_complex, strand, find_isomorphism)
from .morphism import ChainMap, CellularMap, CellResMorphism, verify_chain_map


class MorseError(Exception):
    def __init__(self, msg, witness=None):
        Exception.__init__(self, msg)
        self.witness = witness


EMPTY = "empty"


# ---------------------------------------------------------------------------
# graphs

class MorseGraph:
    """directed graph with edges from homological degree i to i-1.
    kind 'gamma': vertices (i, generator), edge weight the matrix entry.
    kind 'poset': vertices cell ids and (EMPTY, k) for the empty face of
    component k, edge weight the incidence sign."""

    def __init__(self, kind, graph, level, label):
        self.kind = kind
        self.graph = graph
        self.level = level     # vertex -> homological degree
        self.label = label     # vertex -> exponent

    @property
    def vertices(self):
        return list(self.graph.nodes)

    def weight(self, u, v):
        return self.graph.edges[u, v]["w"]

    def invertible(self, u, v):
        if self.kind == "gamma":
            w = self.weight(u, v)
            return w.is_constant() and not w.is_zero()
        return self.label[u] == self.label[v]

    def reversed_along(self, M):
        "the graph with matched edges reversed"
        g = nx.DiGraph()
        g.add_nodes_from(self.graph.nodes)
        ms = set(M)
        for u, v in self.graph.edges:
            if (u, v) in ms:
                g.add_edge(v, u)
            else:
                g.add_edge(u, v)
        return g

    def to_dot(self, M=(), name="gamma"):
        ms = set(M)
        lines = ["digraph %s {" % name]
        for v in self.graph.nodes:
            lines.append('  "%s";' % fmt_id(v))
        for u, v in self.graph.edges:
            if (u, v) in ms:
                lines.append('  "%s" -> "%s" [dir=back, color=red, penwidth=2];' % (fmt_id(v), fmt_id(u)))
            else:
                lines.append('  "%s" -> "%s";' % (fmt_id(u), fmt_id(v)))
        lines.append("}")
        return "\n".join(lines) + "\n"


def gamma_graph(F):
    g = nx.DiGraph()
    level, label = {}, {}
    for i in range(F.top + 1):
        for x, a in F.module(i):
            g.add_node((i, x))
            level[(i, x)] = i
            label[(i, x)] = a
    for i in range(1, F.top + 1):
        for (r, c), p in F.d(i).entries.items():
            g.add_edge((i, c), (i - 1, r), w=p)
    return MorseGraph("gamma", g, level, label)


def face_poset(X):
    g = nx.DiGraph()
    level, label = {}, {}
    lab = X.labels() if not X.is_empty() else {}
    for k in range(X.num_components()):
        v = (EMPTY, k)
        g.add_node(v)
        level[v] = 0
        label[v] = exp_zero(X.n)
    for c in X.cells():
        g.add_node(c.id)
        level[c.id] = c.dim + 1
        label[c.id] = lab[c.id]
    for c in X.cells():
        if c.dim == 0:
            g.add_edge(c.id, (EMPTY, X.component_of(c.id)), w=1)
        for f, s in c.boundary:
            g.add_edge(c.id, f, w=s)
    return MorseGraph("poset", g, level, label)


@dataclass
class MatchingReport:
    ok: bool
    reasons: list = dc_field(default_factory=list)
    cycle: list = None

    def __bool__(self):
        return self.ok


def validate_matching(G, M):
    """edges of G, pairwise disjoint, invertible, and no directed cycle once
    they are reversed"""
    M = [tuple(e) for e in M]
    reasons = []
    used = {}
    for u, v in M:
        if not G.graph.has_edge(u, v):
            reasons.append("%s -> %s is not an edge" % (fmt_id(u), fmt_id(v)))
            continue
        for w in (u, v):
            if w in used:
                reasons.append("vertex %s is matched twice" % fmt_id(w))
            used[w] = (u, v)
        if not G.invertible(u, v):
            what = "entry is not invertible" if G.kind == "gamma" else "labels differ"
            reasons.append("%s -> %s: %s" % (fmt_id(u), fmt_id(v), what))
    if reasons:
        return MatchingReport(False, reasons)
    try:
        cyc = nx.find_cycle(G.reversed_along(M))
    except nx.NetworkXNoCycle:
        return MatchingReport(True)
    return MatchingReport(False, ["reversed matching has a directed cycle"], [e[0] for e in cyc])


def matching_transfer(M, F, to="gamma"):
    """move a matching between the face poset of F.complex and the graph of
    F along cell <-> generator"""
    X = F.complex
    assert X is not None

    def to_gamma(v):
        if isinstance(v, tuple) and len(v) == 2 and v[0] == EMPTY:
            return (0, F.component_generator(v[1]))
        return (X.cell(v).dim + 1, v)

    comp_index = {F.component_generator(k): k for k in range(X.num_components())}

    def to_poset(v):
        i, x = v
        if i == 0:
            return (EMPTY, comp_index[x])
        return x

    f = to_gamma if to == "gamma" else to_poset
    return [(f(u), f(v)) for u, v in M]


def matching_from_cells(F, pairs):
    "cell pairs (upper, lower) as graph edges; lower None is the empty face"
    X = F.complex
    out = []
    for u, v in pairs:
        cu = X.cell(u)
        if v is None:
            out.append(((1, u), (0, F.component_generator(X.component_of(u)))))
        else:
            out.append(((cu.dim + 1, u), (cu.dim, v)))
    return out


# ---------------------------------------------------------------------------
# algebraic reduction

def _combo_add(acc, combo, coef):
    for g, p in combo.items():
        q = p * coef
        if g in acc:
            q = acc[g] + q
        if q.is_zero():
            acc.pop(g, None)
        else:
            acc[g] = q


def compute_phi(F, M):
    """phi_i : F_{i-1} -> F_i, stored as phi[i]; phi(b) for b matched with c
    is d_bc^-1 (c - sum_{m != b} d_mc phi(m)), and zero on unmatched b.
    Memoized recursion; a cycle means the matching is not acyclic."""
    n = F.n
    up = {}
    for (i, c), (j, b) in M:
        assert j == i - 1
        up[(j, b)] = (i, c)
    memo = {}
    active = set()

    def phi(v):
        if v in memo:
            return memo[v]
        if v not in up:
            memo[v] = {}
            return memo[v]
        if v in active:
            raise MorseError("matching is not acyclic at %s" % fmt_id(v[1]))
        active.add(v)
        i, c = up[v]
        j, b = v
        col = F.d(i).column(c)
        lam = col[b]
        if not lam.is_constant():
            raise MorseError("matched entry at %s is not invertible" % fmt_id(b))
        inv = Polynomial.constant(n, Fraction(1) / lam.coeff(exp_zero(n)))
        out = {c: inv}
        for m, p in col.items():
            if m == b:
                continue
            _combo_add(out, phi((j, m)), -(p * inv))
        active.discard(v)
        memo[v] = out
        return out

    mats = {}
    for i in range(1, F.top + 2):
        ent = {}
        for b in F.module(i - 1).ids:
            for c, p in phi((i - 1, b)).items():
                ent[(c, b)] = p
        mats[i] = GradedMatrix(F.module(i - 1), F.module(i), ent)
    return mats


@dataclass
class AlgebraicReduction:
    matching: list
    phi: dict
    pi: dict
    reduced: CellularFreeComplex
    projection: ChainMap     # F -> reduced
    inclusion: ChainMap      # reduced -> F
    critical: dict           # degree -> critical generator ids


def _reduce(F, M):
    n = F.n
    phi = compute_phi(F, M)
    matched = {}
    for (i, c), (j, b) in M:
        matched.setdefault(i, set()).add(c)
        matched.setdefault(j, set()).add(b)
    crit = {i: [x for x in F.module(i).ids if x not in matched.get(i, ())] for i in range(F.top + 1)}
    mods = [F.module(i).subset(crit[i]) for i in range(F.top + 1)]
    ident = {i: GradedMatrix.identity(F.module(i)) for i in range(F.top + 1)}
    d = {i: F.d(i) for i in range(0, F.top + 2)}
    # pi_i = 1 - d_{i+1} phi_{i+1} - phi_i d_i
    pi = {}
    for i in range(F.top + 1):
        P = ident[i] - d[i + 1] @ phi[i + 1] if i + 1 <= F.top else ident[i]
        if i >= 1:
            P = P - phi[i] @ d[i]
        pi[i] = P
    rho = {i: GradedMatrix(F.module(i), mods[i], {(x, x): Polynomial.constant(n) for x in crit[i]})
           for i in range(F.top + 1)}
    iota = {i: GradedMatrix(mods[i], F.module(i), {(x, x): Polynomial.constant(n) for x in crit[i]})
            for i in range(F.top + 1)}
    diffs = []
    for i in range(1, F.top + 1):
        dd = d[i] - d[i] @ phi[i] @ d[i]
        diffs.append(rho[i - 1] @ dd @ iota[i])
    R = CellularFreeComplex(F.ring, mods, diffs)
    proj, incl = {}, {}
    for i in range(F.top + 1):
        A = ident[i] - d[i + 1] @ phi[i + 1] if i + 1 <= F.top else ident[i]
        proj[i] = (rho[i] @ A).restrict(target=R.module(i))
        B = ident[i] - phi[i] @ d[i] if i >= 1 else ident[i]
        incl[i] = (B @ iota[i]).restrict(source=R.module(i))
    return AlgebraicReduction(list(M), phi, pi, R, ChainMap(F, R, proj), ChainMap(R, F, incl), crit)


def identities_hold(F, red):
    """phi^2 = 0, phi d phi = phi, pi kills the upper matched generators and
    is idempotent, the reduced differential squares to zero, and the two
    reduction maps are chain maps with projection . inclusion = 1"""
    out = {}
    phi, pi = red.phi, red.pi
    top = F.top
    out["phi2"] = all((phi[i + 1] @ phi[i]).is_zero() for i in range(1, top + 1))
    out["phidphi"] = all(phi[i] @ F.d(i) @ phi[i] == phi[i] for i in range(1, top + 1))
    uppers = {}
    for (i, c), _ in red.matching:
        uppers.setdefault(i, set()).add(c)
    out["pi_upper"] = all(not pi[i].column(c) for i, cs in uppers.items() for c in cs)
    out["pi_idempotent"] = all(pi[i] @ pi[i] == pi[i] for i in range(top + 1))
    out["dbar2"] = red.reduced.check_d2()
    out["projection_chain"] = verify_chain_map(red.projection).ok
    out["inclusion_chain"] = verify_chain_map(red.inclusion).ok
    pc = red.projection.compose(red.inclusion)
    out["retract"] = all(pc[i] == GradedMatrix.identity(red.reduced.module(i))
                         for i in range(red.reduced.top + 1))
    return out


def strands_agree(F, G, field=QQ):
    "homology of every strand over the lcm closure of both complexes"
    degs = lcm_closure(F.all_degrees() | G.all_degrees(), F.n)

    def hom(C, b):
        h = strand(C, b, field).homology_ranks()
        while h and h[-1] == 0:
            h.pop()
        return h

    for b in sorted(degs):
        if hom(F, b) != hom(G, b):
            return False, b
    return True, None


# ---------------------------------------------------------------------------
# full reduction with cells

@dataclass
class MorseReduction:
    matching: list
    phi: dict
    pi: dict
    reduced: CellularFreeComplex
    projection: ChainMap
    inclusion: ChainMap
    collapsed: LabeledComplex
    regular: bool
    morse_morphism: CellResMorphism
    dual_route_ok: bool = None
    critical: dict = None


def _same_label_check(F, M):
    for (i, c), (j, b) in M:
        if F.degree(i, c) != F.degree(j, b):
            raise MorseError("matched pair %s, %s has different labels" % (fmt_id(c), fmt_id(b)),
                             witness=(c, b))


def _attach(R):
    got = derive_complex(R)
    if got is None:
        return R, None, False
    Xt, comp_ids = got
    regular = validate_cw(Xt, require_regular=True).ok
    return CellularFreeComplex(R.ring, R.modules, R.diffs, complex=Xt, comp_ids=comp_ids, check=False), Xt, regular


def _morse_cell_map(F, Ft, proj):
    "carriers: closure of the support of the projection plus the carriers of the facets"
    X, Y = F.complex, Ft.complex
    car = {}
    for c in sorted(X.cells(), key=lambda c: c.dim):
        s = set(proj[c.dim + 1].column(c.id))
        for f in c.facets():
            s |= car[f]
        car[c.id] = Y.closure(s) if s else set()
    return CellularMap(X, Y, car)


def _order_pairs(F, M):
    "matched pairs in an order along which single collapses stay valid"
    G = gamma_graph(F)
    g = G.reversed_along(M)
    topo = {v: k for k, v in enumerate(nx.lexicographical_topological_sort(g, key=repr))}
    return sorted(M, key=lambda e: -topo[e[1]])


def single_pair_route(F, M):
    """reduce one pair at a time; returns the final complex and the composite
    projection, or None when some step is not available"""
    cur = F
    comp = ChainMap.identity(F)
    todo = list(M)
    while todo:
        for k, e in enumerate(todo):
            (i, c), (j, b) = e
            p = cur.d(i).get(b, c)
            if p.is_constant() and not p.is_zero():
                break
        else:
            return None
        step = _reduce(cur, [e])
        comp = step.projection.compose(comp)
        cur = step.reduced
        todo.pop(k)
    return cur, comp


def morse_reduce(F, M, same_label=True, dual_route=True):
    """M: matching as graph edges ((i, c), (i-1, b)). Refuses matchings that
    are invalid on the graph or, with same_label, that pair cells of
    different labels."""
    G = gamma_graph(F)
    rep = validate_matching(G, M)
    if not rep.ok:
        raise MorseError("invalid matching: " + "; ".join(rep.reasons), witness=rep.cycle)
    if same_label:
        _same_label_check(F, M)
    red = _reduce(F, M)
    Ft, Xt, regular = _attach(red.reduced)
    proj = ChainMap(F, Ft, red.projection.maps)
    incl = ChainMap(Ft, F, red.inclusion.maps)
    mm = None
    if Xt is not None and F.complex is not None:
        mm = CellResMorphism(proj, _morse_cell_map(F, Ft, proj))
    dual = None
    if dual_route:
        got = single_pair_route(F, _order_pairs(F, M))
        dual = got is not None and got[1].maps == red.projection.maps and got[0].diffs == red.reduced.diffs
    return MorseReduction(list(M), red.phi, red.pi, Ft, proj, incl, Xt, regular, mm, dual, red.critical)


# ---------------------------------------------------------------------------
# collapses and expansions

@dataclass
class Step:
    kind: str           # 'collapse' or 'expand'
    pair: tuple         # (upper generator, lower generator)
    before: CellularFreeComplex
    after: CellularFreeComplex
    free_face: bool = None
    morphism: object = None


def _pair_edge(F, pair):
    c, b = pair
    X = F.complex
    if X is not None and c in X:
        i = X.cell(c).dim + 1
    else:
        i = next(k for k in range(1, F.top + 1) if c in F.module(k))
    return ((i, c), (i - 1, b))


def elementary_collapse(F, pair):
    """collapse the pair (upper, lower) of generators, the lower one a facet of
    the upper one with the same label"""
    e = _pair_edge(F, pair)
    (i, c), (j, b) = e
    if F.d(i).get(b, c).is_zero():
        raise MorseError("%s is not a facet of %s" % (fmt_id(b), fmt_id(c)), witness=pair)
    red = morse_reduce(F, [e], dual_route=False)
    free = None
    if F.complex is not None and i >= 2:
        free = F.complex.cofaces(b) == [c]
    return Step("collapse", (c, b), F, red.reduced, free, red.morse_morphism)


def elementary_expansion(F, like, lower, upper, label=None):
    """add generators lower (degree i) and upper (degree i+1) next to the
    degree i generator like, with label L (default the label of like):
    d(lower) = x^(L - a) d(like) and d(upper) = lower - x^(L - a) like.
    Collapsing (upper, lower) returns F exactly."""
    n = F.n
    i = next((k for k in range(1, F.top + 1) if like in F.module(k)), None)
    if i is None:
        raise MorseError("expansion needs a generator of degree at least 1", witness=like)
    a = F.degree(i, like)
    L = a if label is None else tuple(label)
    u = exp_sub(L, a)
    if not exp_nonneg(u):
        raise MorseError("label must be a multiple of the label of %s" % fmt_id(like))
    for k in range(F.top + 1):
        if lower in F.module(k).ids or upper in F.module(k).ids:
            raise MorseError("generator id already in use")
    mods = []
    for k in range(max(F.top, i + 1) + 1):
        gens = list(F.module(k))
        if k == i:
            gens.append((lower, L))
        if k == i + 1:
            gens.append((upper, L))
        mods.append(GradedFreeModule(gens, n))
    diffs = []
    xu = Polynomial.monomial(u)
    for k in range(1, len(mods)):
        ent = {} if k > F.top else dict(F.d(k).entries)
        if k == i:
            for r, p in F.d(i).column(like).items():
                ent[(r, lower)] = p * xu
        if k == i + 1:
            ent[(lower, upper)] = Polynomial.constant(n)
            ent[(like, upper)] = -xu
        diffs.append(GradedMatrix(mods[k], mods[k - 1], ent))
    G = CellularFreeComplex(F.ring, mods, diffs)
    Gc, _, _ = _attach(G)
    free = True
    return Step("expand", (upper, lower), F, Gc, free)


@dataclass
class DeformationReport:
    ok: bool
    failed_step: int = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def apply_step(F, st):
    "st: ('collapse', upper, lower) or ('expand', like, lower, upper[, label])"
    kind = st[0]
    if kind == "collapse":
        return elementary_collapse(F, (st[1], st[2]))
    if kind == "expand":
        return elementary_expansion(F, *st[1:])
    raise MorseError("unknown step kind %r" % (kind,))


def verify_formal_deformation(F, G, steps):
    "replay the steps from F; the end result must be isomorphic to G"
    cur = F
    for k, st in enumerate(steps):
        try:
            cur = apply_step(cur, st).after
        except (MorseError, KeyError, StopIteration, AssertionError) as e:
            return DeformationReport(False, k, str(e))
    if find_isomorphism(cur, G) is None:
        return DeformationReport(False, len(steps), "final complex is not isomorphic to the target")
    return DeformationReport(True)


# ---------------------------------------------------------------------------
# search

def greedy_matching_search(F, allow_degree_zero=True):
    """match generators greedily from the top degree down, in module order,
    along invertible entries of equal label, keeping the reversed graph
    acyclic"""
    G = gamma_graph(F)
    g = G.graph.copy()
    used = set()
    M = []
    low = 1 if allow_degree_zero else 2
    for i in range(F.top, low - 1, -1):
        D = F.d(i)
        for c in F.module(i).ids:
            if (i, c) in used:
                continue
            col = D.column(c)
            for b in F.module(i - 1).ids:
                if b not in col or (i - 1, b) in used:
                    continue
                p = col[b]
                if not p.is_constant() or p.is_zero():
                    continue
                u, v = (i, c), (i - 1, b)
                g.remove_edge(u, v)
                g.add_edge(v, u)
                if nx.has_path(g, u, v):
                    g.remove_edge(v, u)
                    g.add_edge(u, v, w=p)
                    continue
                used.add(u)
                used.add(v)
                M.append((u, v))
                break
    return M
