"""
Morphisms of cellular resolutions: a chain map together with a cellular map
whose carriers bound the supports of the chain map.
"""

from dataclasses import dataclass, field as dc_field

from .algebra import (Polynomial, GradedMatrix, Unknown, solve_graded_system, exp_zero,
                      exp_sub, exp_lcm_all, exp_divides, exp_nonneg, exp_add)
from .complex import LabeledComplex, fmt_id
from .resolution import CellularFreeComplex


class MorphismError(Exception):
    pass


# ---------------------------------------------------------------------------
# cellular maps

class CellularMap:
    """carrier: source cell id -> frozenset of target cell ids.

    Carriers are skeletal (cells of dimension at most dim x) and closed under
    taking boundaries. A carrier with no cell of dimension dim x means the
    cell degenerates and its chain image is zero.
    """

    def __init__(self, source, target, carrier):
        assert isinstance(source, LabeledComplex) and isinstance(target, LabeledComplex)
        self.source = source
        self.target = target
        self.carrier = {c: frozenset(carrier.get(c, ())) for c in source.ids()}
        self._yidx = {y: i for i, y in enumerate(target.ids())}
        extra = set(carrier) - set(self.carrier)
        if extra:
            raise MorphismError("carrier given for unknown cells %s" % sorted(map(fmt_id, extra)))

    def __call__(self, cid):
        return self.carrier[cid]

    def top_cells(self, cid):
        "carrier cells of the same dimension as cid"
        d = self.source.cell(cid).dim
        return sorted((y for y in self.carrier[cid] if self.target.cell(y).dim == d),
                      key=lambda y: self._yidx[y])

    def validate(self):
        "list of problems, empty when the map is a valid cellular map"
        X, Y = self.source, self.target
        out = []
        for c in X.cells():
            car = self.carrier[c.id]
            for y in car:
                if y not in Y:
                    out.append("carrier of %s has unknown cell %s" % (fmt_id(c.id), fmt_id(y)))
                elif Y.cell(y).dim > c.dim:
                    out.append("carrier of %s is not skeletal" % fmt_id(c.id))
            if out:
                continue
            if c.dim == 0 and len(car) > 1:
                out.append("vertex %s has more than one image" % fmt_id(c.id))
            cl = Y.closure(car) if car else set()
            for f in c.facets():
                if not self.carrier[f] <= cl:
                    out.append("carrier of facet %s of %s escapes the closure" % (fmt_id(f), fmt_id(c.id)))
        return out

    def label_map(self):
        "cell -> lcm of carrier labels, None for the zero label"
        lab = self.target.labels() if not self.target.is_empty() else {}
        out = {}
        for c, car in self.carrier.items():
            out[c] = exp_lcm_all([lab[y] for y in car], self.source.n) if car else None
        return out

    def compose(self, other):
        "self after other"
        assert other.target == self.source
        car = {}
        for c, ys in other.carrier.items():
            s = set()
            for y in ys:
                s |= self.carrier[y]
            car[c] = s
        return CellularMap(other.source, self.target, car)

    @classmethod
    def identity(cls, X):
        return cls(X, X, {c: {c} for c in X.ids()})

    def __eq__(self, other):
        return (isinstance(other, CellularMap) and self.source == other.source
                and self.target == other.target and self.carrier == other.carrier)


# ---------------------------------------------------------------------------
# chain maps

class ChainMap:
    """maps[i] : F_i -> G_i for i >= 0; maps[0] may be None, meaning the map on
    F_0 is the one induced on the ideals by the labels"""

    def __init__(self, source, target, maps):
        assert isinstance(source, CellularFreeComplex) and isinstance(target, CellularFreeComplex)
        self.source = source
        self.target = target
        if not isinstance(maps, dict):
            maps = dict(enumerate(maps))
        self.maps = {}
        for i in range(max(source.top, target.top) + 1):
            if i == 0 and 0 in maps and maps[0] is None:
                self.maps[0] = None
                continue
            M = maps.get(i)
            if M is None:
                M = GradedMatrix.zero(source.module(i), target.module(i))
            assert M.source == source.module(i), "f_%d has the wrong source" % i
            assert M.target == target.module(i), "f_%d has the wrong target" % i
            self.maps[i] = M

    @property
    def f0(self):
        return self.maps.get(0)

    def __getitem__(self, i):
        if i in self.maps:
            return self.maps[i]
        return GradedMatrix.zero(self.source.module(i), self.target.module(i))

    def degrees(self):
        return sorted(self.maps)

    def compose(self, other):
        "self after other"
        assert other.target == self.source, "morphisms are not composable"
        maps = {}
        for i in range(max(other.source.top, self.target.top) + 1):
            if i == 0 and (self.f0 is None or other.f0 is None):
                maps[0] = None
                continue
            maps[i] = self[i] @ other[i]
        return ChainMap(other.source, self.target, maps)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        for i in set(self.maps) | set(other.maps):
            a = self.maps.get(i, "z")
            b = other.maps.get(i, "z")
            if a is None or b is None:
                if a is not b:
                    return False
                continue
            if self[i] != other[i]:
                return False
        return True

    def __sub__(self, other):
        maps = {}
        for i in set(self.maps) | set(other.maps):
            if i == 0 and (self.f0 is None or other.f0 is None):
                maps[0] = None
            else:
                maps[i] = self[i] - other[i]
        return ChainMap(self.source, self.target, maps)

    def is_homogeneous(self):
        "common shift of all terms (per map), None if mixed"
        s = set()
        for i, M in self.maps.items():
            if M is not None:
                s |= M.shifts()
        if len(s) > 1:
            return None
        return next(iter(s)) if s else exp_zero(self.source.n)

    @classmethod
    def identity(cls, F):
        return cls(F, F, {i: GradedMatrix.identity(F.module(i)) for i in range(F.top + 1)})


@dataclass
class SquareReport:
    ok: bool
    failing_square: int = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def verify_chain_map(f):
    """check d^G f_i = f_{i-1} d^F for every square; square 1 is skipped when
    f_0 is label induced"""
    F, G = f.source, f.target
    for i in range(1, max(F.top, G.top) + 1):
        if i == 1 and f.f0 is None:
            continue
        lhs = G.d(i) @ f[i]
        rhs = f[i - 1] @ F.d(i)
        if lhs != rhs:
            bad = sorted(set(lhs.entries.items()) ^ set(rhs.entries.items()), key=repr)[0][0]
            return SquareReport(False, i, "square %d fails at entry %s" % (i, fmt_id(bad)))
    return SquareReport(True)


@dataclass
class CompatReport:
    ok: bool
    reasons: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def _cell_gen_degree(X, cid):
    return X.cell(cid).dim + 1


def verify_compatible(f, g, mode="support"):
    """(a) every vertex image realizes the label map, (b) chain images are
    supported on carriers, nonzero exactly on non-degenerate carriers,
    (c) f_0 respects components; strict mode asks for exact labels and full
    support"""
    assert mode in ("support", "strict")
    F, G = f.source, f.target
    X, Y = g.source, g.target
    reasons = []
    if F.complex is None or G.complex is None:
        return CompatReport(False, ["resolution without a supporting complex"])
    if F.complex != X or G.complex != Y:
        return CompatReport(False, ["cellular map does not match the supporting complexes"])
    probs = g.validate()
    if probs:
        return CompatReport(False, probs)
    ylab = Y.labels() if not Y.is_empty() else {}
    X.labels() if not X.is_empty() else {}
    # (b) supports
    for c in X.cells():
        i = c.dim + 1
        col = f[i].column(c.id)
        allowed = set(g.top_cells(c.id))
        supp = set(col)
        if not supp <= allowed:
            extra = sorted(map(fmt_id, supp - allowed))
            reasons.append("image of %s leaves its carrier at %s" % (fmt_id(c.id), ", ".join(extra)))
        if bool(allowed) != bool(supp):
            if allowed:
                reasons.append("image of %s is zero but its carrier is not degenerate" % fmt_id(c.id))
            else:
                reasons.append("image of %s is nonzero on an empty or degenerate carrier" % fmt_id(c.id))
        if mode == "strict" and supp != allowed:
            reasons.append("image of %s does not fill its carrier" % fmt_id(c.id))
    # (a) vertex labels
    for v in X.ids(0):
        car = g.carrier[v]
        q = G.d(1) @ f[1].restrict(source=F.module(1).subset([v]))
        if not car:
            continue
        (w,) = car
        col = q.column(v)
        if len(col) != 1:
            reasons.append("vertex %s does not map to a single monomial" % fmt_id(v))
            continue
        (r, p), = col.items()
        if len(p.terms) != 1:
            reasons.append("vertex %s does not map to a single monomial" % fmt_id(v))
            continue
        e, _ = p.single_term()
        if r != G.vertex_component_generator(w):
            reasons.append("vertex %s lands in the wrong component" % fmt_id(v))
        if mode == "strict":
            if e != ylab[w]:
                reasons.append("vertex %s: label %s is not realized exactly" % (fmt_id(v), ylab[w]))
        elif not exp_divides(ylab[w], e):
            reasons.append("vertex %s: image is not a multiple of the carrier label" % fmt_id(v))
    # (c) components
    if f.f0 is not None:
        comps = {}
        for v in X.ids(0):
            k = F.vertex_component_generator(v)
            for w in g.carrier[v]:
                comps.setdefault(k, set()).add(G.vertex_component_generator(w))
        for c in F.module(0).ids:
            col = f.f0.column(c)
            if c not in comps:
                # a component with no image: only the empty complex has such a
                # component, and it goes to the empty component if there is one
                if X.is_empty() and Y.is_empty():
                    want = {G.module(0).ids[0]: Polynomial.constant(F.n)}
                    if col != want:
                        reasons.append("empty component must map by the identity")
                elif col:
                    reasons.append("component %s has no carrier but a nonzero image" % fmt_id(c))
                continue
            if not set(col) <= comps[c]:
                reasons.append("component %s maps outside the components of its carriers" % fmt_id(c))
    return CompatReport(not reasons, reasons)


class CellResMorphism:
    """a chain map with a compatible cellular map; verified records whether the
    compatibility and chain map checks passed"""

    def __init__(self, chain, cell, mode="support"):
        assert isinstance(chain, ChainMap) and isinstance(cell, CellularMap)
        self.chain = chain
        self.cell = cell
        self.mode = mode
        self.squares = verify_chain_map(chain)
        self.compat = verify_compatible(chain, cell, mode)

    @property
    def source(self):
        return self.chain.source

    @property
    def target(self):
        return self.chain.target

    @property
    def verified(self):
        return self.squares.ok and self.compat.ok

    def reasons(self):
        out = []
        if not self.squares.ok:
            out.append(self.squares.detail)
        return out + list(self.compat.reasons)

    def require(self, what="construction"):
        if not self.verified:
            raise MorphismError("%s needs a verified morphism: %s" % (what, "; ".join(self.reasons())))
        return self

    def compose(self, other):
        "self after other"
        return compose(self, other)

    def __eq__(self, other):
        return isinstance(other, CellResMorphism) and self.chain == other.chain and self.cell == other.cell


def compose(m2, m1, mode=None):
    "m2 after m1"
    chain = m2.chain.compose(m1.chain)
    cell = m2.cell.compose(m1.cell)
    return CellResMorphism(chain, cell, mode or m1.mode)


def identity_morphism(F):
    assert F.complex is not None
    return CellResMorphism(ChainMap.identity(F), CellularMap.identity(F.complex))


def initial_morphism(E, F):
    "the unique morphism from the empty resolution"
    assert E.complex is not None and E.complex.is_empty()
    e = E.module(0).ids[0]
    ent = {}
    if F.complex.is_empty():
        ent[(F.module(0).ids[0], e)] = Polynomial.constant(F.n)
    maps = {0: GradedMatrix(E.module(0), F.module(0), ent)}
    return CellResMorphism(ChainMap(E, F, maps), CellularMap(E.complex, F.complex, {}))


def component_shifts(f):
    """for a chain map whose f_0 sends each component generator to a single
    monomial multiple of one target generator: {c: (target, exponent)}"""
    if f.f0 is None:
        raise MorphismError("f_0 is label induced")
    out = {}
    for c in f.source.module(0).ids:
        col = f.f0.column(c)
        if len(col) != 1:
            raise MorphismError("component %s does not map to a single component" % fmt_id(c))
        (r, p), = col.items()
        if len(p.terms) != 1:
            raise MorphismError("component %s does not map by a monomial" % fmt_id(c))
        e, v = p.single_term()
        if v != 1:
            raise MorphismError("component %s maps with coefficient %s" % (fmt_id(c), v))
        out[c] = (r, e)
    return out


# ---------------------------------------------------------------------------
# synthesis from cellular data

@dataclass
class LiftResult:
    chain: object
    failed_square: int = None
    detail: str = ""


def lift_cellular_map(g, F, G, f0=None):
    """build a chain map compatible with g, degree by degree, by solving
    d^G f_i = f_{i-1} d^F on carrier supports. Vertices go to their carriers
    with unit coefficient unless f0 is given, in which case f_1 is solved too.
    Without f0, f_0 is the monomial map given by the labels when that is
    consistent, and label induced otherwise."""
    X, Y = g.source, g.target
    if F.complex != X or G.complex != Y:
        raise MorphismError("cellular map does not match the resolutions")
    probs = g.validate()
    if probs:
        raise MorphismError("invalid cellular map: " + "; ".join(probs))
    n = F.n
    xlab = X.labels() if not X.is_empty() else {}
    ylab = Y.labels() if not Y.is_empty() else {}
    maps = {}
    if f0 is None:
        # f_0 from labels when every vertex of a component shifts by the same monomial
        ent = {}
        consistent = True
        for c in F.module(0).ids:
            shifts = set()
            targets = set()
            for v in X.ids(0):
                if F.vertex_component_generator(v) != c or not g.carrier[v]:
                    continue
                (w,) = g.carrier[v]
                shifts.add(exp_sub(ylab[w], xlab[v]))
                targets.add(G.vertex_component_generator(w))
            if not shifts:
                if X.is_empty() and Y.is_empty():
                    ent[(G.module(0).ids[0], c)] = Polynomial.constant(n)
                continue
            if len(shifts) != 1 or len(targets) != 1:
                consistent = False
                break
            (u,) = shifts
            if not exp_nonneg(u):
                consistent = False
                break
            ent[(next(iter(targets)), c)] = Polynomial.monomial(u)
        maps[0] = GradedMatrix(F.module(0), G.module(0), ent) if consistent else None
        ent1 = {}
        for v in X.ids(0):
            for w in g.carrier[v]:
                ent1[(w, v)] = Polynomial.constant(n)
        if F.top >= 1 or G.top >= 1:
            maps[1] = GradedMatrix(F.module(1), G.module(1), ent1)
        start = 2
    else:
        assert f0.source == F.module(0) and f0.target == G.module(0)
        maps[0] = f0
        start = 1
    for i in range(start, max(F.top, G.top) + 1):
        support = set()
        for c in F.module(i).ids:
            for y in g.top_cells(c):
                support.add((y, c))
        rhs = maps[i - 1] @ F.d(i) if maps.get(i - 1) is not None else None
        if rhs is None:
            raise MorphismError("cannot lift without f_0")
        U = Unknown(F.module(i), G.module(i), support)
        sol = solve_graded_system([U], [([(G.d(i), 0, None)], rhs)])
        if sol is None:
            return LiftResult(None, i, "no lift on carriers at square %d" % i)
        maps[i] = sol[0]
    return LiftResult(ChainMap(F, G, maps))


def chain_map_from_cellular(g, F, G, f0=None):
    "the synthesized chain map, or None when no lift on carriers exists"
    return lift_cellular_map(g, F, G, f0).chain


def morphism_from_cellular(g, F, G, f0=None, mode="support"):
    res = lift_cellular_map(g, F, G, f0)
    if res.chain is None:
        return None
    return CellResMorphism(res.chain, g, mode)


# ---------------------------------------------------------------------------
# homotopies

def find_chain_homotopy(f, g):
    """h_i : F_i -> G_{i+1} with f_i - g_i = d h_i + h_{i-1} d, or None"""
    F, G = f.source, f.target
    assert g.source == F and g.target == G
    top = max(F.top, G.top)
    unknowns = [Unknown(F.module(i), G.module(i + 1)) for i in range(top + 1)]
    eqs = []
    for i in range(top + 1):
        if i == 0 and (f.f0 is None or g.f0 is None):
            continue
        terms = [(G.d(i + 1), i, None)]
        if i >= 1:
            terms.append((None, i - 1, F.d(i)))
        eqs.append((terms, f[i] - g[i]))
    shifts = set()
    for _, rhs in eqs:
        shifts |= rhs.shifts()
    if not shifts:
        return [GradedMatrix.zero(U.source, U.target) for U in unknowns]
    return solve_graded_system(unknowns, eqs, shifts)


def contiguity_check(g1, g2):
    """'contiguous' when every pair of carriers lies in the closure of one
    target cell, 'not-contiguous' when some pair lies in different components,
    'unknown' otherwise"""
    assert g1.source == g2.source and g1.target == g2.target
    Y = g1.target
    closures = {y: Y.closure(y) for y in Y.ids()}
    verdict = "contiguous"
    for c in g1.source.ids():
        a, b = g1.carrier[c], g2.carrier[c]
        if not a and not b:
            continue
        U = (Y.closure(a) if a else set()) | (Y.closure(b) if b else set())
        if any(U <= cl for cl in closures.values()):
            continue
        if a and b:
            ca = {Y.component_of(y) for y in a}
            cb = {Y.component_of(y) for y in b}
            if ca != cb:
                return "not-contiguous"
        verdict = "unknown"
    return verdict


def morphisms_homotopic(m1, m2):
    "chain homotopy witness and the cellular contiguity verdict"
    h = find_chain_homotopy(m1.chain, m2.chain)
    return {"chain_homotopic": h is not None, "homotopy": h,
            "contiguity": contiguity_check(m1.cell, m2.cell)}


def forget_chain(m):
    "the chain map of a morphism"
    return m.chain


def forget_cell(m):
    "the cellular map of a morphism"
    return m.cell


def multiplication_morphism(F, u, G=None):
    """multiplication by the monomial u from F to G (default F) along the
    identity of the supporting complex; G must have the same cells with
    labels dividing the shifted ones"""
    G = F if G is None else G
    F.n
    X = F.complex
    assert X is not None and G.complex is not None
    maps = {}
    for i in range(F.top + 1):
        ent = {}
        for x in F.module(i).ids:
            if i == 0:
                ent[(x, x)] = Polynomial.monomial(u)
                continue
            e = exp_sub(exp_add(F.degree(i, x), u), G.degree(i, x))
            ent[(x, x)] = Polynomial.monomial(e)
        maps[i] = GradedMatrix(F.module(i), G.module(i), ent)
    car = {c: G.complex.closure([c]) for c in X.ids()}
    return CellResMorphism(ChainMap(F, G, maps), CellularMap(X, G.complex, car))
