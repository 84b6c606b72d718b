"""
Cellular free complexes, acyclicity by multidegree strands, Betti tables and
isomorphism search up to signed permutations of generators.
"""

from dataclasses import dataclass

from .algebra import (Ring, Polynomial, GradedFreeModule, GradedMatrix, QQ, rank,
                      exp_zero, exp_sub, exp_add, exp_lcm_all, exp_divides, exp_nonneg, exp_sort_key,
                      lcm_closure, term_shift, AlgebraError)
from .complex import (LabeledComplex, Cell, validate_cw, reduced_homology_ranks, simplex_complex,
                      empty_complex, ComplexError, fmt_id)


class NotAResolution(Exception):
    def __init__(self, msg, witness=None):
        Exception.__init__(self, msg)
        self.witness = witness


class CellularFreeComplex:
    """F_0 <- F_1 <- ... <- F_L; diffs[i-1] is d_i : F_i -> F_{i-1}.

    complex is the supporting labeled complex when known, and comp_ids[k] is
    the F_0 generator of its k-th component. Generators of F_i for i >= 1 are
    the (i-1)-cells, with the same ids.
    """

    def __init__(self, ring, modules, diffs, complex=None, comp_ids=None, check=True):
        assert isinstance(ring, Ring)
        self.ring = ring
        self.n = ring.n
        modules = list(modules)
        diffs = list(diffs)
        # drop trailing zero modules
        while len(modules) > 1 and modules[-1].rank() == 0:
            modules.pop()
            diffs.pop()
        assert len(diffs) == len(modules) - 1
        for i, d in enumerate(diffs, start=1):
            assert d.source == modules[i], "d_%d has the wrong source" % i
            assert d.target == modules[i - 1], "d_%d has the wrong target" % i
        self.modules = modules
        self.diffs = diffs
        self.complex = complex
        self.comp_ids = list(comp_ids) if comp_ids is not None else None
        if check and not self.check_d2():
            raise AlgebraError("d^2 != 0")

    @property
    def top(self):
        return len(self.modules) - 1

    def module(self, i):
        if 0 <= i < len(self.modules):
            return self.modules[i]
        return GradedFreeModule([], self.n)

    def d(self, i):
        if 1 <= i <= self.top:
            return self.diffs[i - 1]
        return GradedMatrix.zero(self.module(i), self.module(i - 1))

    def ranks(self):
        return [M.rank() for M in self.modules]

    def degree(self, i, g):
        return self.modules[i].degree(g)

    def all_degrees(self):
        out = set()
        for M in self.modules:
            for _, e in M:
                out.add(e)
        return out

    def check_d2(self):
        for i in range(2, self.top + 1):
            if not (self.d(i - 1) @ self.d(i)).is_zero():
                return False
        return True

    def is_homogeneous(self):
        return all(d.is_homogeneous(exp_zero(self.n)) for d in self.diffs)

    def __eq__(self, other):
        if not isinstance(other, CellularFreeComplex):
            return NotImplemented
        return (self.ring == other.ring and self.modules == other.modules
                and self.diffs == other.diffs)

    def __hash__(self):
        return hash((self.ring, tuple(self.modules)))

    def same_up_to_order(self, other):
        "equal after ignoring the order of generators"
        if self.ring != other.ring or self.top != other.top:
            return False
        for a, b in zip(self.modules, other.modules):
            if not a.same_up_to_order(b):
                return False
        for a, b in zip(self.diffs, other.diffs):
            if a.entries != b.entries:
                return False
        return True

    def __repr__(self):
        return "CellularFreeComplex(ranks=%s)" % (self.ranks(),)

    def component_generator(self, k):
        return self.comp_ids[k] if self.comp_ids is not None else k

    def vertex_component_generator(self, v):
        "F_0 generator hit by d_1 of the vertex v"
        col = self.d(1).column(v)
        assert len(col) == 1, "vertex %r is not attached to one component" % (v,)
        return next(iter(col))


def cellular_free_complex(X, check=True):
    """the cellular free complex supported on X: F_0 has one generator per
    component, F_i one generator per (i-1)-cell with degree its label"""
    if check:
        rep = validate_cw(X)
        if not rep.ok:
            raise ComplexError("invalid CW complex: " + "; ".join(rep.messages))
    n = X.n
    lab = X.labels() if not X.is_empty() else {}
    k = X.num_components()
    modules = [GradedFreeModule([(i, exp_zero(n)) for i in range(k)], n)]
    for d in range(0, X.dim + 1):
        modules.append(GradedFreeModule([(c.id, lab[c.id]) for c in X.cells(d)], n))
    diffs = []
    for d in range(0, X.dim + 1):
        ent = {}
        for c in X.cells(d):
            if d == 0:
                ent[(X.component_of(c.id), c.id)] = Polynomial.monomial(lab[c.id])
            else:
                for f, v in c.boundary:
                    e = exp_sub(lab[c.id], lab[f])
                    if not exp_nonneg(e):
                        raise ComplexError("label of %s does not divide label of %s" % (fmt_id(f), fmt_id(c.id)))
                    ent[(f, c.id)] = Polynomial.monomial(e, v)
        diffs.append(GradedMatrix(modules[d + 1], modules[d], ent))
    return CellularFreeComplex(X.ring, modules, diffs, complex=X, comp_ids=list(range(k)), check=check)


def derive_complex(F):
    """recover a labeled complex supporting the algebraic complex F, or None.

    Needs d_1 columns of the form x^a e_c, every other entry a single term of
    shift 0, and F_0 generators in bijection with components."""
    n = F.n
    ring = F.ring
    d1 = F.d(1)
    cells = []
    vlab = {}
    vert_gen = {}
    for v, a in F.module(1):
        col = d1.column(v)
        if len(col) != 1:
            return None
        (c, p), = col.items()
        if p != Polynomial.monomial(a):
            return None
        cells.append(Cell(v, 0))
        vlab[v] = a
        vert_gen[v] = c
    want = {}
    for i in range(2, F.top + 1):
        D = F.d(i)
        M = F.module(i)
        for g, a in M:
            bd = []
            for r, p in sorted(D.column(g).items(), key=lambda t: F.module(i - 1).index(t[0])):
                if len(p.terms) != 1:
                    return None
                e, v = p.single_term()
                if term_shift(e, F.degree(i - 1, r), a) != exp_zero(n):
                    return None
                if v.denominator != 1:
                    return None
                bd.append((r, int(v)))
            cells.append(Cell(g, i - 1, tuple(bd)))
            want[g] = a
    # cells of different degrees may share ids in an algebraic complex
    seen = set()
    for c in cells:
        if c.id in seen:
            return None
        seen.add(c.id)
    try:
        X = LabeledComplex(ring, cells, vlab)
        lab = X.labels()
    except ComplexError:
        return None
    over = {g: a for g, a in want.items() if lab[g] != a}
    if over:
        X = LabeledComplex(ring, cells, vlab, _fix_overrides(X, want))
    rep = validate_cw(X)
    if not rep.ok:
        return None
    # components vs F_0
    k = X.num_components()
    comp_ids = [None] * k
    for v, c in vert_gen.items():
        j = X.component_of(v)
        if comp_ids[j] is None:
            comp_ids[j] = c
        elif comp_ids[j] != c:
            return None
    F0 = F.module(0).ids
    if X.is_empty():
        if len(F0) != 1:
            return None
        comp_ids = [F0[0]]
    elif len(set(comp_ids)) != k or set(comp_ids) != set(F0):
        return None
    return X, comp_ids


def _fix_overrides(X, want):
    n = X.n
    over = {}
    lab = dict(X.vertex_labels)
    for d in range(1, X.dim + 1):
        for c in X.cells(d):
            nat = exp_lcm_all([lab[f] for f in c.facets()], n)
            lab[c.id] = want[c.id]
            if nat != want[c.id]:
                over[c.id] = want[c.id]
    return over


def attach_complex(F):
    "return F with its supporting complex filled in when one can be derived"
    if F.complex is not None:
        return F
    got = derive_complex(F)
    if got is None:
        return F
    X, comp_ids = got
    G = CellularFreeComplex(F.ring, F.modules, F.diffs, complex=X, comp_ids=comp_ids, check=False)
    return G


def complex_from_matrices(ring, mats, f0_degrees=None):
    """build a free complex from dense matrices d_1..d_L (lists of rows of
    polynomials or strings); column degrees are inferred from the entries"""
    n = ring.n
    mats = [[[ring.polynomial(x) for x in row] for row in M] for M in mats]
    r0 = len(mats[0])
    degs = [list(f0_degrees) if f0_degrees is not None else [exp_zero(n)] * r0]
    for i, M in enumerate(mats, start=1):
        rows = degs[-1]
        assert len(M) == len(rows), "d_%d has %d rows, expected %d" % (i, len(M), len(rows))
        ncols = len(M[0]) if M else 0
        cd = []
        for j in range(ncols):
            got = None
            for ri, row in enumerate(M):
                assert len(row) == ncols, "ragged matrix d_%d" % i
                p = row[j]
                if p.is_zero():
                    continue
                for e in p.terms:
                    a = exp_add(e, rows[ri])
                    if got is None:
                        got = a
                    elif got != a:
                        raise AlgebraError("d_%d column %d is not homogeneous" % (i, j))
            if got is None:
                raise AlgebraError("d_%d column %d is zero" % (i, j))
            cd.append(got)
        degs.append(cd)
    modules = [GradedFreeModule([((i, j), e) for j, e in enumerate(ds)], n) for i, ds in enumerate(degs)]
    diffs = []
    for i, M in enumerate(mats, start=1):
        ent = {}
        for ri, row in enumerate(M):
            for j, p in enumerate(row):
                if not p.is_zero():
                    ent[((i - 1, ri), (i, j))] = p
        diffs.append(GradedMatrix(modules[i], modules[i - 1], ent))
    return CellularFreeComplex(ring, modules, diffs, check=False)


# ---------------------------------------------------------------------------
# strands and acyclicity

@dataclass
class FieldChainComplex:
    "a chain complex of finite dimensional vector spaces in degrees 0..L"
    bases: list
    maps: list  # maps[i] : degree i -> i-1 as list of row dicts (rows index degree i-1)
    field: object = QQ

    def homology_ranks(self):
        L = len(self.bases)
        rk = [0] * (L + 1)
        for i in range(1, L):
            rows = self.maps[i]
            rk[i] = rank(rows, self.field) if rows else 0
        return [len(self.bases[i]) - rk[i] - (rk[i + 1] if i + 1 <= L else 0) for i in range(L)]


def strand(F, b, field=QQ):
    """the degree-b strand of F as a complex of field vector spaces"""
    b = tuple(b)
    bases = []
    for i in range(F.top + 1):
        bases.append([g for g, a in F.module(i) if exp_divides(a, b)])
    maps = [None]
    for i in range(1, F.top + 1):
        D = F.d(i)
        ridx = {g: k for k, g in enumerate(bases[i - 1])}
        cidx = {g: k for k, g in enumerate(bases[i])}
        rows = [dict() for _ in bases[i - 1]]
        for (r, c), p in D.entries.items():
            if r in ridx and c in cidx:
                e = exp_sub(F.degree(i, c), F.degree(i - 1, r))
                if exp_nonneg(e):
                    v = p.coeff(e)
                    if v != 0:
                        rows[ridx[r]][cidx[c]] = v
        maps.append(rows)
    return FieldChainComplex(bases, maps, field)


@dataclass
class AcyclicityVerdict:
    ok: bool
    witness: object = None  # (multidegree, homological degree) of the first failure
    checked: int = 0

    def __bool__(self):
        return self.ok


def is_acyclic_complex(F, field=QQ):
    """H_i(F) = 0 for i >= 1, checked strand by strand over the lcm lattice of
    the generator degrees"""
    if F.top <= 0:
        return AcyclicityVerdict(True, None, 0)
    degs = lcm_closure(F.all_degrees())
    count = 0
    for b in sorted(degs, key=exp_sort_key):
        h = strand(F, b, field).homology_ranks()
        count += 1
        for i in range(1, len(h)):
            if h[i] != 0:
                return AcyclicityVerdict(False, (b, i), count)
    return AcyclicityVerdict(True, None, count)


def is_resolution_combinatorial(X, field=QQ):
    """X supports a resolution iff every X_{<=b} is acyclic on each component
    (empty allowed), b over the lcm closure of the face labels"""
    rep = validate_cw(X)
    if not rep.ok:
        raise ComplexError("invalid CW complex: " + "; ".join(rep.messages))
    if X.is_empty():
        return AcyclicityVerdict(True, None, 0)
    lab = X.labels()
    count = 0
    for b in sorted(lcm_closure(set(lab.values())), key=exp_sort_key):
        sub = [c for c in X.cells() if exp_divides(lab[c.id], b)]
        groups = {}
        for c in sub:
            groups.setdefault(X.component_of(c.id), []).append(c)
        count += 1
        for k in sorted(groups):
            h = reduced_homology_ranks(X, field, groups[k])
            for j, x in enumerate(h):
                if x != 0:
                    return AcyclicityVerdict(False, (b, j - 1), count)
    return AcyclicityVerdict(True, None, count)


# ---------------------------------------------------------------------------
# resolved module, Betti numbers, minimality

@dataclass
class ResolvedModule:
    "the cokernel of d_1: one monomial ideal per F_0 generator"
    ideals: list  # list of (F_0 id, list of generator exponents)

    def generators(self, k=0):
        return self.ideals[k][1]


def resolved_module(F, field=QQ, check=True):
    if check:
        v = is_acyclic_complex(F, field)
        if not v.ok:
            raise NotAResolution("complex is not acyclic", v.witness)
    d1 = F.d(1)
    out = []
    for c in F.module(0).ids:
        gens = []
        for v in F.module(1).ids:
            p = d1.entries.get((c, v))
            if p is not None:
                for e in p.terms:
                    if e not in gens:
                        gens.append(e)
        if not gens:
            # an empty component is read as the unit ideal
            gens = [exp_zero(F.n)]
        out.append((c, gens))
    return ResolvedModule(out)


def minimal_generators(exps):
    exps = list(dict.fromkeys(tuple(e) for e in exps))
    return [e for e in exps if not any(f != e and exp_divides(f, e) for f in exps)]


class BettiTable:
    "counts keyed by (homological degree, multidegree)"

    def __init__(self, counts, ring):
        self.counts = {k: v for k, v in counts.items() if v}
        self.ring = ring

    def totals(self):
        if not self.counts:
            return []
        L = max(i for i, _ in self.counts)
        return [sum(v for (i, _), v in self.counts.items() if i == j) for j in range(L + 1)]

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.counts == other.counts

    def __repr__(self):
        return "BettiTable(%s)" % self.totals()

    def rows(self):
        return sorted(((i, e, v) for (i, e), v in self.counts.items()),
                      key=lambda t: (t[0], exp_sort_key(t[1])))

    def to_text(self):
        lines = ["totals: " + " ".join(str(x) for x in self.totals())]
        for i, e, v in self.rows():
            lines.append("%3d  %-16s %d" % (i, self.ring.fmt_monomial(e), v))
        return "\n".join(lines) + "\n"

    def to_csv(self):
        lines = ["homdeg,multidegree,count"]
        for i, e, v in self.rows():
            lines.append("%d,%s,%d" % (i, self.ring.fmt_monomial(e), v))
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {"totals": self.totals(),
                "entries": [[i, list(e), v] for i, e, v in self.rows()]}


def betti(F):
    counts = {}
    for i, M in enumerate(F.modules):
        for _, e in M:
            counts[(i, e)] = counts.get((i, e), 0) + 1
    return BettiTable(counts, F.ring)


def tor_betti(F, field=QQ):
    """graded Betti numbers of the module resolved by F, computed as the
    homology of F tensored with the residue field (needs F acyclic)"""
    counts = {}
    degs = sorted(F.all_degrees(), key=exp_sort_key)
    for b in degs:
        bases = [[g for g, a in F.module(i) if a == b] for i in range(F.top + 1)]
        rk = [0] * (F.top + 2)
        for i in range(1, F.top + 1):
            ridx = {g: k for k, g in enumerate(bases[i - 1])}
            rows = []
            D = F.d(i)
            for c in bases[i]:
                row = {}
                for r, p in D.column(c).items():
                    if r in ridx:
                        v = p.constant_part()
                        if v != 0:
                            row[ridx[r]] = v
                rows.append(row)
            rk[i] = rank(rows, field)
        for i in range(F.top + 1):
            h = len(bases[i]) - rk[i] - rk[i + 1]
            if h:
                counts[(i, b)] = h
    return BettiTable(counts, F.ring)


def is_minimal(F):
    "no differential entry has a nonzero constant term"
    return not any(d.has_unit_entry() for d in F.diffs)


# ---------------------------------------------------------------------------
# standard complexes

def taylor_complex(ring, gens):
    gens = [ring.monomial(g) if not isinstance(g, tuple) else g for g in gens]
    return simplex_complex(ring, gens)


def taylor(ring, gens):
    return cellular_free_complex(taylor_complex(ring, gens))


def koszul(ring, variables=None):
    if variables is None:
        variables = ring.variables
    return taylor(ring, [ring.var(v) if isinstance(v, str) else v for v in variables])


def initial_object(ring):
    "the empty complex: 0 <- S <- 0"
    return cellular_free_complex(empty_complex(ring))


# ---------------------------------------------------------------------------
# isomorphism up to signed permutations

def _neg_col(col):
    return {r: -p for r, p in col.items()}


def find_isomorphism(F, G, limit=200000):
    """search degree by degree for a degree-preserving signed permutation
    pi with d^G pi = pi d^F; returns {i: {f_id: (g_id, sign)}} or None"""
    if F.ring != G.ring or F.ranks() != G.ranks():
        return None
    for i in range(F.top + 1):
        a = sorted(e for _, e in F.module(i))
        b = sorted(e for _, e in G.module(i))
        if a != b:
            return None
    budget = [limit]
    top = F.top

    def cands(i, c, pi_prev, used):
        col = F.d(i).column(c)
        T = {}
        for r, p in col.items():
            g, s = pi_prev[r]
            T[g] = p * s
        out = []
        deg = F.degree(i, c)
        Gd = G.d(i)
        for g, a in G.module(i):
            if a != deg or g in used:
                continue
            gc = Gd.column(g)
            if not T and not gc:
                out.append((g, 1))
                out.append((g, -1))
            elif gc == T:
                out.append((g, 1))
            elif gc == _neg_col(T):
                out.append((g, -1))
        return out

    def solve_degree(i, pi):
        if i > top:
            return pi
        ids = F.module(i).ids
        cur = {}
        used = set()

        def rec(j):
            if budget[0] <= 0:
                return None
            budget[0] -= 1
            if j == len(ids):
                pi2 = dict(pi)
                pi2[i] = dict(cur)
                return solve_degree(i + 1, pi2)
            c = ids[j]
            for g, s in cands(i, c, pi[i - 1], used):
                cur[c] = (g, s)
                used.add(g)
                got = rec(j + 1)
                if got is not None:
                    return got
                used.discard(g)
                del cur[c]
            return None

        return rec(0)

    # degree 0: match components by degree, positive signs
    ids0 = F.module(0).ids
    g0 = G.module(0).ids

    def rec0(j, cur, used):
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if j == len(ids0):
            return solve_degree(1, {0: dict(cur)})
        c = ids0[j]
        for g in g0:
            if g in used or G.degree(0, g) != F.degree(0, c):
                continue
            cur[c] = (g, 1)
            used.add(g)
            got = rec0(j + 1, cur, used)
            if got is not None:
                return got
            used.discard(g)
            del cur[c]
        return None

    return rec0(0, {}, set())


def apply_isomorphism_check(F, G, pi):
    "verify d^G pi = pi d^F for a found isomorphism"
    for i in range(1, F.top + 1):
        for c in F.module(i).ids:
            g, s = pi[i][c]
            lhs = {r: p * s for r, p in G.d(i).column(g).items()}
            rhs = {}
            for r, p in F.d(i).column(c).items():
                gr, t = pi[i - 1][r]
                rhs[gr] = p * t
            if lhs != rhs:
                return False
    return True


def _sign_key(p):
    "representative of p up to sign"
    q = -p
    a = sorted((e, c) for e, c in p.terms.items())
    b = sorted((e, c) for e, c in q.terms.items())
    return tuple(min(a, b))


def matrices_equivalent(A, B, limit=200000):
    """A, B dense lists of rows of Polynomials: look for signed row and column
    permutations with B[pr][pc] = sr*sc*A[r][c]. Returns (rowmap, colmap) or None"""
    if len(A) != len(B):
        return None
    nr = len(A)
    nc = len(A[0]) if A else 0
    if any(len(r) != nc for r in A) or any(len(r) != nc for r in B):
        return None
    Acols = [{r: A[r][c] for r in range(nr) if not A[r][c].is_zero()} for c in range(nc)]
    Bcols = [{r: B[r][c] for r in range(nr) if not B[r][c].is_zero()} for c in range(nc)]

    def sig(col):
        return tuple(sorted(_sign_key(p) for p in col.values()))

    Asig = [sig(c) for c in Acols]
    Bsig = [sig(c) for c in Bcols]
    if sorted(Asig) != sorted(Bsig):
        return None
    Arows = [tuple(sorted(_sign_key(p) for p in row if not p.is_zero())) for row in A]
    Brows = [tuple(sorted(_sign_key(p) for p in row if not p.is_zero())) for row in B]
    if sorted(Arows) != sorted(Brows):
        return None
    budget = [limit]
    rowmap = {}
    rowinv = {}
    colmap = {}
    used_cols = set()
    # most constrained columns first
    order = sorted(range(nc), key=lambda c: -len(Acols[c]))

    def extend_rows(acol, bcol, s, rows):
        "assign unmapped rows of acol to unmapped rows of bcol; generator of assignments"
        if not rows:
            yield []
            return
        r = rows[0]
        p = acol[r]
        for br, q in bcol.items():
            if br in rowinv or Brows[br] != Arows[r]:
                continue
            if q == p * s:
                t = 1
            elif q == -(p * s):
                t = -1
            else:
                continue
            rowmap[r] = (br, t)
            rowinv[br] = r
            for rest in extend_rows(acol, bcol, s, rows[1:]):
                yield [r] + rest
            del rowmap[r]
            del rowinv[br]

    def rec(j):
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if j == nc:
            return dict(rowmap), dict(colmap)
        c = order[j]
        acol = Acols[c]
        for k in range(nc):
            if k in used_cols or Bsig[k] != Asig[c]:
                continue
            bcol = Bcols[k]
            for s in (1, -1):
                ok = True
                for r, p in acol.items():
                    if r in rowmap:
                        br, t = rowmap[r]
                        if bcol.get(br) != p * (s * t):
                            ok = False
                            break
                if not ok:
                    continue
                # mapped B rows must not carry extra entries
                for br in bcol:
                    if br in rowinv and rowinv[br] not in acol:
                        ok = False
                        break
                if not ok:
                    continue
                free = [r for r in acol if r not in rowmap]
                for _ in extend_rows(acol, bcol, s, free):
                    colmap[c] = (k, s)
                    used_cols.add(k)
                    got = rec(j + 1)
                    if got is not None:
                        return got
                    used_cols.discard(k)
                    del colmap[c]
                    if budget[0] <= 0:
                        return None
                if not acol:
                    break
        return None

    got = rec(0)
    if got is None:
        return None
    rm, cm = got
    # unmapped rows are zero rows; pair them arbitrarily
    free_a = [r for r in range(nr) if r not in rm]
    free_b = [r for r in range(nr) if r not in rowinv]
    for r, br in zip(free_a, free_b):
        rm[r] = (br, 1)
    return rm, cm


def dense_matrix(ring, rows):
    return [[ring.polynomial(x) for x in row] for row in rows]


def generator_components(F):
    """(i, g) -> F_0 generator of the component containing g, propagated
    through the differentials; raises on inconsistent data"""
    out = {}
    for c in F.module(0).ids:
        out[(0, c)] = c
    for i in range(1, F.top + 1):
        D = F.d(i)
        for g in F.module(i).ids:
            comps = {out[(i - 1, r)] for r in D.column(g)}
            if len(comps) > 1:
                raise AlgebraError("generator %s touches several components" % fmt_id(g))
            if not comps:
                if F.complex is not None and i >= 1:
                    k = F.complex.component_of(g)
                    out[(i, g)] = F.component_generator(k)
                    continue
                raise AlgebraError("generator %s has zero boundary" % fmt_id(g))
            out[(i, g)] = comps.pop()
    return out
