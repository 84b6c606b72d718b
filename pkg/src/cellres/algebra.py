"""
Multigraded polynomial ring S = k[x_1..x_n], monomials, polynomials,
graded free modules and sparse graded matrices, plus exact linear algebra.

Polynomial coefficients live in Q (Fraction). A Field object is only used
when ranks or homology are taken, so GF(p) work reduces rational data mod p.
"""

from fractions import Fraction
from functools import reduce
import re


class AlgebraError(Exception):
    pass


# ---------------------------------------------------------------------------
# exponent vectors

def exp_zero(n):
    return (0,) * n


def exp_add(a, b):
    assert len(a) == len(b), (a, b)
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a, b):
    assert len(a) == len(b), (a, b)
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a, b):
    assert len(a) == len(b), (a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_gcd(a, b):
    assert len(a) == len(b), (a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def exp_divides(a, b):
    "a | b as monomials"
    return all(x <= y for x, y in zip(a, b))


def exp_nonneg(a):
    return all(x >= 0 for x in a)


def exp_lcm_all(exps, n):
    return reduce(exp_lcm, exps, exp_zero(n))


def exp_deg(a):
    return sum(a)


def lcm_closure(exps, n=None):
    "all lcms of non-empty subsets, computed by saturation"
    exps = set(exps)
    if not exps:
        return set()
    closed = set(exps)
    frontier = set(exps)
    while frontier:
        new = set()
        for a in frontier:
            for b in exps:
                c = exp_lcm(a, b)
                if c not in closed:
                    new.add(c)
        closed |= new
        frontier = new
    return closed


def exp_sort_key(a):
    return (sum(a), a)


# ---------------------------------------------------------------------------
# the ring

class Ring:
    "k[x_1..x_n] with named variables"

    def __init__(self, variables):
        variables = tuple(variables)
        assert len(set(variables)) == len(variables), "duplicate variable"
        for v in variables:
            assert re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v), v
        self.variables = variables
        self.n = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    def __eq__(self, other):
        return isinstance(other, Ring) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return "Ring(%s)" % ",".join(self.variables)

    def zero(self):
        return exp_zero(self.n)

    def var(self, name):
        e = [0] * self.n
        e[self._index[name]] = 1
        return tuple(e)

    def index(self, name):
        return self._index[name]

    def monomial(self, text):
        """parse 'a*b^2', 'ab^2c' (single letter variables), '1' or a list"""
        if isinstance(text, (list, tuple)):
            e = tuple(int(x) for x in text)
            if len(e) != self.n or not exp_nonneg(e):
                raise AlgebraError("bad exponent vector %r" % (text,))
            return e
        text = str(text).replace(" ", "")
        if text in ("1", ""):
            return self.zero()
        e = [0] * self.n
        if "*" in text or any(len(v) > 1 for v in self.variables):
            parts = text.split("*")
        else:
            # single letter variables may be juxtaposed
            parts = re.findall(r"[A-Za-z_](?:\^\d+)?", text)
            if "".join(parts) != text:
                raise AlgebraError("cannot parse monomial %r" % text)
        for part in parts:
            if not part:
                raise AlgebraError("cannot parse monomial %r" % text)
            if part == "1":
                continue
            m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", part)
            if m is None or m.group(1) not in self._index:
                raise AlgebraError("cannot parse monomial %r" % text)
            e[self._index[m.group(1)]] += int(m.group(2) or 1)
        return tuple(e)

    def polynomial(self, text):
        "parse a sum of terms like '-2*a*b + 3/4*c - d^2'"
        if isinstance(text, Polynomial):
            return text
        if isinstance(text, (int, Fraction)):
            return Polynomial.constant(self.n, text)
        text = str(text).replace(" ", "")
        if text in ("", "0"):
            return Polynomial.zero(self.n)
        terms = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
            m = re.fullmatch(r"(\d+(?:/\d+)?)(?:\*(.*))?", body)
            if m:
                coeff = Fraction(m.group(1))
                mono = m.group(2) or "1"
            else:
                coeff = Fraction(1)
                mono = body
            if sign == "-":
                coeff = -coeff
            e = self.monomial(mono)
            terms[e] = terms.get(e, 0) + coeff
        return Polynomial(terms, self.n)

    def fmt_monomial(self, e):
        assert len(e) == self.n
        parts = []
        for v, k in zip(self.variables, e):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append("%s^%d" % (v, k))
        if not parts:
            return "1"
        return "*".join(parts)

    def fmt_poly(self, p):
        if p.is_zero():
            return "0"
        out = []
        for e, c in p.sorted_terms():
            mono = self.fmt_monomial(e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = "%s*%s" % (a, mono)
            out.append((sign, body))
        s = "".join(("%s%s" % x) for x in out)
        if s.startswith("+"):
            s = s[1:]
        return s

    def to_json(self):
        return list(self.variables)


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    "immutable sparse polynomial: exponent tuple -> nonzero Fraction"

    __slots__ = ("terms", "n", "_hash")

    def __init__(self, terms, n):
        clean = {}
        for e, c in dict(terms).items():
            assert len(e) == n, (e, n)
            if c != 0:
                clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self.n = n
        self._hash = None

    @classmethod
    def zero(cls, n):
        return cls({}, n)

    @classmethod
    def constant(cls, n, c=1):
        return cls({exp_zero(n): c}, n)

    @classmethod
    def monomial(cls, e, c=1):
        return cls({tuple(e): c}, len(e))

    def is_zero(self):
        return not self.terms

    def is_monomial_term(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and exp_zero(self.n) in self.terms)

    def is_unit(self):
        return len(self.terms) == 1 and exp_zero(self.n) in self.terms

    def single_term(self):
        "(exp, coeff) of a one-term polynomial"
        assert len(self.terms) == 1, self
        return next(iter(self.terms.items()))

    def constant_part(self):
        return self.terms.get(exp_zero(self.n), Fraction(0))

    def coeff(self, e):
        return self.terms.get(tuple(e), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        assert other.n == self.n
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Polynomial(t, self.n)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()}, self.n)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Fraction(other)
            return Polynomial({e: c * other for e, c in self.terms.items()}, self.n)
        assert other.n == self.n
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial(t, self.n)

    __rmul__ = __mul__

    def mul_monomial(self, e, c=1):
        return Polynomial({exp_add(e1, e): c1 * c for e1, c1 in self.terms.items()}, self.n)

    def div_monomial(self, e):
        "exact division by x^e, or None"
        out = {}
        for e1, c1 in self.terms.items():
            q = exp_sub(e1, e)
            if not exp_nonneg(q):
                return None
            out[q] = c1
        return Polynomial(out, self.n)

    def monomial_gcd(self):
        "gcd of the monomials in the support"
        assert self.terms
        return reduce(exp_gcd, self.terms.keys())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "Polynomial(0)"
        return "Polynomial(%s)" % " + ".join("%s*x^%s" % (c, e) for e, c in self.sorted_terms())


# ---------------------------------------------------------------------------
# fields used for ranks

class Field:
    "Q or GF(p); elements are Fractions or ints mod p"

    def __init__(self, p=0):
        assert p == 0 or (p > 1 and all(p % q for q in range(2, int(p ** 0.5) + 1))), \
            "characteristic must be 0 or prime"
        self.p = p

    @classmethod
    def parse(cls, text):
        text = str(text).strip().upper()
        if text in ("Q", "QQ", "0"):
            return cls(0)
        m = re.fullmatch(r"(?:GF\()?(\d+)\)?", text)
        if m is None:
            raise ValueError("unknown field %r" % text)
        return cls(int(m.group(1)))

    def __repr__(self):
        return "Q" if self.p == 0 else "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    def convert(self, c):
        if self.p == 0:
            return Fraction(c)
        c = Fraction(c)
        den = c.denominator % self.p
        if den == 0:
            raise AlgebraError("denominator divisible by %d" % self.p)
        return (c.numerator * pow(den, -1, self.p)) % self.p

    def inv(self, a):
        if self.p == 0:
            return 1 / a
        return pow(a, -1, self.p)

    def norm(self, a):
        return a if self.p == 0 else a % self.p


QQ = Field(0)


def rank(rows, field=QQ):
    """rank of a sparse matrix given as a list of dicts col -> value"""
    p = field.p
    pivots = {}  # col -> normalized row
    r = 0
    for row in rows:
        row = {k: field.convert(v) for k, v in row.items()}
        row = {k: v for k, v in row.items() if v != 0}
        while row:
            col = min(row)
            if col in pivots:
                prow = pivots[col]
                f = row[col]
                for k, v in prow.items():
                    nv = row.get(k, 0) - f * v
                    if p:
                        nv %= p
                    if nv == 0:
                        row.pop(k, None)
                    else:
                        row[k] = nv
            else:
                inv = field.inv(row[col])
                prow = {}
                for k, v in row.items():
                    nv = v * inv
                    if p:
                        nv %= p
                    prow[k] = nv
                pivots[col] = prow
                r += 1
                break
    return r


class LinearSystem:
    """sparse linear system over Q, solved by incremental elimination.

    Pivots are chosen as the smallest variable index present, and free
    variables are set to zero, so the returned solution is the basic one
    determined by the variable order.
    """

    def __init__(self, nvars):
        self.nvars = nvars
        self.rows = []  # (pivot, row dict, rhs) in creation order
        self.pivot_of = {}
        self.consistent = True

    def add(self, row, rhs=0):
        row = {k: Fraction(v) for k, v in row.items() if v != 0}
        rhs = Fraction(rhs)
        while True:
            hit = [k for k in row if k in self.pivot_of]
            if not hit:
                break
            for k in hit:
                if k not in row:
                    continue
                prow, prhs = self.pivot_of[k]
                f = row[k]
                for kk, vv in prow.items():
                    nv = row.get(kk, 0) - f * vv
                    if nv == 0:
                        row.pop(kk, None)
                    else:
                        row[kk] = nv
                rhs -= f * prhs
        if not row:
            if rhs != 0:
                self.consistent = False
            return
        piv = min(row)
        inv = 1 / row[piv]
        row = {k: v * inv for k, v in row.items()}
        rhs = rhs * inv
        self.pivot_of[piv] = (row, rhs)
        self.rows.append(piv)

    def rank(self):
        return len(self.rows)

    def solve(self):
        if not self.consistent:
            return None
        x = {}
        for piv in reversed(self.rows):
            row, rhs = self.pivot_of[piv]
            val = rhs
            for k, v in row.items():
                if k != piv:
                    val -= v * x.get(k, 0)
            if val != 0:
                x[piv] = val
        return x


# ---------------------------------------------------------------------------
# graded free modules and matrices

class GradedFreeModule:
    "ordered basis of (id, degree) pairs; ids must be hashable and distinct"

    def __init__(self, gens, n):
        gens = tuple((g, tuple(d)) for g, d in gens)
        self.gens = gens
        self.n = n
        self._index = {}
        for i, (g, d) in enumerate(gens):
            assert g not in self._index, "duplicate generator %r" % (g,)
            assert len(d) == n and exp_nonneg(d), (g, d)
            self._index[g] = i
        self._deg = dict(gens)

    @property
    def ids(self):
        return [g for g, _ in self.gens]

    def rank(self):
        return len(self.gens)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, g):
        return g in self._index

    def degree(self, g):
        return self._deg[g]

    def index(self, g):
        return self._index[g]

    def __eq__(self, other):
        return isinstance(other, GradedFreeModule) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        return "GradedFreeModule(rank=%d)" % len(self.gens)

    def same_up_to_order(self, other):
        return self._deg == other._deg

    def subset(self, ids):
        ids = set(ids)
        return GradedFreeModule([(g, d) for g, d in self.gens if g in ids], self.n)

    def relabel(self, f):
        return GradedFreeModule([(f(g), d) for g, d in self.gens], self.n)

    @classmethod
    def direct_sum(cls, parts, n):
        "parts: list of (tag, module); ids become (tag, id)"
        gens = []
        for tag, M in parts:
            gens.extend(((tag, g), d) for g, d in M.gens)
        return cls(gens, n)


def term_shift(e, row_deg, col_deg):
    "shift of a term x^e at (row, col): e + deg(row) - deg(col)"
    return tuple(a + b - c for a, b, c in zip(e, row_deg, col_deg))


class GradedMatrix:
    """S-linear map source -> target as a sparse dict (row_id, col_id) -> Polynomial"""

    def __init__(self, source, target, entries=None):
        assert isinstance(source, GradedFreeModule) and isinstance(target, GradedFreeModule)
        assert source.n == target.n
        self.source = source
        self.target = target
        self.n = source.n
        ent = {}
        for (r, c), p in (entries or {}).items():
            assert r in target, "row %r not in target" % (r,)
            assert c in source, "col %r not in source" % (c,)
            if not isinstance(p, Polynomial):
                p = Polynomial.constant(self.n, p)
            if not p.is_zero():
                ent[(r, c)] = p
        self.entries = ent
        self._cols = None

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {})

    @classmethod
    def identity(cls, M):
        one = Polynomial.constant(M.n)
        return cls(M, M, {(g, g): one for g in M.ids})

    def columns(self):
        if self._cols is None:
            cols = {}
            for (r, c), p in self.entries.items():
                cols.setdefault(c, {})[r] = p
            self._cols = cols
        return self._cols

    def column(self, c):
        return dict(self.columns().get(c, {}))

    def get(self, r, c):
        return self.entries.get((r, c), Polynomial.zero(self.n))

    def is_zero(self):
        return not self.entries

    def __matmul__(self, other):
        assert isinstance(other, GradedMatrix)
        assert self.source == other.target, "shape mismatch in composition"
        mine = self.columns()
        acc = {}
        for (j, c), b in other.entries.items():
            for r, a in mine.get(j, {}).items():
                key = (r, c)
                if key in acc:
                    acc[key] = acc[key] + a * b
                else:
                    acc[key] = a * b
        return GradedMatrix(other.source, self.target, acc)

    def __add__(self, other):
        assert self.source == other.source and self.target == other.target, "shape mismatch"
        acc = dict(self.entries)
        for k, p in other.entries.items():
            acc[k] = acc[k] + p if k in acc else p
        return GradedMatrix(self.source, self.target, acc)

    def __neg__(self):
        return GradedMatrix(self.source, self.target, {k: -p for k, p in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return GradedMatrix(self.source, self.target, {k: p * c for k, p in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.entries.items())))

    def __repr__(self):
        return "GradedMatrix(%dx%d, nnz=%d)" % (len(self.target), len(self.source), len(self.entries))

    def shifts(self):
        "set of term shifts"
        out = set()
        for (r, c), p in self.entries.items():
            rd, cd = self.target.degree(r), self.source.degree(c)
            for e in p.terms:
                out.add(term_shift(e, rd, cd))
        return out

    def is_homogeneous(self, shift=None):
        s = self.shifts()
        if shift is None:
            return len(s) <= 1
        return s <= {tuple(shift)}

    def homogeneous_shift(self):
        "the unique shift, zero vector for the zero map, None if mixed"
        s = self.shifts()
        if not s:
            return exp_zero(self.n)
        if len(s) > 1:
            return None
        return next(iter(s))

    def restrict(self, source=None, target=None):
        source = self.source if source is None else source
        target = self.target if target is None else target
        ent = {(r, c): p for (r, c), p in self.entries.items() if r in target and c in source}
        return GradedMatrix(source, target, ent)

    def reindex(self, source, target, rowmap=None, colmap=None):
        rowmap = rowmap or (lambda r: r)
        colmap = colmap or (lambda c: c)
        ent = {}
        for (r, c), p in self.entries.items():
            k = (rowmap(r), colmap(c))
            ent[k] = ent[k] + p if k in ent else p
        return GradedMatrix(source, target, ent)

    def has_unit_entry(self):
        for p in self.entries.values():
            if p.constant_part() != 0:
                return True
        return False

    def dense(self):
        rows = self.target.ids
        cols = self.source.ids
        z = Polynomial.zero(self.n)
        return [[self.entries.get((r, c), z) for c in cols] for r in rows]

    def scalar_rows(self, field, exps=None):
        "scalar matrix of the entries (constant part unless exps given)"
        out = []
        for r in self.target.ids:
            out.append({})
        ridx = {r: i for i, r in enumerate(self.target.ids)}
        cidx = {c: j for j, c in enumerate(self.source.ids)}
        for (r, c), p in self.entries.items():
            v = p.constant_part()
            if v != 0:
                out[ridx[r]][cidx[c]] = field.convert(v)
        return out


def block_matrix(source, target, blocks):
    """assemble from blocks: list of (row_tag, col_tag, GradedMatrix) where the
    ids of source and target are (tag, id) pairs"""
    ent = {}
    for rt, ct, B in blocks:
        for (r, c), p in B.entries.items():
            k = ((rt, r), (ct, c))
            ent[k] = ent[k] + p if k in ent else p
    return GradedMatrix(source, target, ent)


# ---------------------------------------------------------------------------
# graded linear solving

class Unknown:
    "an unknown graded matrix source -> target with optional allowed support"

    def __init__(self, source, target, support=None):
        self.source = source
        self.target = target
        self.support = None if support is None else set(support)

    def allowed(self, r, c):
        return self.support is None or (r, c) in self.support


def _homogeneous_entries(M, what):
    "(map (r,c) -> scalar, shift), every entry a single term of one common shift"
    out = {}
    shift = None
    for (r, c), p in M.entries.items():
        if len(p.terms) != 1:
            raise AlgebraError("%s must have single-term entries" % what)
        e, v = p.single_term()
        t = term_shift(e, M.target.degree(r), M.source.degree(c))
        if shift is None:
            shift = t
        elif t != shift:
            raise AlgebraError("%s must be homogeneous" % what)
        out[(r, c)] = v
    return out, shift


def solve_graded_system(unknowns, equations, shifts=None, count_only=False):
    """Solve sum_t L_t X_{k_t} R_t = RHS for each equation.

    equations: list of (terms, rhs) with terms a list of (L, k, R); L or R may
    be None meaning the identity. Known factors must be homogeneous (single
    terms of one common shift each), which lets every equation split by the
    shift of its terms. An unknown entry of shift s at (r, c) is
    c_s x^(s + deg c - deg r).

    shifts, when given, maps unknown index -> set of shifts to allow;
    otherwise they are read off the right hand sides.
    Returns the list of solved matrices (basic solution, free variables zero)
    or None. With count_only, returns (rank or None, number of variables).
    """
    n = unknowns[0].source.n
    zero = exp_zero(n)
    # decompose known factors once
    prepared = []
    for terms, rhs in equations:
        pt = []
        for L, k, R in terms:
            U = unknowns[k]
            Lcols, tl = None, zero
            Rrows, tr = None, zero
            if L is not None:
                assert L.source == U.target, "left factor shape"
                ent, t = _homogeneous_entries(L, "left factor")
                tl = t or zero
                Lcols = {}
                for (r, i), v in ent.items():
                    Lcols.setdefault(i, []).append((r, v))
            if R is not None:
                assert R.target == U.source, "right factor shape"
                ent, t = _homogeneous_entries(R, "right factor")
                tr = t or zero
                Rrows = {}
                for (j, c), v in ent.items():
                    Rrows.setdefault(j, []).append((c, v))
            pt.append((k, Lcols, Rrows, exp_add(tl, tr)))
        prepared.append((pt, rhs, rhs.shifts()))
    if shifts is None:
        per = [set() for _ in unknowns]
        for pt, rhs, rs in prepared:
            for k, _, _, t in pt:
                for s in rs:
                    per[k].add(exp_sub(s, t))
    elif isinstance(shifts, dict):
        per = [set(shifts.get(k, ())) for k in range(len(unknowns))]
    else:
        per = [set(shifts) for _ in unknowns]
    # variables ordered by unknown, column, row, shift
    var_list = []
    by_unknown = [[] for _ in unknowns]
    for k, U in enumerate(unknowns):
        ss = sorted(per[k])
        for c in U.source.ids:
            cd = U.source.degree(c)
            for r in U.target.ids:
                if not U.allowed(r, c):
                    continue
                rd = U.target.degree(r)
                for s in ss:
                    e = exp_sub(exp_add(s, cd), rd)
                    if exp_nonneg(e):
                        by_unknown[k].append((r, c, s, len(var_list)))
                        var_list.append((k, r, c, s, e))
    system = LinearSystem(len(var_list))
    for pt, rhs, _ in prepared:
        rows = {}
        for k, Lcols, Rrows, t in pt:
            for i, j, s, vi in by_unknown[k]:
                lefts = [(i, 1)] if Lcols is None else Lcols.get(i, [])
                if not lefts:
                    continue
                rights = [(j, 1)] if Rrows is None else Rrows.get(j, [])
                if not rights:
                    continue
                sig = exp_add(s, t)
                for r, a in lefts:
                    for c, b in rights:
                        row = rows.setdefault((r, c, sig), {})
                        row[vi] = row.get(vi, 0) + a * b
        rhs_vals = {}
        for (r, c), p in rhs.entries.items():
            rd, cd = rhs.target.degree(r), rhs.source.degree(c)
            for e, v in p.terms.items():
                rhs_vals[(r, c, term_shift(e, rd, cd))] = v
        keys = set(rows) | set(rhs_vals)
        tidx = {r: i for i, r in enumerate(rhs.target.ids)}
        sidx = {c: i for i, c in enumerate(rhs.source.ids)}
        for key in sorted(keys, key=lambda t: (sidx[t[1]], tidx[t[0]], t[2])):
            system.add(rows.get(key, {}), rhs_vals.get(key, 0))
            if not system.consistent and not count_only:
                return None
    if count_only:
        return (system.rank() if system.consistent else None), len(var_list)
    x = system.solve()
    if x is None:
        return None
    out = [{} for _ in unknowns]
    for vi, val in x.items():
        k, r, c, s, e = var_list[vi]
        p = Polynomial.monomial(e, val)
        ent = out[k]
        ent[(r, c)] = ent[(r, c)] + p if (r, c) in ent else p
    return [GradedMatrix(U.source, U.target, out[k]) for k, U in enumerate(unknowns)]


def graded_solve(A, RHS, side="left", support=None):
    """solve A @ H = RHS (side='left') or H @ A = RHS (side='right') for a
    graded H; returns H or None"""
    if side == "left":
        U = Unknown(RHS.source, A.source, support)
        sol = solve_graded_system([U], [([(A, 0, None)], RHS)])
    elif side == "right":
        U = Unknown(A.target, RHS.target, support)
        sol = solve_graded_system([U], [([(None, 0, A)], RHS)])
    else:
        raise ValueError(side)
    return None if sol is None else sol[0]
