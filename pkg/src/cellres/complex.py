"""
Labeled regular CW complexes given by their face poset and incidence signs.

A cell has an id, a dimension and a boundary: (facet_id, coefficient) pairs.
Vertices carry monomial labels; a higher cell is labeled by the lcm of the
labels of its vertices unless an explicit override is stored (collapsed
complexes coming out of Morse reduction need overrides).
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from .algebra import (Ring, QQ, rank, exp_lcm, exp_lcm_all, exp_divides, exp_zero)


class ComplexError(Exception):
    pass


@dataclass(frozen=True)
class Cell:
    id: object
    dim: int
    boundary: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple((f, c) for f, c in self.boundary))

    def facets(self):
        return [f for f, _ in self.boundary]


def fmt_id(x):
    "stable string form of a cell or generator id"
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(fmt_id(y) for y in x) + ")"
    if x is None:
        return "_"
    return str(x)


class LabeledComplex:
    """a finite labeled CW complex; cells are kept in insertion order"""

    def __init__(self, ring, cells=(), vertex_labels=None, label_overrides=None):
        assert isinstance(ring, Ring)
        self.ring = ring
        self.n = ring.n
        self._cells = {}
        for c in cells:
            if not isinstance(c, Cell):
                c = Cell(*c)
            if c.id in self._cells:
                raise ComplexError("duplicate cell id %r" % (c.id,))
            self._cells[c.id] = c
        self.vertex_labels = {}
        for v, e in (vertex_labels or {}).items():
            self.vertex_labels[v] = tuple(e)
        self.label_overrides = {k: tuple(e) for k, e in (label_overrides or {}).items()}
        self._labels = None
        self._comp = None
        self._cofaces = None

    # basic access

    def cells(self, dim=None):
        if dim is None:
            return list(self._cells.values())
        return [c for c in self._cells.values() if c.dim == dim]

    def ids(self, dim=None):
        return [c.id for c in self.cells(dim)]

    def cell(self, cid):
        return self._cells[cid]

    def __contains__(self, cid):
        return cid in self._cells

    def __len__(self):
        return len(self._cells)

    def is_empty(self):
        return not self._cells

    @property
    def dim(self):
        if not self._cells:
            return -1
        return max(c.dim for c in self._cells.values())

    def f_vector(self):
        return [len(self.cells(d)) for d in range(self.dim + 1)]

    def cofaces(self, cid):
        if self._cofaces is None:
            co = {k: [] for k in self._cells}
            for c in self._cells.values():
                for f, _ in c.boundary:
                    if f in co:
                        co[f].append(c.id)
            self._cofaces = co
        return self._cofaces[cid]

    def closure(self, cids):
        if not isinstance(cids, (set, frozenset, list)):
            cids = [cids]
        seen = set()
        stack = list(cids)
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(self._cells[x].facets())
        return seen

    def vertices_of(self, cid):
        return {x for x in self.closure(cid) if self._cells[x].dim == 0}

    # labels

    def labels(self):
        if self._labels is None:
            lab = {}
            for d in range(self.dim + 1):
                for c in self.cells(d):
                    if c.id in self.label_overrides:
                        lab[c.id] = self.label_overrides[c.id]
                    elif d == 0:
                        if c.id not in self.vertex_labels:
                            raise ComplexError("vertex %r has no label" % (c.id,))
                        lab[c.id] = self.vertex_labels[c.id]
                    else:
                        fs = c.facets()
                        for f in fs:
                            if f not in lab:
                                raise ComplexError("facet %r of %r missing or of wrong dimension" % (f, c.id))
                        lab[c.id] = exp_lcm_all([lab[f] for f in fs], self.n)
            self._labels = lab
        return self._labels

    def label(self, cid):
        return self.labels()[cid]

    def natural_label(self, cid):
        "lcm of the vertex labels of the closure"
        vs = self.vertices_of(cid)
        return exp_lcm_all([self.label(v) for v in vs], self.n)

    # components

    def _components(self):
        if self._comp is None:
            parent = {k: k for k in self._cells}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for c in self._cells.values():
                for f, _ in c.boundary:
                    if f in parent:
                        a, b = find(c.id), find(f)
                        if a != b:
                            parent[a] = b
            roots = []
            idx = {}
            # components ordered by first vertex (first cell when no vertices)
            for c in self.cells(0) + self.cells():
                r = find(c.id)
                if r not in idx:
                    idx[r] = len(roots)
                    roots.append(r)
            self._comp = {k: idx[find(k)] for k in self._cells}
            self._ncomp = len(roots) if self._cells else 1
        return self._comp

    def num_components(self):
        self._components()
        return self._ncomp

    def component_of(self, cid):
        return self._components()[cid]

    def component_cells(self, k):
        comp = self._components()
        return [c for c in self.cells() if comp[c.id] == k]

    # comparison

    def key(self):
        if getattr(self, "_key", None) is not None:
            return self._key
        cells = frozenset((c.id, c.dim, frozenset(c.boundary)) for c in self._cells.values())
        labs = frozenset(self.labels().items()) if self._cells else frozenset()
        self._key = (self.ring, cells, labs)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, LabeledComplex):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "LabeledComplex(f=%s)" % (self.f_vector(),)

    def with_cells(self, cells, vertex_labels=None, label_overrides=None):
        return LabeledComplex(self.ring, cells,
                              self.vertex_labels if vertex_labels is None else vertex_labels,
                              self.label_overrides if label_overrides is None else label_overrides)


# ---------------------------------------------------------------------------
# validation

@dataclass
class CWReport:
    ok: bool
    regular: bool
    messages: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_cw(X, require_regular=False):
    """check facet dimensions, augmented boundary squares to zero, labels;
    regularity means unit incidences and the diamond property"""
    msgs = []
    ok = True
    regular = True
    cells = X._cells
    for c in X.cells():
        if c.dim < 0:
            ok = False
            msgs.append("cell %s has negative dimension" % fmt_id(c.id))
        if c.dim == 0:
            if c.boundary:
                ok = False
                msgs.append("vertex %s has a boundary" % fmt_id(c.id))
            if c.id not in X.vertex_labels and c.id not in X.label_overrides:
                ok = False
                msgs.append("vertex %s has no label" % fmt_id(c.id))
        elif not c.boundary:
            ok = False
            msgs.append("cell %s of dim %d has empty boundary" % (fmt_id(c.id), c.dim))
        seen = set()
        for f, v in c.boundary:
            if f in seen:
                ok = False
                msgs.append("cell %s repeats facet %s" % (fmt_id(c.id), fmt_id(f)))
            seen.add(f)
            if f not in cells:
                ok = False
                msgs.append("cell %s has unknown facet %s" % (fmt_id(c.id), fmt_id(f)))
            elif cells[f].dim != c.dim - 1:
                ok = False
                msgs.append("facet %s of %s has wrong dimension" % (fmt_id(f), fmt_id(c.id)))
            if v == 0:
                ok = False
                msgs.append("zero incidence %s in %s" % (fmt_id(f), fmt_id(c.id)))
            if abs(v) != 1:
                regular = False
    for v in X.label_overrides.values():
        if len(v) != X.n:
            ok = False
            msgs.append("label override of wrong length")
    for v, e in X.vertex_labels.items():
        if len(e) != X.n or min(e, default=0) < 0:
            ok = False
            msgs.append("bad label on vertex %s" % fmt_id(v))
    if not ok:
        return CWReport(False, False, msgs)
    # augmented boundary squares to zero
    for c in X.cells():
        acc = {}
        if c.dim == 1:
            s = sum(Fraction(v) for _, v in c.boundary)
            if s != 0:
                ok = False
                msgs.append("edge %s: augmented boundary does not vanish" % fmt_id(c.id))
        for f, v in c.boundary:
            for g, w in cells[f].boundary:
                acc[g] = acc.get(g, 0) + Fraction(v) * Fraction(w)
        bad = [g for g, x in acc.items() if x != 0]
        if bad:
            ok = False
            msgs.append("boundary of boundary of %s is nonzero at %s" % (fmt_id(c.id), fmt_id(bad[0])))
    # labels must be monotone along faces
    if ok:
        try:
            lab = X.labels()
        except ComplexError as e:
            return CWReport(False, False, msgs + [str(e)])
        for c in X.cells():
            for f in c.facets():
                if not exp_divides(lab[f], lab[c.id]):
                    ok = False
                    msgs.append("label of %s does not divide label of %s" % (fmt_id(f), fmt_id(c.id)))
    # diamond property
    if ok and regular:
        for c in X.cells():
            if c.dim == 1 and len(c.boundary) != 2:
                regular = False
            if c.dim >= 2:
                count = {}
                for f in c.facets():
                    for g in cells[f].facets():
                        count[g] = count.get(g, 0) + 1
                if any(k != 2 for k in count.values()):
                    regular = False
    if require_regular and not regular:
        ok = False
        msgs.append("complex is not regular")
    return CWReport(ok, ok and regular, msgs)


# ---------------------------------------------------------------------------
# subcomplexes and homology

def subcomplex_leq(X, b, strict=False):
    "cells whose label divides b (and differs from b when strict)"
    b = tuple(b)
    lab = X.labels()
    keep = []
    for c in X.cells():
        a = lab[c.id]
        if exp_divides(a, b) and not (strict and a == b):
            keep.append(c)
    ids = {c.id for c in keep}
    return LabeledComplex(X.ring, keep,
                          {v: e for v, e in X.vertex_labels.items() if v in ids},
                          {v: e for v, e in X.label_overrides.items() if v in ids})


def reduced_homology_ranks(X, field=QQ, cells=None):
    """ranks of reduced homology in degrees -1..dim (index 0 is degree -1);
    cells restricts to a closed subset"""
    if cells is None:
        cells = X.cells()
    cells = list(cells)
    if not cells:
        return [1]
    top = max(c.dim for c in cells)
    by_dim = {d: [] for d in range(-1, top + 1)}
    by_dim[-1] = [None]
    for c in cells:
        by_dim[c.dim].append(c.id)
    idx = {d: {cid: i for i, cid in enumerate(by_dim[d])} for d in by_dim}
    ranks = {}
    for d in range(0, top + 1):
        rows = []
        for cid in by_dim[d]:
            if d == 0:
                rows.append({0: 1})
            else:
                c = X.cell(cid)
                row = {}
                for f, v in c.boundary:
                    if f in idx[d - 1]:
                        row[idx[d - 1][f]] = v
                rows.append(row)
        ranks[d] = rank(rows, field)
    out = []
    for d in range(-1, top + 1):
        h = len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        out.append(h)
    return out


def is_acyclic_cells(X, cells, field=QQ):
    "reduced homology vanishes (empty set counts as acyclic here)"
    if not cells:
        return True
    return all(h == 0 for h in reduced_homology_ranks(X, field, cells))


def face_labels(X):
    return set(X.labels().values())


# ---------------------------------------------------------------------------
# constructors

def empty_complex(ring):
    return LabeledComplex(ring, [])


def point_complex(ring, label, vid=0):
    return LabeledComplex(ring, [Cell(vid, 0)], {vid: tuple(label)})


def simplex_complex(ring, labels, ids=None):
    """full simplex on the given vertex labels; faces are sorted index tuples"""
    r = len(labels)
    cells = []
    vlab = {}
    for k in range(1, r + 1):
        for face in combinations(range(r), k):
            bd = []
            if k > 1:
                for j in range(k):
                    bd.append((face[:j] + face[j + 1:], (-1) ** j))
            cells.append(Cell(face, k - 1, tuple(bd)))
    for i, e in enumerate(labels):
        vlab[(i,)] = tuple(e)
    X = LabeledComplex(ring, cells, vlab)
    if ids is not None:
        X = rename_cells(X, ids)
    return X


def rename_cells(X, f):
    "rename cells by a dict or callable"
    if isinstance(f, dict):
        g = lambda x: f.get(x, x)
    else:
        g = f
    cells = [Cell(g(c.id), c.dim, tuple((g(a), v) for a, v in c.boundary)) for c in X.cells()]
    return LabeledComplex(X.ring, cells,
                          {g(k): e for k, e in X.vertex_labels.items()},
                          {g(k): e for k, e in X.label_overrides.items()})


def path_complex(ring, labels, prefix=None):
    "a path on the given vertex labels, vertices 0..r-1, edges (i, i+1)"
    cells = []
    vlab = {}
    for i, e in enumerate(labels):
        cells.append(Cell(i, 0))
        vlab[i] = tuple(e)
    for i in range(len(labels) - 1):
        cells.append(Cell((i, i + 1), 1, ((i, -1), (i + 1, 1))))
    return LabeledComplex(ring, cells, vlab)


def polygon_complex(ring, vertex_labels, polygons):
    """a 2-complex from vertex labels and 2-cells given as vertex cycles;
    edges are the sorted vertex pairs, oriented from the smaller name"""
    cells = [Cell(v, 0) for v in vertex_labels]
    edges = {}
    for P in polygons:
        for k in range(len(P)):
            e = tuple(sorted((P[k], P[(k + 1) % len(P)])))
            edges.setdefault(e, Cell(e, 1, ((e[0], -1), (e[1], 1))))
    cells += list(edges.values())
    for P in polygons:
        bd = []
        for k in range(len(P)):
            a, b = P[k], P[(k + 1) % len(P)]
            e = tuple(sorted((a, b)))
            bd.append((e, 1 if (a, b) == e else -1))
        cells.append(Cell(tuple(P), 2, tuple(bd)))
    vl = {v: ring.monomial(e) if isinstance(e, str) else tuple(e) for v, e in vertex_labels.items()}
    return LabeledComplex(ring, cells, vl)


def _with_natural_overrides(ring, cells, vlab, want):
    "overrides only where the wanted label is not the lcm of the facet labels"
    over = {}
    if want:
        n = ring.n
        for c in cells:
            if c.dim > 0:
                nat = exp_lcm_all([want[f] for f in c.facets()], n)
                if nat != want[c.id]:
                    over[c.id] = want[c.id]
    return LabeledComplex(ring, cells, vlab, over)


def join_complex(X, Y):
    """join X * Y; cells (s, t) with s a cell of X or None and t likewise.
    boundary follows d(s*t) = ds*t + (-1)^(dim s + 1) s*dt with the augmented
    boundary of a vertex being the empty face"""
    assert X.ring == Y.ring
    n = X.n
    cells = []
    vlab = {}
    want = {}
    LX = X.labels() if not X.is_empty() else {}
    LY = Y.labels() if not Y.is_empty() else {}

    def aug(Z, s):
        if s is None:
            return []
        c = Z.cell(s)
        if c.dim == 0:
            return [(None, 1)]
        return list(c.boundary)

    xs = [None] + X.ids()
    ys = [None] + Y.ids()
    dims = {None: -1}
    for c in X.cells():
        dims[("x", c.id)] = c.dim
    for c in Y.cells():
        dims[("y", c.id)] = c.dim
    items = []
    for s in xs:
        for t in ys:
            if s is None and t is None:
                continue
            ds = -1 if s is None else X.cell(s).dim
            dt = -1 if t is None else Y.cell(t).dim
            items.append((ds + dt + 1, s, t))
    items.sort(key=lambda z: z[0])
    for d, s, t in items:
        bd = []
        for s2, v in aug(X, s):
            if s2 is None and t is None:
                continue
            bd.append(((s2, t), v))
        ds = -1 if s is None else X.cell(s).dim
        sign = (-1) ** (ds + 1)
        for t2, v in aug(Y, t):
            if s is None and t2 is None:
                continue
            bd.append(((s, t2), sign * v))
        cells.append(Cell((s, t), d, tuple(bd)))
        a = LX[s] if s is not None else exp_zero(n)
        b = LY[t] if t is not None else exp_zero(n)
        want[(s, t)] = exp_lcm(a, b)
        if d == 0:
            vlab[(s, t)] = want[(s, t)]
    return _with_natural_overrides(X.ring, cells, vlab, want if (X.label_overrides or Y.label_overrides) else None)


def disjoint_union(X, Y, tags=(0, 1)):
    assert X.ring == Y.ring
    cells = []
    vlab = {}
    over = {}
    for tag, Z in zip(tags, (X, Y)):
        for c in Z.cells():
            cells.append(Cell((tag, c.id), c.dim, tuple(((tag, f), v) for f, v in c.boundary)))
        for k, e in Z.vertex_labels.items():
            vlab[(tag, k)] = e
        for k, e in Z.label_overrides.items():
            over[(tag, k)] = e
    return LabeledComplex(X.ring, cells, vlab, over)


def glue_complexes(X, Y, identify):
    """glue Y onto X identifying Y-cells with X-cells (dict y -> x); the cells
    of Y that are not identified keep their ids, which must not clash with X.
    An identified pair needs matching dimensions and boundaries, up to a global
    sign. Labels of identified vertices become lcms."""
    assert X.ring == Y.ring
    sign = {}
    for y, x in identify.items():
        if y not in Y or x not in X:
            raise ComplexError("identification refers to unknown cell")
        if Y.cell(y).dim != X.cell(x).dim:
            raise ComplexError("identified cells %s, %s differ in dimension" % (fmt_id(y), fmt_id(x)))
    # process by dimension so facet signs are known
    for d in range(Y.dim + 1):
        for c in Y.cells(d):
            if c.id not in identify:
                continue
            x = identify[c.id]
            if d == 0:
                sign[c.id] = 1
                continue
            mapped = {}
            for f, v in c.boundary:
                if f not in identify:
                    raise ComplexError("cell %s identified but facet %s is not" % (fmt_id(c.id), fmt_id(f)))
                k = identify[f]
                mapped[k] = mapped.get(k, 0) + v * sign[f]
            target = dict(X.cell(x).boundary)
            if mapped == target:
                sign[c.id] = 1
            elif mapped == {k: -v for k, v in target.items()}:
                sign[c.id] = -1
            else:
                raise ComplexError("boundaries of %s and %s do not match" % (fmt_id(c.id), fmt_id(x)))
    cells = list(X.cells())
    vlab = dict(X.vertex_labels)
    over = dict(X.label_overrides)
    for c in Y.cells():
        if c.id in identify:
            continue
        if c.id in X:
            raise ComplexError("cell id %s occurs in both complexes" % fmt_id(c.id))
        bd = []
        for f, v in c.boundary:
            if f in identify:
                bd.append((identify[f], v * sign[f]))
            else:
                bd.append((f, v))
        cells.append(Cell(c.id, c.dim, tuple(bd)))
        if c.id in Y.vertex_labels:
            vlab[c.id] = Y.vertex_labels[c.id]
        if c.id in Y.label_overrides:
            over[c.id] = Y.label_overrides[c.id]
    for y, x in identify.items():
        if Y.cell(y).dim == 0:
            vlab[x] = exp_lcm(vlab[x], Y.label(y))
        if y in Y.label_overrides or x in over:
            over[x] = exp_lcm(X.label(x), Y.label(y))
    return LabeledComplex(X.ring, cells, vlab, over)


def product_complex(X, Y):
    """cartesian product; cells (s, t), boundary ds x t + (-1)^dim s s x dt,
    labels lcm of the factor labels"""
    assert X.ring == Y.ring
    LX, LY = X.labels(), Y.labels()
    items = sorted(((s.dim + t.dim, s, t) for s in X.cells() for t in Y.cells()),
                   key=lambda z: z[0])
    cells = []
    vlab = {}
    want = {}
    for d, s, t in items:
        bd = [((f, t.id), v) for f, v in s.boundary]
        sg = (-1) ** s.dim
        bd += [((s.id, g), sg * v) for g, v in t.boundary]
        cells.append(Cell((s.id, t.id), d, tuple(bd)))
        want[(s.id, t.id)] = exp_lcm(LX[s.id], LY[t.id])
        if d == 0:
            vlab[(s.id, t.id)] = want[(s.id, t.id)]
    return _with_natural_overrides(X.ring, cells, vlab,
                                   want if (X.label_overrides or Y.label_overrides) else None)


def cone_complex(X, apex_label=None, apex="apex"):
    "topological cone: join with a point"
    lab = exp_zero(X.n) if apex_label is None else apex_label
    P = point_complex(X.ring, lab, vid=apex)
    return join_complex(X, P)


# ---------------------------------------------------------------------------
# export

def hasse_dot(X, name="faces"):
    ring = X.ring
    lines = ["digraph %s {" % name, "  rankdir=BT;"]
    lab = X.labels() if not X.is_empty() else {}
    for c in X.cells():
        lines.append('  "%s" [label="%s\\n%s"];' % (fmt_id(c.id), fmt_id(c.id), ring.fmt_monomial(lab[c.id])))
    for c in X.cells():
        for f, v in c.boundary:
            lines.append('  "%s" -> "%s" [label="%s"];' % (fmt_id(f), fmt_id(c.id), v))
    lines.append("}")
    return "\n".join(lines) + "\n"
