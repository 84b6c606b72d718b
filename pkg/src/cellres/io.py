"""
JSON file formats. Cell and generator ids are JSON scalars or nested lists
(lists stand for tuples); object keys use the fmt_id string of an id.
Polynomials are written as text, e.g. "-2*a*b + 3/4*c".
"""

import json
import os
import re

from .algebra import Ring, GradedFreeModule, GradedMatrix, Field, QQ
from .complex import Cell, LabeledComplex, fmt_id
from .resolution import CellularFreeComplex, cellular_free_complex, attach_complex
from .morphism import ChainMap, CellularMap, CellResMorphism


class FormatError(Exception):
    pass


def encode_id(x):
    if isinstance(x, tuple):
        return [encode_id(y) for y in x]
    return x


def decode_id(x):
    if isinstance(x, list):
        return tuple(decode_id(y) for y in x)
    return x


def parse_field(text):
    "q or fp:<p>"
    if text in (None, "q", "Q", "qq"):
        return QQ
    m = re.fullmatch(r"fp:(\d+)", text)
    if m is None:
        raise FormatError("unknown field %r" % text)
    p = int(m.group(1))
    if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise FormatError("fp needs a prime, got %d" % p)
    return Field(p)


def _ring(data):
    if "variables" not in data:
        raise FormatError("missing 'variables'")
    return Ring(data["variables"])


def _exp(ring, v):
    return ring.monomial(v)


# ---------------------------------------------------------------------------
# complexes and ideals

def complex_to_json(X):
    ring = X.ring
    cells = []
    for c in X.cells():
        cells.append({"id": encode_id(c.id), "dim": c.dim,
                      "boundary": [[encode_id(f), int(s)] for f, s in c.boundary]})
    out = {"variables": list(ring.variables), "cells": cells,
           "vertex_labels": {fmt_id(v): list(X.vertex_labels[v]) for v in X.ids(0)}}
    if X.label_overrides:
        out["label_overrides"] = {fmt_id(k): list(e) for k, e in X.label_overrides.items()}
    return out


def complex_from_json(data, ring=None):
    ring = ring or _ring(data)
    cells = []
    byname = {}
    for c in data.get("cells", []):
        for key in ("id", "dim"):
            if key not in c:
                raise FormatError("cell without %r" % key)
        cid = decode_id(c["id"])
        byname[fmt_id(cid)] = cid
        bd = []
        for f, s in c.get("boundary", []):
            bd.append((decode_id(f), int(s)))
        cells.append(Cell(cid, int(c["dim"]), tuple(bd)))
    vl = {}
    for k, e in data.get("vertex_labels", {}).items():
        if k not in byname:
            raise FormatError("label for unknown vertex %s" % k)
        vl[byname[k]] = _exp(ring, e)
    ov = {}
    for k, e in (data.get("label_overrides") or {}).items():
        if k not in byname:
            raise FormatError("override for unknown cell %s" % k)
        ov[byname[k]] = _exp(ring, e)
    return LabeledComplex(ring, cells, vl, ov)


def ideal_from_json(data):
    "{'variables': [...], 'generators': ['ab', [1,0,2], ...]}"
    ring = _ring(data)
    return ring, [_exp(ring, g) for g in data.get("generators", [])]


def ideal_to_json(ring, gens):
    return {"variables": list(ring.variables), "generators": [ring.fmt_monomial(g) for g in gens]}


# ---------------------------------------------------------------------------
# matrices and resolutions

def matrix_to_json(M, ring):
    ent = sorted(M.entries.items(), key=lambda t: (M.target.index(t[0][0]), M.source.index(t[0][1])))
    return [[encode_id(r), encode_id(c), ring.fmt_poly(p)] for (r, c), p in ent]


def matrix_from_json(rows, source, target, ring):
    ent = {}
    for r, c, p in rows:
        q = ring.polynomial(p)
        if not q.is_zero():
            ent[(decode_id(r), decode_id(c))] = q
    return GradedMatrix(source, target, ent)


def module_to_json(M):
    return [[encode_id(g), list(e)] for g, e in M]


def module_from_json(rows, ring):
    return GradedFreeModule([(decode_id(g), _exp(ring, e)) for g, e in rows], ring.n)


def resolution_to_json(F):
    ring = F.ring
    out = {"variables": list(ring.variables),
           "modules": [module_to_json(M) for M in F.modules],
           "differentials": [matrix_to_json(F.d(i), ring) for i in range(1, F.top + 1)]}
    if F.complex is not None:
        out["complex"] = complex_to_json(F.complex)
        if F.comp_ids is not None:
            out["comp_ids"] = [encode_id(c) for c in F.comp_ids]
    return out


def resolution_from_json(data, ring=None):
    """a resolution file, or a bare complex file (then the cellular free
    complex is built from it)"""
    ring = ring or _ring(data)
    if "modules" not in data:
        if "cells" in data:
            return cellular_free_complex(complex_from_json(data, ring))
        if "generators" in data:
            from .resolution import taylor
            return taylor(ring, [_exp(ring, g) for g in data["generators"]])
        raise FormatError("not a resolution, complex or ideal file")
    mods = [module_from_json(rows, ring) for rows in data["modules"]]
    diffs_in = data.get("differentials", [])
    if len(diffs_in) != len(mods) - 1:
        raise FormatError("need %d differentials, got %d" % (len(mods) - 1, len(diffs_in)))
    diffs = [matrix_from_json(rows, mods[i + 1], mods[i], ring) for i, rows in enumerate(diffs_in)]
    if "complex" in data:
        X = complex_from_json(data["complex"], ring)
        comp = [decode_id(c) for c in data["comp_ids"]] if "comp_ids" in data else None
        return CellularFreeComplex(ring, mods, diffs, complex=X, comp_ids=comp)
    return attach_complex(CellularFreeComplex(ring, mods, diffs))


# ---------------------------------------------------------------------------
# morphisms

def morphism_to_json(m, source_ref=None, target_ref=None):
    F, G = m.source, m.target
    ring = F.ring
    maps = {}
    for i in sorted(m.chain.maps):
        M = m.chain.maps[i]
        maps[str(i)] = None if M is None else matrix_to_json(M, ring)
    out = {"source": source_ref if source_ref is not None else resolution_to_json(F),
           "target": target_ref if target_ref is not None else resolution_to_json(G),
           "maps": maps}
    cell = m.cell if isinstance(m, CellResMorphism) else None
    if cell is not None:
        out["carrier"] = [[encode_id(x), sorted((encode_id(y) for y in cell.carrier[x]), key=json.dumps)]
                          for x in F.complex.ids()]
    return out


def _load_ref(ref, base, loader):
    if isinstance(ref, str):
        path = ref if os.path.isabs(ref) else os.path.join(base or ".", ref)
        with open(path) as fh:
            return loader(json.load(fh), os.path.dirname(path))
    return loader(ref, base)


def load_resolution_ref(ref, base=None):
    return _load_ref(ref, base, lambda d, b: resolution_from_json(d))


def morphism_from_json(data, base=None, mode="support", F=None, G=None):
    """returns a CellResMorphism when a carrier table is present, else a ChainMap;
    source and target may be inline objects or file names"""
    F = F or load_resolution_ref(data["source"], base)
    G = G or load_resolution_ref(data["target"], base)
    ring = F.ring
    maps = {}
    for k, rows in data.get("maps", {}).items():
        i = int(k)
        maps[i] = None if rows is None else matrix_from_json(rows, F.module(i), G.module(i), ring)
    h = ChainMap(F, G, maps)
    if "carrier" not in data:
        return h
    if F.complex is None or G.complex is None:
        raise FormatError("a carrier table needs complexes on both sides")
    car = {decode_id(x): {decode_id(y) for y in ys} for x, ys in data["carrier"]}
    return CellResMorphism(h, CellularMap(F.complex, G.complex, car), mode)


# ---------------------------------------------------------------------------
# diagrams

def diagram_from_json(data, base=None, mode="support"):
    from .constructions.limits import Category, Diagram
    names = list(data["objects"])
    objs = {o: load_resolution_ref(data["objects"][o], base) for o in names}
    arrows, maps = [], {}
    for k, a in enumerate(data.get("arrows", [])):
        name = a.get("name", "a%d" % k)
        arrows.append((name, a["src"], a["dst"]))
        ref = a["morphism"]

        def loader(d, b, a=a):
            return morphism_from_json(d, b, mode, F=objs[a["src"]], G=objs[a["dst"]])
        maps[name] = _load_ref(ref, base, loader)
    ident = [(list(p), list(q)) for p, q in data.get("identify", [])]
    cat = Category(names, arrows, identify=ident)
    return Diagram(cat, objs, maps)


def diagram_to_json(D, refs=None):
    cat = D.category
    refs = refs or {}
    objs = {o: refs.get(o, resolution_to_json(D.objects[o])) for o in cat.objects}
    arrows = []
    for a, (s, t) in cat.arrows.items():
        arrows.append({"name": a, "src": s, "dst": t,
                       "morphism": morphism_to_json(D.arrows[a], refs.get(s), refs.get(t))})
    return {"objects": objs, "arrows": arrows,
            "identify": [[list(p), list(q)] for p, q in cat.identify]}


# ---------------------------------------------------------------------------
# matchings and deformation steps

def matching_to_json(M):
    "list of [source-vertex, target-vertex] pairs"
    return [[encode_id(u), encode_id(v)] for u, v in M]


def matching_from_json(data):
    """pairs of Gamma vertices [[i, gen], [i-1, gen']], or
    {'cells': [[upper, lower-or-null], ...]} naming cells"""
    if isinstance(data, dict):
        if "cells" in data:
            return ("cells", [(decode_id(u), decode_id(l)) for u, l in data["cells"]])
        data = data.get("pairs", [])
    out = []
    for u, v in data:
        out.append((decode_id(u), decode_id(v)))
    return ("gamma", out)


def steps_from_json(data, ring=None):
    "[['collapse', upper, lower], ['expand', like, lower, upper, label?], ...]"
    steps = data.get("steps", data) if isinstance(data, dict) else data
    out = []
    for s in steps:
        kind = s[0]
        if kind not in ("collapse", "expand"):
            raise FormatError("unknown step %r" % kind)
        args = [decode_id(x) for x in s[1:4]]
        if kind == "expand" and len(s) > 4 and s[4] is not None:
            args.append(ring.monomial(s[4]) if ring is not None else tuple(s[4]))
        out.append(tuple([kind] + args))
    return out


def steps_to_json(steps):
    out = []
    for s in steps:
        row = [s[0]] + [encode_id(x) for x in s[1:4]]
        if len(s) > 4:
            row.append(list(s[4]))
        out.append(row)
    return {"steps": out}


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def write_json(obj, path):
    text = dumps(obj)
    if path in (None, "-"):
        return text
    with open(path, "w") as fh:
        fh.write(text)
    return text


def dumps(obj):
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"
