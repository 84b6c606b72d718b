"""
Reports are plain dicts of strings, numbers, bools and lists, so that the
text and JSON renderings carry exactly the same content.
"""

import json

from .algebra import QQ
from .complex import fmt_id
from .resolution import (is_acyclic_complex, is_resolution_combinatorial, is_minimal, betti,
                         resolved_module)


def mono(ring, e):
    return ring.fmt_monomial(e)


def matrix_report(M, ring, name):
    "rows are target generators, columns source generators, both with multidegrees"
    rows = ["%s [%s]" % (fmt_id(r), mono(ring, e)) for r, e in M.target]
    cols = ["%s [%s]" % (fmt_id(c), mono(ring, e)) for c, e in M.source]
    ent = [[ring.fmt_poly(M.get(r, c)) for c in M.source.ids] for r in M.target.ids]
    return {"name": name, "rows": rows, "cols": cols, "entries": ent}


def verdict_report(v, ring):
    out = {"ok": bool(v.ok), "strands_checked": v.checked}
    if v.witness is not None:
        b, i = v.witness
        out["witness_degree"] = mono(ring, b)
        out["witness_homology"] = i
    return out


def resolution_report(F, field=QQ, matrices=True):
    ring = F.ring
    rep = {"variables": list(ring.variables), "ranks": F.ranks(), "d2_zero": F.check_d2()}
    v = is_acyclic_complex(F, field)
    rep["acyclic"] = verdict_report(v, ring)
    if F.complex is not None:
        rep["cells"] = len(F.complex)
        try:
            rep["combinatorial"] = verdict_report(is_resolution_combinatorial(F.complex, field), ring)
        except Exception as e:
            rep["combinatorial"] = {"ok": False, "error": str(e)}
    rep["minimal"] = is_minimal(F)
    if v.ok:
        res = resolved_module(F, field, check=False)
        rep["resolves"] = [[fmt_id(c), [mono(ring, g) for g in gens]] for c, gens in res.ideals]
    rep["betti"] = betti_report(F)
    if matrices:
        rep["modules"] = [[[fmt_id(g), mono(ring, e)] for g, e in M] for M in F.modules]
        rep["differentials"] = [matrix_report(F.d(i), ring, "d%d" % i) for i in range(1, F.top + 1)]
    return rep


def betti_report(F):
    B = betti(F)
    return {"totals": B.totals(),
            "entries": [[i, F.ring.fmt_monomial(e), v] for i, e, v in B.rows()]}


def betti_csv(F):
    return betti(F).to_csv()


# ---------------------------------------------------------------------------
# rendering

def _is_matrix(v):
    return isinstance(v, dict) and set(v) == {"name", "rows", "cols", "entries"}


def _matrix_text(m, indent):
    pad = " " * indent
    cols = m["cols"]
    rows = m["rows"]
    if not rows or not cols:
        return [pad + "%s: %d x %d zero matrix" % (m["name"], len(rows), len(cols))]
    wr = max(len(r) for r in rows)
    widths = [max(len(c), max(len(m["entries"][k][j]) for k in range(len(rows)))) for j, c in enumerate(cols)]
    lines = [pad + "%s:" % m["name"]]
    lines.append(pad + "  " + " " * wr + "  " + "  ".join(c.rjust(w) for c, w in zip(cols, widths)))
    for k, r in enumerate(rows):
        lines.append(pad + "  " + r.ljust(wr) + "  " +
                     "  ".join(m["entries"][k][j].rjust(w) for j, w in enumerate(widths)))
    return lines


def _scalar(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def _flat(v):
    return not isinstance(v, (dict, list)) or (isinstance(v, list) and all(
        not isinstance(x, (dict, list)) or (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x))
        for x in v) and len(json.dumps(v)) < 100)


def render_text(rep, indent=0):
    lines = []
    pad = " " * indent
    for k, v in rep.items():
        if _is_matrix(v):
            lines += _matrix_text(v, indent)
        elif isinstance(v, dict):
            lines.append(pad + "%s:" % k)
            lines += render_text(v, indent + 2).splitlines()
        elif isinstance(v, list) and v and all(_is_matrix(x) for x in v):
            lines.append(pad + "%s:" % k)
            for x in v:
                lines += _matrix_text(x, indent + 2)
        elif _flat(v):
            lines.append(pad + "%s: %s" % (k, _scalar(v)))
        else:
            lines.append(pad + "%s:" % k)
            for x in v:
                if isinstance(x, dict):
                    lines += render_text(x, indent + 4).splitlines()
                    lines.append("")
                else:
                    lines.append(pad + "  - " + _scalar(x))
    return "\n".join(lines) + "\n"


def render_json(rep):
    return json.dumps(rep, indent=1) + "\n"
