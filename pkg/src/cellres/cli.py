"""
Command line interface. Exit status: 0 when every requested verification
passes, 1 when one fails, 2 for bad input or a refused construction.
"""


import click

from . import io
from .complex import validate_cw, hasse_dot, ComplexError, fmt_id
from .resolution import (taylor, koszul, cellular_free_complex, is_acyclic_complex,
                         is_resolution_combinatorial, NotAResolution)
from .morphism import CellResMorphism, MorphismError, verify_chain_map
from .report import resolution_report, render_text, render_json, betti_csv, mono
from . import constructions as cons
from .constructions import ConstructionError
from . import morse as mo


class Halt(Exception):
    def __init__(self, msg, code=2):
        Exception.__init__(self, msg)
        self.code = code


def _opts():
    return click.get_current_context().find_root().obj


def emit(rep, F=None, dot=None):
    """print the report in the chosen format; csv prints the Betti table and
    dot the face poset (or the given graph)"""
    o = _opts()
    fmt = o["format"]
    if fmt == "json":
        click.echo(render_json(rep), nl=False)
    elif fmt == "csv":
        if F is None:
            raise Halt("csv output needs a resolution")
        click.echo(betti_csv(F), nl=False)
    elif fmt == "dot":
        if dot is None:
            if F is None or F.complex is None:
                raise Halt("dot output needs a supporting complex")
            dot = hasse_dot(F.complex)
        click.echo(dot, nl=False)
    else:
        click.echo(render_text(rep), nl=False)


def _save(F, output):
    if output:
        io.write_json(io.resolution_to_json(F), output)


def _load_res(path):
    try:
        return io.resolution_from_json(io.read_json(path))
    except (io.FormatError, ComplexError, KeyError, ValueError, AssertionError) as e:
        raise Halt("cannot read resolution %s: %s" % (path, e))


def _load_morphism(path):
    import os
    try:
        return io.morphism_from_json(io.read_json(path), os.path.dirname(path), _opts()["compat"])
    except (io.FormatError, ComplexError, MorphismError, KeyError, ValueError, AssertionError) as e:
        raise Halt("cannot read morphism %s: %s" % (path, e))


def _load_diagram(path):
    import os
    try:
        return io.diagram_from_json(io.read_json(path), os.path.dirname(path), _opts()["compat"])
    except (io.FormatError, ComplexError, MorphismError, ConstructionError, KeyError, ValueError) as e:
        raise Halt("cannot read diagram %s: %s" % (path, e))


class Group(click.Group):
    def invoke(self, ctx):
        try:
            return click.Group.invoke(self, ctx)
        except Halt as e:
            click.echo("error: %s" % e, err=True)
            ctx.exit(e.code)
        except (ConstructionError, mo.MorseError, NotAResolution) as e:
            w = getattr(e, "witness", None)
            click.echo("refused: %s" % e, err=True)
            if w is not None:
                click.echo("witness: %s" % _fmt_witness(w), err=True)
            ctx.exit(2)


def _fmt_witness(w):
    if isinstance(w, dict):
        return ", ".join("%s=%s" % (k, _fmt_witness(v)) for k, v in w.items())
    if isinstance(w, (list, tuple)):
        return "[" + ", ".join(_fmt_witness(x) for x in w) + "]"
    return fmt_id(w)


@click.group(cls=Group)
@click.option("--field", default="q", show_default=True, help="q or fp:<p>")
@click.option("--tensor-gcd", type=click.Choice(["entry", "column"]), default="entry", show_default=True)
@click.option("--compat", type=click.Choice(["strict", "support"]), default="support", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv", "dot"]), default="text",
              show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def main(ctx, field, tensor_gcd, compat, fmt, seed):
    "cellular resolutions of monomial ideals"
    try:
        fld = io.parse_field(field)
    except io.FormatError as e:
        raise click.BadParameter(str(e), param_hint="--field")
    ctx.obj = {"field": fld, "tensor_gcd": tensor_gcd, "compat": compat, "format": fmt, "seed": seed}


def _field():
    return _opts()["field"]


# ---------------------------------------------------------------------------
# build

@main.command()
@click.argument("kind", type=click.Choice(["taylor", "koszul", "fromcomplex"]))
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="write the resolution as JSON")
def build(kind, input, output):
    "build a resolution from an ideal (taylor, koszul) or a complex file"
    data = io.read_json(input)
    try:
        if kind == "fromcomplex":
            # a resolution file carries its complex under "complex"
            X = io.complex_from_json(data.get("complex", data))
            rep = validate_cw(X)
            if not rep.ok:
                raise Halt("invalid CW complex: " + "; ".join(rep.messages))
            F = cellular_free_complex(X)
        else:
            ring, gens = io.ideal_from_json(data)
            if kind == "taylor":
                F = taylor(ring, gens)
            else:
                F = koszul(ring, data.get("generators") or None)
    except (io.FormatError, ComplexError, KeyError, ValueError) as e:
        raise Halt("cannot read %s: %s" % (input, e))
    _save(F, output)
    rep = {"command": "build", "kind": kind}
    rep.update(resolution_report(F, _field()))
    emit(rep, F)


# ---------------------------------------------------------------------------
# verify

@main.group(cls=Group)
def verify():
    "check a resolution, morphism, matching or deformation"


def _finish(rep, ok, F=None, dot=None):
    rep["pass"] = bool(ok)
    emit(rep, F, dot)
    if not ok:
        click.get_current_context().exit(1)


@verify.command("resolution")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def verify_resolution(file):
    F = _load_res(file)
    rep = {"command": "verify resolution"}
    rep.update(resolution_report(F, _field()))
    ok = rep["d2_zero"] and rep["acyclic"]["ok"]
    if "combinatorial" in rep:
        rep["oracles_agree"] = rep["combinatorial"]["ok"] == rep["acyclic"]["ok"]
        ok = ok and rep["oracles_agree"]
    _finish(rep, ok, F)


@verify.command("morphism")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def verify_morphism(file):
    m = _load_morphism(file)
    rep = {"command": "verify morphism"}
    if isinstance(m, CellResMorphism):
        sq = m.squares
        rep["chain_map"] = sq.ok
        if not sq.ok:
            rep["failing_square"] = sq.failing_square
            rep["detail"] = sq.detail
        rep["compatible"] = m.compat.ok
        rep["compat_mode"] = m.mode
        rep["reasons"] = list(m.compat.reasons)
        ok = m.verified
    else:
        sq = verify_chain_map(m)
        rep["chain_map"] = sq.ok
        if not sq.ok:
            rep["failing_square"] = sq.failing_square
            rep["detail"] = sq.detail
        rep["compatible"] = None
        ok = sq.ok
    _finish(rep, ok)


def _matching(F, path):
    kind, pairs = io.matching_from_json(io.read_json(path))
    if kind == "cells":
        if F.complex is None:
            raise Halt("cell pairs need a supporting complex")
        return mo.matching_from_cells(F, pairs)
    return pairs


@verify.command("matching")
@click.argument("resolution", type=click.Path(exists=True, dir_okay=False))
@click.argument("matching", type=click.Path(exists=True, dir_okay=False))
def verify_matching(resolution, matching):
    F = _load_res(resolution)
    M = _matching(F, matching)
    G = mo.gamma_graph(F)
    r = mo.validate_matching(G, M)
    rep = {"command": "verify matching", "pairs": len(M), "valid_on_graph": r.ok, "reasons": list(r.reasons)}
    if r.cycle:
        rep["cycle"] = [fmt_id(v) for v in r.cycle]
    ok = r.ok
    if ok:
        try:
            mo._same_label_check(F, M)
            rep["same_label"] = True
        except mo.MorseError as e:
            rep["same_label"] = False
            rep["reasons"].append(str(e))
            ok = False
    if ok and F.complex is not None:
        P = mo.face_poset(F.complex)
        rp = mo.validate_matching(P, mo.matching_transfer(M, F, to="poset"))
        rep["valid_on_face_poset"] = rp.ok
        ok = ok and rp.ok
    _finish(rep, ok, F, G.to_dot(M))


@verify.command("deformation")
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.argument("target", type=click.Path(exists=True, dir_okay=False))
@click.argument("steps", type=click.Path(exists=True, dir_okay=False))
def verify_deformation(source, target, steps):
    F = _load_res(source)
    G = _load_res(target)
    try:
        st = io.steps_from_json(io.read_json(steps), F.ring)
    except (io.FormatError, ValueError, IndexError) as e:
        raise Halt("cannot read steps: %s" % e)
    r = mo.verify_formal_deformation(F, G, st)
    rep = {"command": "verify deformation", "steps": len(st), "ok": r.ok}
    if not r.ok:
        rep["failed_step"] = r.failed_step
        rep["detail"] = r.detail
    _finish(rep, r.ok)


# ---------------------------------------------------------------------------
# transform

@main.group(cls=Group)
def transform():
    "constructions on resolutions and diagrams"


def _out_option(f):
    return click.option("-o", "--output", type=click.Path(dir_okay=False),
                        help="write the result as JSON")(f)


def _result(op, F, output, extra=None):
    _save(F, output)
    rep = {"command": "transform " + op}
    rep.update(extra or {})
    rep.update(resolution_report(F, _field()))
    emit(rep, F)


def _require(m, what):
    if isinstance(m, CellResMorphism) and not m.verified:
        raise Halt("%s needs a verified morphism: %s" % (what, "; ".join(m.reasons())))


@transform.command()
@click.argument("morphism", type=click.Path(exists=True, dir_okay=False))
@_out_option
def cone(morphism, output):
    "mapping cone of a morphism"
    m = _load_morphism(morphism)
    _require(m, "cone")
    _result("cone", cons.mapping_cone(m), output)


@transform.command()
@click.argument("morphism", type=click.Path(exists=True, dir_okay=False))
@_out_option
def cylinder(morphism, output):
    "mapping cylinder of a morphism"
    m = _load_morphism(morphism)
    _require(m, "cylinder")
    cyl = cons.mapping_cylinder(m)
    _result("cylinder", cyl.complex, output, {"retraction": cyl.retraction is not None})


@transform.command()
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@_out_option
def coprod(first, second, output):
    "coproduct of two resolutions"
    cp = cons.coproduct(_load_res(first), _load_res(second))
    _result("coprod", cp.complex, output)


@transform.command()
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@_out_option
def tensor(first, second, output):
    "tensor product (gcd cancellation per --tensor-gcd)"
    mode = _opts()["tensor_gcd"]
    T = cons.tensor(_load_res(first), _load_res(second), mode=mode)
    _result("tensor", T, output, {"gcd_mode": mode})


@transform.command("prod-simplex")
@click.argument("resolution", type=click.Path(exists=True, dir_okay=False))
@click.option("--vertices", "-k", type=int, default=2, show_default=True, help="vertex count of the simplex")
@_out_option
def prod_simplex(resolution, vertices, output):
    "product with the simplex resolution on k vertices"
    P = cons.product_with_simplex(_load_res(resolution), vertices)
    _result("prod-simplex", P.complex, output, {"vertices": vertices})


@transform.command()
@click.argument("diagram", type=click.Path(exists=True, dir_okay=False))
@_out_option
def colim(diagram, output):
    "colimit of a diagram by gluing"
    D = _load_diagram(diagram)
    col = cons.colimit(D)
    extra = {"injections": {o: (m is not None and m.verified) for o, m in sorted(col.injections.items())},
             "problems": list(col.problems or [])}
    _result("colim", col.complex, output, extra)


@transform.command()
@click.argument("diagram", type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(["cylinders", "nerve", "compare"]), default="cylinders",
              show_default=True)
@_out_option
def hocolim(diagram, method, output):
    "homotopy colimit of a diagram"
    D = _load_diagram(diagram)
    if method == "compare":
        r = cons.hocolim_compare(D)
        F = r["cylinders"]
        extra = {"method": method, "nerve_ranks": r["nerve"].ranks(),
                 "betti_equal": r["betti_equal"], "isomorphic": r["isomorphic"]}
        _save(F, output)
        rep = {"command": "transform hocolim"}
        rep.update(extra)
        rep.update(resolution_report(F, _field()))
        _finish(rep, r["betti_equal"], F)
        return
    _result("hocolim", cons.hocolim(D, method), output, {"method": method})


@transform.command()
@click.argument("ideal", type=click.Path(exists=True, dir_okay=False))
@_out_option
def itercone(ideal, output):
    "iterated mapping cones along linear quotients, in the listed order"
    ring, gens = io.ideal_from_json(io.read_json(ideal))
    F, steps = cons.iterated_cone(ring, gens)
    sets = cons.linear_quotient_sets(gens)
    extra = {"colon_variables": [[ring.variables[k] for k in s] for s in sets[1:]],
             "step_ranks": [S.ranks() for S in steps]}
    _result("itercone", F, output, extra)


@transform.command()
@click.argument("resolution", type=click.Path(exists=True, dir_okay=False))
@click.option("--matching", "matching", type=click.Path(exists=True, dir_okay=False),
              help="matching file; a greedy matching is searched when omitted")
@_out_option
def morse(resolution, matching, output):
    "algebraic Morse reduction along a same-label matching"
    F = _load_res(resolution)
    M = _matching(F, matching) if matching else mo.greedy_matching_search(F)
    red = mo.morse_reduce(F, M)
    ids = mo.identities_hold(F, mo._reduce(F, M))
    agree, wit = mo.strands_agree(F, red.reduced, _field())
    R = red.reduced
    _save(R, output)
    rep = {"command": "transform morse",
           "matching": io.matching_to_json(M),
           "critical": [len(red.critical[i]) for i in range(F.top + 1)],
           "identities": ids,
           "strands_agree": agree,
           "regular": red.regular,
           "dual_route": red.dual_route_ok,
           "morse_morphism": None if red.morse_morphism is None else red.morse_morphism.verified}
    if wit is not None:
        rep["strand_witness"] = mono(F.ring, wit)
    rep.update(resolution_report(R, _field()))
    ok = (all(ids.values()) and agree and red.dual_route_ok is not False
          and rep["morse_morphism"] is not False)
    dot = mo.gamma_graph(F).to_dot(M)
    _finish(rep, ok, R, dot)


# ---------------------------------------------------------------------------
# randomized checks

@main.command()
@click.option("--trials", type=int, default=50, show_default=True)
@click.option("--seed", "seed", type=int, default=None, help="overrides the global --seed")
@click.option("--vars", "nvars", type=int, default=3, show_default=True)
def check(trials, seed, nvars):
    "randomized property suites"
    from .sampling import make_rng, random_labeled_complex, random_generators, random_span
    from .algebra import Ring
    if seed is None:
        seed = _opts()["seed"]
    fld = _field()
    ring = Ring(["x%d" % k for k in range(1, nvars + 1)])
    rng = make_rng(seed)
    results = {}

    agree = 0
    for _ in range(trials):
        X = random_labeled_complex(rng, ring)
        agree += (is_resolution_combinatorial(X, fld).ok == is_acyclic_complex(cellular_free_complex(X), fld).ok)
    results["oracle_agreement"] = [agree, trials]

    good = 0
    for _ in range(trials):
        gens = random_generators(rng, ring, rng.randint(1, 4))
        F = taylor(ring, gens)
        good += F.check_d2() and is_acyclic_complex(F, fld).ok
    results["taylor_acyclic"] = [good, trials]

    good = 0
    for _ in range(trials):
        F = taylor(ring, random_generators(rng, ring, rng.randint(1, 4)))
        M = mo.greedy_matching_search(F)
        red = mo.morse_reduce(F, M, dual_route=False)
        good += mo.strands_agree(F, red.reduced, fld)[0] and all(mo.identities_hold(F, mo._reduce(F, M)).values())
    results["morse_greedy"] = [good, trials]

    good = 0
    for _ in range(trials):
        F, G, H, iG, iH = random_span(rng, ring)
        cat = cons.Category(["a", "b", "c"], {"f": ("a", "b"), "g": ("a", "c")})
        D = cons.Diagram(cat, {"a": F, "b": G, "c": H}, {"f": iG, "g": iH})
        good += bool(cons.hocolim_compare(D)["betti_equal"])
    results["hocolim_methods"] = [good, trials]

    rep = {"command": "check", "seed": seed, "trials": trials, "suites": results}
    _finish(rep, all(a == b for a, b in results.values()))


if __name__ == "__main__":
    main()
