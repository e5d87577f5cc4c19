"""Command line entry point.

Data goes to files under the output directory (``--out``, else
``$SEPGRAPH_OUT``, else the working directory); one-line summaries go to
standard output.  A JSON config file supplies defaults for any flag.
"""
from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import __version__
from .surface import SurfaceError, SurfaceSig, build_surface

OUT_ENV = "SEPGRAPH_OUT"
CONFIG_ENV = "SEPGRAPH_CONFIG"


class CheckFailed(Exception):
    """A theorem check or certificate validation failed."""


def _sig(ctx, param, value):
    if value is None:
        return None
    try:
        return SurfaceSig.parse(value)
    except (SurfaceError, ValueError) as exc:
        raise click.BadParameter(str(exc)) from None


def _write(out: str | None, name: str, text: str) -> Path:
    d = Path(out or os.environ.get(OUT_ENV) or ".")
    d.mkdir(parents=True, exist_ok=True)
    p = d / name
    p.write_text(text)
    return p


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _tag(sig: SurfaceSig, w: int | None = None) -> str:
    return f"g{sig.genus}b{sig.boundary}" + (f"_w{w}" if w is not None else "")


surface_opt = click.option("--surface", "surface", callback=_sig, required=True, help="Signature g,b.")
weight_opt = click.option("--max-weight", "max_weight", type=click.IntRange(min=0), required=True)
out_opt = click.option("--out", "out", type=click.Path(file_okay=False), default=None, help="Output directory.")
jobs_opt = click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
emit_opt = click.option("--emit", type=click.Choice(["json", "dot"]), default="json", show_default=True)


def _load_config(path: str | None) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise click.UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise click.UsageError("config must be a JSON object")
    return {k.replace("-", "_"): v for k, v in doc.items()}


def _defaults(cmd: click.Command, conf: dict) -> dict:
    if isinstance(cmd, click.Group):
        return {name: _defaults(sub, conf) for name, sub in cmd.commands.items()}
    names = {p.name for p in cmd.params}
    return {k: v for k, v in conf.items() if k in names}


@click.group()
@click.version_option(__version__)
@click.option("--config", "config", type=click.Path(dir_okay=False), default=None, help="JSON file of flag defaults.")
@click.pass_context
def cli(ctx, config):
    """Separating curve graphs and their certificates."""
    conf = _load_config(config)
    if conf:
        ctx.default_map = _defaults(ctx.command, conf)


# ---------------------------------------------------------------- enumerate

@cli.command("enumerate")
@surface_opt
@weight_opt
@click.option("--kind", type=click.Choice(["multicurves", "curves", "separating"]), default="curves", show_default=True)
@click.option("--cap", "cap_items", type=click.IntRange(min=1), default=None, help="Stop after this many items.")
@out_opt
def enumerate_cmd(surface, max_weight, kind, cap_items, out):
    """Canonical multicurves up to a weight bound."""
    from .normal import collect, enumerate_multicurves

    tri = build_surface(surface)
    items, marker = collect(
        enumerate_multicurves(
            tri, max_weight, connected=kind == "curves", separating=kind == "separating", cap=cap_items
        )
    )
    doc = {"surfaceSig": [surface.genus, surface.boundary], "maxWeight": max_weight, "kind": kind,
           "items": [m.text for m in items]}
    if marker is not None:
        doc["truncation"] = marker.to_json()
    p = _write(out, f"enumerate_{kind}_{_tag(surface, max_weight)}.json", _dump(doc))
    click.echo(f"{len(items)} {kind} on {surface} at weight {max_weight}" + (" (truncated)" if marker else "") + f" -> {p}")
    return 0


# ---------------------------------------------------------------- graph

def _emit_graph(g, emit, out, name):
    text = g.to_dot() if emit == "dot" else g.dumps() + "\n"
    p = _write(out, f"{name}.{emit}", text)
    click.echo(json.dumps(g.summary(), sort_keys=True) + f" -> {p}")
    return 0


@cli.group()
def graph():
    """Build a graph on a weight-bounded ball."""


@graph.command("sep")
@surface_opt
@weight_opt
@click.option("--k", "k", type=click.IntRange(min=0), default=0, show_default=True)
@jobs_opt
@emit_opt
@out_opt
def graph_sep(surface, max_weight, k, jobs, emit, out):
    from .complexes import build_sep_graph

    g = build_sep_graph(build_surface(surface), k, max_weight, jobs=jobs)
    return _emit_graph(g, emit, out, f"sep_k{k}_{_tag(surface, max_weight)}")


@graph.command("k")
@surface_opt
@weight_opt
@emit_opt
@out_opt
def graph_k(surface, max_weight, emit, out):
    from .complexes import build_k_graph

    g = build_k_graph(build_surface(surface), max_weight)
    return _emit_graph(g, emit, out, f"kgraph_{_tag(surface, max_weight)}")


@graph.command("dw")
@surface_opt
@weight_opt
@click.option("--grow", type=click.IntRange(min=0), default=1, show_default=True)
@emit_opt
@out_opt
def graph_dw(surface, max_weight, grow, emit, out):
    from .complexes import build_dw_graph, fiber_report

    g = build_dw_graph(build_surface(surface), max_weight, grow=grow)
    click.echo(json.dumps(fiber_report(g).to_json(), sort_keys=True))
    return _emit_graph(g, emit, out, f"dw_{_tag(surface, max_weight)}")


@graph.command("f")
@surface_opt
@weight_opt
@click.option("--grow", type=click.IntRange(min=0), default=0, show_default=True)
@emit_opt
@out_opt
def graph_f(surface, max_weight, grow, emit, out):
    from .complexes import build_dw_graph, build_f_graph

    g = build_f_graph(build_dw_graph(build_surface(surface), max_weight, grow=grow))
    return _emit_graph(g, emit, out, f"fgraph_{_tag(surface, max_weight)}")


# ---------------------------------------------------------------- check

def _report(doc: dict, ok: bool, out, name: str) -> int:
    p = _write(out, name, _dump(doc))
    click.echo(("pass" if ok else "FAIL") + f" -> {p}")
    if not ok:
        raise CheckFailed(name)
    return 0


@cli.group()
def check():
    """Run a theorem check and write its report."""


@check.command("no-double-intersection")
@surface_opt
@weight_opt
@jobs_opt
@out_opt
def check_double(surface, max_weight, jobs, out):
    from .verifiers import check_no_intersection_two

    doc = check_no_intersection_two(surface, max_weight, jobs=jobs)
    return _report(doc, doc["pass"], out, f"no_double_{_tag(surface, max_weight)}.json")


@check.command("putman")
@surface_opt
@weight_opt
@click.option("--k", "k", type=click.IntRange(min=0), default=0, show_default=True)
@jobs_opt
@out_opt
def check_putman(surface, max_weight, k, jobs, out):
    from .complexes import build_sep_graph
    from .mcg import generators
    from .verifiers import putman_check

    gens = generators(surface)
    if gens.base is None:
        raise SurfaceError(f"{surface} has no separating curves")
    w = max(max_weight, max(gens.base.coords))
    g = build_sep_graph(build_surface(surface), k, w, jobs=jobs)
    cert = putman_check(g, gens, gens.base)
    return _report(cert.to_json(), cert.ok, out, f"putman_k{k}_{_tag(surface, w)}.json")


@check.command("f-generators")
@click.option("--genus", type=click.IntRange(min=3), default=3, show_default=True)
@out_opt
def check_fgen(genus, out):
    from .verifiers import f_generator_check

    doc = f_generator_check(genus)
    return _report(doc, doc["pass"], out, f"f_generators_g{genus}.json")


@check.command("witness-pairs")
@surface_opt
@weight_opt
@click.option("--cap", "cap_items", type=click.IntRange(min=1), default=None)
@out_opt
def check_pairs(surface, max_weight, cap_items, out):
    from .witnesses import ClassificationError, search_pairs

    try:
        res = search_pairs(build_surface(surface), max_weight, cap_items)
    except ClassificationError as exc:
        click.echo(str(exc), err=True)
        raise CheckFailed("witness-pairs") from None
    doc = res.to_json()
    doc.update({"surfaceSig": [surface.genus, surface.boundary], "maxWeight": max_weight})
    return _report(doc, True, out, f"witness_pairs_{_tag(surface, max_weight)}.json")


# ---------------------------------------------------------------- project

@cli.command("project")
@click.option("--multicurve", "mu", required=True, help="Text form g,b:w1,w2,...")
@click.option("--definer", required=True, help="Multicurve whose complement holds the target.")
@click.option("--component", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--radius", type=click.IntRange(min=1), default=4, show_default=True)
@out_opt
def project_cmd(mu, definer, component, radius, out):
    """Project a multicurve to a complementary component of another."""
    from .normal import parse_multicurve
    from .projections import diameter, project as proj
    from .witnesses import Subsurface

    m = parse_multicurve(mu)
    y = Subsurface.of(parse_multicurve(definer), component)
    ps = proj(m, y)
    doc = ps.to_json()
    if ps:
        d = diameter(y, ps.curves, radius=radius)
        doc["diameter"] = d if isinstance(d, int) else str(d)
    p = _write(out, "projection.json", _dump(doc))
    click.echo(f"{len(ps.curves)} curves" + (f", diameter {doc['diameter']}" if ps else "") + f" -> {p}")
    return 0


# ---------------------------------------------------------------- fibers and chains

@cli.command("fiber-path")
@click.option("--m", "m_text", required=True)
@click.option("--n", "n_text", default=None)
@click.option("--push", default=None, help="Use n = push(m) for a catalogue loop L1..L2g.")
@out_opt
def fiber_path_cmd(m_text, n_text, push, out):
    """A DW path between two vertices over the same capped multicurve."""
    from .mcg import apply, point_push
    from .normal import parse_multicurve
    from .verifiers import fiber_path, validate

    m = parse_multicurve(m_text)
    if (n_text is None) == (push is None):
        raise click.UsageError("give exactly one of --n and --push")
    n = parse_multicurve(n_text) if n_text else apply(point_push(push, m.surface), m)
    doc = fiber_path(m, n).to_json()
    problems = validate(doc)
    doc["validation"] = problems
    return _report(doc, not problems, out, "fiber_path.json")


@cli.command()
@click.option("--genus", type=click.IntRange(min=3), default=3, show_default=True)
@weight_opt
@click.option("--mu", "mu_text", default=None, help="Start of the chain (capped multicurve).")
@click.option("--mu2", "mu2_text", default=None, help="End of the chain.")
@click.option("--edge", type=click.IntRange(min=0), default=None, help="Use the endpoints of this 𝔉 edge.")
@click.option("--grow", type=click.IntRange(min=0), default=1, show_default=True)
@out_opt
def chain(genus, max_weight, mu_text, mu2_text, edge, grow, out):
    """A thick chain between two points of the 𝔉 ball."""
    from .complexes import build_dw_graph, build_f_graph
    from .normal import parse_multicurve
    from .verifiers import thick_chain, validate

    dw = build_dw_graph(build_surface((genus, 1)), max_weight, grow=grow)
    if edge is not None:
        f = build_f_graph(dw)
        if edge >= len(f.edges):
            raise click.UsageError(f"the 𝔉 ball has {len(f.edges)} edges")
        a, b, _ = f.edges[edge]
        mu, mu2 = f.vertices[a], f.vertices[b]
    elif mu_text and mu2_text:
        mu, mu2 = parse_multicurve(mu_text), parse_multicurve(mu2_text)
    else:
        raise click.UsageError("give --edge or both --mu and --mu2")
    doc = thick_chain(mu, mu2, dw).to_json()
    problems = validate(doc)
    doc["validation"] = problems
    return _report(doc, not problems, out, "thick_chain.json")


# ---------------------------------------------------------------- validate and export

@cli.command("validate")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def validate_cmd(path):
    """Re-check a certificate file."""
    from .verifiers import CertificateError, validate

    try:
        doc = json.loads(Path(path).read_text())
    except ValueError as exc:
        raise click.UsageError(f"{path} is not JSON: {exc}") from None
    doc.pop("validation", None)
    try:
        problems = validate(doc)
    except CertificateError as exc:
        raise click.UsageError(str(exc)) from None
    for line in problems:
        click.echo(line)
    if problems:
        raise CheckFailed(path)
    click.echo(f"valid {doc['kind']} certificate")
    return 0


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@emit_opt
@out_opt
def export(path, emit, out):
    """Re-emit a graph JSON file as JSON or DOT."""
    from .complexes import ComplexGraph
    from .normal import Truncation, parse_multicurve

    try:
        doc = json.loads(Path(path).read_text())
        verts = [parse_multicurve(t) for t in doc["vertices"]]
        edges = [(int(i), int(j), str(lab)) for i, j, lab in doc["edges"]]
        marker = doc.get("truncation")
        trunc = Truncation(marker["emitted"], tuple(marker["resumeAfter"])) if marker else None
        g = ComplexGraph(doc["kind"], doc["params"], verts, edges, trunc)
    except (ValueError, KeyError, TypeError) as exc:
        raise click.UsageError(f"{path} is not a graph file: {exc}") from None
    return _emit_graph(g, emit, out, Path(path).stem)


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="sepgraph", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except CheckFailed:
        return 2
    except (SurfaceError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
