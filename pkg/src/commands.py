"""CLI commands for plumbline - exact invariants of normal surface singularities."""

import csv
import io
import json
import logging
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Optional

import typer
from dotenv import load_dotenv

from src.config import RunConfig, get_n_range
from src.domain.cycles import IntCycle, RatCycle
from src.domain.graph import ResolutionGraph
from src.domain.seifert import SeifertData, parse_seifert
from src.errors import PlumblineError
from src.utils.io import stable_json_dumps, write_json_immutable
from src.utils.logger import configure_logging, get_logger, set_level
from src.utils.rational import fraction_to_str, to_fraction

app = typer.Typer(
    name="plumbline",
    help="plumbline - lattice, Poincaré-series and Abel-map invariants of plumbing graphs",
    no_args_is_help=True,
)
wh_app = typer.Typer(help="Weighted-homogeneous (star-shaped) graphs from Seifert data", no_args_is_help=True)
si_app = typer.Typer(help="Superisolated singularities F_d + F_{d+1}", no_args_is_help=True)
abel_app = typer.Typer(help="Abel map in a local chart", no_args_is_help=True)
app.add_typer(wh_app, name="wh")
app.add_typer(si_app, name="si")
app.add_typer(abel_app, name="abel")

logger = get_logger()

GraphArg = Annotated[str, typer.Argument(help="Graph file path or corpus:<name>")]
JsonFlag = Annotated[bool, typer.Option("--json", help="Print JSON instead of a table")]
OutputOpt = Annotated[
    Optional[Path], typer.Option("--output", "-o", help="Also write the JSON result to this file")
]
ForceFlag = Annotated[bool, typer.Option("--force", help="Overwrite a differing --output file")]
ChernOpt = Annotated[str, typer.Option("--chern", "-l", help="Chern class l' as a cycle expression")]
ZOpt = Annotated[str, typer.Option("--z", "-Z", help="Effective cycle Z as a cycle expression")]
SeifertOpt = Annotated[
    str, typer.Option("--seifert", "-s", help='Seifert data "b0=<int> legs=<a>,<w>[x<count>];..." or corpus:<name>')
]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Seed for genericity draws")]


@app.callback()
def main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging on stderr")] = False,
    log_file: Annotated[Optional[Path], typer.Option("--log-file", help="Also write the log to this file")] = None,
):
    """Exact invariants of negative definite plumbing graphs."""
    load_dotenv()
    level = logging.DEBUG if verbose else logging.INFO
    if log_file is not None:
        configure_logging(level, log_file)
    else:
        set_level(level)


# =============================================================================
# PLUMBING
# =============================================================================


@contextmanager
def _errors():
    """Domain errors exit 1 with their name; bad input exits 2."""
    try:
        yield
    except PlumblineError as e:
        typer.echo(f"[ERROR] {e.name}: {e}", err=True)
        raise typer.Exit(1)
    except FileExistsError as e:
        typer.echo(f"[ERROR] {e}", err=True)
        raise typer.Exit(1)
    except (ValueError, FileNotFoundError) as e:
        typer.echo(f"[ERROR] {e}", err=True)
        raise typer.Exit(2)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return fraction_to_str(value)
    if isinstance(value, RatCycle):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return _jsonable(value.to_dict())
    return str(value)


def _emit(
    payload: dict,
    json_output: bool,
    output: Optional[Path] = None,
    force: bool = False,
    title: str = "",
) -> None:
    payload = _jsonable(payload)
    if output is not None:
        wrote = write_json_immutable(output, payload, force=force)
        typer.echo(f"[OK] {'Wrote' if wrote else 'Unchanged'} {output}", err=True)
    if json_output:
        typer.echo(stable_json_dumps(payload), nl=False)
        return

    from rich.console import Console
    from rich.table import Table

    table = Table(title=title or None, show_header=False)
    table.add_column("key", style="bold cyan")
    table.add_column("value")
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, ensure_ascii=False, sort_keys=True)
        table.add_row(str(key), str(value))
    Console().print(table)


def _graph(ref: str) -> ResolutionGraph:
    from src.services.corpus import resolve_graph_ref

    return resolve_graph_ref(ref)


def _cycle(g: ResolutionGraph, text: str) -> RatCycle:
    from src.services.expressions import parse_cycle

    return parse_cycle(g, text)


def _int_cycle(g: ResolutionGraph, text: str) -> IntCycle:
    x = _cycle(g, text)
    if not x.is_integral:
        raise ValueError(f"{text!r} is not an integral cycle")
    return x.to_int()


def _seifert(text: str) -> SeifertData:
    from src.seifert.wh import seifert_from_graph
    from src.services.corpus import CORPUS_PREFIX, get_seifert

    if text.startswith(CORPUS_PREFIX):
        sd = get_seifert(text[len(CORPUS_PREFIX):])
        return sd if sd is not None else seifert_from_graph(_graph(text))
    if Path(text).is_file():
        return seifert_from_graph(_graph(text))
    return parse_seifert(text)


def _names(text: Optional[str]) -> list[str]:
    if not text:
        return []
    return [part.strip() for part in text.split(",") if part.strip()]


def _rationals(text: Optional[str]) -> list[Fraction] | None:
    if text is None:
        return None
    return [to_fraction(part) for part in _names(text)]


# =============================================================================
# GRAPH-CORE AND LATTICE
# =============================================================================


@app.command()
def invariants(
    graph: GraphArg,
    dot: Annotated[bool, typer.Option("--dot", help="Print the graph in Graphviz DOT and exit")] = False,
    json_output: JsonFlag = False,
    output: OutputOpt = None,
    force: ForceFlag = False,
):
    """Lattice invariants: |H|, Z_min, Z_K, chi, rationality and ellipticity."""
    from src.lattice.core import canonical_cycle, chi, discriminant, pairing
    from src.lattice.dominance import is_elliptic, is_rational
    from src.lattice.laufer import h1_zmin, laufer_zmin

    with _errors():
        g = _graph(graph)
        if dot:
            typer.echo(g.to_dot(), nl=False)
            return
        zmin = laufer_zmin(g)
        zk = canonical_cycle(g)
        payload = {
            "graph": g.name,
            "vertices": g.size,
            "det": discriminant(g),
            "zmin": zmin,
            "zk": zk,
            "zmin_squared": pairing(g, zmin, zmin),
            "zk_squared": pairing(g, zk, zk),
            "chi_zmin": chi(g, zmin),
            "h1_zmin": h1_zmin(g),
            "rational": is_rational(g),
            "elliptic": is_elliptic(g),
        }
        _emit(payload, json_output, output, force, title=f"Invariants of {g.name}")


@app.command()
def zmin(graph: GraphArg, json_output: JsonFlag = False, output: OutputOpt = None, force: ForceFlag = False):
    """Minimal (fundamental) cycle by Laufer's algorithm."""
    from src.lattice.laufer import laufer_zmin

    with _errors():
        g = _graph(graph)
        _emit({"zmin": laufer_zmin(g)}, json_output, output, force)


@app.command()
def zk(graph: GraphArg, json_output: JsonFlag = False, output: OutputOpt = None, force: ForceFlag = False):
    """Canonical cycle Z_K."""
    from src.lattice.core import canonical_cycle

    with _errors():
        g = _graph(graph)
        _emit({"zk": canonical_cycle(g)}, json_output, output, force)


@app.command()
def chi(
    graph: GraphArg,
    cycle: Annotated[str, typer.Argument(help="Cycle expression, e.g. 3,6,1,1,2 or Zmin")],
    json_output: JsonFlag = False,
    output: OutputOpt = None,
    force: ForceFlag = False,
):
    """Riemann-Roch expression chi(x) = -(x, x - Z_K)/2."""
    from src.lattice.core import chi as chi_of

    with _errors():
        g = _graph(graph)
        x = _cycle(g, cycle)
        _emit({"cycle": x, "chi": chi_of(g, x)}, json_output, output, force)


@app.command()
def dominant(
    graph: GraphArg,
    chern: ChernOpt = "0",
    z: ZOpt = "Zmin",
    json_output: JsonFlag = False,
    output: OutputOpt = None,
    force: ForceFlag = False,
):
    """Is the Abel map c^{l'}(Z) dominant?"""
    from src.lattice.dominance import generic_h1, is_dominant

    with _errors():
        g = _graph(graph)
        l = _cycle(g, chern)
        Z = _int_cycle(g, z)
        payload = {"chern": l, "Z": Z, "dominant": is_dominant(g, l, Z), "generic_h1": generic_h1(g, l, Z)}
        _emit(payload, json_output, output, force)


@app.command("generic-h1")
def generic_h1_cmd(
    graph: GraphArg,
    chern: ChernOpt = "0",
    z: ZOpt = "Zmin",
    h1_oz: Annotated[Optional[int], typer.Option("--h1-oz", help="Known h^1(O_Z) for the upper bound")] = None,
    json_output: JsonFlag = False,
    output: OutputOpt = None,
    force: ForceFlag = False,
):
    """Generic h^1(Z, L) and the interval for all L with c_1(L) = l'."""
    from src.lattice.dominance import generic_h1, h1_bounds

    with _errors():
        g = _graph(graph)
        l = _cycle(g, chern)
        Z = _int_cycle(g, z)
        payload = {
            "chern": l,
            "Z": Z,
            "generic_h1": generic_h1(g, l, Z),
            "bounds": h1_bounds(g, l, Z, h1_OZ=h1_oz),
        }
        _emit(payload, json_output, output, force)


@app.command()
def sdom(graph: GraphArg, chern: ChernOpt = "0", json_output: JsonFlag = False):
    """Is -l' in S'_dom?"""
    from src.lattice.dominance import in_sdom

    with _errors():
        g = _graph(graph)
        l = _cycle(g, chern)
        _emit({"chern": l, "in_sdom": in_sdom(g, l)}, json_output)


@app.command()
def van(graph: GraphArg, chern: ChernOpt = "0", json_output: JsonFlag = False):
    """Is -l' in Van'?"""
    from src.lattice.dominance import in_van

    with _errors():
        g = _graph(graph)
        l = _cycle(g, chern)
        _emit({"chern": l, "in_van": in_van(g, l)}, json_output)


@app.command()
def ldom(graph: GraphArg, chern: ChernOpt = "0", json_output: JsonFlag = False, output: OutputOpt = None, force: ForceFlag = False):
    """The least l >= 0 with -l' + l in S'_dom."""
    from src.lattice.dominance import l_dom

    with _errors():
        g = _graph(graph)
        l = _cycle(g, chern)
        _emit({"chern": l, "l_dom": l_dom(g, l)}, json_output, output, force)


@app.command()
def zcoh(
    graph: GraphArg,
    chern: ChernOpt = "0",
    z: Annotated[Optional[str], typer.Option("--z", "-Z", help="Box 0 <= l <= Z (default: whole orthant)")] = None,
    json_output: JsonFlag = False,
    output: OutputOpt = None,
    force: ForceFlag = False,
):
    """Cohomology cycle: least minimizer of chi(-l' + l)."""
    from src.lattice.minimize import min_chi_box, min_chi_orthant

    with _errors():
        g = _graph(graph)
        l = _cycle(g, chern)
        result = min_chi_box(g, l, _int_cycle(g, z)) if z else min_chi_orthant(g, l)
        _emit({"chern": l, "zcoh": result.minimal_minimizer, "minimization": result}, json_output, output, force)


# =============================================================================
# ZETA SERIES
# =============================================================================


@app.command()
def series(
    graph: GraphArg,
    bound: Annotated[int, typer.Option("--bound", "-b", help="Keep exponents a_v <= bound")] = 3,
    reduce: Annotated[Optional[str], typer.Option("--reduce", help="Comma list of node ids I: print the class-0 I-reduced series with x_v <= bound")] = None,
    json_output: JsonFlag = False,
    output: OutputOpt = None,
    force: ForceFlag = False,
):
    """Truncated expansion of Z(t) in E*-exponents, or its I-reduction."""
    from src.poincare.zeta import expand_Z, reduced_series

    with _errors():
        g = _graph(graph)
        I = _names(reduce)
        if I:
            reduced = reduced_series(g, I, bound)
            rows = [
                {"x": dict(zip(I, x)), "coefficient": c}
                for x, c in sorted(reduced.items())
            ]
            if json_output or output:
                _emit({"reduced_to": I, "bound": bound, "reduced": rows}, json_output, output, force)
            if not json_output:
                typer.echo(f"[Reduced series] {g.name}: I = {','.join(I)}, x_v <= {bound}")
                for row in rows:
                    monomial = " ".join(f"{v}^{e}" for v, e in row["x"].items() if e)
                    typer.echo(f"  {row['coefficient']:+d}  {monomial or '1'}")
            return
        expansion = expand_Z(g, bound)
        if json_output or output:
            _emit({"series": expansion}, json_output, output, force)
        if not json_output:
            typer.echo(f"[Series] {g.name}: {len(expansion)} terms with a_v <= {bound}")
            for a, c in sorted(expansion.terms.items()):
                monomial = " ".join(f"{v}^{e}" for v, e in zip(g.vertices, a) if e)
                typer.echo(f"  {c:+d}  {monomial or '1'}")


@app.command()
def counting(
    graph: GraphArg,
    target: Annotated[str, typer.Option("--target", "-t", help="Integral cycle l")],
    reduce: Annotated[Optional[str], typer.Option("--reduce", help="Comma list of node ids I for the reduced series")] = None,
    json_output: JsonFlag = False,
    output: OutputOpt = None,
    force: ForceFlag = False,
):
    """Counting function sigma(l) = sum of class-0 coefficients below l."""
    from src.poincare.zeta import counting_sigma, coverage_bound, expand_Z, reduced_counting

    with _errors():
        g = _graph(graph)
        l = _int_cycle(g, target)
        I = _names(reduce)
        if I:
            sigma = reduced_counting(g, I, l)
        else:
            sigma = counting_sigma(g, expand_Z(g, coverage_bound(g, l)), l)
        _emit({"target": l, "reduced_to": I, "sigma": sigma}, json_output, output, force)


@app.command("periodic-constant")
def periodic_constant_cmd(
    graph: GraphArg,
    l: Annotated[str, typer.Option("--l", help="Integral cycle l in S' (e.g. 'E*:v0' times its class order)")],
    n_range: Annotated[Optional[str], typer.Option("--n-range", help="n0,n1")] = None,
    json_output: JsonFlag = False,
    output: OutputOpt = None,
    force: ForceFlag = False,
):
    """Stabilized sigma(n l) - chi(n l)."""
    from src.poincare.zeta import counting_table, periodic_constant

    with _errors():
        g = _graph(graph)
        cycle = _int_cycle(g, l)
        bounds = get_n_range(tuple(int(x) for x in _names(n_range))) if n_range else get_n_range()
        constant, first = periodic_constant(g, cycle, bounds)
        payload = {
            "l": cycle,
            "n_range": list(bounds),
            "periodic_constant": constant,
            "stable_from": first,
            "table": counting_table(g, cycle, bounds),
        }
        _emit(payload, json_output, output, force)


# =============================================================================
# CORPUS
# =============================================================================


@app.command()
def corpus(
    check: Annotated[bool, typer.Option("--check", help="Build and validate every entry")] = False,
    show: Annotated[Optional[str], typer.Option("--show", help="Print one entry in the graph file format")] = None,
    json_output: JsonFlag = False,
):
    """List the bundled graphs (plus the families A<n>, D<n>, E6-E8)."""
    from rich.console import Console
    from rich.table import Table

    from src.services.corpus import get_graph, list_entries, load_corpus
    from src.services.validator import validate_corpus

    console = Console()
    with _errors():
        if show:
            typer.echo(get_graph(show).to_text(), nl=False)
            return
        if check:
            result = validate_corpus()
            if json_output:
                typer.echo(stable_json_dumps(result.to_dict()), nl=False)
            else:
                for err in result.errors:
                    console.print(f"  [red]X[/red] {err}")
                for warn in result.warnings:
                    console.print(f"  [yellow]![/yellow] {warn}")
                status = "[green][OK] Corpus PASSED[/green]" if result.passed else "[red][FAIL] Corpus FAILED[/red]"
                console.print(status)
            if not result.passed:
                raise typer.Exit(1)
            return

        entries = load_corpus()
        if json_output:
            typer.echo(stable_json_dumps([entries[name].to_dict() for name in list_entries()]), nl=False)
            return
        table = Table(title=f"Corpus ({len(entries)} entries)")
        table.add_column("Name", style="bold")
        table.add_column("Description", style="dim")
        for name in list_entries():
            table.add_row(name, entries[name].description)
        console.print(table)
        console.print("Families: corpus:A<n> (n >= 1), corpus:D<n> (n >= 4), corpus:E6, corpus:E7, corpus:E8")


# =============================================================================
# WEIGHTED-HOMOGENEOUS
# =============================================================================


@wh_app.command("pg")
def wh_pg_cmd(seifert: SeifertOpt, json_output: JsonFlag = False):
    """Geometric genus by Pinkham's formula."""
    from src.seifert.wh import wh_pg

    with _errors():
        sd = _seifert(seifert)
        _emit({"seifert": sd.to_text(), "pg": wh_pg(sd)}, json_output)


@wh_app.command("invariants")
def wh_invariants_cmd(seifert: SeifertOpt, json_output: JsonFlag = False, output: OutputOpt = None, force: ForceFlag = False):
    """n_l, W, p_g, s(0) and the dominance conditions of the central Abel map."""
    from src.seifert.wh import (
        central_dominance_conditions,
        dim_im_central,
        is_dominant_central,
        s_recursion,
        wh_form_basis,
        wh_invariants,
    )

    with _errors():
        sd = _seifert(seifert)
        inv = wh_invariants(sd)
        _, s0 = s_recursion(sd)
        payload = {
            "seifert": sd.to_text(),
            "orbifold_euler": sd.orbifold_euler,
            "order_H": sd.order,
            **inv.to_dict(),
            "pole_orders": sorted(form.pole_order for form in wh_form_basis(sd)),
            "s0": s0,
            "dim_im_central": dim_im_central(sd),
            "dominant_central": is_dominant_central(sd),
            "conditions": central_dominance_conditions(sd),
        }
        _emit(payload, json_output, output, force)


@wh_app.command("s")
def wh_s_cmd(seifert: SeifertOpt, json_output: JsonFlag = False):
    """The s-recursion table s(0), ..., s(ell_max)."""
    from src.seifert.wh import s_recursion

    with _errors():
        sd = _seifert(seifert)
        table, s0 = s_recursion(sd)
        _emit({"s": list(table), "s0": s0}, json_output)


@wh_app.command("h1-central")
def wh_h1_central_cmd(
    seifert: SeifertOpt,
    k: Annotated[int, typer.Option("--k", "-k", help="Number of central-orbit points")] = 1,
    json_output: JsonFlag = False,
):
    """h^1 for k generic points on the central curve."""
    from src.seifert.wh import h1_central, wh_pg

    with _errors():
        sd = _seifert(seifert)
        h1 = h1_central(sd, k)
        _emit({"k": k, "h1": h1, "dim_im": wh_pg(sd) - h1}, json_output)


@wh_app.command("h1-end")
def wh_h1_end_cmd(
    seifert: SeifertOpt,
    leg: Annotated[int, typer.Option("--leg", "-j", help="Leg index, 1-based")] = 1,
    json_output: JsonFlag = False,
):
    """h^1 for a generic point on the end curve of a leg, with the residue rank check."""
    from src.abel.chart import end_residue_rank
    from src.seifert.wh import end_pole_ells, h1_end, h1_end_printed

    with _errors():
        sd = _seifert(seifert)
        rank, h1_rank = end_residue_rank(sd, leg)
        payload = {
            "leg": leg,
            "pole_ells": end_pole_ells(sd, leg),
            "h1": h1_end(sd, leg),
            "h1_printed_formula": h1_end_printed(sd, leg),
            "residue_rank": rank,
            "h1_residue": h1_rank,
        }
        _emit(payload, json_output)


@wh_app.command("dim-im")
def wh_dim_im_cmd(seifert: SeifertOpt, json_output: JsonFlag = False):
    """dim im c^{-E*_{v0}} = p_g - s(0)."""
    from src.seifert.wh import dim_im_central, h1_generic_central, is_dominant_central

    with _errors():
        sd = _seifert(seifert)
        payload = {
            "dim_im": dim_im_central(sd),
            "h1_generic": h1_generic_central(sd),
            "dominant": is_dominant_central(sd),
        }
        _emit(payload, json_output)


@wh_app.command("forms")
def wh_forms_cmd(
    seifert: SeifertOpt,
    points: Annotated[Optional[str], typer.Option("--points", help="Comma list of the leg points p_j")] = None,
    json_output: JsonFlag = False,
):
    """The p_g forms on the central chart."""
    from src.seifert.wh import wh_form_basis

    with _errors():
        sd = _seifert(seifert)
        forms = wh_form_basis(sd, _rationals(points))
        if json_output:
            typer.echo(stable_json_dumps(_jsonable([f.to_dict() for f in forms])), nl=False)
            return
        for form in forms:
            poles = " ".join(f"(v-{p})^-{m}" for p, m in zip(form.points, form.m) if m)
            typer.echo(f"  l={form.ell} n={form.n} pole order {form.pole_order}: u^-{form.ell + 1} v^{form.n} {poles}")


@wh_app.command("dim-v")
def wh_dim_v_cmd(
    seifert: SeifertOpt,
    nodes: Annotated[str, typer.Option("--I", help="Comma list of vertex ids (v0, v<j>_<k>)")] = "v0",
    json_output: JsonFlag = False,
):
    """dim V(I) = p_g - sum of p_g over components of the complement of I."""
    from src.seifert.wh import dim_V_wh

    with _errors():
        sd = _seifert(seifert)
        I = _names(nodes)
        _emit({"I": I, "dim_V": dim_V_wh(sd, I)}, json_output)


# =============================================================================
# SUPERISOLATED
# =============================================================================


DegreeOpt = Annotated[int, typer.Option("--d", "-d", help="Degree of the cuspidal curve")]


@si_app.command("pg")
def si_pg_cmd(d: DegreeOpt, json_output: JsonFlag = False):
    """p_g = d(d-1)(d-2)/6."""
    from src.superisolated.si import si_pg

    with _errors():
        _emit({"d": d, "pg": si_pg(d)}, json_output)


@si_app.command("dimim")
def si_dimim_cmd(
    d: DegreeOpt,
    k: Annotated[int, typer.Option("--k", "-k", help="Number of generic cuts")],
    json_output: JsonFlag = False,
):
    """Image dimension for k generic cuts."""
    from src.superisolated.si import si_dim_im_generic

    with _errors():
        _emit({"d": d, "k": k, "dim_im": si_dim_im_generic(d, k)}, json_output)


@si_app.command("first-dominant")
def si_first_dominant_cmd(d: DegreeOpt, json_output: JsonFlag = False):
    """Least k making the Abel map dominant."""
    from src.superisolated.si import si_first_dominant

    with _errors():
        _emit({"d": d, "k": si_first_dominant(d)}, json_output)


def _read_points(path: Path) -> list[tuple[Fraction, Fraction]]:
    from src.utils.io import read_file

    rows = csv.reader(io.StringIO(read_file(path)))
    return [(to_fraction(r[0]), to_fraction(r[1])) for r in rows if r and not r[0].startswith("#")]


@si_app.command("rank")
def si_rank_cmd(
    d: DegreeOpt = 5,
    k: Annotated[int, typer.Option("--k", "-k", help="Number of cuts for the generic instance")] = 3,
    instance: Annotated[str, typer.Option("--instance", help="generic | collinear | conic")] = "generic",
    model: Annotated[Optional[str], typer.Option("--model", help="Curve model: cusp | sheared")] = None,
    points_file: Annotated[Optional[Path], typer.Option("--points-file", help="CSV of u,v points on the model")] = None,
    truncation: Annotated[Optional[int], typer.Option("--truncation", help="Order of the cut parametrizations")] = None,
    json_output: JsonFlag = False,
    output: OutputOpt = None,
    force: ForceFlag = False,
):
    """Rank of the order-of-vanishing system against the block formula."""
    from src.domain.curves import SiInstance
    from src.superisolated.si import (
        block_ranks,
        collinear_instance,
        conic_instance,
        curve_model,
        generic_instance,
        si_constraint_rank,
        si_dim_im_generic,
        si_dim_im_points,
    )

    with _errors():
        cfg = RunConfig.from_options(json_output=json_output, curve_model=model)
        if points_file is not None:
            inst = SiInstance(model=curve_model(d, cfg.curve_model), points=tuple(_read_points(points_file)))
        elif instance == "generic":
            inst = generic_instance(d, k, cfg.curve_model)
        elif instance == "collinear":
            inst = collinear_instance(d)
        elif instance == "conic":
            inst = conic_instance(d)
        else:
            raise ValueError(f"unknown instance '{instance}'; use generic, collinear or conic")
        rank, h1 = si_constraint_rank(inst, truncation)
        payload = {
            "instance": inst,
            "rank": rank,
            "h1": h1,
            "block_ranks": block_ranks(inst),
            "block_sum": si_dim_im_points(inst, fallback=True),
            "generic": si_dim_im_generic(d, inst.k),
        }
        _emit(payload, cfg.json_output, output, force)


# =============================================================================
# ABEL CHART
# =============================================================================


@abel_app.command("delta")
def abel_delta_cmd(
    n: Annotated[int, typer.Option("--n", "-n", help="Degree n")],
    c: Annotated[str, typer.Option("--c", help="Comma list c0,c1,... of rationals")],
    json_output: JsonFlag = False,
):
    """delta_{n,i}(c) for i = 1..n, closed form next to the determinant."""
    from sympy.polys.domains import QQ

    from src.abel.chart import delta_poly, delta_poly_det
    from src.utils.rational import qq_to_fraction

    with _errors():
        cs = _rationals(c)
        closed = [qq_to_fraction(delta_poly(n, i, cs, QQ)) for i in range(1, n + 1)]
        det = [qq_to_fraction(x) for x in delta_poly_det(n, cs, QQ)]
        _emit({"n": n, "delta": closed, "delta_det": det, "agree": closed == det}, json_output)


@abel_app.command("detmc")
def abel_detmc_cmd(
    m: Annotated[int, typer.Option("--m", "-m", help="Matrix size")],
    json_output: JsonFlag = False,
):
    """Determinant of the jet matrix M(c)."""
    from src.abel.chart import det_Mc

    with _errors():
        _emit({"m": m, "det": det_Mc(m)}, json_output)


@abel_app.command("whsing")
def abel_whsing_cmd(
    seifert: SeifertOpt = "corpus:ex-whsing",
    jet: Annotated[int, typer.Option("--jet", help="Number of symbolic cut coefficients")] = 2,
    json_output: JsonFlag = False,
):
    """Symbolic Abel coordinates of one cut and ratios of consecutive coordinates."""
    from src.abel.chart import consecutive_ratios, symbolic_chart_coordinates

    with _errors():
        sd = _seifert(seifert)
        field, coords = symbolic_chart_coordinates(sd, jet)
        payload = {
            "coordinates": [field.to_sympy(x) for x in coords],
            "ratios": consecutive_ratios(sd, jet),
        }
        _emit(payload, json_output)


@abel_app.command("rank")
def abel_rank_cmd(
    seifert: SeifertOpt,
    mode: Annotated[str, typer.Option("--mode", help="jet | central | end")] = "jet",
    k: Annotated[int, typer.Option("--k", "-k", help="Number of central cuts")] = 1,
    leg: Annotated[int, typer.Option("--leg", "-j", help="Leg for --mode end")] = 1,
    seed: SeedOpt = None,
    json_output: JsonFlag = False,
):
    """Residue constraint rank of the WH forms against the closed forms."""
    from src.abel.chart import central_point_rank, end_residue_rank, jet_cut_rank
    from src.seifert.wh import dim_im_central, h1_central, h1_end, wh_pg

    with _errors():
        cfg = RunConfig.from_options(seed=seed, json_output=json_output)
        sd = _seifert(seifert)
        if mode == "jet":
            rank, h1 = jet_cut_rank(sd, seed=cfg.seed)
            expected = dim_im_central(sd)
        elif mode == "central":
            rank, h1 = central_point_rank(sd, k, seed=cfg.seed)
            expected = wh_pg(sd) - h1_central(sd, k)
        elif mode == "end":
            rank, h1 = end_residue_rank(sd, leg)
            expected = wh_pg(sd) - h1_end(sd, leg)
        else:
            raise ValueError(f"unknown mode '{mode}'; use jet, central or end")
        logger.debug("seed %d", cfg.seed)
        payload = {"mode": mode, "seed": cfg.seed, "rank": rank, "h1": h1, "closed_form_rank": expected}
        _emit(payload, cfg.json_output)
