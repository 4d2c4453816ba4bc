"""Command-line front end.

Every subcommand prints one OutputRecord: the echoed query, the result
payload, provenance (table version, engines, graphs checked), and wall
time.  JSON by default, CSV rows with --format csv.  Identical inputs at
--threads 1 produce byte-identical output (wall time excluded via
--no-timing for strict comparisons).

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

import csv as _csv
import io
import json
import sys
import time

import click

from dormant import __version__
from dormant.errors import DormantError
from dormant.count import CountQuery, FORMULA_QUERIES, count as run_count
from dormant.count import count_on_graph, formulas as run_formulas
from dormant.count import verify_gluing_loop, verify_gluing_tree
from dormant.disk import direct_sum, exponent, local_model, p_curvature
from dormant.gf import gf
from dormant.graphs import TrivalentSemiGraph, enumerate_graphs, validate
from dormant.matrix import mat_is_zero
from dormant.oper import ORACLE_VERSION, vertex_table
from dormant.radii import Radius, enum_Xi2, lift_fiber, reduce_level

SCHEMA_VERSION = 1


def _emit(query, result, fmt, t0, extra_provenance=None, timing=True):
    record = {
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "query": query,
        "result": result,
        "provenance": {"oracle_version": ORACLE_VERSION, **(extra_provenance or {})},
    }
    if timing:
        record["wall_time_s"] = round(time.time() - t0, 6)
    if fmt == "json":
        click.echo(json.dumps(record, sort_keys=True))
    else:
        buf = io.StringIO()
        writer = _csv.writer(buf)
        _csv_rows(writer, record)
        click.echo(buf.getvalue().rstrip("\n"))


def _csv_rows(writer, record):
    q = record["query"]
    res = record["result"]
    if isinstance(res, list) and res and isinstance(res[0], (list, tuple)):
        for row in res:
            writer.writerow(list(q.values()) + list(row))
    elif isinstance(res, list):
        writer.writerow(list(q.values()) + list(res))
    elif isinstance(res, dict):
        writer.writerow(list(q.values()) + [json.dumps(res, sort_keys=True)])
    else:
        writer.writerow(list(q.values()) + [res])


def _parse_radii(p, level, text):
    if not text:
        return ()
    return tuple(Radius(p, level, int(tok)) for tok in text.split(","))


fmt_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
    help="output format",
)
timing_option = click.option(
    "--no-timing", is_flag=True, help="omit wall time for byte-stable output"
)


@click.group()
@click.version_option(__version__)
def main():
    """Exact dormant-oper computations: radii arithmetic, disk-module
    curvature and exponents, admissibility tables, and graph counting."""


# -- radii ------------------------------------------------------------------


@main.group()
def radii():
    """Radius arithmetic (library: dormant.radii)."""


@radii.command("enum")
@click.option("--p", type=int, required=True)
@click.option("--level", type=int, default=1, show_default=True)
@fmt_option
@timing_option
def radii_enum(p, level, fmt, no_timing):
    """List all radii at (p, level) [dormant.radii.enum_Xi2]."""
    t0 = time.time()
    reps = [r.rep for r in enum_Xi2(p, level)]
    _emit({"cmd": "radii-enum", "p": p, "level": level}, reps, fmt, t0, timing=not no_timing)


@radii.command("lift")
@click.option("--p", type=int, required=True)
@click.option("--level", type=int, required=True)
@click.option("--rep", type=int, required=True)
@fmt_option
@timing_option
def radii_lift(p, level, rep, fmt, no_timing):
    """All lifts of a radius one level up [dormant.radii.lift_fiber]."""
    t0 = time.time()
    lifts = [r.rep for r in lift_fiber(Radius(p, level, rep))]
    _emit(
        {"cmd": "radii-lift", "p": p, "level": level, "rep": rep},
        lifts,
        fmt,
        t0,
        timing=not no_timing,
    )


@radii.command("reduce")
@click.option("--p", type=int, required=True)
@click.option("--level", type=int, required=True)
@click.option("--rep", type=int, required=True)
@click.option("--to-level", type=int, required=True)
@fmt_option
@timing_option
def radii_reduce(p, level, rep, to_level, fmt, no_timing):
    """Reduce a radius to a lower level [dormant.radii.reduce_level]."""
    t0 = time.time()
    out = reduce_level(Radius(p, level, rep), to_level).rep
    _emit(
        {"cmd": "radii-reduce", "p": p, "level": level, "rep": rep, "to_level": to_level},
        out,
        fmt,
        t0,
        timing=not no_timing,
    )


# -- disk -------------------------------------------------------------------


@main.group()
def disk():
    """Disk-module computations (library: dormant.disk)."""


def _build_sum(p, level, ds):
    F = gf(p)
    return direct_sum([local_model(F, d, level) for d in ds])


@disk.command("curvature")
@click.option("--p", type=int, required=True)
@click.option("--level", "m", type=int, default=0, show_default=True, help="operator level m")
@click.option("--d", "ds", type=int, multiple=True, required=True, help="local model exponent (repeatable)")
@fmt_option
@timing_option
def disk_curvature(p, m, ds, fmt, no_timing):
    """Top curvature of a sum of local models [dormant.disk.p_curvature]."""
    t0 = time.time()
    mod = _build_sum(p, m, ds)
    curv = p_curvature(mod)
    _emit(
        {"cmd": "disk-curvature", "p": p, "level": m, "d": list(ds)},
        {"vanishes": mat_is_zero(mod.ring, curv)},
        fmt,
        t0,
        timing=not no_timing,
    )


@disk.command("exponent")
@click.option("--p", type=int, required=True)
@click.option("--level", "m", type=int, default=0, show_default=True)
@click.option("--d", "ds", type=int, multiple=True, required=True)
@fmt_option
@timing_option
def disk_exponent(p, m, ds, fmt, no_timing):
    """Exponent multiset via monodromy [dormant.disk.exponent]."""
    t0 = time.time()
    mod = _build_sum(p, m, ds)
    ems = exponent(mod)
    _emit(
        {"cmd": "disk-exponent", "p": p, "level": m, "d": list(ds)},
        list(ems.entries),
        fmt,
        t0,
        timing=not no_timing,
    )


# -- vertex table -----------------------------------------------------------


@main.command("vertex-table")
@click.option("--p", type=int, required=True)
@click.option("--level", type=int, default=1, show_default=True)
@click.option("--cache-dir", type=click.Path(), default=None, help="override DORMANT_CACHE_DIR")
@click.option("--no-cache", is_flag=True, help="recompute, do not read or write the cache")
@click.option("--threads", type=int, default=1, show_default=True)
@fmt_option
@timing_option
def vertex_table_cmd(p, level, cache_dir, no_cache, threads, fmt, no_timing):
    """Admissible radii triples at (p, level) [dormant.oper.vertex_table]."""
    t0 = time.time()
    table = vertex_table(p, level, cache_dir=cache_dir, use_cache=not no_cache, threads=threads)
    _emit(
        {"cmd": "vertex-table", "p": p, "level": level},
        sorted(list(t) for t in table.triples),
        fmt,
        t0,
        extra_provenance={"triples_evaluated": "unordered"},
        timing=not no_timing,
    )


# -- count ------------------------------------------------------------------


@main.command("count")
@click.option("--p", type=int, required=True)
@click.option("--level", type=int, default=1, show_default=True)
@click.option("--genus", type=int, required=True)
@click.option("--marked", type=int, required=True)
@click.option("--radii", default="", help="comma list of leg radius reps")
@click.option("--graph-file", type=click.Path(exists=True), default=None,
              help="count on one graph from a JSON file instead of all graphs")
@click.option("--cache-dir", type=click.Path(), default=None)
@click.option("--threads", type=int, default=1, show_default=True)
@fmt_option
@timing_option
def count_cmd(p, level, genus, marked, radii, graph_file, cache_dir, threads, fmt, no_timing):
    """Count admissible labelings [dormant.count.count]."""
    t0 = time.time()
    rho = _parse_radii(p, level, radii)
    if len(rho) != marked:
        raise click.UsageError(f"--radii must list {marked} reps")
    table = vertex_table(p, level, cache_dir=cache_dir, threads=threads)
    if graph_file:
        with open(graph_file) as fh:
            G = TrivalentSemiGraph.from_json(json.load(fh))
        value = count_on_graph(G, rho, table)
        prov = {"graphs_checked": 1, "engine": "backtrack+contract"}
    else:
        value, cert = run_count(CountQuery(p, level, genus, marked, rho), table)
        prov = {"graphs_checked": cert["graphs_checked"], "engine": "+".join(cert["engines"])}
    _emit(
        {
            "cmd": "count",
            "p": p,
            "level": level,
            "genus": genus,
            "marked": marked,
            "radii": [r.rep for r in rho],
        },
        value,
        fmt,
        t0,
        extra_provenance=prov,
        timing=not no_timing,
    )


# -- verify -----------------------------------------------------------------


@main.group()
def verify():
    """Structural identity checks (library: dormant.count)."""


@verify.command("tree")
@click.option("--p", type=int, required=True)
@click.option("--level", type=int, default=1, show_default=True)
@click.option("--g1", type=int, required=True)
@click.option("--r1", type=int, required=True)
@click.option("--g2", type=int, required=True)
@click.option("--r2", type=int, required=True)
@click.option("--radii1", default="")
@click.option("--radii2", default="")
@click.option("--cache-dir", type=click.Path(), default=None)
@fmt_option
@timing_option
def verify_tree(p, level, g1, r1, g2, r2, radii1, radii2, cache_dir, fmt, no_timing):
    """Tree-gluing factorization [dormant.count.verify_gluing_tree]."""
    t0 = time.time()
    table = vertex_table(p, level, cache_dir=cache_dir)
    rho1 = _parse_radii(p, level, radii1)
    rho2 = _parse_radii(p, level, radii2)
    report = verify_gluing_tree(g1, r1, g2, r2, rho1, rho2, table)
    _emit(
        {"cmd": "verify-tree", "p": p, "level": level, "g1": g1, "r1": r1, "g2": g2, "r2": r2},
        report,
        fmt,
        t0,
        timing=not no_timing,
    )


@verify.command("loop")
@click.option("--p", type=int, required=True)
@click.option("--level", type=int, default=1, show_default=True)
@click.option("--genus", type=int, required=True)
@click.option("--marked", type=int, required=True)
@click.option("--radii", default="")
@click.option("--cache-dir", type=click.Path(), default=None)
@fmt_option
@timing_option
def verify_loop(p, level, genus, marked, radii, cache_dir, fmt, no_timing):
    """Loop-gluing factorization [dormant.count.verify_gluing_loop]."""
    t0 = time.time()
    table = vertex_table(p, level, cache_dir=cache_dir)
    rho = _parse_radii(p, level, radii)
    report = verify_gluing_loop(genus, marked, rho, table)
    _emit(
        {"cmd": "verify-loop", "p": p, "level": level, "genus": genus, "marked": marked},
        report,
        fmt,
        t0,
        timing=not no_timing,
    )


@verify.command("graph-independence")
@click.option("--p", type=int, required=True)
@click.option("--level", type=int, default=1, show_default=True)
@click.option("--genus", type=int, required=True)
@click.option("--marked", type=int, required=True)
@click.option("--radii", default="")
@click.option("--cache-dir", type=click.Path(), default=None)
@fmt_option
@timing_option
def verify_graph_independence(p, level, genus, marked, radii, cache_dir, fmt, no_timing):
    """Per-graph counts for one query [dormant.count.count_on_graph]."""
    t0 = time.time()
    table = vertex_table(p, level, cache_dir=cache_dir)
    rho = _parse_radii(p, level, radii)
    rows = []
    for G in enumerate_graphs(genus, marked):
        rows.append([json.dumps(G.to_json(), sort_keys=True), count_on_graph(G, rho, table)])
    values = {v for _, v in rows}
    _emit(
        {"cmd": "verify-graph-independence", "p": p, "level": level, "genus": genus, "marked": marked},
        {"counts": rows, "independent": len(values) == 1},
        fmt,
        t0,
        extra_provenance={"graphs_checked": len(rows)},
        timing=not no_timing,
    )


# -- formulas ---------------------------------------------------------------


@main.command("formulas")
@click.option("--query", type=click.Choice(FORMULA_QUERIES), required=True)
@click.option("--n", type=int, default=2, show_default=True)
@click.option("--genus", type=int, required=True)
@click.option("--marked", type=int, required=True)
@fmt_option
@timing_option
def formulas_cmd(query, n, genus, marked, fmt, no_timing):
    """Closed-form dimension/rank values [dormant.count.formulas]."""
    t0 = time.time()
    value = run_formulas(query, n, genus, marked)
    _emit(
        {"cmd": "formulas", "query": query, "n": n, "genus": genus, "marked": marked},
        value,
        fmt,
        t0,
        timing=not no_timing,
    )


def run(argv):
    """Library entry point: run the CLI on argv, returning the exit code."""
    try:
        main.main(args=list(argv), standalone_mode=False)
        return 0
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 2
    except DormantError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except click.exceptions.Exit as exc:
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
