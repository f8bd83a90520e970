"""Command-line interface: ``equikh <command>``.

Exit codes: 0 success, 1 verification mismatch, 2 input error.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click

from . import __version__
from .borel import INF, NotKnotlike, fuq_presentation, minimal_borel, s_q, s_q_grid
from .cache import ResultCache, cache_key, canonical_json
from .complex import FreeComplex
from .diagram import PdError, all_symmetries, classify_crossings, detect_symmetry, mirror, parse_pd, symmetry_for_k
from .knot import analyze, grid_to_json

EXIT_MISMATCH = 1
EXIT_INPUT = 2


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _read_pd(pd: str | None, pd_file: str | None):
    if (pd is None) == (pd_file is None):
        raise InputError("give exactly one of --pd or --pd-file")
    text = pd if pd is not None else Path(pd_file).read_text()
    try:
        return text.strip(), parse_pd(text)
    except PdError as e:
        raise InputError(f"bad PD code: {e}") from None


def _emit_rows(rows):
    for row in rows:
        click.echo("\t".join(str(x) for x in row))


def _grid_rows(grid_json):
    return [("grid", g["A"], g["B"], g["s_q"]) for g in grid_json]


pd_options = [
    click.option("--pd", help="PD code, e.g. '[1,4,2,5],[3,6,4,1],[5,2,6,3]' or 'unknot0'."),
    click.option("--pd-file", type=click.Path(exists=True, dir_okay=False), help="File holding a PD code."),
    click.option("--mirror", "mirrored", is_flag=True, help="Mirror the diagram first."),
]


def with_pd(f):
    for opt in reversed(pd_options):
        f = opt(f)
    return f


@click.group()
@click.version_option(__version__, prog_name="equikh")
def main():
    """Equivariant Bar-Natan homology of symmetric knot diagrams."""


@main.command()
@with_pd
@click.option("--reduced/--unreduced", default=True, show_default=True)
@click.option("--basepoint", type=int, help="Edge label of the basepoint (default: smallest fixed edge).")
@click.option("--action", "k", type=int, help="Use the symmetry with this reversal parameter k.")
@click.option("--grid", nargs=2, type=int, metavar="A_MAX B_MAX", help="Also tabulate s_{Q,A,B}.")
@click.option("--deg-k", "want_degk", is_flag=True, help="Report deg_k of the cube vertices.")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of tab-separated rows.")
@click.option("--cache-dir", type=click.Path(file_okay=False), help="Reuse results stored here.")
@click.option("--figures", type=click.Path(file_okay=False), help="Write PNG figures to this directory.")
@click.option("--export-complex", type=click.Path(dir_okay=False),
              help="Write the complex with its involution as JSON (input for 'tensor').")
def invariants(pd, pd_file, mirrored, reduced, basepoint, k, grid, want_degk, as_json, cache_dir,
               figures, export_complex):
    """Khovanov data, s, the tau action, s-tilde and optionally the Borel grid."""
    text, d = _read_pd(pd, pd_file)
    if mirrored:
        d = mirror(d)
    sym = symmetry_for_k(d, k) if k is not None else (detect_symmetry(d) if d.is_knot else None)
    if k is not None and sym is None:
        raise InputError(f"k={k} is not a symmetry of this diagram")
    if basepoint is not None and sym is not None and basepoint not in sym.fixed_edges and d.n_crossings:
        raise InputError(f"basepoint {basepoint} is not fixed by the symmetry {sorted(sym.fixed_edges)}")
    params = {"mirror": mirrored, "reduced": reduced, "basepoint": basepoint, "k": k,
              "grid": list(grid) if grid else None, "deg_k": want_degk}
    cache = ResultCache(cache_dir) if cache_dir else None
    key = cache_key(text, "invariants", params)
    data = cache.get(key) if cache and not (figures or export_complex) else None
    if data is None:
        try:
            rep = analyze(d, reduced=reduced, basepoint=basepoint, symmetry=sym,
                          grid=tuple(grid) if grid else None)
        except (PdError, NotKnotlike) as e:
            raise InputError(str(e)) from None
        data = rep.to_json()
        if want_degk and sym is not None:
            data["deg_k"] = _degk_summary(d, sym)
        if cache:
            cache.put(key, data)
        if figures:
            from .report import plot_kh_table, plot_sq_grid

            out = Path(figures)
            plot_kh_table(rep.kh, rep.tau_table, out / "kh.png")
            if rep.grid:
                plot_sq_grid(rep.grid, out / "sq_grid.png")
        if export_complex:
            Path(export_complex).write_text(canonical_json(rep.complex.to_json()))
    if as_json:
        click.echo(canonical_json(data), nl=False)
        return
    sym_j = data["symmetry"]
    rows = [("crossings", data["n_crossings"]), ("mirrored", data["mirrored"]),
            ("reduced", data["reduced"])]
    if sym_j:
        rows += [("symmetry_k", sym_j["k"]), ("fixed_edges", ",".join(map(str, sym_j["fixed_edges"]))),
                 ("on_axis", sum(c != "OffAxis" for c in sym_j["crossing_class"]))]
    else:
        rows.append(("symmetry", "none"))
    rows += [("s", data["s"]), ("s_tilde", data["s_tilde"]),
             ("max_torsion_order", data["max_torsion_order"]), ("e2_degenerates", data["e2_degenerates"]),
             ("invariant_survivor", data["invariant_survivor"])]
    if data["s_tilde"] is not None:
        rows.append(("squeezed_obstructed", data["s_tilde"] != data["s"]))
    for cell in data["kh"]:
        rows.append(("kh", cell["h"], cell["q"], cell["dim"]))
    for cell in data["tau_table"] or []:
        rows.append(("ker", cell["h"], cell["q"], cell["dim"], cell["ker"]))
    for t in data["homology"]["torsion"]:
        rows.append(("torsion", *t["grading"], t["order"]))
    if data["grid"]:
        rows += _grid_rows(data["grid"])
    if "deg_k" in data:
        rows.append(("deg_k_oriented", data["deg_k"]["oriented"]))
        rows.append(("deg_k_range", data["deg_k"]["min"], data["deg_k"]["max"]))
    _emit_rows(rows)


def _degk_summary(d, sym) -> dict:
    from .diagram import oriented_vertex
    from .lobb_watson import k_grading

    kg = k_grading(d, sym)
    return {"oriented": kg.k2[oriented_vertex(d)] / 2 if d.n_crossings else 0.0,
            "min": min(kg.k2) / 2, "max": max(kg.k2) / 2,
            "o": [x / 2 for x in kg.o2], "u": [x / 2 for x in kg.u2]}


@main.command("verify-corpus")
@click.argument("fixture", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--table", type=click.IntRange(1, 2), help="Only rows of this table.")
@click.option("--name", "names", multiple=True, help="Only these knots (repeatable).")
@click.option("--workers", default=1, show_default=True, type=click.IntRange(1))
@click.option("--json", "as_json", is_flag=True)
@click.option("--cache-dir", type=click.Path(file_okay=False))
@click.option("--figures", type=click.Path(file_okay=False), help="Write summary figures here.")
def verify_corpus_cmd(fixture, table, names, workers, as_json, cache_dir, figures):
    """Recompute s, the symmetry and s-tilde = s - 2 for every corpus row."""
    from .corpus import RowResult, load_corpus, verify_corpus

    try:
        rows = load_corpus(fixture)
    except (OSError, ValueError) as e:
        raise InputError(f"cannot read fixture: {e}") from None
    if table:
        rows = [r for r in rows if r.table == table]
    if names:
        rows = [r for r in rows if r.name in set(names)]
    cache = ResultCache(cache_dir) if cache_dir else None
    results = [None] * len(rows)
    todo = []
    for i, r in enumerate(rows):
        key = cache_key(r.pd, "verify", {"mirror": r.mirror, "action": r.action, "s": r.s,
                                         "name": r.name, "table": r.table})
        hit = cache.get(key) if cache else None
        if hit is not None:
            results[i] = RowResult.from_json(hit)
        else:
            todo.append((i, key))

    def progress(res):
        if not as_json:
            flag = "PASS" if res.passed else "FAIL"
            click.echo(f"{flag}\t{res.name}\ttable{res.table}\ts={res.s}\ts~={res.s_tilde}"
                       f"\tk={res.detected_k}\t{res.seconds:.1f}s"
                       + ("" if res.passed else "\t" + "; ".join(res.failures())), err=True)

    fresh = verify_corpus([rows[i] for i, _ in todo], workers=workers, progress=progress)
    for (i, key), res in zip(todo, fresh):
        results[i] = res
        if cache:
            cache.put(key, res.to_json())
    n_fail = sum(not r.passed for r in results)
    if as_json:
        click.echo(canonical_json({"rows": [r.to_json() for r in results],
                                   "passed": len(results) - n_fail, "failed": n_fail}), nl=False)
    else:
        _emit_rows([("row", r.name, r.table, int(r.mirror), r.s, r.s_tilde, r.detected_k,
                     "PASS" if r.passed else "FAIL") for r in results])
        click.echo(f"summary\t{len(results) - n_fail}/{len(results)} passed")
    if figures:
        from .report import plot_corpus, plot_timings

        plot_corpus(results, Path(figures) / "corpus_s_vs_stilde.png")
        plot_timings(results, Path(figures) / "corpus_timings.png")
    if n_fail:
        sys.exit(EXIT_MISMATCH)


def _load_tau_complex(source: str) -> FreeComplex:
    from .examples import ALGEBRAIC, trivial

    builtins = dict(ALGEBRAIC, trivial=trivial)
    if source in builtins:
        return builtins[source]()
    try:
        c = FreeComplex.from_json(Path(source).read_text())
    except (OSError, ValueError, KeyError) as e:
        raise InputError(f"cannot load complex {source!r}: {e}") from None
    if "tau" not in c.endos:
        raise InputError(f"complex {source!r} has no involution 'tau'")
    return c


@main.command()
@click.argument("factors", nargs=-1, required=True)
@click.option("--power", default=1, show_default=True, type=click.IntRange(1),
              help="Tensor the product of FACTORS with itself this many times.")
@click.option("--grid", nargs=2, type=int, metavar="A_MAX B_MAX")
@click.option("--json", "as_json", is_flag=True)
def tensor(factors, power, grid, as_json):
    """Tensor complexes with involution (JSON files or ex1..ex4, trivial).

    Reports the generator counts, s_{Q,m,m+1} for m = number of factors and,
    for small results, the F[u,Q] presentation of the Borel homology.
    """
    from .products import connected_sum_complex

    cs = [_load_tau_complex(f) for f in factors] * power
    c = cs[0]
    for nxt in cs[1:]:
        c = connected_sum_complex(c, nxt)
    mb = minimal_borel(c).minimal
    m = len(cs)
    out = {"factors": list(factors), "power": power, "generators": c.n, "minimal_generators": mb.n}
    try:
        out["s_q_m_m1"] = {"A": m, "B": m + 1, "value": s_q(mb, m, m + 1)}
        if grid:
            out["grid"] = grid_to_json(s_q_grid(mb, grid[0], grid[1]))
    except NotKnotlike as e:
        out["error"] = str(e)
    if mb.n <= 16:
        out["presentation"] = fuq_presentation(mb).render()
    if as_json:
        click.echo(canonical_json(out), nl=False)
        return
    rows = [("generators", c.n), ("minimal_generators", mb.n)]
    if "s_q_m_m1" in out:
        rows.append(("s_q", m, m + 1, out["s_q_m_m1"]["value"]))
    rows += _grid_rows(out.get("grid", []))
    if "presentation" in out:
        rows.append(("presentation", out["presentation"]))
    _emit_rows(rows)


@main.command()
@click.argument("region", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--builtin", type=click.Choice(["K1a", "K1b", "J"]), help="A worked example region.")
@click.option("--json", "as_json", is_flag=True)
def eta(region, builtin, as_json):
    """Sakuma eta-polynomial from lines 'sign,label' of a fundamental region."""
    from . import sakuma_eta as se

    if (region is None) == (builtin is None):
        raise InputError("give a REGION file or --builtin")
    if builtin:
        fr = {"K1a": se.K1_FIRST, "K1b": se.K1_SECOND, "J": se.J_REGION}[builtin]
    else:
        try:
            fr = se.FundamentalRegion.parse(Path(region).read_text())
        except ValueError as e:
            raise InputError(str(e)) from None
    et = se.eta_tilde(fr)
    ep = se.eta_prime(et)
    try:
        e = se.eta_recover(ep)
    except ValueError as err:
        raise InputError(str(err)) from None
    out = {"eta_tilde": se.render_formal(et), "eta_prime": ep.render(),
           "eta_prime_bracket": ep.bracket(), "eta": e.render(), "eta_bracket": e.bracket(),
           "nonzero": bool(e.coeffs)}
    if as_json:
        click.echo(canonical_json(out), nl=False)
        return
    _emit_rows([("eta_tilde", out["eta_tilde"]),
                ("eta_prime", ep.render_bracket(), out["eta_prime"]),
                ("eta", e.render_bracket(), out["eta"]),
                ("nonzero", out["nonzero"])])


@main.command()
@with_pd
@click.option("--reduced/--unreduced", default=False, show_default=True)
@click.option("--action", "k", type=int)
@click.option("--box", nargs=6, type=int, metavar="HMIN HMAX QMIN QMAX KMIN KMAX",
              help="Trigrading window; k bounds are half-integers doubled.")
@click.option("--json", "as_json", is_flag=True)
def qw(pd, pd_file, mirrored, reduced, k, box, as_json):
    """Dimension data of the (Q, W)-complex in a trigrading window."""
    from .barnatan import build_reduced_pointed, build_unreduced
    from .involutive import build_tau
    from .lobb_watson import attach_k_grading, build_qw, k_grading, qw_dimension_data, w_inverted_dims

    _, d = _read_pd(pd, pd_file)
    if mirrored:
        d = mirror(d)
    sym = symmetry_for_k(d, k) if k is not None else detect_symmetry(d)
    if sym is None:
        raise InputError("the (Q, W)-complex needs a PD code symmetry")
    bn = build_reduced_pointed(d, min(sym.fixed_edges) if sym.fixed_edges else 1) if reduced \
        else build_unreduced(d)
    build_tau(bn, sym)
    kg = k_grading(d, sym)
    b = build_qw(attach_k_grading(bn, kg))
    if box:
        hr, qr, kr = (box[0], box[1]), (box[2], box[3]), (box[4], box[5])
    else:
        hr = (min(b.h), max(b.h) + 1)
        qr = (min(b.q) - 2, max(b.q))
        kr = (min(b.k2) - 2, max(b.k2))
    data = qw_dimension_data(b, hr, qr, kr)
    winv = w_inverted_dims(b, hr, qr)
    out = data.to_json()
    out["W_inverted"] = [{"h": h, "q": q, "dim": v} for (h, q), v in sorted(winv.items()) if v]
    out["deg_k_vertices"] = [x / 2 for x in kg.k2]
    if as_json:
        click.echo(canonical_json(out), nl=False)
        return
    rows = [("dim", c["h"], c["q"], c["k"], c["value"]) for c in out["dims"]]
    rows += [("W_rank", c["h"], c["q"], c["k"], c["value"]) for c in out["W_rank"]]
    rows += [("W_inverted", c["h"], c["q"], c["dim"]) for c in out["W_inverted"]]
    _emit_rows(rows)


@main.command("detect-symmetry")
@with_pd
@click.option("--all", "show_all", is_flag=True, help="List every admissible k.")
@click.option("--json", "as_json", is_flag=True)
def detect_symmetry_cmd(pd, pd_file, mirrored, show_all, as_json):
    """Find k with i -> ((k - i) mod n) + 1 preserving the PD code."""
    _, d = _read_pd(pd, pd_file)
    if mirrored:
        d = mirror(d)
    syms = all_symmetries(d) if show_all else [s for s in [detect_symmetry(d)] if s]
    out = [{"k": s.k, "fixed_edges": sorted(s.fixed_edges), "crossing_perm": list(s.crossing_perm),
            "crossing_class": [c.value for c in classify_crossings(d, s)] if d.n_crossings else []}
           for s in syms]
    if as_json:
        click.echo(canonical_json(out), nl=False)
    else:
        if not out:
            click.echo("symmetry\tnone")
        for s in out:
            _emit_rows([("k", s["k"], ",".join(map(str, s["fixed_edges"])),
                         sum(c != "OffAxis" for c in s["crossing_class"]))])
    if not out:
        sys.exit(EXIT_MISMATCH)


if __name__ == "__main__":
    main()
