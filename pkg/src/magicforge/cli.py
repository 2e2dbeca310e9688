"""``magicforge`` command line.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click

from . import compalg
from .checks import DEFAULT_SEED, run_suite
from .compalg import UnknownAlgebra
from .liealg import (
    GradingError,
    LieAlgebra,
    NotExtremal,
    Triple,
    check_extremal,
    check_triple,
    classical_algebra,
    classical_principal_triple,
    fingerprint,
    from_algebra_derivations,
    grading_by_ad,
    intermediate_subalgebra,
    intermediate_triality,
    octonion_triple,
    triality_algebra,
    triality_diagonal_triple,
)
from .magicsq import CARTAN_LABELS, SHORT, SQUARE_ALGEBRAS, bigrading, magic_square_table, tits_algebra, tits_triple
from .series import check_super_series, series_dims


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_algebra(name: str | None, path: str | None) -> compalg.AlgebraTable:
    if (name is None) == (path is None):
        raise click.UsageError("give exactly one of NAME or --file")
    if path is not None:
        try:
            with open(path) as fh:
                return compalg.from_json(json.load(fh))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise click.BadParameter(f"cannot read algebra from {path}: {exc}", param_hint="--file")
    try:
        return compalg.resolve_algebra(name)
    except UnknownAlgebra:
        known = ", ".join(compalg.BASE_ALGEBRAS)
        raise click.BadParameter(f"unknown algebra {name!r}; known: {known} or H3(<name>)", param_hint="NAME")


@click.group()
@click.version_option(package_name="magicforge")
def main():
    """Exact constructions around the sextonions and the extended magic square."""


@main.command()
@click.argument("name", required=False)
@click.option("--file", "path", type=click.Path(dir_okay=False), help="Algebra JSON to load instead of NAME.")
@click.option("--json", "fmt", flag_value="json", default=True, help="Emit the JSON table (default).")
@click.option("--md", "fmt", flag_value="md", help="Emit a markdown multiplication table.")
def algebra(name, path, fmt):
    """Print an algebra: a base name such as sextonion, or H3(<name>)."""
    a = _load_algebra(name, path)
    if fmt == "md":
        click.echo(compalg.to_markdown(a))
    else:
        click.echo(dumps(compalg.to_json(a)), nl=False)


@main.command()
@click.argument("action", type=click.Choice(["derive", "triality", "intermediate"]))
@click.argument("name", required=False)
@click.option("--file", "path", type=click.Path(dir_okay=False), help="Algebra JSON to load instead of NAME.")
@click.option("--index", type=click.IntRange(1, 3), default=1, show_default=True,
              help="Which intermediate algebra (t_i(1) = 0).")
@click.option("--fingerprint", "fp", is_flag=True, help="Print invariants instead of structure constants.")
def lie(action, name, path, index, fp):
    """Derivation, triality or intermediate Lie algebra of a composition algebra."""
    a = _load_algebra(name, path)
    if action == "derive":
        l = from_algebra_derivations(a)
    elif action == "triality":
        l = triality_algebra(a)
    else:
        l = intermediate_triality(a, index)
    click.echo(dumps(fingerprint(l).to_json() if fp else l.to_json()), nl=False)


def _preset(name: str) -> tuple[LieAlgebra, Triple]:
    if name == "der-Os":
        l = from_algebra_derivations(compalg.base_algebra("split_octonion"))
        return l, octonion_triple(l)
    if name == "tri-Os":
        return triality_algebra(compalg.base_algebra("split_octonion")), triality_diagonal_triple()
    if name in ("sl4", "sp4", "so7"):
        kind, n = name[:2], int(name[2:])
        return classical_algebra(kind, n), classical_principal_triple(kind, n)
    b = {v: k for k, v in SHORT.items()}.get(name[len("T-Os-"):]) if name.startswith("T-Os-") else None
    if b in SQUARE_ALGEBRAS:
        l = tits_algebra("split_octonion", b)
        return l, tits_triple(l)
    raise click.BadParameter(f"unknown preset {name!r}", param_hint="--preset")


PRESETS = ["der-Os", "tri-Os", "sl4", "sp4", "so7"] + [f"T-Os-{SHORT[b]}" for b in SQUARE_ALGEBRAS]


@main.command()
@click.option("--preset", type=click.Choice(PRESETS), help="A named algebra with its standard triple.")
@click.option("--lie-file", type=click.Path(exists=True, dir_okay=False), help="Lie algebra JSON.")
@click.option("--triple", "triple_json", help='JSON {"e": [...], "h": [...], "f": [...]} with "p/q" coordinates.')
@click.option("--intermediate/--no-intermediate", default=True, show_default=True,
              help="Also report the intermediate subalgebra when e is extremal.")
def grade(preset, lie_file, triple_json, intermediate):
    """Grade a Lie algebra by ad(h) for an sl2 triple (e, h, f)."""
    if preset:
        if lie_file or triple_json:
            raise click.UsageError("--preset excludes --lie-file and --triple")
        l, t = _preset(preset)
    else:
        if not (lie_file and triple_json):
            raise click.UsageError("give --preset, or both --lie-file and --triple")
        with open(lie_file) as fh:
            l = LieAlgebra.from_json(json.load(fh))
        try:
            raw = json.loads(triple_json)
            t = Triple.of(*(tuple(Fraction(x) for x in raw[k]) for k in ("e", "h", "f")))
        except (ValueError, KeyError, TypeError) as exc:
            raise click.BadParameter(f"bad triple: {exc}", param_hint="--triple")
        if any(len(v) != l.dim for v in (t.E, t.H, t.F)):
            raise click.BadParameter(f"triple coordinates must have length {l.dim}", param_hint="--triple")
        if not check_triple(l, t.E, t.H, t.F):
            raise click.BadParameter("(e, h, f) is not an sl2 triple", param_hint="--triple")
    try:
        g = grading_by_ad(l, t.H)
    except GradingError as exc:
        raise click.ClickException(str(exc))
    out = {"algebra": l.name, "dim": l.dim, "grading": [[d, n] for d, n in g.signature()]}
    if intermediate:
        extremal = check_extremal(l, t.E)
        out["extremal"] = extremal
        if extremal:
            try:
                r = intermediate_subalgebra(l, t)
            except NotExtremal:
                out["extremal"] = False
            else:
                out["intermediate"] = {"gbar": r.dims[0], "V": r.dims[1], "gtilde": r.dims[2]}
    click.echo(dumps(out), nl=False)


@main.command()
@click.option("--construction", type=click.Choice(["tits", "dims", "vinberg"]), default="dims", show_default=True,
              help="tits builds every Lie algebra; dims and vinberg use decomposition formulas.")
@click.option("--format", "fmt", type=click.Choice(["md", "csv", "json"]), default="md", show_default=True)
@click.option("--bigrading", "m", type=click.Choice(["1", "2", "4", "6", "8"]),
              help="Print the bigrading layout for m instead of the square.")
def magic(construction, fmt, m):
    """The 5x5 extended magic square over (R, Cs, Hs, S, Os)."""
    if m is not None:
        _emit_bigrading(bigrading(int(m)), fmt)
        return
    key = {"tits": "tits", "dims": "triality_dims", "vinberg": "vinberg_dims"}[construction]
    table = magic_square_table(key)
    names = [SHORT[a] for a in SQUARE_ALGEBRAS]
    if fmt == "json":
        click.echo(dumps({
            "construction": construction,
            "algebras": names,
            "dims": [[c.dim for c in row] for row in table],
            "labels": [list(r) for r in CARTAN_LABELS],
        }), nl=False)
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "col", "label", "dim"])
        for row in table:
            for c in row:
                w.writerow([SHORT[c.row_algebra], SHORT[c.col_algebra], c.label, c.dim])
        click.echo(buf.getvalue(), nl=False)
    else:
        lines = ["| | " + " | ".join(names) + " |", "|---|" + "---|" * 5]
        for name, row in zip(names, table):
            lines.append(f"| {name} | " + " | ".join(f"{c.label} ({c.dim})" for c in row) + " |")
        click.echo("\n".join(lines))


def _emit_bigrading(g, fmt):
    if fmt == "json":
        click.echo(dumps(g.to_json()), nl=False)
        return
    rows = [["" if x is None else str(x) for x in row] for row in g.cells]
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        click.echo(buf.getvalue(), nl=False)
        return
    degs = ["-2", "-1", "0", "1", "2"]
    lines = ["| | " + " | ".join(degs) + " |", "|---" * 6 + "|"]
    lines += [f"| {d} | " + " | ".join(r) + " |" for d, r in zip(degs, rows)]
    lines += ["", f"total {g.total}; total grading {g.total_grading}; even part {g.even_part}"]
    click.echo("\n".join(lines))


@main.command()
@click.option("--m", "ms", multiple=True, default=("1", "2", "4", "6", "8"), show_default=True,
              help="Parameter values (rationals such as -3/2 allowed); repeatable.")
@click.option("--format", "fmt", type=click.Choice(["md", "csv", "json"]), default="md", show_default=True)
@click.option("--super", "sup", is_flag=True, help="Print the superdimension table report instead.")
def series(ms, fmt, sup):
    """Exceptional and subexceptional series dimensions at chosen m."""
    if sup:
        rep = check_super_series()
        if fmt == "json":
            click.echo(dumps({"passed": rep.passed, "rows": [r.to_json() for r in rep.rows], "notes": rep.notes}), nl=False)
        else:
            for r in rep.rows:
                n = "" if r.n is None else f" n={r.n}"
                click.echo(f"{'PASS' if r.passed else 'FAIL'} m={r.m} {r.side} {r.evaluated}{n} "
                           f"sdim={r.superdim} expected={r.expected}" + (f" ({r.note})" if r.note else ""))
        sys.exit(0 if rep.passed else 1)
    try:
        pts = [series_dims(Fraction(m)) for m in ms]
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(str(exc), param_hint="--m")
    if fmt == "json":
        click.echo(dumps([p.to_json() for p in pts]), nl=False)
        return
    header = ["m", "dim_sub", "dim_exc", "rep_dim", "labels"]
    rows = [[str(p.m), str(p.dim_sub), str(p.dim_exc), str(p.rep_dim), " / ".join(p.labels or ())] for p in pts]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        click.echo(buf.getvalue(), nl=False)
    else:
        click.echo("\n".join(["| " + " | ".join(header) + " |", "|---" * len(header) + "|"]
                             + ["| " + " | ".join(r) + " |" for r in rows]))


@main.command()
@click.option("--suite", type=click.Choice(["core", "square", "series", "all"]), default="all", show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed for sampled Jacobi scans.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), help="Also write the report to this file.")
def check(suite, seed, fmt, output):
    """Run a verification suite; exit 1 if any check fails."""
    rep = run_suite(suite, seed)
    text = rep.dumps(fmt)
    click.echo(text, nl=False)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    sys.exit(rep.exit_code)


if __name__ == "__main__":
    main()
