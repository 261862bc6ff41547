"""Command-line interface: ``unicomplex <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__, checks, tables
from .buchstaber import bounds_report, omega, s_p, theta_bounds
from .cache import cache_key, cached
from .complex import SimplicialComplex
from .errors import ConsistencyError, ResourceError, UnicomplexError
from .products import cup_length
from .tor.betti import METHODS, betti, betti_recursion
from .tor.torsion import torsion_check
from .universal import build, f_vector_closed

EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class _Group(click.Group):
    """Maps package errors onto exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ResourceError as exc:
            click.echo(f"resource limit: {exc}", err=True)
            ctx.exit(EXIT_RESOURCE)
        except ConsistencyError as exc:
            click.echo(f"verification failure: {exc}", err=True)
            ctx.exit(EXIT_VERIFY)
        except UnicomplexError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_USAGE)


def _family_options(f):
    f = click.option("--n", "n", type=int, help="rank of the ambient space")(f)
    f = click.option("--p", "p", type=int, help="prime")(f)
    f = click.option("--family", type=click.Choice(["X", "K"], case_sensitive=False))(f)
    return f


def _require(family, p, n):
    if family is None or p is None or n is None:
        raise click.UsageError("need --family, --p and --n (or --complex)")
    return family.upper(), p, n


def _load_complex(path) -> SimplicialComplex:
    try:
        return SimplicialComplex.from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise click.UsageError(f"cannot read complex from {path}: {exc}")


def _emit(text: str, out):
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


@click.group(cls=_Group)
@click.version_option(__version__, prog_name="unicomplex")
@click.option("--no-cache", is_flag=True, help="neither read nor write the artifact cache")
@click.option("--threads", type=int, default=1, show_default=True, help="worker cap (computations here are sequential)")
@click.pass_context
def main(ctx, no_cache, threads):
    """Universal complexes over F_p, their Betti numbers and Buchstaber invariants."""
    if threads < 1:
        raise click.BadParameter("must be at least 1", param_hint="--threads")
    ctx.obj = {"cache": not no_cache, "threads": threads}


@main.command()
@_family_options
@click.option("--out", type=click.Path(dir_okay=False), help="write JSON here instead of stdout")
def generate(family, p, n, out):
    """Build X(F_p^n) or K(F_p^n) and print it as JSON."""
    U = build(*_require(family, p, n))
    _emit(json.dumps(U.to_dict(), sort_keys=True), out)


@main.command()
@_family_options
@click.option("--closed-only", is_flag=True, help="skip enumeration, use the product formula")
def fvector(family, p, n, closed_only):
    """f-vector (f_-1, f_0, ..., f_{n-1})."""
    family, p, n = _require(family, p, n)
    closed = f_vector_closed(family, p, n)
    if not closed_only:
        counted = build(family, p, n).base.f_vector()
        if counted != closed:
            raise ConsistencyError(f"enumeration {counted} differs from closed form {closed}")
    click.echo(str(closed))


@main.command("betti")
@_family_options
@click.option("--complex", "complex_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(METHODS), default="recursion", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "table"]), default="json", show_default=True)
@click.pass_context
def betti_cmd(ctx, family, p, n, complex_file, method, fmt):
    """Bigraded Betti numbers beta^{-i,2j}."""
    if complex_file:
        if method == "recursion":
            raise click.UsageError("the recursion method needs --family, --p and --n")
        K = _load_complex(complex_file)
        table = betti(K, method)
        rows, cols = K.dim + 1, K.m
        key = None
    else:
        family, p, n = _require(family, p, n)
        key = cache_key("betti", family, p, n, method, fmt=fmt)
        rows, cols = n, (p**n - 1) if family == "X" else (p**n - 1) // (p - 1)

        def compute_table():
            if method == "recursion":
                return betti_recursion(family, p, n)
            return betti(build(family, p, n).base, method)

    def render(table):
        if fmt == "json":
            return table.to_json()
        if fmt == "csv":
            return table.to_csv(rows, cols).rstrip("\n")
        return table.format_table(rows, cols)

    if key is None:
        click.echo(render(table))
        return
    text, _ = cached(key, lambda: render(compute_table()), enabled=ctx.obj["cache"])
    click.echo(text)


@main.command("torsion")
@_family_options
@click.option("--complex", "complex_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def torsion_cmd(ctx, family, p, n, complex_file):
    """Integral torsion of Tor, via all full subcomplexes."""
    if complex_file:
        rep = torsion_check(_load_complex(complex_file))
        click.echo(json.dumps(rep.to_dict(), sort_keys=True))
        return
    family, p, n = _require(family, p, n)
    key = cache_key("torsion", family, p, n)
    text, _ = cached(
        key,
        lambda: json.dumps(torsion_check(build(family, p, n).base).to_dict(), sort_keys=True),
        enabled=ctx.obj["cache"],
    )
    click.echo(text)


@main.command("cup-length")
@_family_options
def cup_length_cmd(family, p, n):
    """Lower and upper cup-length bounds for the moment-angle complex."""
    rep = cup_length(build(*_require(family, p, n)))
    click.echo(json.dumps(rep.to_dict(), sort_keys=True))


@main.command()
@_family_options
@click.option("--complex", "complex_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--target-p", "target_p", type=int, help="prime of the target K(F_p^r); defaults to --p")
@click.option("--exact/--bounds-only", default=True, show_default=True)
@click.option("--budget", type=int, default=10**8, show_default=True, help="search node budget")
def buchstaber(family, p, n, complex_file, target_p, exact, budget):
    """The mod-p Buchstaber invariant s_p."""
    if complex_file:
        src = _load_complex(complex_file)
    else:
        src = build(*_require(family, p, n))
    q = target_p or p
    if q is None:
        raise click.UsageError("need --p or --target-p")
    rep = s_p(src, q, budget=budget) if exact else bounds_report(src, q)
    click.echo(json.dumps(rep.to_dict(), sort_keys=True))


@main.command("omega")
@click.option("--p", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--budget", type=int, default=10**6, show_default=True)
def omega_cmd(p, q, n, budget):
    """omega_{p,q}(n), plus the theta_p(n) bounds."""
    out = omega(p, q, n, budget=budget).to_dict()
    out["theta_bounds"] = list(theta_bounds(p, n))
    click.echo(json.dumps(out, sort_keys=True))


@main.command()
@click.option("--only", multiple=True, type=click.Choice(list(checks.CHECKS)), help="run a subset")
def verify(only):
    """Run the invariant suite; exit status 1 if anything fails."""
    failed = 0
    for name, ok, detail, secs in checks.run_all(set(only) or None):
        click.echo(f"[{'PASS' if ok else 'FAIL'}] {name} ({secs:.2f}s): {detail}")
        failed += not ok
    if failed:
        sys.exit(EXIT_VERIFY)


@main.command("reproduce-tables")
@click.option("--method", type=click.Choice(["recursion", "morse", "euler-oracle"]), default="recursion", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "csv"]), default="table", show_default=True)
def reproduce_tables(method, fmt):
    """Print the Betti tables of X(F_2^3) and X(F_2^4) and diff them against the published ones."""
    mismatches = 0
    for n in (3, 4):
        table = tables.compute(n, method)
        rows, cols = tables.SHAPES[n]
        click.echo(f"X(F_2^{n}), beta^(l-i,2i), method {method}")
        click.echo(table.format_table(rows, cols) if fmt == "table" else table.to_csv(rows, cols).rstrip("\n"))
        problems = tables.diff(n, table)
        for line in problems:
            click.echo(f"  MISMATCH {line}")
        click.echo("  matches the published table" if not problems else f"  {len(problems)} mismatches")
        click.echo("")
        mismatches += len(problems)
    if mismatches:
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":
    main()
