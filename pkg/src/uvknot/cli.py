"""Command-line interface: compute, compare, selftest.

Exit codes: 0 success / match, 1 parse or usage error, 2 integrity
failure (broken structure relations or d^2 != 0), 3 comparison mismatch.
"""

import json
import sys
import time

import click

from uvknot import __version__
from uvknot.diagram import DiagramError, kauffman_state_count, orient, parse_diagram
from uvknot.homology import homology_dims, invariants
from uvknot.rings import ring_from_spec
from uvknot.tensor import PipelineError, pipeline

CONVENTIONS = (
    "conventions: 'o i' (over-strand entering from below at i) is the positive "
    "slice bimodule; orientation defaults to the left strand of the global "
    "minimum pointing up; U lowers (A, M) by (1, 2), V raises A by 1."
)


def _load(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise click.ClickException(f"cannot read {path}: {exc}")
    return parse_diagram(text, name=path)


def _compute(path, ring_spec, interleave=True, check=False, stats=None):
    d = _load(path)
    od = orient(d)
    ring = ring_from_spec(ring_spec)
    C = pipeline(od, ring, interleave_reduce=interleave, check=check, stats=stats)
    bad = C.check_d_squared()
    if bad:
        raise PipelineError(f"d^2 != 0 on final complex: {bad[:3]}")
    return d, od, C


@click.group()
@click.version_option(__version__, message=f"uvknot %(version)s\n{CONVENTIONS}")
def main():
    """Bigraded knot invariants over F[U,V]/(UV) from bridge diagrams."""


@main.command()
@click.argument("file", type=click.Path())
@click.option("--ring", "ring_spec", default="f2", show_default=True,
              help="coefficients: f2 | fp:<p> | z")
@click.option("--json", "as_json", is_flag=True, help="emit the JSON result schema")
@click.option("--dump-intermediate", is_flag=True,
              help="print per-slice generator/arrow statistics")
@click.option("--no-interleaved-reduction", "no_reduce", is_flag=True,
              help="skip intermediate reductions (Kauffman-state debugging)")
@click.option("--nu-p", "nu_primes", default="", help="comma-separated primes for nu_p (Z only)")
@click.option("--threads", default=0, help="worker threads for per-grading homology blocks")
def compute(file, ring_spec, as_json, dump_intermediate, no_reduce, nu_primes, threads):
    """Compute the invariants of the diagram in FILE."""
    t0 = time.time()
    stats = [] if dump_intermediate else None
    try:
        d, od, C = _compute(file, ring_spec, interleave=not no_reduce, stats=stats)
    except (DiagramError, click.ClickException, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except PipelineError as exc:
        click.echo(f"integrity error: {exc}", err=True)
        sys.exit(2)
    primes = tuple(int(p) for p in nu_primes.split(",") if p.strip())
    inv = invariants(C, primes=primes)
    elapsed = time.time() - t0
    if dump_intermediate:
        for row in stats:
            click.echo(f"# {row['event']:10s} generators={row['generators']:6d} "
                       f"arrows={row['arrows']:6d}")
    result = {
        "knot": d.name,
        "ring": ring_spec,
        "writhe": od.writhe,
        "kauffman_states": kauffman_state_count(d),
        "generators": len(C.gens),
        "diagram": od.to_json(),
        "timings": {"total_s": round(elapsed, 4)},
    }
    result.update(inv.to_json())
    if as_json:
        click.echo(json.dumps(result, indent=2, sort_keys=True))
        return
    click.echo(f"knot: {d.name}  (ring {ring_spec}, writhe {od.writhe:+d}, "
               f"{d.crossing_count()} crossings, {elapsed:.2f}s)")
    click.echo(f"alexander: {inv.alexander.pretty()}")
    click.echo("hfk_hat (A, M, dim):")
    for (a, m), dim in sorted(inv.hfk.items()):
        tors = inv.torsion.get((a, m))
        click.echo(f"  A={a:+d} M={m:+d} dim={dim}" + (f" torsion={tors}" if tors else ""))
    click.echo(f"tau={inv.tau}  nu={inv.nu}  epsilon={inv.epsilon}")
    for p, v in sorted(inv.nu_p.items()):
        click.echo(f"nu_{p}={v}")


@main.command()
@click.argument("file_a", type=click.Path())
@click.argument("file_b", type=click.Path())
@click.option("--ring", "ring_spec", default="f2", show_default=True)
def compare(file_a, file_b, ring_spec):
    """Empirically compare the graded invariants of two diagrams."""
    try:
        _, _, CA = _compute(file_a, ring_spec)
        _, _, CB = _compute(file_b, ring_spec)
    except (DiagramError, click.ClickException, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except PipelineError as exc:
        click.echo(f"integrity error: {exc}", err=True)
        sys.exit(2)
    ia, ib = invariants(CA), invariants(CB)
    da, _ = homology_dims(CA)
    db, _ = homology_dims(CB)
    fields = [
        ("hfk_hat", ia.hfk == ib.hfk),
        ("homology dims", da == db),
        ("alexander", dict(ia.alexander) == dict(ib.alexander)),
        ("tau", ia.tau == ib.tau),
        ("nu", ia.nu == ib.nu),
        ("epsilon", ia.epsilon == ib.epsilon),
    ]
    ok = True
    for label, match in fields:
        click.echo(f"{label:14s}: {'match' if match else 'MISMATCH'}")
        ok = ok and match
    sys.exit(0 if ok else 3)


@main.command()
@click.option("--level", type=click.Choice(["fast", "full"]), default="fast",
              show_default=True)
def selftest(level):
    """Run the invariant/property suites of all modules."""
    from uvknot.selftest import run_selftest

    ok = run_selftest(level, echo=click.echo)
    sys.exit(0 if ok else 2)
