"""Command line interface: ``cdlat build | cd | classify | export-dot | scenario``.

Exit codes: 0 success, 2 counterexample or failed assertion, 3 budget
exceeded, 4 input error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import latfile
from .cdengine import DEFAULT_BUDGET, BudgetExceeded, compute_cd_full, resolve_jobs, verify_predicted
from .constructions import (
    ConstructionError,
    build_double_diamond,
    diamond_builder,
    direct_power,
    iterate,
    qac_builder,
)
from .presentation import (
    CGPParseError,
    NamedSubgroup,
    PresentationError,
    abelian,
    dump,
    heisenberg,
    load,
    trivial,
)
from .shapes import ShapeError, classify

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_BUDGET, EXIT_INPUT = 0, 2, 3, 4


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _base(spec: str, p: int):
    if spec == "trivial":
        return trivial(p)
    if spec == "heisenberg":
        return heisenberg(p)
    pres = load(spec)
    if pres.p != p:
        raise InputError(f"base {spec} is over GF({pres.p}), not GF({p})")
    return pres


def _split(text: str | None):
    if not text:
        return None
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError("--split takes two integers, e.g. 2,4") from None
    return a, b


@click.group()
def cli():
    """Chermak-Delgado lattices of class-2 p-groups given by commutator forms."""


@cli.command()
@click.argument("kind", type=click.Choice(["dd", "le", "qe", "power", "abelian"]))
@click.option("--p", "p", type=int, required=True)
@click.option("--m", "m", type=int)
@click.option("--n", "n", type=int)
@click.option("--l", "l", type=int, default=1, show_default=True, help="iteration count for le/qe")
@click.option("--k", "k", type=int, default=2, show_default=True, help="number of factors for power")
@click.option("--dims", type=int, default=0, help="dimension for abelian")
@click.option("--split", help="block sizes n1,n2 for dd")
@click.option("--base", default="trivial", show_default=True, help="trivial, heisenberg or a .cgp file")
@click.option("-o", "--out", "out", help="output prefix (writes PREFIX.cgp and PREFIX.cdl)")
def build(kind, p, m, n, l, k, dims, split, base, out):
    """Emit a presentation and, where one exists, its predicted lattice."""
    out = out or kind
    exp = None
    if kind == "dd":
        if m is None:
            raise InputError("dd needs --m")
        pres, exp = build_double_diamond(p, m, _split(split))
    elif kind == "le":
        if m is None or n is None:
            raise InputError("le needs --m and --n")
        pres, exp = iterate(diamond_builder(m, n), _base(base, p), l)
    elif kind == "qe":
        if n is None:
            raise InputError("qe needs --n")
        pres, exp = iterate(qac_builder(n), _base(base, p), l)
    elif kind == "power":
        pres = direct_power(_base(base, p), k)
    else:
        pres = abelian(p, dims)
    dump(pres, f"{out}.cgp")
    written = [f"{out}.cgp"]
    if exp is not None:
        lf = latfile.from_lattice((pres, exp), shape=exp.expected_shape.summary())
        latfile.write(lf, f"{out}.cdl")
        written.append(f"{out}.cdl")
    click.echo(f"v_dim={pres.v_dim} w_dim={pres.w_dim} |P|={p}^{pres.order_exponent} |Z|={p}^{pres.w_dim}")
    click.echo("wrote " + " ".join(written))


@cli.command()
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--mode", type=click.Choice(["full", "verify"]), default="full", show_default=True)
@click.option("--predicted", type=click.Path(dir_okay=False), help="predicted .cdl file (verify mode)")
@click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True)
@click.option("--jobs", type=int, default=None, help="worker processes (default: CDLAT_JOBS or 1)")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--samples", type=int, default=10**6, show_default=True)
@click.option("-o", "--out", "out", type=click.Path(dir_okay=False), help="output .cdl file")
def cd(input, mode, predicted, budget, jobs, seed, samples, out):
    """Compute CD(P) exactly, or verify a predicted lattice."""
    pres = load(input)
    jobs = resolve_jobs(jobs)
    out = out or str(Path(input).with_suffix(".cd.cdl"))
    if mode == "full":
        try:
            lat, stats = compute_cd_full(pres, budget=budget, jobs=jobs)
        except BudgetExceeded as exc:
            click.echo(str(exc), err=True)
            sys.exit(EXIT_BUDGET)
        if predicted:
            pf = latfile.read(predicted)
            lat.bind_names(NamedSubgroup(pf.names.get(i, f"#{i}"), u) for i, u in enumerate(pf.members) if i in pf.names)
        shape = _shape_or_none(lat.poset())
        latfile.write(latfile.from_lattice(lat, shape=shape), out)
        click.echo(
            f"members={len(lat.members)} max=p^{lat.value} scanned={stats.subspaces_scanned} "
            f"kernel={stats.kernel} jobs={stats.jobs} time={stats.wall_time:.2f}s"
        )
        click.echo(f"wrote {out}")
        return
    if not predicted:
        raise InputError("verify mode needs --predicted")
    pf = latfile.read(predicted)
    if (pf.p, pf.d, pf.e) != (pres.p, pres.v_dim, pres.w_dim):
        raise InputError("predicted lattice does not match the presentation's p, d, e")
    named = [NamedSubgroup(pf.names.get(i, f"#{i}"), u) for i, u in enumerate(pf.members)]
    rep = verify_predicted(pres, named, samples=samples, seed=seed, jobs=jobs, budget=budget)
    click.echo(rep.summary())
    if not rep.passed:
        sys.exit(EXIT_COUNTEREXAMPLE)
    lat = rep.lattice
    shape = _shape_or_none(lat.poset())
    latfile.write(latfile.from_lattice(lat, mode="verified-predicted", shape=shape), out)
    click.echo(f"wrote {out}")


def _shape_or_none(poset):
    try:
        return classify(poset).summary()
    except ShapeError:
        return None


@cli.command("classify")
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--expect", help='expected summary, e.g. "2-string[diamond(2),diamond(2)] uniform"')
def classify_cmd(input, expect):
    """Print the shape of a lattice file."""
    lf = latfile.read(input)
    spec = classify(lf.poset())
    click.echo(spec.summary())
    click.echo(f"components {spec.length}")
    for c in spec.components:
        idx = ",".join(f"p^{x}" for x in c.edge_index_profile)
        click.echo(f"component {c.label} elements={c.element_count} covers=[{idx}]")
    click.echo(f"uniform {str(spec.uniform).lower()} index_uniform {str(spec.index_uniform).lower()}")
    if expect is not None and not spec.matches(expect):
        click.echo(f"expected {expect!r}", err=True)
        sys.exit(EXIT_COUNTEREXAMPLE)


@cli.command("export-dot")
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--labels/--no-labels", default=True, show_default=True)
@click.option("-o", "--out", "out", type=click.Path(dir_okay=False))
def export_dot(input, labels, out):
    """Hasse diagram of a lattice file in DOT."""
    text = latfile.to_dot(latfile.read(input), labels)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


@cli.command()
@click.argument("name", required=False)
@click.option("--heavy", is_flag=True, help="run the long full scans instead of sampling")
@click.option("--jobs", type=int, default=None)
@click.option("--list", "list_", is_flag=True, help="list scenario names")
def scenario(name, heavy, jobs, list_):
    """Reproduce one of the registered constructions end to end."""
    from .scenarios import SCENARIOS, run

    if list_ or not name:
        click.echo("\n".join(SCENARIOS))
        return
    if name not in SCENARIOS:
        raise InputError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
    rep = run(name, jobs=resolve_jobs(jobs), heavy=heavy)
    for line in rep.lines():
        click.echo(line)
    if not rep.passed:
        sys.exit(EXIT_COUNTEREXAMPLE)


INPUT_ERRORS = (
    PresentationError,
    CGPParseError,
    ConstructionError,
    latfile.LatticeFileError,
    FileNotFoundError,
    IsADirectoryError,
    ShapeError,
)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="cdlat", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except click.exceptions.Abort:
        return EXIT_INPUT
    except INPUT_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    except SystemExit as exc:
        return int(exc.code or 0)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
