"""Command-line front end.

Exit codes: 0 success, 1 an identity failed, 2 bad input (including states
on which a map is undefined).
"""

from __future__ import annotations

import csv
import io as _io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import click

from pentagram import dynamics as dyn
from pentagram import io as state_io
from pentagram import lax, poisson, verify
from pentagram.dynamics import MapShape, XYState
from pentagram.errors import PentagramError, SingularState, StateFormatError, UnstableRange
from pentagram.exact.rational import as_rational, decimal_string, format_rational
from pentagram.geometry import LiftedPolygon, map_F, polygon_from_xy, xy_from_polygon
from pentagram.leapfrog import LeapfrogState, leapfrog_coords, leapfrog_step, random_leapfrog
from pentagram.sampling import random_corner, random_pq, random_xy, rng_for

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    k: int = 3
    n: int = 5
    steps: int = 10
    seed: int = 0
    mode: str = "xy"
    input: str | None = None
    output: str | None = None
    level: Fraction | None = None
    exact_csv: bool = False

    def __post_init__(self):
        if not 2 <= self.k <= self.n:
            raise click.UsageError(f"need 2 <= k <= n, got k={self.k}, n={self.n}")
        if self.steps < 0:
            raise click.UsageError("--steps must be non-negative")

    @property
    def shape(self) -> MapShape:
        return MapShape(self.k, self.n)


def _fail_input(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INPUT)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _load(path: str):
    try:
        return state_io.load(path)
    except (OSError, StateFormatError) as exc:
        _fail_input(f"{path}: {exc}")


class _Rational(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return as_rational(value)
        except (TypeError, ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not an exact rational like 3 or -2/7", param, ctx)


RATIONAL = _Rational()

_k = click.option("--k", "k", type=int, default=3, show_default=True, help="Map parameter k.")
_n = click.option("--n", "n", type=int, default=5, show_default=True, help="Number of vertices n.")
_seed = click.option("--seed", type=int, default=0, show_default=True, help="Seed for random states.")
_steps = click.option("--steps", type=int, default=10, show_default=True, help="Number of iterations.")
_in = click.option("--in", "input_path", type=click.Path(dir_okay=False), help="State JSON to start from.")
_out = click.option("--out", "output_path", type=click.Path(dir_okay=False), help="Write output here instead of stdout.")


@click.group()
def main():
    """Exact computations for the maps T_k, the pentagram map and the leapfrog map."""


# ---------------------------------------------------------------------------
# orbit


def _initial_state(cfg: RunConfig):
    if cfg.input:
        state = _load(cfg.input)
        mode = state_io.state_mode(state)
        if mode != cfg.mode:
            _fail_input(f"--mode {cfg.mode} but the input state has mode {mode!r}")
        return state
    rng = rng_for(cfg.seed, "cli-orbit", cfg.mode, cfg.k, cfg.n)
    if cfg.mode == "xy":
        return random_xy(cfg.shape, rng)
    if cfg.mode == "pq":
        return random_pq(cfg.shape, rng, level=cfg.level)
    if cfg.mode == "corner":
        return random_corner(cfg.n, rng, lambda c: dyn.corner_to_xy(c).is_regular())
    if cfg.mode == "polygon":
        return polygon_from_xy(random_xy(cfg.shape, rng))
    return random_leapfrog(cfg.n, rng, closed=True)


def _step(state):
    if isinstance(state, XYState):
        return dyn.map_T(state)
    if isinstance(state, dyn.PQState):
        return dyn.map_Tbar(state)
    if isinstance(state, dyn.CornerState):
        return dyn.pentagram_corner(state)
    if isinstance(state, LiftedPolygon):
        return map_F(state)
    return leapfrog_step(state)


def _coordinates(state) -> list[tuple[str, Fraction | None]]:
    """Named coordinates; None marks a point at infinity."""
    if isinstance(state, XYState):
        return [(f"x_{i}", v) for i, v in enumerate(state.x, 1)] + [(f"y_{i}", v) for i, v in enumerate(state.y, 1)]
    if isinstance(state, dyn.PQState):
        return [(f"p_{i}", v) for i, v in enumerate(state.p, 1)] + [(f"q_{i}", v) for i, v in enumerate(state.q, 1)]
    if isinstance(state, dyn.CornerState):
        return [(f"X_{i}", v) for i, v in enumerate(state.X, 1)] + [(f"Y_{i}", v) for i, v in enumerate(state.Y, 1)]
    if isinstance(state, LiftedPolygon):
        return _coordinates(xy_from_polygon(state))
    out = []
    for name, seq in (("Sm", state.S_minus), ("S", state.S)):
        out += [(f"{name}_{i}", p.u / p.v if p.v else None) for i, p in enumerate(seq, 1)]
    return out


def _xy_for_integrals(state) -> XYState | None:
    if isinstance(state, XYState):
        return state
    if isinstance(state, dyn.CornerState):
        return dyn.corner_to_xy(state)
    if isinstance(state, LiftedPolygon):
        return xy_from_polygon(state)
    if isinstance(state, LeapfrogState):
        return leapfrog_coords(state)
    return None  # (p, q) orbits are exported without integrals


def _integrals(state, keys: list | None) -> list[tuple[str, Fraction]]:
    """I_ij columns; ``keys`` (from the first row) keeps the columns fixed along the orbit."""
    s = _xy_for_integrals(state)
    if s is None:
        return []
    table = lax.spectral(s)
    if keys is None:
        keys = [e for e, _ in table.items() if e != (0, 0)]
    return [(f"I_{i}_{j}", table.I(i, j)) for i, j in keys]


def _render(v: Fraction | None) -> str:
    return "inf" if v is None else decimal_string(v, 17)


def _exact(v: Fraction | None) -> str:
    return "inf" if v is None else format_rational(v)


def orbit_csv(cfg: RunConfig, state=None) -> str:
    state = _initial_state(cfg) if state is None else state
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = keys = None
    for step in range(cfg.steps + 1):
        if step:
            try:
                state = _step(state)
            except PentagramError as exc:
                raise SingularState(f"orbit undefined at step {step}: {exc}", index=step) from exc
        integrals = _integrals(state, keys)
        cols = _coordinates(state) + integrals
        if header is None:
            keys = [tuple(int(a) for a in name.split("_")[1:]) for name, _ in integrals]
            header = ["step"] + [name for name, _ in cols]
            if cfg.exact_csv:
                header += [f"{name}_exact" for name, _ in cols]
            writer.writerow(header)
        row = [str(step)] + [_render(v) for _, v in cols]
        if cfg.exact_csv:
            row += [_exact(v) for _, v in cols]
        writer.writerow(row)
    return buf.getvalue()


@main.command()
@_k
@_n
@_steps
@_seed
@click.option("--mode", type=click.Choice(state_io.MODES), default="xy", show_default=True)
@click.option("--level", type=RATIONAL, default=None, help="Level c = prod p_i q_i for random pq states.")
@_in
@_out
@click.option("--exact-csv", is_flag=True, help="Add an exact p/q column for every value.")
def orbit(k, n, steps, seed, mode, level, input_path, output_path, exact_csv):
    """Iterate the map for the chosen mode and write one CSV row per step."""
    cfg = RunConfig(k, n, steps, seed, mode, input_path, output_path, level, exact_csv)
    try:
        text = orbit_csv(cfg)
    except PentagramError as exc:
        _fail_input(str(exc))
    _emit(text, output_path)


# ---------------------------------------------------------------------------
# verification


@main.command("verify")
@_seed
@click.option("--k", "k", type=int, default=None, help="Restrict the grids to this single cell (with --n).")
@click.option("--n", "n", type=int, default=None)
@click.option("--criteria", default="1-11", show_default=True, help="Comma list or range, e.g. 1,5,7-9.")
@_out
@click.option("--negative-control", is_flag=True, hidden=True,
              help="Run with a sign-flipped D_k; the duality identities must fail.")
def verify_cmd(seed, k, n, criteria, output_path, negative_control):
    """Run the acceptance identities and print a JSON report."""
    numbers = _parse_criteria(criteria)
    cells = None
    if (k is None) != (n is None):
        raise click.UsageError("--k and --n go together")
    if k is not None:
        RunConfig(k, n)
        cells = [(k, n)]
    opts = verify.Options(seed=seed, cells=cells)
    if negative_control:
        opts.d_map = verify.flipped_D
    results = verify.run(numbers, opts)
    for r in results:
        click.echo(r.line(), err=True)
        for c in r.checks:
            if c.skipped:
                click.echo(f"    skipped {c.name}: {c.detail}", err=True)
            elif not c.passed:
                click.echo(f"    failed {c.name}: {c.detail}", err=True)
    _emit(verify.report_json(results), output_path)
    sys.exit(EXIT_OK if all(r.passed for r in results) else EXIT_FAIL)


def _parse_criteria(text: str) -> list[int]:
    out = []
    try:
        for part in text.split(","):
            lo, _, hi = part.strip().partition("-")
            out += list(range(int(lo), int(hi or lo) + 1))
    except ValueError:
        raise click.UsageError(f"bad --criteria {text!r}") from None
    bad = [i for i in out if i not in verify.CRITERIA]
    if bad:
        raise click.UsageError(f"no such criteria: {bad}")
    return out


def _run_criterion(number: int, k, n, seed) -> None:
    cells = [(k, n)] if k is not None else None
    res = verify.CRITERIA[number](verify.Options(seed=seed, cells=cells))
    for c in res.checks:
        status = "skip" if c.skipped else ("ok" if c.passed else "FAIL")
        click.echo(f"{status:4} {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    click.echo(res.line())
    sys.exit(EXIT_OK if res.passed else EXIT_FAIL)


@main.command("geometry-check")
@click.option("--k", "k", type=int, default=None, help="Single cell instead of the shipped grid (with --n).")
@click.option("--n", "n", type=int, default=None)
@_seed
def geometry_check(k, n, seed):
    """Exact checks for F, G and the duality on corrugated polygons."""
    if (k is None) != (n is None):
        raise click.UsageError("--k and --n go together")
    if k is not None:
        RunConfig(k, n)
    _run_criterion(8, k, n, seed)


@main.command("leapfrog-check")
@_seed
def leapfrog_check(seed):
    """Exact checks for the leapfrog map, its coordinates, Lagrangian and 2-form."""
    _run_criterion(10, None, None, seed)


# ---------------------------------------------------------------------------
# integrals and rank


@main.command()
@_k
@_n
@_seed
@click.option("--steps", type=int, default=0, show_default=True, help="Also check conservation over this many steps.")
@_in
@_out
def integrals(k, n, seed, steps, input_path, output_path):
    """Print the coefficients I_ij of the spectral polynomial as exact rationals."""
    if input_path:
        state = _load(input_path)
        s = _xy_for_integrals(state)
        if s is None:
            _fail_input("integrals need an xy, corner, polygon or leapfrog state")
    else:
        s = random_xy(RunConfig(k, n).shape, rng_for(seed, "cli-integrals", k, n))
    try:
        table = lax.spectral(s)
        conserved = lax.integrals_conserved(s, steps) if steps else None
    except PentagramError as exc:
        _fail_input(str(exc))
    doc = {
        "k": s.shape.k,
        "n": s.shape.n,
        "integrals": {f"{i},{j}": format_rational(v) for (i, j), v in table.items()},
    }
    if conserved is not None:
        doc["conserved_steps"] = steps
        doc["conserved"] = conserved
    _emit(json.dumps(doc, indent=2) + "\n", output_path)
    sys.exit(EXIT_FAIL if conserved is False else EXIT_OK)


@main.command()
@_k
@_n
def rank(k, n):
    """Rank of the (x, y) Poisson bracket and its Casimir monomials."""
    shape = RunConfig(k, n).shape
    try:
        got = poisson.poisson_rank(shape)
        cas = poisson.casimirs(shape)
    except UnstableRange as exc:
        _fail_input(f"UnstableRange: {exc}")
    d = gcd(k - 1, n)
    doc = {"k": k, "n": n, "rank": got, "expected": 2 * (n - d), "casimirs": [list(c) for c in cas]}
    click.echo(json.dumps(doc))
    sys.exit(EXIT_OK if got == 2 * (n - d) else EXIT_FAIL)


# ---------------------------------------------------------------------------
# state files


@main.group()
def state():
    """State JSON utilities."""


@state.command()
@_in
@_out
@click.option("--mode", type=click.Choice(state_io.MODES), default=None,
              help="Target mode; defaults to the input's own mode (a normalizing round trip).")
@click.option("--k", "k", type=int, default=None, help="Relabel the xy/pq result with this k.")
def convert(input_path, output_path, mode, k):
    """Read a state, optionally convert it to another mode, and write it back exactly."""
    if not input_path:
        raise click.UsageError("--in is required")
    st = _load(input_path)
    try:
        out = state_io.convert(st, mode or state_io.state_mode(st), k)
    except (PentagramError, ValueError) as exc:
        _fail_input(str(exc))
    _emit(state_io.dumps(out), output_path)


if __name__ == "__main__":
    main()
