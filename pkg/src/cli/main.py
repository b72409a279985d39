"""
APUnroll command-line interface.

Exit codes: 0 success or pass, 1 verification failed (witness printed),
2 usage or format error, 3 internal limit exceeded.
"""
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Iterator, Optional, Sequence

import click
import typer
from pydantic import ValidationError

from ..config import BLOCK_SIZES_3AP, DEFAULT_JOBS, ENUMERATION_BUDGET, TABLE_DEFAULT_LIMIT
from ..core.count import (
    average_over_colorings,
    count_cyclic,
    count_line,
    empirical_coefficient,
    exhaustive_average,
)
from ..core.errors import ApunrollError, LimitExceededError, PreconditionError
from ..core.formats import format_coloring, format_line_dump, parse_coloring, read_coloring
from ..core.line import (
    PeriodicColoring,
    UnrolledColoring,
    blocks_coloring,
    percent_text,
    percent_vs_random,
    periodic_coefficient,
    random_coefficient,
    unrolled_coefficient,
)
from ..core.models import ZmColoring
from ..core.residue import fast_verdict, primitive_root, residue_coloring
from ..core.search import search_primes, search_zm_exhaustive, tensor
from ..core.table import table_check
from ..core.utils.log import set_level
from ..core.zm import verify_zm
from .models import CoefficientMode, CommandConfig, LineMode
from .render import (
    count_line_text,
    emit_json,
    fraction_payload,
    print_search,
    print_table,
    search_payload,
    table_payload,
)

app = typer.Typer(
    name="apunroll",
    help="Colorings of Z_m and [n] with few monochromatic arithmetic progressions.",
    no_args_is_help=True,
    add_completion=False,
)

KOpt = Annotated[Optional[int], typer.Option("--k", help="Progression length (pattern 0..k-1).")]
PatternOpt = Annotated[Optional[str], typer.Option("--pattern", help="Offsets '0,2,3,5' or star form '*-**-*'.")]
InputOpt = Annotated[Optional[Path], typer.Option("--input", "-i", help="Coloring file (stdin when omitted).")]
OutputOpt = Annotated[Optional[Path], typer.Option("--output", "-o", help="Write here instead of stdout.")]
JobsOpt = Annotated[int, typer.Option("--jobs", help="Worker threads; results do not depend on it.")]
JsonOpt = Annotated[bool, typer.Option("--json", help="Emit one JSON object.")]
TimingOpt = Annotated[bool, typer.Option("--timing", help="Include elapsed milliseconds.")]


@contextmanager
def _domain_errors() -> Iterator[None]:
    """Map domain exceptions to `error: ...` on stderr plus the matching exit code."""
    try:
        yield
    except PreconditionError as e:
        if e.verdict is not None:
            typer.echo(e.verdict.describe())
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(e.exit_code)
    except ApunrollError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(e.exit_code)
    except ValidationError as e:
        err = e.errors()[0]
        typer.echo(f"error: {err['msg']}", err=True)
        raise typer.Exit(2)
    except OSError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(2)
    except MemoryError:
        typer.echo("error: out of memory; try a smaller n or modulus", err=True)
        raise typer.Exit(LimitExceededError.exit_code)


def _load_coloring(path: Optional[Path]) -> ZmColoring:
    if path is None:
        return parse_coloring(sys.stdin.read())
    return read_coloring(path)


def _write_text(text: str, output: Optional[Path]) -> None:
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")


def _int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise PreconditionError(f"{what} must be a comma-separated list of integers, got {text!r}")


@app.callback()
def main(
    log_level: Annotated[Optional[str], typer.Option("--log-level", help="DEBUG, INFO, WARNING or ERROR.")] = None,
) -> None:
    if log_level:
        set_level(log_level)


@app.command()
def residue(
    p: Annotated[int, typer.Option("--p", help="Odd prime modulus.")],
    r: Annotated[int, typer.Option("--r", help="Number of colors; must divide p-1.")],
    output: OutputOpt = None,
) -> None:
    """Emit the r-th power residue coloring of Z_p (0 is the wildcard)."""
    with _domain_errors():
        coloring = residue_coloring(p, r)
        comment = f"r-th power residue classes mod {p}, r={r}, generator {primitive_root(p)}"
        _write_text(format_coloring(coloring, comment), output)


@app.command()
def verify(
    input_path: InputOpt = None,
    k: KOpt = None,
    pattern: PatternOpt = None,
    fast: Annotated[bool, typer.Option("--fast/--brute", help="Normalized scan (coset colorings) or brute force.")] = False,
    jobs: JobsOpt = DEFAULT_JOBS,
    json_output: JsonOpt = False,
) -> None:
    """Check that a Z_m coloring has no nontrivial monochromatic instance."""
    with _domain_errors():
        cfg = CommandConfig(command="verify", k=k, pattern=pattern, input=input_path, jobs=jobs,
                            json_output=json_output, fast=fast)
        coloring = _load_coloring(cfg.input)
        pat = cfg.resolve_pattern()
        verdict = fast_verdict(coloring, pat) if cfg.fast else verify_zm(coloring, pat, jobs=cfg.jobs)

    if cfg.json_output:
        emit_json(verdict.model_dump(mode="json"))
    else:
        typer.echo(verdict.describe())
    if not verdict.passed:
        raise typer.Exit(1)


@app.command()
def search(
    r: Annotated[int, typer.Option("--r", help="Number of colors.")],
    bound: Annotated[int, typer.Option("--bound", help="Largest prime to try.")],
    k: KOpt = None,
    pattern: PatternOpt = None,
    jobs: JobsOpt = DEFAULT_JOBS,
    json_output: JsonOpt = False,
) -> None:
    """Sweep primes q <= bound with r | q-1 for avoiding coset colorings."""
    with _domain_errors():
        cfg = CommandConfig(command="search", k=k, pattern=pattern, r=r, bound=bound, jobs=jobs,
                            json_output=json_output)
        pat = cfg.resolve_pattern()
        report = search_primes(r, pat, bound, jobs=cfg.jobs)

    if cfg.json_output:
        emit_json(search_payload(report))
        return
    percents = {m: percent_text(percent_vs_random(m, r, pat)) for m in report.passing}
    print_search(report, percents)


@app.command(name="enumerate")
def enumerate_command(
    m: Annotated[int, typer.Option("--m", help="Modulus.")],
    r: Annotated[int, typer.Option("--r", help="Number of colors.")],
    k: KOpt = None,
    pattern: PatternOpt = None,
    wildcard_zero: Annotated[bool, typer.Option("--wildcard-zero", help="Leave cell 0 as the wildcard.")] = False,
    budget: Annotated[int, typer.Option("--budget", help="Refuse when r^(m-1) exceeds this.")] = ENUMERATION_BUDGET,
    json_output: JsonOpt = False,
) -> None:
    """All avoiding colorings of Z_m, one per color-permutation class."""
    with _domain_errors():
        cfg = CommandConfig(command="enumerate", k=k, pattern=pattern, r=r, json_output=json_output)
        pat = cfg.resolve_pattern()
        found = search_zm_exhaustive(m, r, pat, wildcard_zero=wildcard_zero, budget=budget)

    if cfg.json_output:
        emit_json({
            "m": m,
            "r": r,
            "pattern": list(pat.offsets),
            "wildcard_zero": wildcard_zero,
            "classes": [list(c.cells) for c in found],
        })
        return
    typer.echo(f"# {len(found)} classes")
    for i, coloring in enumerate(found, start=1):
        typer.echo(format_coloring(coloring, f"class {i}"), nl=False)


@app.command(name="tensor")
def tensor_command(
    first: Annotated[Path, typer.Option("--first", help="Coloring of Z_m1, wildcard at 0.")],
    second: Annotated[Path, typer.Option("--second", help="Coloring of Z_m2, wildcard at 0.")],
    k: KOpt = None,
    pattern: PatternOpt = None,
    output: OutputOpt = None,
) -> None:
    """Combine two colorings into a coloring of Z_{m1*m2} with r1*r2 colors."""
    with _domain_errors():
        cfg = CommandConfig(command="tensor", k=k, pattern=pattern, output=output)
        a, b = read_coloring(first), read_coloring(second)
        product = tensor(a, b, cfg.resolve_pattern())
        comment = f"product of Z_{a.modulus} ({a.color_count} colors) and Z_{b.modulus} ({b.color_count} colors)"
        _write_text(format_coloring(product, comment), cfg.output)


def _line_coloring(base: ZmColoring, mode: LineMode) -> PeriodicColoring | UnrolledColoring:
    if mode == LineMode.PERIODIC:
        return PeriodicColoring(base=base)
    return UnrolledColoring(base=base)


@app.command()
def unroll(
    n: Annotated[int, typer.Option("--n", help="Length of the colored line.")],
    input_path: InputOpt = None,
    mode: Annotated[LineMode, typer.Option("--mode")] = LineMode.UNROLLED,
    output: OutputOpt = None,
) -> None:
    """Dump the colors of 1..n under the unrolled or periodic rule."""
    with _domain_errors():
        cfg = CommandConfig(command="unroll", input=input_path, output=output, n=(n,))
        line = _line_coloring(_load_coloring(cfg.input), mode)
        if n < 1:
            raise PreconditionError(f"n must be >= 1, got {n}")
        _write_text(format_line_dump(line.materialize(n), line.color_count), cfg.output)


@app.command()
def count(
    input_path: InputOpt = None,
    n: Annotated[Optional[list[int]], typer.Option("--n", help="Line length; repeat for several.")] = None,
    mode: Annotated[LineMode, typer.Option("--mode")] = LineMode.UNROLLED,
    cyclic: Annotated[bool, typer.Option("--cyclic", help="Count in Z_m itself instead of [n].")] = False,
    k: KOpt = None,
    pattern: PatternOpt = None,
    jobs: JobsOpt = DEFAULT_JOBS,
    timing: TimingOpt = False,
    json_output: JsonOpt = False,
) -> None:
    """Exact number of monochromatic instances."""
    with _domain_errors():
        cfg = CommandConfig(command="count", k=k, pattern=pattern, input=input_path, n=tuple(n or ()),
                            jobs=jobs, json_output=json_output)
        pat = cfg.resolve_pattern()
        base = _load_coloring(cfg.input)
        if cyclic:
            total = count_cyclic(base, pat, jobs=cfg.jobs)
        else:
            if not cfg.n:
                raise PreconditionError("count needs --n (or --cyclic)")
            results = empirical_coefficient(_line_coloring(base, mode), pat, sorted(set(cfg.n)), jobs=cfg.jobs)

    if cyclic:
        if cfg.json_output:
            emit_json({"m": base.modulus, "pattern": list(pat.offsets), "cyclic_count": total})
        else:
            typer.echo(f"m={base.modulus} cyclic count={total}")
        return
    if cfg.json_output:
        emit_json({"mode": mode.value, "results": [res.to_output(timing) for res in results]})
        return
    for res in results:
        typer.echo(count_line_text(res, timing))


@app.command()
def coeff(
    mode: Annotated[CoefficientMode, typer.Option("--mode")],
    input_path: InputOpt = None,
    r: Annotated[Optional[int], typer.Option("--r", help="Colors (random, percent).")] = None,
    m: Annotated[Optional[int], typer.Option("--m", help="Modulus (percent without a file).")] = None,
    k: KOpt = None,
    pattern: PatternOpt = None,
    jobs: JobsOpt = DEFAULT_JOBS,
    json_output: JsonOpt = False,
) -> None:
    """Exact leading coefficient of the monochromatic count, or its ratio to random."""
    with _domain_errors():
        cfg = CommandConfig(command="coeff", k=k, pattern=pattern, input=input_path, r=r, jobs=jobs,
                            json_output=json_output)
        pat = cfg.resolve_pattern()
        if mode == CoefficientMode.PERIODIC:
            value = periodic_coefficient(_load_coloring(cfg.input), pat, jobs=cfg.jobs)
        elif mode == CoefficientMode.UNROLLED:
            value = unrolled_coefficient(_load_coloring(cfg.input), pat)
        elif mode == CoefficientMode.RANDOM:
            if r is None:
                raise PreconditionError("random coefficient needs --r")
            value = random_coefficient(r, pat)
        else:
            if m is None or r is None:
                base = _load_coloring(cfg.input)
                m, r = base.modulus, base.color_count
            value = percent_vs_random(m, r, pat)

    if cfg.json_output:
        payload = {"mode": mode.value, "pattern": list(pat.offsets), **fraction_payload(value)}
        if mode == CoefficientMode.PERCENT:
            payload["percent"] = percent_text(value)
        emit_json(payload)
    elif mode == CoefficientMode.PERCENT:
        typer.echo(f"{value} {percent_text(value)}%")
    else:
        typer.echo(str(value))


@app.command()
def blocks(
    n: Annotated[int, typer.Option("--n", help="Length of the colored line.")],
    sizes: Annotated[str, typer.Option("--sizes", help="Relative block sizes.")] = ",".join(map(str, BLOCK_SIZES_3AP)),
    colors: Annotated[Optional[str], typer.Option("--colors", help="Color per block (alternating 0,1 by default).")] = None,
    do_count: Annotated[bool, typer.Option("--count", help="Count monochromatic instances in [n].")] = False,
    dump: Annotated[bool, typer.Option("--dump", help="Print the line dump.")] = False,
    k: KOpt = None,
    pattern: PatternOpt = None,
    jobs: JobsOpt = DEFAULT_JOBS,
    timing: TimingOpt = False,
    json_output: JsonOpt = False,
) -> None:
    """Block coloring of [n] with relative sizes."""
    with _domain_errors():
        cfg = CommandConfig(command="blocks", k=k, pattern=pattern, n=(n,), jobs=jobs, json_output=json_output)
        size_list = _int_list(sizes, "--sizes")
        color_list = _int_list(colors, "--colors") if colors else tuple(i % 2 for i in range(len(size_list)))
        line = blocks_coloring(size_list, color_list, n)
        result = None
        if do_count:
            if not cfg.has_pattern:
                raise PreconditionError("--count needs one of --k / --pattern")
            result = count_line(line, n, cfg.resolve_pattern(), jobs=cfg.jobs)

    if dump:
        typer.echo(format_line_dump(line.materialize(n), line.color_count), nl=False)
        return
    if cfg.json_output:
        payload = {"n": n, "sizes": list(line.sizes), "colors": list(line.colors), "widths": list(line.widths)}
        if result is not None:
            payload["count"] = result.to_output(timing)
        emit_json(payload)
        return
    typer.echo("widths " + " ".join(str(w) for w in line.widths))
    if result is not None:
        typer.echo(count_line_text(result, timing))


@app.command()
def table(
    limit: Annotated[int, typer.Option("--limit", help="Largest modulus to check.")] = TABLE_DEFAULT_LIMIT,
    brute: Annotated[bool, typer.Option("--brute", help="Also brute-force moduli within the confirmation limit.")] = False,
    json_output: JsonOpt = False,
) -> None:
    """Re-verify the table of best-known moduli."""
    with _domain_errors():
        report = table_check(limit, brute=brute)

    if json_output:
        emit_json(table_payload(report))
    else:
        print_table(report)
    if report.failures:
        raise typer.Exit(1)


@app.command()
def average(
    n: Annotated[int, typer.Option("--n", help="Length of the line.")],
    r: Annotated[int, typer.Option("--r", help="Number of colors.")],
    k: KOpt = None,
    pattern: PatternOpt = None,
    exhaustive: Annotated[bool, typer.Option("--exhaustive", help="Also average over every explicit coloring.")] = False,
    json_output: JsonOpt = False,
) -> None:
    """Mean monochromatic count over all r-colorings of [n]."""
    with _domain_errors():
        cfg = CommandConfig(command="average", k=k, pattern=pattern, r=r, n=(n,), json_output=json_output)
        pat = cfg.resolve_pattern()
        value = average_over_colorings(n, r, pat)
        brute = exhaustive_average(n, r, pat) if exhaustive else None

    if cfg.json_output:
        payload = {"n": n, "r": r, "pattern": list(pat.offsets), **fraction_payload(value)}
        if brute is not None:
            payload["exhaustive"] = fraction_payload(brute)
            payload["agree"] = brute == value
        emit_json(payload)
        return
    typer.echo(str(value))
    if brute is not None:
        typer.echo(f"exhaustive {brute} ({'agrees' if brute == value else 'DISAGREES'})")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI on `argv` and return its exit code."""
    try:
        result = app(args=None if argv is None else list(argv), standalone_mode=False, prog_name="apunroll")
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        typer.echo("aborted", err=True)
        return 2
    return result if isinstance(result, int) else 0
