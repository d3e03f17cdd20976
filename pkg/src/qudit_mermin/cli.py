"""Command-line interface: verification runs with human, JSON, or CSV output.

Exit codes: 0 all checks pass, 1 a verification mismatch, 2 usage error.
JSON and CSV payloads are deterministic: identical invocations produce
byte-identical output for any worker count (timing and worker counts are
diagnostic-only and go to stderr in human mode).
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time

import click

from . import __version__
from .generalized import (
    GeneralConfig,
    build_general_mermin,
    conjecture_search,
    general_uniform_value,
    uniform_factors,
    verify_general_eigenvalue,
)
from .hidden_variables import (
    SYMBOLS,
    exhaustive_search,
    factor_table,
    ghz_contradiction_count,
    iter_contradiction_witnesses,
    max_equals_uniform,
    uniform_value,
    violation_ratio,
)
from .mermin import build_mermin, counts_by_position, expand_identity, verify_eigenvalue

TWO_SETTING_ASYMPTOTE = 1.064
THREE_SETTING_ASYMPTOTE = 1.185

TABLE1_CAP = 12
VERIFY_CAP = 12
IDENTITY_CAP = 6
RATIO_CAP_N = 9
FULL_CAP_N = 5
WITNESS_CAP = 8
SCALING_CAP = 40


def _round6(value: float) -> float:
    return float(f"{value:.6g}")


def _clean(obj):
    if isinstance(obj, float):
        return _round6(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _payload(command: str, parameters: dict, results: dict) -> dict:
    return {
        "command": command,
        "version": __version__,
        "parameters": _clean(parameters),
        "results": _clean(results),
    }


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [f"{v:.6g}" if isinstance(v, float) else v for v in (row[k] for k in header)]
            )
    return buf.getvalue()


def _emit(fmt: str, out: str | None, payload: dict, rows: list[dict], human: str) -> None:
    if fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        text = _csv_text([_clean(r) for r in rows])
    else:
        text = human if human.endswith("\n") else human + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
        click.echo(f"wrote {out}", err=True)
    else:
        click.echo(text, nl=False)


def _finish(fmt, out, payload, rows, human, ok, mismatch_note, started):
    if fmt == "human":
        human += f"\nelapsed: {time.perf_counter() - started:.3f} s"
    _emit(fmt, out, payload, rows, human)
    if not ok:
        click.echo(f"verification mismatch: {mismatch_note}", err=True)
        sys.exit(1)


_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["human", "json", "csv"]),
    default="human",
    show_default=True,
    help="Output format.",
)
_out_option = click.option(
    "--out", type=click.Path(dir_okay=False, writable=True), default=None,
    help="Write the payload to this file instead of stdout.",
)
_workers_option = click.option(
    "--workers", type=int, default=None,
    help="Worker processes (default: QUDIT_MERMIN_WORKERS, else CPU count).",
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(version=__version__, prog_name="qudit-mermin")
def cli() -> None:
    """Exact verification of many-qutrit Mermin operators.

    Quantum eigenvalues, classical (hidden-variable) maxima, GHZ
    contradiction counts, and the odd-d generalization, all with exact
    cyclotomic arithmetic.
    """


@cli.command("table1")
@click.option("--n-min", type=int, default=3, show_default=True)
@click.option("--n-max", type=int, default=7, show_default=True)
@_format_option
@_out_option
def cmd_table1(n_min: int, n_max: int, fmt: str, out: str | None) -> None:
    """Quantum vs classical values and contradiction counts per N."""
    started = time.perf_counter()
    if not 1 <= n_min <= n_max <= TABLE1_CAP:
        raise click.UsageError(f"need 1 <= n-min <= n-max <= {TABLE1_CAP}")
    rows = []
    ok = True
    note = ""
    for n in range(n_min, n_max + 1):
        m_q = 3 ** (n - 1)
        m_c = uniform_value(n)
        counts = counts_by_position(3, n).counts
        if counts[0] - counts[3] != m_c:
            ok = False
            note = f"counts route disagrees with recurrence at N={n}"
        rows.append(
            {
                "N": n,
                "M_Q": m_q,
                "M_C": m_c,
                "ratio": m_q / m_c,
                "N_GHZ": ghz_contradiction_count(n),
            }
        )
    payload = _payload("table1", {"n_min": n_min, "n_max": n_max}, {"rows": rows})
    lines = [f"{'N':>3} {'M_Q':>8} {'M_C':>8} {'R':>6} {'N_GHZ':>7}"]
    for r in rows:
        lines.append(
            f"{r['N']:>3} {r['M_Q']:>8} {r['M_C']:>8} {r['ratio']:>6.3g} {r['N_GHZ']:>7}"
        )
    _finish(fmt, out, payload, rows, "\n".join(lines), ok, note, started)


@cli.command("table2")
@_format_option
@_out_option
def cmd_table2(fmt: str, out: str | None) -> None:
    """Per-site factor magnitudes and phases for all nine ratio choices."""
    started = time.perf_counter()
    expected_phases = {0.0, 20.0, -20.0, 40.0, -40.0, 80.0, -80.0, 180.0}
    rows = []
    ok = True
    note = ""
    for row in factor_table():
        letters = sorted(e.letter for e in row.entries)
        if letters != ["A", "B", "C"]:
            ok, note = False, f"factor multiset broken at ratios ({row.r_exp},{row.s_exp})"
        for e in row.entries:
            if min(abs(e.phase_deg - p) for p in expected_phases) > 1e-9:
                ok, note = False, f"unexpected phase {e.phase_deg}"
        rows.append(
            {
                "R": SYMBOLS[row.r_exp],
                "S": SYMBOLS[row.s_exp],
                "A": row.entries[0].text,
                "A_phase_deg": row.entries[0].phase_deg,
                "A_magnitude": row.entries[0].magnitude,
                "B": row.entries[1].text,
                "B_phase_deg": row.entries[1].phase_deg,
                "B_magnitude": row.entries[1].magnitude,
                "C": row.entries[2].text,
                "C_phase_deg": row.entries[2].phase_deg,
                "C_magnitude": row.entries[2].magnitude,
            }
        )
    payload = _payload("table2", {}, {"rows": rows})
    lines = [f"{'R':>4} {'S':>4} {'A':>8} {'B':>8} {'C':>8}"]
    for r in rows:
        lines.append(f"{r['R']:>4} {r['S']:>4} {r['A']:>8} {r['B']:>8} {r['C']:>8}")
    lines.append("phases in degrees; A=2.53209, B=1.34730, C=0.879385")
    _finish(fmt, out, payload, rows, "\n".join(lines), ok, note, started)


@cli.command("verify")
@click.option("--n", type=int, required=True, help="Number of particles.")
@click.option("--variant", type=int, default=0, show_default=True)
@click.option("--d", type=int, default=3, show_default=True)
@_format_option
@_out_option
def cmd_verify(n: int, variant: int, d: int, fmt: str, out: str | None) -> None:
    """Check the exact operator eigenvalue d**(N-1) on its GHZ state."""
    started = time.perf_counter()
    if d == 3:
        if not 1 <= n <= VERIFY_CAP:
            raise click.UsageError(f"need 1 <= n <= {VERIFY_CAP} for d=3")
        if variant not in (0, 1, 2):
            raise click.UsageError("variant must be 0, 1, or 2")
        eigenvalue = verify_eigenvalue(build_mermin(3, n, variant))
    else:
        if variant != 0:
            raise click.UsageError("variants other than 0 are defined for d=3 only")
        try:
            cfg = GeneralConfig(d, n)
            eigenvalue = verify_general_eigenvalue(cfg)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    expected = d ** (n - 1)
    ok = eigenvalue == expected
    results = {
        "d": d,
        "n": n,
        "variant": variant,
        "eigenvalue": eigenvalue,
        "expected": expected,
        "match": ok,
    }
    payload = _payload("verify", {"n": n, "variant": variant, "d": d}, results)
    human = (
        f"eigenvalue {eigenvalue} = {d}^{n - 1}, "
        f"{'PASS' if ok else 'FAIL'} (variant {variant}, d={d})"
    )
    rows = [results]
    _finish(fmt, out, payload, rows, human, ok, f"eigenvalue {eigenvalue} != {expected}", started)


@cli.command("identity")
@click.option("--n", type=int, required=True)
@_format_option
@_out_option
def cmd_identity(n: int, fmt: str, out: str | None) -> None:
    """Term-for-term check of the product-form expansion of the operator."""
    started = time.perf_counter()
    if not 1 <= n <= IDENTITY_CAP:
        raise click.UsageError(f"need 1 <= n <= {IDENTITY_CAP}")
    report = expand_identity(n)
    results = {
        "n": n,
        "n_words": report.n_words,
        "n_surviving": report.n_surviving,
        "n_vanishing": report.n_vanishing,
        "matches": report.matches,
    }
    payload = _payload("identity", {"n": n}, results)
    human = (
        f"{report.n_words} words: {report.n_surviving} surviving, "
        f"{report.n_vanishing} vanishing, "
        f"{'PASS' if report.matches else 'FAIL'}"
    )
    _finish(fmt, out, payload, [results], human, report.matches,
            "; ".join(report.mismatches[:3]), started)


@cli.command("search")
@click.option("--n", type=int, required=True)
@click.option(
    "--mode", type=click.Choice(["ratio", "full"]), default="ratio", show_default=True
)
@_workers_option
@_format_option
@_out_option
def cmd_search(n: int, mode: str, workers: int | None, fmt: str, out: str | None) -> None:
    """Exhaustive hidden-variable search for the classical maximum."""
    started = time.perf_counter()
    cap = RATIO_CAP_N if mode == "ratio" else FULL_CAP_N
    if not 1 <= n <= cap:
        raise click.UsageError(f"need 1 <= n <= {cap} in {mode} mode")
    result = exhaustive_search(n, mode=mode, workers=workers)
    uniform = uniform_value(n)
    equals_uniform = max_equals_uniform(result)
    ok = equals_uniform or n < 3
    if mode == "full":
        dev = result.details["ratio_agreement_max_abs_dev"]
        ok = ok and dev <= 1e-9
    results = {
        "n": n,
        "mode": mode,
        "max_magnitude": result.max_magnitude,
        "uniform_value": uniform,
        "max_equals_uniform": equals_uniform,
        "num_maximizers": result.num_maximizers,
        "assignments_scanned": result.assignments_scanned,
        "argmax_index": result.argmax_index,
        "max_sq_coeffs": list(result.max_sq_coeffs),
    }
    if mode == "ratio":
        results["argmax_ratios"] = [list(p) for p in result.argmax.ratio_symbols()]
        results["argmax_factor_letters"] = {
            k: list(v) for k, v in result.argmax_factor_labels.items()
        }
    else:
        results["argmax_values"] = [list(t) for t in result.argmax.value_symbols()]
        results["ratio_agreement_max_abs_dev"] = result.details[
            "ratio_agreement_max_abs_dev"
        ]
    payload = _payload("search", {"n": n, "mode": mode}, results)
    human = (
        f"max |v| = {result.max_magnitude:.6g} over {result.assignments_scanned} "
        f"{mode} assignments; uniform value {uniform} "
        f"({'attained' if equals_uniform else 'NOT attained'}); "
        f"{result.num_maximizers} maximizers"
    )
    click.echo(f"workers: {workers if workers else 'auto'}", err=True)
    _finish(fmt, out, payload, [results], human, ok,
            f"search max {result.max_magnitude} vs uniform {uniform}", started)


@cli.command("witness")
@click.option("--n", type=int, required=True)
@click.option("--limit", type=int, default=20, show_default=True,
              help="Rows shown in human output (JSON/CSV always carry all rows).")
@_format_option
@_out_option
def cmd_witness(n: int, limit: int, fmt: str, out: str | None) -> None:
    """List GHZ contradictions: quantum eigenphase vs uniform prediction."""
    started = time.perf_counter()
    if not 1 <= n <= WITNESS_CAP:
        raise click.UsageError(f"need 1 <= n <= {WITNESS_CAP}")
    witnesses = list(iter_contradiction_witnesses(n))
    expected = ghz_contradiction_count(n)
    ok = len(witnesses) == expected and all(w.contradicts for w in witnesses)
    rows = [
        {
            "word": str(w.word),
            "position": w.position,
            "quantum": f"w^{w.quantum_omega_exponent}",
            "hv_prediction": w.hv_value,
            "contradicts": w.contradicts,
        }
        for w in witnesses
    ]
    results = {
        "n": n,
        "count": len(witnesses),
        "expected_count": expected,
        "all_contradict": all(w.contradicts for w in witnesses),
        "rows": rows,
    }
    payload = _payload("witness", {"n": n}, results)
    lines = [f"{len(witnesses)} contradictions (expected {expected})"]
    for row in rows[: max(0, limit)]:
        lines.append(
            f"  {row['word']} at k={row['position']}: quantum {row['quantum']}, "
            f"uniform prediction {row['hv_prediction']} -> contradiction"
        )
    if len(rows) > limit:
        lines.append(f"  ... and {len(rows) - limit} more")
    _finish(fmt, out, payload, rows, "\n".join(lines), ok,
            f"{len(witnesses)} witnesses vs expected {expected}", started)


@cli.command("general")
@click.option("--d", type=int, default=5, show_default=True)
@click.option("--n", type=int, required=True)
@click.option("--conjecture", is_flag=True, help="Run the ratio-space scan too.")
@_workers_option
@_format_option
@_out_option
def cmd_general(d: int, n: int, conjecture: bool, workers: int | None,
                fmt: str, out: str | None) -> None:
    """Eigenvalue and uniform factors for odd local dimension d."""
    started = time.perf_counter()
    try:
        cfg = GeneralConfig(d, n)
        eigenvalue = verify_general_eigenvalue(cfg)
        term_count = build_general_mermin(cfg).term_count
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    expected = d ** (n - 1)
    ok = eigenvalue == expected and term_count == expected
    factors = uniform_factors(d)
    results = {
        "d": d,
        "n": n,
        "eigenvalue": eigenvalue,
        "expected": expected,
        "term_count": term_count,
        "match": ok,
        "uniform_factor_magnitudes": list(factors.magnitudes()),
        "largest_factor": factors.largest,
        "uniform_value": general_uniform_value(d, n),
    }
    note = f"eigenvalue {eigenvalue} or term count {term_count} != {expected}"
    if conjecture:
        try:
            report = conjecture_search(d, n, workers=workers)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
        results["conjecture"] = {
            "max_magnitude": report.max_magnitude,
            "uniform_magnitude": report.uniform_magnitude,
            "uniform_is_max": report.uniform_is_max,
            "gap": report.gap,
            "num_maximizers": report.num_maximizers,
            "assignments_scanned": report.assignments_scanned,
        }
        if report.max_magnitude < report.uniform_magnitude - 1e-9:
            ok, note = False, "scan maximum fell below the uniform value"
    payload = _payload(
        "general", {"d": d, "n": n, "conjecture": conjecture}, results
    )
    lines = [
        f"d={d}, N={n}: eigenvalue {eigenvalue} = {d}^{n - 1}, "
        f"{term_count} terms, {'PASS' if ok else 'FAIL'}",
        "uniform factors: "
        + ", ".join(f"{m:.5g}" for m in factors.magnitudes()),
        f"uniform |v| = {results['uniform_value']:.6g}",
    ]
    if conjecture:
        c = results["conjecture"]
        verdict = "uniform point attains the maximum" if c["uniform_is_max"] else (
            f"uniform point is below the maximum by {c['gap']:.6g}"
        )
        lines.append(
            f"conjecture scan: max |v| = {c['max_magnitude']:.6g} over "
            f"{c['assignments_scanned']} assignments; {verdict}"
        )
    _finish(fmt, out, payload, [results], "\n".join(lines), ok, note, started)


@cli.command("scaling")
@click.option("--n-max", type=int, default=12, show_default=True)
@_format_option
@_out_option
def cmd_scaling(n_max: int, fmt: str, out: str | None) -> None:
    """Plot-ready growth data, with the two-setting reference columns."""
    started = time.perf_counter()
    if not 1 <= n_max <= SCALING_CAP:
        raise click.UsageError(f"need 1 <= n-max <= {SCALING_CAP}")
    rows = []
    for n in range(1, n_max + 1):
        m_q = 3 ** (n - 1)
        m_c = uniform_value(n)
        two_setting_mq = 2**n / 3.0  # prior two-setting qutrit result
        rows.append(
            {
                "N": n,
                "M_Q": m_q,
                "M_C": m_c,
                "ratio": violation_ratio(n),
                "two_setting_M_Q": two_setting_mq,
                "ratio_prior": m_q / two_setting_mq,
                "asymptote_three_setting": THREE_SETTING_ASYMPTOTE**n,
                "asymptote_two_setting": TWO_SETTING_ASYMPTOTE**n,
            }
        )
    payload = _payload("scaling", {"n_max": n_max}, {"rows": rows})
    lines = [
        f"{'N':>3} {'M_Q':>10} {'M_C':>10} {'ratio':>9} {'2-setting M_Q':>14} {'ratio_prior':>12}"
    ]
    for r in rows:
        lines.append(
            f"{r['N']:>3} {r['M_Q']:>10} {r['M_C']:>10} {r['ratio']:>9.4g} "
            f"{r['two_setting_M_Q']:>14.6g} {r['ratio_prior']:>12.6g}"
        )
    lines.append(
        f"asymptotes: {THREE_SETTING_ASYMPTOTE}^N (three settings) vs "
        f"{TWO_SETTING_ASYMPTOTE}^N (two settings)"
    )
    _finish(fmt, out, payload, rows, "\n".join(lines), True, "", started)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
