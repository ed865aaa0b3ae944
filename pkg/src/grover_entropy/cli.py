"""Command-line front end.

Every command writes CSV (``--out`` file, or standard output when omitted)
and a short summary on standard output.  Exit status: 0 success,
1 an inequality or cross-check failed, 2 usage/config error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import analytic, bounds, dense, flow

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

CURVE_HEADER = ["t", "lambda1", "lambda2", "entropy_bits", "sup_norm", "success_prob"]
DRIFT_HEADER = ["t", "branch", "lambda", "dlambda_dt"]
SIMULATE_HEADER = ["k", "success_prob", "p_e", "sup_norm", "entropy_bits", "mutual_info_bits"]
BOUNDS_HEADER = [
    "K",
    "p_e",
    "sup_norm",
    "entropy_bits",
    "mutual_info_bits",
    "k_lower_paper_form",
    "k_lower_derived_form",
    "grover_K",
    "holevo_slack",
    "fano_slack",
    "entropy_cap_slack",
    "supbound_slack",
    "relaxation_slack",
    "query_slack",
]

VERIFY_TOL = 1e-8


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int
    k: int | None = None
    t_max: float | None = None
    dt: float = 1.0
    seed: int = 0
    output_path: str | None = None
    grid: int = 64
    engine: str = "analytic"
    pe: float | None = None
    x: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise UsageError("--n must be >= 2")
        if self.k is not None and self.k < 0:
            raise UsageError("--k must be >= 0")
        if self.t_max is not None and self.t_max < 0:
            raise UsageError("--t-max must be >= 0")
        if not self.dt > 0:
            raise UsageError("--dt must be > 0")
        if self.grid < 2:
            raise UsageError("--grid must be >= 2")
        if self.pe is not None and not 0.0 <= self.pe <= 1.0:
            raise UsageError("--pe must lie in [0, 1]")


def fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def _dense_n(cfg: RunConfig) -> int:
    try:
        return dense.check_desk_scale(cfg.n)
    except dense.DeskScaleError as exc:
        raise UsageError(str(exc)) from exc


# -- commands ----------------------------------------------------------------


def dense_curve_rows(n: int, k_max: int):
    s = dense.uniform_superposition(n)
    for k, psi in enumerate(dense.grover_ensemble(n, k_max)):
        rho = dense.mix_columns(psi)
        lam, vecs = np.linalg.eigh(rho)
        # the simple eigenvalue is the one whose eigenvector overlaps |s>
        i1 = int(np.argmax(np.abs(vecs.T @ s)))
        lam1 = float(lam[i1])
        lam2 = float(np.mean(np.delete(lam, i1)))
        spec = dense.spectrum_of(rho)
        ch = dense.channel_from_columns(psi)
        yield [
            k,
            lam1,
            lam2,
            dense.von_neumann_entropy(spec),
            spec.sup_norm,
            1.0 - dense.error_probability(ch),
        ]


def cmd_curve(cfg: RunConfig) -> int:
    t_max = cfg.t_max if cfg.t_max is not None else 2.0 * analytic.period(cfg.n)
    if cfg.engine == "dense":
        n = _dense_n(cfg)
        if cfg.dt != 1.0:
            raise UsageError("the dense engine samples integer steps only; use --dt 1")
        rows = list(dense_curve_rows(n, math.floor(t_max + 1e-9)))
    else:
        if t_max <= 0:
            rows = [_point_row(analytic.closed_form_point(cfg.n, 0.0))]
        else:
            rows = [_point_row(p) for p in analytic.entropy_curve(cfg.n, t_max, cfg.dt)]
    emit(render_csv(CURVE_HEADER, rows), cfg.output_path)
    if cfg.output_path:
        print(
            f"curve n={cfg.n} engine={cfg.engine} samples={len(rows)} "
            f"period={analytic.period(cfg.n):.6f} max_entropy={max(r[3] for r in rows):.6f}"
        )
    return EXIT_OK


def _point_row(p: analytic.ClosedFormPoint):
    return [p.t, p.lambda1, p.lambda2, p.entropy_bits, p.sup_norm, p.success_prob]


def cmd_analytic(cfg: RunConfig) -> int:
    t = float(cfg.k if cfg.k is not None else analytic.optimal_iterations(cfg.n))
    p = analytic.closed_form_point(cfg.n, t)
    emit(render_csv(CURVE_HEADER, [_point_row(p)]), cfg.output_path)
    print(
        f"n={cfg.n} theta={fmt(analytic.grover_angle(cfg.n))} period={fmt(analytic.period(cfg.n))} "
        f"optimal_K={analytic.optimal_iterations(cfg.n)}",
        file=sys.stderr if cfg.output_path is None else sys.stdout,
    )
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    n = _dense_n(cfg)
    if not 0 <= cfg.x < n:
        raise UsageError(f"--x must lie in [0, {n})")
    k = cfg.k if cfg.k is not None else analytic.optimal_iterations(n)
    states = dense.run_schedule(n, cfg.x, k)
    rows = []
    for step, (state, psi) in enumerate(zip(states, dense.grover_ensemble(n, k))):
        spec = dense.spectrum_of(dense.mix_columns(psi))
        ch = dense.channel_from_columns(psi)
        rows.append(
            [
                step,
                state.success_probability,
                dense.error_probability(ch),
                spec.sup_norm,
                dense.von_neumann_entropy(spec),
                dense.mutual_information(ch),
            ]
        )
    emit(render_csv(SIMULATE_HEADER, rows), cfg.output_path)
    return EXIT_OK


def verify_deviation(n: int) -> float:
    """Largest gap between dense and closed-form spectra/entropies over one period."""
    k_max = math.ceil(analytic.period(n))
    worst = 0.0
    for k, psi in enumerate(dense.grover_ensemble(n, k_max)):
        spec = dense.spectrum_of(dense.mix_columns(psi))
        gram = dense.gram_spectrum(psi)
        expected = np.array(analytic.closed_form_spectrum(n, k))
        point = analytic.closed_form_point(n, k)
        worst = max(
            worst,
            float(np.max(np.abs(spec.eigenvalues - expected))),
            float(np.max(np.abs(gram.eigenvalues - spec.eigenvalues))),
            abs(dense.von_neumann_entropy(spec) - point.entropy_bits),
        )
    return worst


def operator_deviation(n: int, seed: int, count: int = 100) -> float:
    """Worst norm/involution defect of the Grover operators on random states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        st = dense.ConditionalState(v / np.linalg.norm(v), int(rng.integers(n)))
        for op in (dense.oracle_reflect, dense.inversion_about_mean):
            once = op(st)
            worst = max(
                worst,
                abs(np.linalg.norm(once.amplitudes) - 1.0),
                float(np.max(np.abs(op(once).amplitudes - st.amplitudes))),
            )
        worst = max(worst, abs(np.linalg.norm(dense.grover_iterate(st).amplitudes) - 1.0))
    return worst


def cmd_verify(cfg: RunConfig) -> int:
    n = _dense_n(cfg)
    dev = verify_deviation(n)
    op_dev = operator_deviation(n, cfg.seed)
    ok = dev <= VERIFY_TOL and op_dev <= 1e-12
    print(f"verify n={n} steps=0..{math.ceil(analytic.period(n))} max_deviation={dev:.3e} "
          f"operator_defect={op_dev:.3e} tol={VERIFY_TOL:.0e} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_drift(cfg: RunConfig) -> int:
    n = _dense_n(cfg)
    report = flow.drift_audit(n, cfg.k, grid=cfg.grid, strict=False)
    rows = []
    for sample in report.samples:
        for b, (lam, d) in enumerate(zip(sample.eigenvalues, sample.d_lambda_dt)):
            rows.append([sample.t, b, lam, d])
    emit(render_csv(DRIFT_HEADER, rows), cfg.output_path)
    out = sys.stdout if cfg.output_path else sys.stderr
    print(
        f"drift n={n} K={report.k_max} grid={report.grid} delta={report.delta_observed:.10g} "
        f"bound={report.bound:.10g} margin={report.margin:.10g} "
        f"max_abs_dlambda_dt={report.max_abs_derivative:.10g} "
        f"{'PASS' if report.passed else 'FAIL'}",
        file=out,
    )
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_bounds(cfg: RunConfig) -> int:
    grover_k = analytic.optimal_iterations(cfg.n)
    out = sys.stdout if cfg.output_path else sys.stderr
    if cfg.pe is not None:
        qb = bounds.query_lower_bound(cfg.pe, cfg.n)
        header = ["n", "p_e", "k_lower_paper_form", "k_lower_derived_form", "grover_K"]
        emit(render_csv(header, [[cfg.n, cfg.pe, qb.paper_form, qb.derived_form, grover_k]]),
             cfg.output_path)
        print(f"n={cfg.n} p_e={cfg.pe:g} paper_form={qb.paper_form:.4f} "
              f"derived_form={qb.derived_form:.4f} grover_K={grover_k}", file=out)
        return EXIT_OK
    if cfg.engine == "dense":
        _dense_n(cfg)
    k_max = cfg.k if cfg.k is not None else grover_k
    reports = bounds.sweep(cfg.n, k_max, engine=cfg.engine, strict=False)
    rows = [
        [
            r.K, r.p_e, r.sup_norm_final, r.entropy_final_bits, r.mutual_info_bits,
            r.k_lower_paper_form, r.k_lower_derived_form, grover_k,
            r.holevo_slack, r.fano_slack, r.entropy_cap_slack, r.supbound_slack,
            r.relaxation_slack, r.query_slack,
        ]
        for r in reports
    ]
    emit(render_csv(BOUNDS_HEADER, rows), cfg.output_path)
    failed = [(r.K, name, s) for r in reports for name, s in r.failures()]
    print(f"{'K':>5} {'p_e':>12} {'printed':>10} {'derived':>10} {'min_slack':>12}", file=out)
    for r in reports:
        min_slack = min(getattr(r, s) for s in bounds.BoundReport.SLACKS)
        print(f"{r.K:>5} {r.p_e:>12.6g} {r.k_lower_paper_form:>10.4f} "
              f"{r.k_lower_derived_form:>10.4f} {min_slack:>12.4g}", file=out)
    print(f"bounds n={cfg.n} engine={cfg.engine} grover_K={grover_k} "
          f"{'PASS' if not failed else 'FAIL ' + repr(failed[0])}", file=out)
    return EXIT_OK if not failed else EXIT_VIOLATION


COMMANDS = {
    "simulate": cmd_simulate,
    "analytic": cmd_analytic,
    "verify": cmd_verify,
    "drift": cmd_drift,
    "bounds": cmd_bounds,
    "curve": cmd_curve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grover-entropy",
        description="Entropy, eigenvalue-drift and query-bound audits for Grover search",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=COMMANDS[name].__name__.replace("cmd_", ""))
        p.add_argument("--n", type=int, required=True, help="number of search items")
        p.add_argument("--k", type=int, default=None, help="step count / sweep horizon")
        p.add_argument("--t-max", dest="t_max", type=float, default=None)
        p.add_argument("--dt", type=float, default=1.0)
        p.add_argument("--grid", type=int, default=64, help="tau samples per oracle call")
        p.add_argument("--engine", choices=("analytic", "dense"), default="analytic")
        p.add_argument("--out", dest="output_path", default=None)
        p.add_argument("--pe", type=float, default=None, help="evaluate the bound formulas only")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--x", type=int, default=0, help="target index for simulate")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(**vars(args))
        return COMMANDS[cfg.command](cfg)
    except (UsageError, dense.InvalidDimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
