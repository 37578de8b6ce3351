"""Command-line interface: simulate / fit / rank / verify / eta.

stdout carries data (CSV or JSON), stderr carries diagnostics.  Every error
path prints a single line ``ERROR <code>: <detail>`` to stderr and exits
with that code:

=====  ==========================================================
code   meaning
=====  ==========================================================
0      success
2      flag or input validation failed
3      wrong regime or resonant forcing
4      degenerate fitting stage (singular normal equations)
5      zero-variance feature column during ranking
6      verify found closed form and oracle in disagreement
=====  ==========================================================

Floats are printed with 12 significant digits so output files are stable
byte-for-byte across runs.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings
from typing import Sequence

from .core import (
    ControlConfig,
    DdeParams,
    EtaArticleBased,
    EtaTimeExponential,
    FeatureMatrix,
    RegimeTag,
    ThetaConstant,
    ThetaExponential,
    ThetaLinear,
    validate_series,
)
from .errors import (
    DegenerateSystem,
    MirrorDdeError,
    NegativeInfluenceWarning,
    ResonantForcing,
    SingularSystem,
    WrongRegime,
    ZeroVarianceColumn,
)
from .fitting import fit_pipeline
from .numerics import FdMode
from .ranking import rank_journals
from .solver import (
    base_solution,
    classify,
    control_solution,
    degenerate_solution,
    eta_article,
    initial_conditions_to_modes,
    oracle_solution,
    oscillatory_solution,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REGIME = 3
EXIT_DEGENERATE = 4
EXIT_ZERO_VARIANCE = 5
EXIT_VERIFY = 6

#: Verify accepts the closed form when it stays this close to the oracle.
VERIFY_TOL = 1e-6

#: Default ranking penalty weight.
DEFAULT_LAMBDA = 0.1


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports errors through the ERROR-line protocol."""

    def error(self, message):
        raise _CliError(EXIT_USAGE, message)


def fmt(x: float) -> str:
    """Render a float with 12 significant digits (no locale, no negative zero)."""
    return "%.12g" % (x + 0.0)


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"expected two comma-separated numbers, got {text!r}"
        )
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected two comma-separated numbers, got {text!r}"
        ) from None


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def build_parser() -> _Parser:
    parser = _Parser(prog="mirrordde",
                     description="Mirrored-time influence model toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sim = sub.add_parser("simulate", help="evaluate a model trajectory as CSV")
    sim.add_argument("--a", type=_finite, required=True,
                     help="weight of the mirrored sample p(-t)")
    sim.add_argument("--b", type=_finite, required=True,
                     help="weight of the present sample p(t)")
    sim.add_argument("--p0", type=_finite, required=True,
                     help="influence at t=0")
    sim.add_argument("--t-min", type=_finite, default=-5.0)
    sim.add_argument("--t-max", type=_finite, default=5.0)
    sim.add_argument("--steps", type=int, default=100,
                     help="number of grid intervals (rows = steps+1)")
    theta = sim.add_mutually_exclusive_group()
    theta.add_argument("--theta-const", type=_finite, metavar="VALUE",
                       help="constant self-development term")
    theta.add_argument("--theta-lin", type=_pair, metavar="SLOPE,INTERCEPT",
                       help="linear self-development term")
    theta.add_argument("--theta-exp", type=_finite, metavar="RATE",
                       help="exponential self-development term exp(RATE*t)")
    eta = sim.add_mutually_exclusive_group()
    eta.add_argument("--eta-exp", type=_pair, metavar="K,K1",
                     help="external pulse K*exp(K1*t)")
    eta.add_argument("--eta-article", type=_pair, metavar="ART,ALPHA",
                     help="article-share external term")
    sim.add_argument("--c1", type=_finite, default=None,
                     help="explicit growing-mode amplitude")
    sim.add_argument("--c2", type=_finite, default=None,
                     help="explicit decaying-mode amplitude")
    sim.add_argument("--allow-oscillatory", action="store_true",
                     help="evaluate the infeasible oscillatory branch instead "
                          "of failing")
    sim.add_argument("--out", default=None, help="output path (default stdout)")
    sim.set_defaults(func=cmd_simulate)

    fit = sub.add_parser("fit", help="recover model coefficients from a series")
    fit.add_argument("--input", required=True, help="CSV file with header t,p")
    fit.add_argument("--fd", choices=["central", "forward"], default="central",
                     help="finite-difference mode for the derivative estimates")
    fit.add_argument("--predict", type=_finite, default=None, metavar="T",
                     help="also evaluate the fitted model at time T")
    fit.set_defaults(func=cmd_fit)

    rank = sub.add_parser("rank", help="rank journals from a feature table")
    rank.add_argument("--input", required=True,
                      help="CSV file with header journal,<features...>")
    rank.add_argument("--response", default=None,
                      help="response feature (default: CiteScore if present, "
                           "else the first feature)")
    rank.add_argument("--lambda", dest="lam", type=_finite,
                      default=DEFAULT_LAMBDA, help="l1 penalty weight")
    rank.set_defaults(func=cmd_rank)

    verify = sub.add_parser("verify",
                            help="compare the closed form against the "
                                 "integration oracle")
    verify.add_argument("--a", type=_finite, required=True)
    verify.add_argument("--b", type=_finite, required=True)
    verify.add_argument("--p0", type=_finite, required=True)
    verify.add_argument("--t-max", type=_finite, default=5.0)
    verify.add_argument("--step", type=_finite, default=1e-3)
    verify.set_defaults(func=cmd_verify)

    eta_cmd = sub.add_parser("eta", help="evaluate the article-share term")
    eta_cmd.add_argument("--art", type=_finite, required=True,
                         help="accepted-article fraction in [0,1]")
    eta_cmd.add_argument("--alpha", type=_finite, required=True)
    eta_cmd.add_argument("--a", type=_finite, required=True)
    eta_cmd.add_argument("--b", type=_finite, required=True)
    eta_cmd.set_defaults(func=cmd_eta)

    return parser


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _sim_params(args) -> DdeParams:
    half_width = max(abs(args.t_min), abs(args.t_max))
    if half_width == 0.0:
        half_width = 1.0
    return DdeParams(a=args.a, b=args.b, p0=args.p0, half_width=half_width)


def _sim_control(args) -> ControlConfig | None:
    """The ControlConfig implied by forcing flags, or None when absent."""
    theta = None
    if args.theta_const is not None:
        theta = ThetaConstant(args.theta_const)
    elif args.theta_lin is not None:
        slope, intercept = args.theta_lin
        theta = ThetaLinear(slope=slope, intercept=intercept)
    elif args.theta_exp is not None:
        theta = ThetaExponential(rate=args.theta_exp)

    eta = None
    if args.eta_exp is not None:
        k, k1 = args.eta_exp
        eta = EtaTimeExponential(k=k, k1=k1)
    elif args.eta_article is not None:
        art, alpha = args.eta_article
        eta = EtaArticleBased(alpha=alpha, art=art)

    if theta is None and eta is None:
        return None
    return ControlConfig(theta=theta if theta is not None else ThetaConstant(0.0),
                         eta=eta)


def cmd_simulate(args) -> int:
    if args.steps < 1:
        raise _CliError(EXIT_USAGE, f"--steps must be >= 1, got {args.steps}")
    if not args.t_min < args.t_max:
        raise _CliError(
            EXIT_USAGE,
            f"--t-min must be below --t-max, got {args.t_min} and {args.t_max}",
        )
    if (args.c1 is None) != (args.c2 is None):
        raise _CliError(EXIT_USAGE, "--c1 and --c2 must be given together")

    params = _sim_params(args)
    config = _sim_control(args)
    explicit_modes = args.c1 is not None
    steps = args.steps
    # Endpoint-exact affine blend; keeps symmetric windows exactly symmetric.
    times = [(args.t_min * (steps - i) + args.t_max * i) / steps
             for i in range(steps + 1)]

    warning_flag = None
    if config is not None or explicit_modes:
        config = config if config is not None else ControlConfig()
        if explicit_modes:
            c1, c2 = args.c1, args.c2
        else:
            c1, c2 = initial_conditions_to_modes(params, config)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            values = [control_solution(params, config, c1, c2, t)
                      for t in times]
        if any(isinstance(w.message, NegativeInfluenceWarning) for w in caught):
            warning_flag = "negative-influence"
    else:
        regime = classify(params)
        if regime.tag is RegimeTag.OSCILLATORY:
            if not args.allow_oscillatory:
                raise WrongRegime(
                    f"a={args.a}, b={args.b} falls in the oscillatory regime, "
                    f"which is infeasible for influence modelling; pass "
                    f"--allow-oscillatory to inspect the branch"
                )
            values = [oscillatory_solution(params, t).value for t in times]
            warning_flag = "infeasible"
        elif regime.tag is RegimeTag.DEGENERATE:
            values = [degenerate_solution(params, t) for t in times]
        else:
            values = [base_solution(params, t) for t in times]

    lines = []
    if warning_flag is None:
        lines.append("t,p")
        for t, p in zip(times, values):
            lines.append(f"{fmt(t)},{fmt(p)}")
    else:
        lines.append("t,p,warning")
        for t, p in zip(times, values):
            lines.append(f"{fmt(t)},{fmt(p)},{warning_flag}")
    text = "\n".join(lines) + "\n"

    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def _read_series_csv(path: str) -> tuple[list[float], list[float]]:
    try:
        with open(path, "r", encoding="utf-8-sig", newline="") as fh:
            reader = csv.reader(fh)
            rows = [row for row in reader if row]
    except OSError as exc:
        raise _CliError(EXIT_USAGE, f"cannot read {path!r}: {exc}") from exc
    if not rows:
        raise _CliError(EXIT_USAGE, f"{path!r} is empty")
    header = [cell.strip() for cell in rows[0][:2]]
    if header != ["t", "p"] or len(rows[0]) < 2:
        raise _CliError(
            EXIT_USAGE,
            f"{path!r} must start with header 't,p', got {rows[0]!r}",
        )
    times: list[float] = []
    values: list[float] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) < 2:
            raise _CliError(
                EXIT_USAGE, f"{path!r} line {lineno}: expected 't,p' values"
            )
        try:
            times.append(float(row[0]))
            values.append(float(row[1]))
        except ValueError:
            raise _CliError(
                EXIT_USAGE,
                f"{path!r} line {lineno}: not numeric: {row[:2]!r}",
            ) from None
    return times, values


def cmd_fit(args) -> int:
    times, values = _read_series_csv(args.input)
    series = validate_series(times, values)
    fd_mode = FdMode.CENTRAL if args.fd == "central" else FdMode.FORWARD
    report = fit_pipeline(series, fd_mode)

    out = {
        "a": report.params.a,
        "b": report.params.b,
        "p0": report.params.p0,
        "r": report.regime.r,
        "regime": report.regime.tag.value,
        "A": report.modes.A if report.modes else None,
        "B": report.modes.B if report.modes else None,
        "w1": report.modes.w1 if report.modes else None,
        "w2": report.modes.w2 if report.modes else None,
        "rss_ab": report.rss_ab,
        "rss_modes": report.rss_modes,
        "n_points": report.n_points,
    }
    if args.predict is not None:
        out["prediction"] = _predict(report, args.predict)
    if report.modes_note:
        print(report.modes_note, file=sys.stderr)
    sys.stdout.write(json.dumps(out) + "\n")
    return EXIT_OK


def _predict(report, t: float) -> float:
    tag = report.regime.tag
    params = report.params
    if tag is RegimeTag.EXPONENTIAL:
        r = report.regime.r
        return (report.modes.w1 * math.exp(r * t)
                + report.modes.w2 * math.exp(-r * t))
    if tag is RegimeTag.DEGENERATE:
        return params.p0 * (1.0 + (params.a + params.b) * t)
    w = report.regime.r
    return params.p0 * (math.cos(w * t)
                        + ((params.a + params.b) / w) * math.sin(w * t))


def _read_journals_csv(path: str) -> FeatureMatrix:
    try:
        with open(path, "r", encoding="utf-8-sig", newline="") as fh:
            reader = csv.reader(fh)
            rows = [row for row in reader if row]
    except OSError as exc:
        raise _CliError(EXIT_USAGE, f"cannot read {path!r}: {exc}") from exc
    if not rows:
        raise _CliError(EXIT_USAGE, f"{path!r} is empty")
    header = rows[0]
    if not header or header[0].strip() != "journal" or len(header) < 3:
        raise _CliError(
            EXIT_USAGE,
            f"{path!r} must start with header 'journal,<feature1>,"
            f"<feature2>,...', got {header!r}",
        )
    feature_names = [cell.strip() for cell in header[1:]]
    journal_names: list[str] = []
    data: list[list[float]] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise _CliError(
                EXIT_USAGE,
                f"{path!r} line {lineno}: expected {len(header)} cells, "
                f"got {len(row)}",
            )
        journal_names.append(row[0].strip())
        try:
            data.append([float(cell) for cell in row[1:]])
        except ValueError:
            raise _CliError(
                EXIT_USAGE, f"{path!r} line {lineno}: non-numeric feature value"
            ) from None
    return FeatureMatrix(journal_names=tuple(journal_names),
                         feature_names=tuple(feature_names),
                         data=data)


def cmd_rank(args) -> int:
    matrix = _read_journals_csv(args.input)
    if args.response is not None:
        response = args.response
    elif "CiteScore" in matrix.feature_names:
        response = "CiteScore"
    else:
        response = matrix.feature_names[0]
    print(f"response={response} lambda={fmt(args.lam)}", file=sys.stderr)

    result, _trace = rank_journals(matrix, response, args.lam)
    lines = ["rank,journal,singval,elimination_step"]
    for e in result.entries:
        lines.append(
            f"{e.rank},{_csv_cell(e.journal_name)},{fmt(e.singval)},"
            f"{e.elimination_step}"
        )
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _csv_cell(text: str) -> str:
    if any(ch in text for ch in ",\"\n"):
        return '"' + text.replace('"', '""') + '"'
    return text


def cmd_verify(args) -> int:
    if not (args.step > 0.0):
        raise _CliError(EXIT_USAGE, f"--step must be positive, got {args.step}")
    if not (args.t_max > 0.0):
        raise _CliError(EXIT_USAGE, f"--t-max must be positive, got {args.t_max}")
    params = DdeParams(a=args.a, b=args.b, p0=args.p0, half_width=args.t_max)

    deviation = 0.0
    for sample in oracle_solution(params, args.t_max, args.step):
        closed = base_solution(params, sample.t)
        gap = abs(closed - sample.p) / max(1.0, abs(closed))
        deviation = max(deviation, gap)
    sys.stdout.write(fmt(deviation) + "\n")
    if deviation <= VERIFY_TOL:
        return EXIT_OK
    print(
        f"ERROR {EXIT_VERIFY}: closed form deviates from the integration "
        f"oracle by {fmt(deviation)} (tolerance {fmt(VERIFY_TOL)})",
        file=sys.stderr,
    )
    return EXIT_VERIFY


def cmd_eta(args) -> int:
    params = DdeParams(a=args.a, b=args.b, p0=1.0, half_width=1.0)
    value = eta_article(args.art, args.alpha, params)
    sys.stdout.write(fmt(value) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _error_line(code: int, detail: str) -> None:
    detail = " ".join(str(detail).split()) or "unspecified failure"
    print(f"ERROR {code}: {detail}", file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _CliError as exc:
        _error_line(exc.code, exc.message)
        return exc.code
    except (WrongRegime, ResonantForcing) as exc:
        _error_line(EXIT_REGIME, str(exc))
        return EXIT_REGIME
    except DegenerateSystem as exc:
        stage = exc.stage or "unknown stage"
        _error_line(EXIT_DEGENERATE, f"[{stage}] {exc}")
        return EXIT_DEGENERATE
    except SingularSystem as exc:
        _error_line(EXIT_DEGENERATE, str(exc))
        return EXIT_DEGENERATE
    except ZeroVarianceColumn as exc:
        _error_line(EXIT_ZERO_VARIANCE, str(exc))
        return EXIT_ZERO_VARIANCE
    except (MirrorDdeError, ValueError, KeyError) as exc:
        _error_line(EXIT_USAGE, str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
