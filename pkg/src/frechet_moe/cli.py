"""Command-line entry point: ``frechet-moe run | sweep | constants``."""

from __future__ import annotations

import argparse
import csv
import itertools
import logging
import sys
from pathlib import Path

from .boosting import c_alpha, psi, select_block_count
from .errors import InvalidArgumentError
from .harness import EXPERIMENTS, ExperimentConfig, emit_csv, fmt, run_experiment

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class _ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; configuration errors use 1 here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _ConfigError(f"{self.prog}: error: {message}")


def _float_list(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_campaign_flags(p):
    p.add_argument("--experiment", choices=EXPERIMENTS)
    p.add_argument("--n", type=int)
    p.add_argument("--dim", type=int, dest="dimension")
    p.add_argument("--sims", type=int)
    p.add_argument("--seed", type=int, dest="master_seed")
    p.add_argument("--base", choices=("inductive", "empirical"), help="base mean estimator for spider/poincare/euclidean")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--config", type=Path, help="JSON config file (schema 1); flags override its values")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frechet-moe", description="Fréchet median-of-estimators experiments")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run one Monte Carlo campaign")
    _add_campaign_flags(run)
    run.add_argument("--k", type=int)
    run.add_argument("--alpha", type=float, dest="alpha_outlier")
    run.add_argument("--nu", type=float)
    run.add_argument("--out", dest="output_path")

    sweep = sub.add_parser("sweep", help="run the cartesian product of block counts and population parameters")
    _add_campaign_flags(sweep)
    sweep.add_argument("--k-list", type=_int_list, required=True)
    sweep.add_argument("--alpha-list", type=_float_list, help="outlier fractions (spider/poincare)")
    sweep.add_argument("--nu-list", type=_float_list, help="degrees of freedom (covariance/euclidean)")
    sweep.add_argument("--out", dest="output_path", required=True)

    const = sub.add_parser("constants", help="print psi, C_alpha and the block count for (alpha, p, delta)")
    const.add_argument("--alpha", type=float, required=True)
    const.add_argument("--p", type=float, required=True)
    const.add_argument("--delta", type=float, required=True)
    return parser


def _campaign_overrides(args, *names):
    return {name: getattr(args, name, None) for name in names}


def _load_config(args, **overrides) -> ExperimentConfig:
    if args.config is not None:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc}") from exc
        if args.experiment is not None:
            overrides["experiment"] = args.experiment
        return ExperimentConfig.from_json(text, **overrides)
    if args.experiment is None:
        raise _ConfigError("--experiment is required unless --config is given")
    return ExperimentConfig.create(args.experiment, **overrides)


_COMMON = ("n", "dimension", "sims", "master_seed", "base")


def _cmd_run(args) -> int:
    cfg = _load_config(args, **_campaign_overrides(args, *_COMMON, "k", "alpha_outlier", "nu", "output_path"))
    stats, results = run_experiment(cfg, threads=args.threads)
    out = cfg.output_path or f"{cfg.experiment}.csv"
    emit_csv(cfg, stats, results, out)
    print(
        f"{cfg.experiment}: n={cfg.n} k={cfg.k} sims={stats.sims} "
        f"mse_base={stats.mse_base:.6g} mse_fmoe={stats.mse_fmoe:.6g} "
        f"ci_base=[{stats.ci_base[0]:.4g}, {stats.ci_base[1]:.4g}] "
        f"ci_fmoe=[{stats.ci_fmoe[0]:.4g}, {stats.ci_fmoe[1]:.4g}] -> {out}"
    )
    return EXIT_OK


SWEEP_HEADER = [
    "experiment", "n", "k", "sims", "alpha", "nu", "mse_base", "mse_fmoe",
    "ci_base_lo", "ci_base_hi", "ci_fmoe_lo", "ci_fmoe_hi", "floor_violation_rate",
]


def _cmd_sweep(args) -> int:
    template = _load_config(args, **_campaign_overrides(args, *_COMMON), k=1)
    mixture = template.experiment in ("spider5", "poincare")
    params = (args.alpha_list if mixture else args.nu_list) or [template.population_parameter]
    key = "alpha_outlier" if mixture else "nu"
    out = Path(args.output_path)
    rows = []
    for value, k in itertools.product(params, args.k_list):
        fields = dict(
            n=template.n, k=k, sims=template.sims, dimension=template.dimension, master_seed=template.master_seed,
            base=template.base, alpha_outlier=template.alpha_outlier, nu=template.nu,
        )
        fields[key] = value
        cfg = ExperimentConfig.create(template.experiment, **fields)
        stats, results = run_experiment(cfg, threads=args.threads)
        emit_csv(cfg, stats, results, out.with_name(f"{out.stem}_{key}{value:g}_k{k}.csv"))
        rows.append([
            cfg.experiment, str(cfg.n), str(k), str(stats.sims),
            fmt(cfg.alpha_outlier) if cfg.alpha_outlier is not None else "",
            fmt(cfg.nu) if cfg.nu is not None else "",
            fmt(stats.mse_base), fmt(stats.mse_fmoe),
            fmt(stats.ci_base[0]), fmt(stats.ci_base[1]),
            fmt(stats.ci_fmoe[0]), fmt(stats.ci_fmoe[1]),
            fmt(stats.floor_violation_rate),
        ])
        print(f"{key}={value:g} k={k}: mse_fmoe={stats.mse_fmoe:.6g} ci_fmoe=[{stats.ci_fmoe[0]:.4g}, {stats.ci_fmoe[1]:.4g}]")
    with open(out, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        w.writerows(rows)
    return EXIT_OK


def _cmd_constants(args) -> int:
    print(f"psi={psi(args.alpha, args.p):.12g}")
    print(f"c_alpha={c_alpha(args.alpha):.12g}")
    print(f"k={select_block_count(args.delta, args.alpha, args.p)}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
        handler = {"run": _cmd_run, "sweep": _cmd_sweep, "constants": _cmd_constants}[args.command]
        return handler(args)
    except (_ConfigError, InvalidArgumentError, ValueError) as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(exc, file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
