"""Command-line entry point: ``geonest run | verify | list-models``.

Exit codes: 0 success, 1 configuration error, 2 runtime error.
"""

import argparse
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .config import load_config
from .exceptions import ConfigError
from .models import MODELS
from .oracle import QuadratureSpec, grid_log_evidence
from .output import SUMMARY_FILE, fmt_value, read_summary, write_outputs
from .sampler import run

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _build_parser():
    p = _Parser(prog="geonest", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"geonest {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run nested sampling")
    r.add_argument("--config", required=True, type=Path)
    r.add_argument("--seed", type=int)
    r.add_argument("--out-dir", type=Path)
    r.add_argument("--n-live", type=int)
    r.add_argument("--quiet", action="store_true")

    v = sub.add_parser("verify", help="compare with brute-force grid quadrature")
    v.add_argument("--config", required=True, type=Path)
    v.add_argument("--grid", type=int, help="points per dimension (default: per model)")
    v.add_argument("--out-dir", type=Path, help="where to look for a previous summary.txt")

    sub.add_parser("list-models", help="list built-in models and their parameters")
    return p


def _cmd_run(args):
    cfg = load_config(args.config).with_overrides(args.seed, args.n_live, args.out_dir)
    model = cfg.build_model()
    result = run(cfg.sampler, model.space, model, cfg.scales(model.space),
                 posterior_count=cfg.posterior_count)
    write_outputs(result, cfg, model.space.names)
    if not args.quiet:
        print(result.summary())
        if result.truncated:
            print("warning: stopped at max_iterations before convergence", file=sys.stderr)
        print(f"wrote {cfg.output_dir}")
    return EXIT_OK


def _cmd_verify(args):
    cfg = load_config(args.config).with_overrides(out_dir=args.out_dir)
    model = cfg.build_model()
    try:
        spec = QuadratureSpec(args.grid or model.default_grid, model.space)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    oracle = grid_log_evidence(spec, model)
    print(f"oracle_log_z = {fmt_value(oracle)}  (grid {spec.points_per_dim}^{model.space.ndim})")
    summary = Path(cfg.output_dir) / SUMMARY_FILE
    if summary.exists():
        s = read_summary(summary)
        log_z, err = float(s["log_z"]), float(s["log_z_err"])
        delta = log_z - oracle
        sigmas = abs(delta) / err if err > 0 else math.inf
        print(f"sampler_log_z = {fmt_value(log_z)} +/- {fmt_value(err)}")
        print(f"delta = {delta:+.6f}  |delta| / log_z_err = {sigmas:.3f}")
    else:
        print(f"no {SUMMARY_FILE} in {cfg.output_dir}; run the sampler first to compare")
    return EXIT_OK


def _cmd_list_models(args):
    for name, info in MODELS.items():
        params = ", ".join(f"{k}={fmt_value(v)}" for k, v in info.defaults.items())
        print(f"{name}: {info.description}\n    parameters: {params}")
    return EXIT_OK


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
        logging.basicConfig(level=logging.WARNING if getattr(args, "quiet", False)
                            else logging.INFO, format="%(levelname)s %(name)s: %(message)s")
        handler = {"run": _cmd_run, "verify": _cmd_verify, "list-models": _cmd_list_models}
        return handler[args.command](args)
    except ConfigError as exc:
        print(f"geonest: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - every runtime failure maps to exit 2
        print(f"geonest: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
