"""Command-line interface.

Subcommands:
  oracle       exact partition-function value (or configuration count) at a point
  compute      Z at a point via the enumeration oracle or the determinant representation
  verify       functional | kz | det | all — exact residual checks, JSON output
  reconstruct  the full polynomial Z, via oracle or determinant route, as JSON
  report       the complete suite runner; exit code 0 iff everything passed

Exact rationals are always printed as "p/q"; reports are deterministic for a
fixed seed (timings aside).  VERTEXKZ_THREADS caps suite parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .representation import z_det
from .errors import VertexKZError
from .model import ModelParams, SpectralPoint, default_params
from .oracle import BoundaryOrientation, count_configurations, enumerate_Z
from .rational import format_rat, parse_rat
from .report import (
    ALL_SUITES,
    RunConfig,
    emit_polynomial,
    env_threads,
    run_suites,
)


def _parse_point(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rat(part) for part in text.split(",") if part.strip())


def _parse_mu(text: str) -> tuple[Fraction, ...]:
    return _parse_point(text)


def _load_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _resolve_model(args) -> tuple[int, Fraction, tuple[Fraction, ...] | None, int]:
    """Merge config file and flags into (L, eta, mu, seed); flags win."""
    file_cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}
    L = args.L if args.L is not None else file_cfg.get("L")
    eta = (
        parse_rat(args.eta)
        if args.eta is not None
        else parse_rat(file_cfg["eta"]) if "eta" in file_cfg else Fraction(1, 3)
    )
    mu = None
    if getattr(args, "mu", None) is not None:
        mu = _parse_mu(args.mu)
    elif "mu" in file_cfg:
        mu = tuple(parse_rat(m) for m in file_cfg["mu"])
    seed = args.seed if args.seed is not None else file_cfg.get("seed", 7)
    point = getattr(args, "point", None)
    if L is None and point:
        L = len(_parse_point(point))
    if L is None and mu is not None:
        L = len(mu)
    if L is None:
        raise VertexKZError("lattice size L is required (flag --L or config file)")
    return int(L), eta, mu, int(seed)


def _make_params(L: int, eta: Fraction, mu: tuple[Fraction, ...] | None) -> ModelParams:
    if mu is not None:
        return ModelParams(L, eta, mu)
    return default_params(L, eta)


def _emit(args, payload: dict | list, plain: str | None = None) -> None:
    """Write JSON to --out or stdout; `plain` replaces stdout JSON if not --json."""
    text = json.dumps(payload, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        if plain is not None:
            print(plain)
        return
    if plain is not None and not getattr(args, "json", False):
        print(plain)
    else:
        print(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_oracle(args) -> int:
    L, eta, mu, _seed = _resolve_model(args)
    params = _make_params(L, eta, mu)
    if args.count_only:
        count = count_configurations(L)
        _emit(args, {"schema": 1, "L": L, "configuration_count": count}, str(count))
        return 0
    if not args.point:
        raise VertexKZError("--point is required unless --count-only is given")
    values = _parse_point(args.point)
    if len(values) != L:
        raise VertexKZError(f"point has {len(values)} entries, expected L={L}")
    point = SpectralPoint(values)
    value = enumerate_Z(params, point)
    payload = {
        "schema": 1,
        "orientation": BoundaryOrientation.STANDARD.value,
        "L": L,
        "eta": format_rat(params.eta),
        "mu": [format_rat(m) for m in params.mu],
        "point": [format_rat(x) for x in values],
        "value": format_rat(value),
    }
    _emit(args, payload, format_rat(value))
    return 0


def cmd_compute(args) -> int:
    L, eta, mu, _seed = _resolve_model(args)
    params = _make_params(L, eta, mu)
    values = _parse_point(args.point)
    if len(values) != L:
        raise VertexKZError(f"point has {len(values)} entries, expected L={L}")
    point = SpectralPoint(values)
    if args.via == "oracle":
        value = enumerate_Z(params, point)
    else:
        value = z_det(args.i, point, params)
    payload = {
        "schema": 1,
        "via": args.via,
        "L": L,
        "point": [format_rat(x) for x in values],
        "value": format_rat(value),
    }
    _emit(args, payload, format_rat(value))
    return 0


def _run_config_from_args(args, suites: tuple[str, ...], default_range: tuple[int, int]) -> RunConfig:
    L, eta, mu, seed = (None, None, None, None)
    file_cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}
    eta = (
        parse_rat(args.eta)
        if args.eta is not None
        else parse_rat(file_cfg["eta"]) if "eta" in file_cfg else Fraction(1, 3)
    )
    seed = args.seed if args.seed is not None else file_cfg.get("seed", 7)
    if getattr(args, "mu", None) is not None:
        mu = _parse_mu(args.mu)
    elif "mu" in file_cfg:
        mu = tuple(parse_rat(m) for m in file_cfg["mu"])
    L = args.L if args.L is not None else file_cfg.get("L")
    L_max = getattr(args, "L_max", None)
    if L is not None:
        L_min = int(L)
        L_max = int(L_max) if L_max is not None else L_min
    elif L_max is not None:
        L_min, L_max = default_range[0], int(L_max)
    else:
        L_min, L_max = default_range
    if mu is not None and L_min != L_max:
        mu = None  # explicit mu only meaningful for a single L
    return RunConfig(
        L_min=L_min,
        L_max=L_max,
        eta=eta,
        mu=mu,
        seed=int(seed),
        points_per_test=getattr(args, "points", None),
        suites=suites,
        corrupt_weights=bool(getattr(args, "corrupt_weights", False)),
        threads=env_threads(),
    )


def cmd_verify(args) -> int:
    target = args.target
    if target == "functional":
        suites: tuple[str, ...] = ("functional",)
        default_range = (2, 3)
    elif target == "kz":
        suites = ("kz",)
        default_range = (2, 3)
    elif target == "det":
        suites = ("cramer", "fuchs", "zy", "degree")
        default_range = (2, 4)
    elif target == "all":
        suites = ALL_SUITES
        default_range = (1, 3)
    else:  # pragma: no cover - argparse choices guard this
        raise VertexKZError(f"unknown verify target {target!r}")
    config = _run_config_from_args(args, suites, default_range)
    report = run_suites(config)
    if target in ("functional", "kz"):
        rows = [
            check
            for suite in report["suites"]
            for check in suite["checks"]
            if "residual" in check
        ]
        n_filter = getattr(args, "n", "all")
        if target == "functional" and n_filter != "all":
            rows = [r for r in rows if r.get("n") == int(n_filter)]
        _emit(args, rows)
    else:
        _emit(args, report)
    return 0 if report["all_pass"] else 1


def cmd_reconstruct(args) -> int:
    config = _run_config_from_args(args, ("oracle",), (3, 3))
    payload = emit_polynomial(config, args.via)
    _emit(args, payload)
    return 0


def cmd_report(args) -> int:
    config = _run_config_from_args(args, ALL_SUITES, (1, 3))
    report = run_suites(config)
    _emit(args, report)
    return 0 if report["all_pass"] else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vertexkz",
        description=(
            "Exact computation and verification of the domain-wall six-vertex "
            "partition function and its determinant representations."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--L", type=int, default=None, help="lattice size")
        p.add_argument("--L-max", dest="L_max", type=int, default=None,
                       help="upper end of the lattice-size range")
        p.add_argument("--eta", default=None, help='parameter eta as "p/q"')
        p.add_argument("--mu", default=None,
                       help='comma-separated inhomogeneities, e.g. "6/5,11/5"')
        p.add_argument("--seed", type=int, default=None, help="base seed")
        p.add_argument("--points", type=int, default=None,
                       help="points per test (overrides suite defaults)")
        p.add_argument("--config", default=None, help="JSON config file")
        p.add_argument("--out", default=None, help="write JSON output to this file")
        p.add_argument("--json", action="store_true", help="force JSON on stdout")

    p_oracle = sub.add_parser("oracle", help="enumerated partition function at a point")
    add_common(p_oracle)
    p_oracle.add_argument("--point", default=None, help='rapidities, e.g. "0,1,2"')
    p_oracle.add_argument("--count-only", action="store_true",
                          help="print the configuration count instead of Z")
    p_oracle.set_defaults(func=cmd_oracle)

    p_compute = sub.add_parser("compute", help="Z via the oracle or the determinant")
    add_common(p_compute)
    p_compute.add_argument("--point", required=True)
    p_compute.add_argument("--via", choices=("oracle", "det"), default="oracle")
    p_compute.add_argument("--i", type=int, default=1,
                           help="representation index for --via det")
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser("verify", help="run exact verification suites")
    p_verify.add_argument("target", choices=("functional", "kz", "det", "all"))
    add_common(p_verify)
    p_verify.add_argument("--n", default="all",
                          help="restrict functional checks to one relation index")
    p_verify.add_argument("--corrupt-weights", action="store_true",
                          help=argparse.SUPPRESS)  # negative-control test hook
    p_verify.set_defaults(func=cmd_verify)

    p_rec = sub.add_parser("reconstruct", help="emit the full polynomial Z as JSON")
    add_common(p_rec)
    p_rec.add_argument("--via", choices=("oracle", "det"), default="oracle")
    p_rec.set_defaults(func=cmd_reconstruct)

    p_report = sub.add_parser("report", help="full suite run with JSON report")
    add_common(p_report)
    p_report.add_argument("--corrupt-weights", action="store_true",
                          help=argparse.SUPPRESS)  # negative-control test hook
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (VertexKZError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
