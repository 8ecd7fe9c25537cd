"""Command-line interface.

Subcommands: ``compute`` (Rips barcode of a point cloud or distance file),
``kunneth`` (combine two barcode files), ``verify`` (combinator vs oracle),
``swdemo`` (sliding-window experiment), ``torus`` (closed forms vs
combinator).  Exit codes: 0 ok, 1 verification mismatch, 2 parse error,
3 simplex budget exceeded, 4 tensor-mode guard.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .complexes import (
    DEFAULT_BUDGET,
    FilteredComplex,
    categorical_product_complex,
    tensor_product_complex,
)
from .errors import BudgetExceededError, ComplexValidationError
from .intervals import (
    INF,
    GradedBarcode,
    Interval,
    barcode_from_json_dict,
    barcode_to_json_dict,
)
from .kunneth import (
    categorical_product_barcode,
    surviving_bar_count,
    tensor_product_barcode,
    torus_barcode,
    torus_count,
)
from .metrics import FiniteMetricSpace, max_product, read_lower_distance, read_points_csv
from .persistence import barcode_of_complex, check_prime, rips_barcode
from .sliding import SignalSpec, run_experiment
from .svgplot import experiment_svg

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_GUARD = 4


class GuardError(Exception):
    """Tensor mode on unsnapped real endpoints without --allow-real."""


def _fail(code: int, message: str) -> int:
    print(f"persprod: {message}", file=sys.stderr)
    return code


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load_metric(path: str, metric: str) -> FiniteMetricSpace:
    text = Path(path).read_text()
    if metric == "lower-distance":
        return read_lower_distance(text)
    return FiniteMetricSpace.from_points(read_points_csv(text))


def _load_barcode(path: str) -> GradedBarcode:
    return barcode_from_json_dict(json.loads(Path(path).read_text()))


def _snap_value(value: float, step: float) -> float:
    snapped = math.ceil(value / step - 1e-12) * step
    return int(round(snapped)) if snapped == int(round(snapped)) else snapped


def _snap_barcode(bcd: GradedBarcode, step: float) -> GradedBarcode:
    out = GradedBarcode()
    for dim, bar in bcd:
        left = _snap_value(bar.left, step)
        right = INF if bar.right == INF else _snap_value(bar.right, step)
        if left < right:
            out.add(dim, Interval(left, right))
    return out


def _snap_complex(complex_: FilteredComplex, step: float) -> FilteredComplex:
    return FilteredComplex(
        [(s, _snap_value(v, step)) for s, v in complex_.simplices],
        complex_.vertex_count,
    )


def _integral(bcd: GradedBarcode) -> bool:
    return all(
        bar.left == int(bar.left) and (bar.right == INF or bar.right == int(bar.right))
        for _, bar in bcd
    )


# --- subcommands -------------------------------------------------------------


def cmd_compute(args) -> int:
    space = _load_metric(args.input, args.metric)
    threshold = args.threshold if args.threshold is not None else space.diameter()
    bcd = rips_barcode(
        space.dist, args.max_dim, threshold, p=args.field, budget=args.budget
    )
    payload = barcode_to_json_dict(bcd, args.field)
    payload["seed"] = args.seed
    payload["threshold"] = threshold
    _emit(payload, args.out)
    return EXIT_OK


def cmd_kunneth(args) -> int:
    left = _load_barcode(args.left)
    right = _load_barcode(args.right)
    if args.snap:
        left = _snap_barcode(left, args.snap)
        right = _snap_barcode(right, args.snap)
    if args.mode == "tensor" and not args.allow_real:
        if args.snap is None and not (_integral(left) and _integral(right)):
            raise GuardError(
                "tensor mode needs integral endpoints; use --snap or --allow-real"
            )
        combine = tensor_product_barcode
    elif args.mode == "tensor":
        combine = tensor_product_barcode
    else:
        combine = categorical_product_barcode
    result = combine(left, right, args.max_dim)
    payload = barcode_to_json_dict(result, args.field)
    payload["seed"] = args.seed
    payload["mode"] = args.mode
    _emit(payload, args.out)
    return EXIT_OK


def _verify_complexes(args) -> tuple[GradedBarcode, GradedBarcode]:
    left = FilteredComplex.from_text(Path(args.left).read_text())
    right = FilteredComplex.from_text(Path(args.right).read_text())
    if args.snap:
        left, right = _snap_complex(left, args.snap), _snap_complex(right, args.snap)
    left.validate()
    right.validate()
    factor_left = barcode_of_complex(left, args.max_dim, args.field, validate=False)
    factor_right = barcode_of_complex(right, args.max_dim, args.field, validate=False)
    if args.mode == "tensor":
        combined = tensor_product_barcode(factor_left, factor_right, args.max_dim)
        product = tensor_product_complex(left, right, args.max_dim + 1, args.budget)
    else:
        combined = categorical_product_barcode(factor_left, factor_right, args.max_dim)
        product = categorical_product_complex(left, right, args.max_dim + 1, args.budget)
    oracle = barcode_of_complex(product, args.max_dim, args.field, validate=False)
    return combined, oracle


def _verify_metrics(args) -> tuple[GradedBarcode, GradedBarcode]:
    left = _load_metric(args.left, args.metric)
    right = _load_metric(args.right, args.metric)
    product = max_product(left, right)
    threshold = args.threshold if args.threshold is not None else product.diameter()
    factor_left = rips_barcode(
        left.dist, args.max_dim + 1, threshold, p=args.field, budget=args.budget
    )
    factor_right = rips_barcode(
        right.dist, args.max_dim + 1, threshold, p=args.field, budget=args.budget
    )
    if args.snap:
        factor_left = _snap_barcode(factor_left, args.snap)
        factor_right = _snap_barcode(factor_right, args.snap)
    if args.mode == "tensor":
        raise GuardError(
            "tensor verification over metric inputs is not grid-exact; "
            "use filtered-complex files (optionally with --snap)"
        )
    combined = categorical_product_barcode(factor_left, factor_right, args.max_dim)
    oracle = rips_barcode(
        product.dist, args.max_dim + 1, threshold, p=args.field, budget=args.budget
    )
    oracle_graded = GradedBarcode(
        {d: list(oracle.bars(d)) for d in oracle.dims() if d <= args.max_dim}
    )
    if args.snap:
        oracle_graded = _snap_barcode(oracle_graded, args.snap)
    return combined, oracle_graded


def cmd_verify(args) -> int:
    if args.format == "complex":
        combined, oracle = _verify_complexes(args)
    else:
        combined, oracle = _verify_metrics(args)
    # compare only dimensions up to max_dim on both sides
    trimmed = GradedBarcode(
        {d: list(combined.bars(d)) for d in combined.dims() if d <= args.max_dim}
    )
    oracle_trim = GradedBarcode(
        {d: list(oracle.bars(d)) for d in oracle.dims() if d <= args.max_dim}
    )
    equal = trimmed == oracle_trim
    payload = {
        "seed": args.seed,
        "mode": args.mode,
        "equal": equal,
        "combinator": barcode_to_json_dict(trimmed, args.field),
        "oracle": barcode_to_json_dict(oracle_trim, args.field),
    }
    if not equal:
        payload["diff"] = {
            str(d): v for d, v in trimmed.diff(oracle_trim).items()
        }
    _emit(payload, args.out)
    return EXIT_OK if equal else EXIT_MISMATCH


def cmd_swdemo(args) -> int:
    c_abs = 1.0 / math.sqrt(2.0)
    spec = SignalSpec.default_times(
        complex(c_abs, 0.0), complex(c_abs, 0.0), args.omega,
        args.count, args.start, args.step,
    )
    result = run_experiment(
        spec,
        d=args.d,
        joint_landmarks=args.joint_landmarks,
        factor_landmarks=args.factor_landmarks,
        max_dim=args.max_dim,
        seed_index=args.seed,
        budget=args.budget,
        field_p=args.field,
    )
    payload = result.to_json_dict()
    payload["seed"] = args.seed
    _emit(payload, args.out)
    if args.svg_out:
        Path(args.svg_out).write_text(experiment_svg(result))
    return EXIT_OK


def cmd_torus(args) -> int:
    radii = [float(tok) for tok in args.radii.split(",") if tok]
    if not radii or any(r <= 0 for r in radii):
        raise ValueError("radii must be positive")
    eps_values = [float(tok) for tok in args.eps.split(",") if tok]
    ps = [args.p] if args.p is not None else list(range(len(radii) + 1))
    max_dim = max(args.max_dim, max(ps))
    bcd = torus_barcode(radii, max_dim)
    grid = []
    all_match = True
    for eps in eps_values:
        for p in ps:
            closed_form = torus_count(radii, eps, p)
            expanded = surviving_bar_count(bcd, p, eps)
            all_match = all_match and closed_form == expanded
            grid.append(
                {
                    "eps": eps,
                    "p": p,
                    "count": closed_form,
                    "expansion_count": expanded,
                }
            )
    payload = {
        "seed": args.seed,
        "radii": radii,
        "barcode": barcode_to_json_dict(bcd, args.field),
        "counts": grid,
        "cross_check": "pass" if all_match else "fail",
    }
    _emit(payload, args.out)
    return EXIT_OK if all_match else EXIT_MISMATCH


# --- argument parsing --------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persprod", description="barcodes of product filtrations"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, threshold=True):
        p.add_argument("--max-dim", type=int, default=2)
        p.add_argument("--field", type=int, default=2)
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if threshold:
            p.add_argument("--threshold", type=float, default=None)

    p = sub.add_parser("compute", help="Rips barcode of a metric input")
    p.add_argument("--input", required=True)
    p.add_argument("--metric", choices=["euclidean", "lower-distance"], default="euclidean")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("kunneth", help="combine two barcode JSON files")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--mode", choices=["categorical", "tensor"], default="categorical")
    p.add_argument("--snap", type=float, default=None)
    p.add_argument("--allow-real", action="store_true")
    common(p, threshold=False)
    p.set_defaults(func=cmd_kunneth)

    p = sub.add_parser("verify", help="combinator output vs matrix-reduction oracle")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument(
        "--format", choices=["complex", "euclidean", "lower-distance"], default="complex"
    )
    p.add_argument("--mode", choices=["categorical", "tensor"], default="categorical")
    p.add_argument("--snap", type=float, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("swdemo", help="sliding-window two-path experiment")
    p.add_argument("--count", type=int, default=300)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=math.sqrt(2.0))
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--joint-landmarks", type=int, default=60)
    p.add_argument("--factor-landmarks", type=int, default=25)
    p.add_argument("--svg-out", default=None)
    common(p, threshold=False)
    p.set_defaults(func=cmd_swdemo, budget=25_000_000)

    p = sub.add_parser("torus", help="torus closed forms and combinator cross-check")
    p.add_argument("--radii", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--p", type=int, default=None)
    common(p, threshold=False)
    p.set_defaults(func=cmd_torus)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        if hasattr(args, "field"):
            check_prime(args.field)
        if getattr(args, "snap", None) is not None and not args.snap > 0:
            raise ValueError("snap step must be positive")
        return args.func(args)
    except GuardError as exc:
        return _fail(EXIT_GUARD, str(exc))
    except BudgetExceededError as exc:
        return _fail(EXIT_BUDGET, str(exc))
    except (
        OSError,
        ValueError,
        KeyError,
        json.JSONDecodeError,
        ComplexValidationError,
    ) as exc:
        return _fail(EXIT_PARSE, f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
