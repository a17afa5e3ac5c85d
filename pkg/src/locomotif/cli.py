"""Command-line entry point: ``locomotif {discover,evaluate,generate}``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .benchgen import LabeledInstancePool, generate_suite
from .discovery import DiscoveryConfig, guidance_mask_from_rest, locomotif
from .evaluation import matching_matrix, precision_recall_f1


class UsageError(Exception):
    pass


def _emit(doc: dict, output: str | None) -> None:
    if output:
        io.write_json(output, doc)
    else:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")


def cmd_discover(args) -> int:
    x = io.read_series(args.input)
    n = len(x)
    if args.rest_guided and (args.start_mask or args.end_mask):
        raise UsageError("--rest-guided cannot be combined with --start-mask/--end-mask")
    if args.rest_guided and args.var_threshold is None:
        raise UsageError("--rest-guided requires --var-threshold")
    start_mask = io.read_mask(args.start_mask, n) if args.start_mask else None
    end_mask = io.read_mask(args.end_mask, n) if args.end_mask else None
    if args.rest_guided:
        try:
            start_mask, end_mask = guidance_mask_from_rest(x, args.lmax, args.var_threshold, args.fraction)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    config = DiscoveryConfig(l_min=args.lmin, l_max=args.lmax, rho=args.rho, kappa=args.kappa,
                             nu=args.nu, warping=not args.no_warping,
                             start_mask=start_mask, end_mask=end_mask)
    try:
        config.validate(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = locomotif(x, config)
    _emit(io.motif_sets_to_json(n, result.motif_sets), args.output)
    return 0


def cmd_evaluate(args) -> int:
    n_gt, gt = io.load_ground_truth(io.read_json(args.gt))
    n_pred, _, found = io.load_motif_sets(io.read_json(args.pred))
    if n_gt != n_pred:
        raise UsageError(f"length mismatch: ground truth n={n_gt}, prediction n={n_pred}")
    mm = matching_matrix(gt, found)
    precision, recall, f1 = precision_recall_f1(mm)
    metrics = (("precision", precision), ("recall", recall), ("f1", f1))
    if args.json_full:
        body = [f'  "{k}": {json.dumps(v)},' for k, v in metrics]
    else:
        body = [f'  "{k}": {v:.6f},' for k, v in metrics]
    body.append(f'  "matching_matrix": {json.dumps(mm.matrix.tolist())}')
    sys.stdout.write("{\n" + "\n".join(body) + "\n}\n")
    return 0


def cmd_generate(args) -> int:
    try:
        pool = LabeledInstancePool.from_directory(args.instances)
        suite = generate_suite(pool, args.n, split=args.split, seed=args.seed,
                               occurrences=args.occurrences)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    manifest = []
    for i, bench in enumerate(suite):
        io.write_series(out / f"series_{i}.csv", bench.series)
        io.write_json(out / f"gt_{i}.json", io.ground_truth_to_json(len(bench.series), bench.ground_truth))
        manifest.append({
            "index": i,
            "subset": bench.subset,
            "n": len(bench.series),
            "kappa": bench.kappa,
            "repeated_classes": bench.repeated,
            "structure": [lab for lab, _, _ in bench.provenance],
        })
    _emit({"series": manifest}, None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locomotif",
                                     description="Variable-length, time-warped motif discovery.")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("discover", help="discover motif sets in a CSV time series")
    d.add_argument("--input", required=True, help="CSV, one row per time step")
    d.add_argument("--lmin", type=int, required=True)
    d.add_argument("--lmax", type=int, required=True)
    d.add_argument("--rho", type=float, default=0.8)
    d.add_argument("--kappa", type=int, default=None)
    d.add_argument("--nu", type=float, default=0.5)
    d.add_argument("--no-warping", action="store_true")
    d.add_argument("--start-mask", help="CSV column of 0/1 per time step")
    d.add_argument("--end-mask", help="CSV column of 0/1 per time step")
    d.add_argument("--rest-guided", action="store_true",
                   help="derive start/end masks from idle stretches of the input")
    d.add_argument("--var-threshold", type=float)
    d.add_argument("--fraction", type=float, default=0.33)
    d.add_argument("--output", help="write JSON here instead of stdout")
    d.set_defaults(func=cmd_discover)

    e = sub.add_parser("evaluate", help="score predicted motif sets against ground truth")
    e.add_argument("--gt", required=True)
    e.add_argument("--pred", required=True)
    e.add_argument("--json-full", action="store_true", help="print metrics at full precision")
    e.set_defaults(func=cmd_evaluate)

    g = sub.add_parser("generate", help="build benchmark series from a labeled instance pool")
    g.add_argument("--instances", required=True, help="directory with one subdirectory of CSVs per class")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--occurrences", type=int, default=2)
    g.add_argument("--split", type=float, default=0.0, help="validation fraction of each class")
    g.add_argument("--output", required=True)
    g.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, io.FormatError) as exc:
        print(f"locomotif {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
