"""Command-line entry point: preprocess, train, classify, evaluate, synth.

Conventions: labelled datasets are directories with one subdirectory per
label holding single-column series CSVs; all randomness flows from --seed;
every run directory gets exactly one manifest.json written atomically at the
end. Exit codes: 0 on success with all outputs written, 2 for usage or input
errors, 1 for anything else.
"""

import argparse
import json
import os
import sys
import tempfile
import time
from pathlib import Path

import numpy as np

from . import __version__
from ._kernels import BACKEND_NAME
from .classifier import evaluate, classify, train_bank
from .dataio import read_image_csv, read_pgm, read_series_csv, write_series_csv
from .errors import FluctHmmError, MalformedInput
from .preprocessing import WindowingConfig, preprocess
from .serialize import load_bank, save_bank
from .synthetic import RNG_ALGORITHM, SyntheticSpec, make_separated_bank, sample_dataset
from .training import TrainingConfig


def _write_manifest(out_dir: Path, command: str, config: dict, inputs, outputs, seed, started):
    manifest = {
        "command": command,
        "config": config,
        "inputs": [str(p) for p in inputs],
        "outputs": [str(p) for p in outputs],
        "seed": seed,
        "duration_seconds": time.perf_counter() - started,
        "toolkit_version": __version__,
        "rng": RNG_ALGORITHM,
        "kernel_backend": BACKEND_NAME,
    }
    fd, tmp = tempfile.mkstemp(dir=out_dir, prefix=".manifest-", suffix=".json")
    with os.fdopen(fd, "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    os.replace(tmp, out_dir / "manifest.json")


def _read_image(path: Path):
    if not path.exists():
        raise MalformedInput(path, "no such file")
    if path.suffix.lower() == ".pgm":
        return read_pgm(path)
    return read_image_csv(path)


def _read_labelled_dir(root: Path):
    root = Path(root)
    if not root.is_dir():
        raise MalformedInput(root, "not a directory")
    labels = sorted(p.name for p in root.iterdir() if p.is_dir())
    if not labels:
        raise MalformedInput(root, "no label subdirectories")
    data = {}
    for label in labels:
        files = sorted((root / label).glob("*.csv"))
        data[label] = [read_series_csv(f) for f in files]
    return data


def _training_config(args) -> TrainingConfig:
    return TrainingConfig(
        n_states=args.states,
        max_iterations=args.max_iters,
        rel_tolerance=args.tol,
        seed=args.seed,
        init_scheme=args.init,
    )


def cmd_preprocess(args) -> int:
    started = time.perf_counter()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    config = WindowingConfig(window_length=args.window, stride=args.stride)
    stems = [Path(p).stem for p in args.images]
    if len(set(stems)) < len(stems):
        dupe = next(s for s in stems if stems.count(s) > 1)
        raise MalformedInput(dupe, "two inputs share this stem; outputs would collide")
    outputs = []
    for image_path in args.images:
        image_path = Path(image_path)
        windows = preprocess(_read_image(image_path), config)
        for k, values in enumerate(windows):
            target = out / f"{image_path.stem}_w{k:03d}.csv"
            write_series_csv(target, values)
            outputs.append(target)
    _write_manifest(
        out,
        "preprocess",
        {"window": config.window_length, "stride": config.stride},
        args.images,
        outputs,
        None,
        started,
    )
    return 0


def cmd_train(args) -> int:
    started = time.perf_counter()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    data = _read_labelled_dir(Path(args.data))
    config = _training_config(args)
    bank, reports = train_bank(data, config, emission_kind=args.emission)
    bank_path = out / "bank.json"
    save_bank(bank_path, bank)
    outputs = [bank_path]
    for label, report in reports.items():
        report_path = out / f"report_{label}.csv"
        report_path.write_text(report.trace_csv())
        outputs.append(report_path)
    _write_manifest(
        out,
        "train",
        {
            "states": config.n_states,
            "max_iters": config.max_iterations,
            "tol": config.rel_tolerance,
            "init": config.init_scheme,
            "emission": args.emission,
        },
        [args.data],
        outputs,
        config.seed,
        started,
    )
    return 0


def cmd_classify(args) -> int:
    started = time.perf_counter()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bank = load_bank(args.bank)
    if bank.emission_kind != "gaussian":
        raise MalformedInput(args.bank, "classify reads real-valued series; bank is discrete")
    lines = ["file," + ",".join(bank.labels) + ",predicted"]
    for series_path in args.series:
        values = read_series_csv(series_path)
        result = classify(bank, values)
        scores = ",".join(repr(float(result.scores[label])) for label in bank.labels)
        lines.append(f"{series_path},{scores},{result.predicted}")
    scores_path = out / "scores.csv"
    scores_path.write_text("\n".join(lines) + "\n")
    _write_manifest(
        out, "classify", {"bank": str(args.bank)}, args.series, [scores_path], None, started
    )
    return 0


def cmd_evaluate(args) -> int:
    started = time.perf_counter()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bank = load_bank(args.bank)
    test_data = _read_labelled_dir(Path(args.data))
    matrix = evaluate(bank, test_data)
    csv_path = out / "confusion.csv"
    json_path = out / "confusion.json"
    gnuplot_path = out / "confusion.dat"
    csv_path.write_text(matrix.to_csv())
    with open(json_path, "w") as fh:
        json.dump(matrix.to_dict(), fh, indent=2)
        fh.write("\n")
    gnuplot_path.write_text(matrix.to_gnuplot())
    _write_manifest(
        out,
        "evaluate",
        {"bank": str(args.bank)},
        [args.data],
        [csv_path, json_path, gnuplot_path],
        None,
        started,
    )
    return 0


def cmd_synth(args) -> int:
    started = time.perf_counter()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    spec = SyntheticSpec(
        n_classes=args.classes,
        n_states=args.states,
        separation=args.separation,
        self_transition=args.self_transition,
        seed=args.seed,
    )
    bank = make_separated_bank(spec)
    outputs = []
    counts = {}
    for split, count, offset in (
        ("train", args.train_count, 0),
        ("test", args.test_count, 1),
    ):
        # distinct split seeds so train and test never share draws
        data = sample_dataset(
            bank, count, args.length, seed=spec.seed * 2 + offset, normalize=args.normalize
        )
        counts[split] = count
        for label, sequences in data.items():
            label_dir = out / split / label
            label_dir.mkdir(parents=True, exist_ok=True)
            for k, values in enumerate(sequences):
                target = label_dir / f"seq{k:04d}.csv"
                write_series_csv(target, values)
                outputs.append(target)
    manifest_config = {
        "spec": spec.to_dict(),
        "length": args.length,
        "counts": counts,
        "normalize": args.normalize,
    }
    _write_manifest(out, "synth", manifest_config, [], outputs, spec.seed, started)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flucthmm",
        description="Train and evaluate per-class hidden Markov models on fluctuation series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="turn images into windowed series CSVs")
    p.add_argument("images", nargs="+", help="input images (.pgm binary or .csv grid)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--window", type=int, default=1000)
    p.add_argument("--stride", type=int, default=None)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("train", help="train one model per label directory")
    p.add_argument("data", help="directory with one subdirectory of series CSVs per label")
    p.add_argument("--out", required=True)
    p.add_argument("--states", type=int, default=17)
    p.add_argument("--max-iters", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--init", choices=["random", "quantile"], default="quantile")
    p.add_argument("--emission", choices=["gaussian", "discrete"], default="gaussian")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="score series files against a trained bank")
    p.add_argument("bank", help="bank JSON from train")
    p.add_argument("series", nargs="+", help="series CSV files")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evaluate", help="confusion matrix of a bank on a labelled test set")
    p.add_argument("bank", help="bank JSON from train")
    p.add_argument("data", help="labelled test directory")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="generate a separated synthetic dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--classes", type=int, default=4)
    p.add_argument("--states", type=int, default=4)
    p.add_argument("--separation", type=float, default=12.0)
    p.add_argument("--self-transition", type=float, default=0.9)
    p.add_argument("--train-count", type=int, default=40)
    p.add_argument("--test-count", type=int, default=100)
    p.add_argument("--length", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--normalize", action="store_true", help="z-score and cumulate raw samples")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FluctHmmError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
