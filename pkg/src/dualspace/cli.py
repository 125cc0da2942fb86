"""Command-line surface: preprocess, train, eval, sweep, report.

Exit codes: 0 success, 1 runtime failure, 2 usage error. All randomness flows
from a single --seed; component seeds are derived by labeled hashing so one
knob reproduces a whole sweep. Threads default to 1 (deterministic); the
DUALSPACE_THREADS environment variable overrides that default.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import evaluation as eval_mod
from . import report as report_mod
from .embedding import CompareMethod, DualEmbedding, load_embedding
from .glove import GloveConfig, accumulate_cooc, train_glove
from .manifest import (
    TOOL_VERSION,
    RunManifest,
    derive_seed,
    existing_manifest_matches,
    file_sha256,
)
from .sgns import SgnsConfig, train_sgns

logger = logging.getLogger(__name__)

TRAINERS = ("sgns-cbow", "sgns-sg", "glove")


class UsageError(ValueError):
    """Bad invocation (malformed grid, unknown names); maps to exit code 2."""


def _default_threads() -> int:
    env = os.environ.get("DUALSPACE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            logger.warning("ignoring non-integer DUALSPACE_THREADS=%r", env)
    return 1


def parse_kv_config(path) -> dict[str, str]:
    """Read a key=value config file; blank lines and '#' comments ignored."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _expand_config_flags(argv: list[str]) -> list[str]:
    """Expand `--config FILE` into flags placed before the user's own flags,
    so explicit flags win (argparse keeps the last occurrence)."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        return argv  # let argparse report the missing value
    config = parse_kv_config(argv[idx + 1])
    rest = argv[:idx] + argv[idx + 2 :]
    if not rest:
        return rest
    injected: list[str] = []
    for key, value in config.items():
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "false"):
            injected.append(flag if value.lower() == "true" else f"--no-{flag[2:]}")
        else:
            injected.extend([flag, value])
    # subcommand name first, then config-derived flags, then explicit flags
    return rest[:1] + injected + rest[1:]


def _bool_flag(parser, name: str, default: bool, help: str) -> None:
    parser.add_argument(
        f"--{name}",
        dest=name.replace("-", "_"),
        action=argparse.BooleanOptionalAction,
        default=default,
        help=help,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualspace",
        description="Train and evaluate dual-space word embeddings.",
    )
    parser.add_argument("--version", action="version", version=TOOL_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    pre = sub.add_parser("preprocess", help="normalize a corpus and build vocab + stream")
    pre.add_argument("--config", help="key=value config file supplying flag defaults")
    pre.add_argument("--corpus", required=True, nargs="+", help="plain-text corpus file(s)")
    pre.add_argument("--stopwords", help="stopword file, one token per line")
    pre.add_argument("--min-count", type=int, default=1)
    pre.add_argument(
        "--normalizer", choices=corpus_mod.NORMALIZER_MODES, default=corpus_mod.DEFAULT_NORMALIZER
    )
    pre.add_argument("--out", required=True, help="output directory")
    pre.set_defaults(func=cmd_preprocess)

    tr = sub.add_parser("train", help="train one dual embedding")
    tr.add_argument("--config", help="key=value config file supplying flag defaults")
    tr.add_argument("--method", required=True, choices=TRAINERS)
    tr.add_argument("--vocab", required=True, help="vocabulary file from preprocess")
    tr.add_argument("--stream", required=True, help="encoded stream file from preprocess")
    tr.add_argument("--dim", type=int, default=100)
    tr.add_argument("--window", type=int, default=5)
    tr.add_argument("--epochs", type=int, default=None, help="default 5 for sgns, 25 for glove")
    tr.add_argument("--learning-rate", type=float, default=None)
    tr.add_argument("--negatives", type=int, default=5)
    tr.add_argument("--noise-power", type=float, default=0.75)
    tr.add_argument("--x-max", type=float, default=100.0)
    tr.add_argument("--alpha", type=float, default=0.75)
    _bool_flag(tr, "distance-weighting", True, "weight co-occurrences by 1/distance (glove)")
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--threads", type=int, default=None)
    tr.add_argument("--out", required=True, help="output embedding file")
    tr.set_defaults(func=cmd_train)

    ev = sub.add_parser("eval", help="score one embedding on one task dataset")
    ev.add_argument("--config", help="key=value config file supplying flag defaults")
    ev.add_argument("--embedding", required=True)
    ev.add_argument("--task", required=True, choices=eval_mod.TASKS)
    ev.add_argument(
        "--compare",
        required=True,
        type=str.lower,
        choices=[m.value.lower() for m in CompareMethod],
    )
    ev.add_argument("--dataset", required=True)
    ev.add_argument("--dataset-name", help="name recorded in results (default: file stem)")
    ev.add_argument("--results", required=True, help="append-only JSON-lines results file")
    ev.add_argument(
        "--normalizer", choices=corpus_mod.NORMALIZER_MODES, default=corpus_mod.DEFAULT_NORMALIZER
    )
    ev.add_argument("--n", type=int, default=10, help="association neighborhood size")
    ev.add_argument("--top-n", type=int, default=3, help="analogy candidate list size")
    ev.add_argument("--min-strength", type=float, default=0.10)
    ev.add_argument("--epsilon", type=float, default=0.001)
    _bool_flag(ev, "shift-cosines", True, "map cosines to (cos+1)/2 in 3COSMUL")
    ev.add_argument(
        "--analogy-format", choices=("auto", "google", "tsv", "bats"), default="auto"
    )
    ev.add_argument("--seed", type=int, default=0, help="seed for BATS pair joining")
    ev.set_defaults(func=cmd_eval)

    sw = sub.add_parser("sweep", help="train and evaluate a whole model grid")
    sw.add_argument("grid", help="key=value grid config file")
    sw.add_argument("--out", help="output directory (overrides grid key `out`)")
    sw.set_defaults(func=cmd_sweep)

    rp = sub.add_parser("report", help="consolidate results into report.md and report.csv")
    rp.add_argument("--config", help="key=value config file supplying flag defaults")
    rp.add_argument("--results", required=True)
    rp.add_argument("--out", required=True, help="output directory")
    rp.set_defaults(func=cmd_report)

    cv = sub.add_parser(
        "convert",
        help="convert a native similarity/association release file to canonical TSV",
    )
    cv.add_argument("--config", help="key=value config file supplying flag defaults")
    cv.add_argument("--task", required=True, choices=("similarity", "association"))
    cv.add_argument("--in", dest="input", required=True, help="native dataset file")
    cv.add_argument("--out", required=True, help="canonical TSV output path")
    cv.add_argument(
        "--preset",
        choices=("generic", "simlex999", "ws353"),
        default="generic",
        help="column/delimiter/header conventions of a known release layout",
    )
    cv.add_argument("--columns", help="0-based column indexes, e.g. 0,1,3 (overrides preset)")
    cv.add_argument("--delimiter", help="field delimiter (default: preset's, else tab)")
    cv.add_argument("--skip-header", type=int, default=None, help="header lines to drop")
    cv.add_argument(
        "--strength-scale",
        type=float,
        default=1.0,
        help="divide association strengths by this (e.g. 100 for percentages)",
    )
    cv.set_defaults(func=cmd_convert)

    return parser


def _corpus_fingerprint(paths) -> str:
    return ";".join(f"{Path(p).name}:{file_sha256(p)}" for p in paths)


def cmd_preprocess(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stopwords = corpus_mod.load_stopwords(args.stopwords) if args.stopwords else frozenset()
    sentences: list[list[str]] = []
    for path in args.corpus:
        text = Path(path).read_text(encoding="utf-8")
        sentences.extend(corpus_mod.normalize(text, stopwords, args.normalizer))
    vocab = corpus_mod.build_vocab(sentences, min_count=args.min_count)
    stream = corpus_mod.encode(sentences, vocab)
    vocab_path = out / "vocab.txt"
    stream_path = out / "stream.txt"
    corpus_mod.save_vocabulary(vocab, vocab_path)
    corpus_mod.save_stream(stream, stream_path)
    manifest = RunManifest(
        config={
            "command": "preprocess",
            "min_count": args.min_count,
            "normalizer": args.normalizer,
            "stopwords": Path(args.stopwords).name if args.stopwords else "",
        },
        corpus_fingerprint=_corpus_fingerprint(args.corpus),
        seed=0,
    )
    manifest.write_beside(vocab_path)
    manifest.write_beside(stream_path)
    print(
        f"preprocess: {len(stream)} sentences, vocabulary {len(vocab)} "
        f"({vocab.total_tokens} raw tokens) -> {out}"
    )
    return 0


def _train_embedding(
    method: str,
    stream,
    vocab,
    *,
    dim: int,
    window: int,
    seed: int,
    epochs: int | None,
    learning_rate: float | None,
    negatives: int,
    noise_power: float,
    x_max: float,
    alpha: float,
    distance_weighting: bool,
    threads: int,
) -> DualEmbedding:
    label = f"train:{method}:window{window}:dim{dim}"
    component_seed = derive_seed(seed, label)
    if method == "glove":
        config = GloveConfig(
            dim=dim,
            window=window,
            epochs=25 if epochs is None else epochs,
            learning_rate=0.05 if learning_rate is None else learning_rate,
            x_max=x_max,
            alpha=alpha,
            distance_weighting=distance_weighting,
            seed=component_seed,
        )
        cooc = accumulate_cooc(stream, window, distance_weighting, vocab_size=len(vocab))
        emb = train_glove(cooc, config, vocab=vocab)
    else:
        config = SgnsConfig(
            method=method.removeprefix("sgns-"),
            dim=dim,
            window=window,
            negatives=negatives,
            epochs=5 if epochs is None else epochs,
            learning_rate=0.025 if learning_rate is None else learning_rate,
            noise_power=noise_power,
            seed=component_seed,
        )
        emb = train_sgns(stream, vocab, config, threads=threads)
    emb.metadata["master_seed"] = str(seed)
    return emb


def cmd_train(args) -> int:
    vocab = corpus_mod.load_vocabulary(args.vocab)
    stream = corpus_mod.load_stream(args.stream)
    threads = args.threads if args.threads is not None else _default_threads()
    emb = _train_embedding(
        args.method,
        stream,
        vocab,
        dim=args.dim,
        window=args.window,
        seed=args.seed,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        negatives=args.negatives,
        noise_power=args.noise_power,
        x_max=args.x_max,
        alpha=args.alpha,
        distance_weighting=args.distance_weighting,
        threads=threads,
    )
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    emb.save(out)
    manifest = RunManifest(
        config={"command": "train", "method": args.method, **emb.metadata},
        corpus_fingerprint=file_sha256(args.stream),
        seed=args.seed,
    )
    manifest.write_beside(out)
    print(f"train: {args.method} dim={args.dim} window={args.window} -> {out}")
    return 0


def _load_analogy(path, fmt: str, normalizer: str, seed: int):
    path = Path(path)
    if fmt == "auto":
        if path.is_dir():
            fmt = "bats"
        else:
            head = path.read_text(encoding="utf-8", errors="replace")[:4096]
            lines = [ln for ln in head.splitlines() if ln.strip()]
            fmt = "tsv" if lines and "\t" in lines[0] else "google"
    if fmt == "bats":
        groups = eval_mod.parse_bats_pairs(path, normalizer=normalizer)
        return eval_mod.bats_join(groups, seed=derive_seed(seed, "bats-join"))
    if fmt == "tsv":
        return eval_mod.parse_analogy_tsv(path, normalizer=normalizer)
    return eval_mod.parse_analogy_google(path, normalizer=normalizer)


def _run_eval(emb: DualEmbedding, cm: CompareMethod, task: str, dataset_path, args):
    normalizer = args.normalizer
    if task == "similarity":
        pairs = eval_mod.parse_similarity(dataset_path, normalizer=normalizer)
        return eval_mod.eval_similarity(emb, cm, pairs)
    if task == "association":
        sets = eval_mod.parse_association(
            dataset_path, min_strength=args.min_strength, normalizer=normalizer
        )
        return eval_mod.eval_association(emb, cm, sets, n=args.n)
    questions = _load_analogy(dataset_path, args.analogy_format, normalizer, args.seed)
    return eval_mod.eval_analogy(
        emb, cm, questions, top_n=args.top_n, epsilon=args.epsilon, shift=args.shift_cosines
    )


def _result_record(emb: DualEmbedding, cm: CompareMethod, task: str, dataset: str, score):
    return {
        "trainer": emb.metadata.get("trainer", "unknown"),
        "window": int(emb.metadata.get("window", 0)),
        "dim": int(emb.metadata.get("dim", emb.dim)),
        "seed": emb.metadata.get("seed", ""),
        "compare": cm.value,
        "task": task,
        "dataset": dataset,
        "value": score.value,
        "aux": score.aux,
    }


def _append_result(results_path, record) -> None:
    results_path = Path(results_path)
    results_path.parent.mkdir(parents=True, exist_ok=True)
    line = json.dumps(record, sort_keys=True) + "\n"
    with open(results_path, "a", encoding="utf-8", newline="\n") as fh:
        fh.write(line)


def cmd_eval(args) -> int:
    emb = load_embedding(args.embedding)
    cm = CompareMethod.parse(args.compare)
    dataset_name = args.dataset_name or Path(args.dataset).stem
    score = _run_eval(emb, cm, args.task, args.dataset, args)
    record = _result_record(emb, cm, args.task, dataset_name, score)
    _append_result(args.results, record)
    manifest = RunManifest(
        config={"command": "eval", "task": args.task, "compare": cm.value},
        corpus_fingerprint=file_sha256(args.embedding),
        seed=args.seed,
    )
    manifest.write_beside(args.results)
    print(f"eval: {args.task}/{dataset_name} {cm.value} value={score.value:.6f}")
    return 0


class _EvalArgs(argparse.Namespace):
    """Namespace with the eval defaults, for sweep-internal evaluation calls."""

    def __init__(self, **overrides):
        super().__init__(
            normalizer=corpus_mod.DEFAULT_NORMALIZER,
            n=10,
            top_n=3,
            min_strength=0.10,
            epsilon=0.001,
            shift_cosines=True,
            analogy_format="auto",
            seed=0,
        )
        for key, value in overrides.items():
            setattr(self, key, value)


def _split_list(value: str) -> list[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def cmd_sweep(args) -> int:
    grid = parse_kv_config(args.grid)
    missing = [k for k in ("corpus", "trainers", "windows", "dims", "compares") if k not in grid]
    if missing:
        raise UsageError(f"grid config missing keys: {', '.join(missing)}")
    out = Path(args.out or grid.get("out", "sweep-out"))
    out.mkdir(parents=True, exist_ok=True)
    seed = int(grid.get("seed", "0"))
    normalizer = grid.get("normalizer", corpus_mod.DEFAULT_NORMALIZER)
    threads = int(grid.get("threads", "0")) or _default_threads()

    trainers = _split_list(grid["trainers"])
    if not trainers:
        raise UsageError("grid config names no trainers")
    for t in trainers:
        if t not in TRAINERS:
            raise UsageError(f"unknown trainer {t!r}; expected one of {TRAINERS}")
    windows = [int(w) for w in _split_list(grid["windows"])]
    dims = [int(d) for d in _split_list(grid["dims"])]
    compares = [CompareMethod.parse(c) for c in _split_list(grid["compares"])]
    tasks: list[tuple[str, str]] = []  # (task, dataset path)
    for task in eval_mod.TASKS:
        for path in _split_list(grid.get(task, "")):
            tasks.append((task, path))
    if not tasks:
        raise ValueError("grid config names no evaluation datasets")

    # stage 1: preprocess (skipped when the manifest already matches)
    corpus_paths = _split_list(grid["corpus"])
    stopwords_path = grid.get("stopwords", "")
    pre_manifest = RunManifest(
        config={
            "command": "preprocess",
            "min_count": int(grid.get("min_count", "1")),
            "normalizer": normalizer,
            "stopwords": Path(stopwords_path).name if stopwords_path else "",
        },
        corpus_fingerprint=_corpus_fingerprint(corpus_paths),
        seed=0,
    )
    vocab_path = out / "vocab.txt"
    stream_path = out / "stream.txt"
    if existing_manifest_matches(vocab_path, pre_manifest) and existing_manifest_matches(
        stream_path, pre_manifest
    ):
        print("sweep: preprocess up to date, skipped")
    else:
        ns = argparse.Namespace(
            corpus=corpus_paths,
            stopwords=stopwords_path or None,
            min_count=int(grid.get("min_count", "1")),
            normalizer=normalizer,
            out=str(out),
        )
        cmd_preprocess(ns)
    vocab = corpus_mod.load_vocabulary(vocab_path)
    stream = corpus_mod.load_stream(stream_path)
    stream_fingerprint = file_sha256(stream_path)

    # stage 2: train every grid cell (manifest-matched cells are skipped)
    embeddings: dict[tuple[str, int, int], Path] = {}
    for trainer in trainers:
        for window in windows:
            for dim in dims:
                emb_path = out / f"emb_{trainer}_w{window}_d{dim}.dualemb"
                train_config = {
                    "command": "train",
                    "method": trainer,
                    "window": str(window),
                    "dim": str(dim),
                    "epochs": grid.get(
                        "glove_epochs" if trainer == "glove" else "sgns_epochs", ""
                    ),
                    "learning_rate": grid.get(
                        "glove_learning_rate" if trainer == "glove" else "sgns_learning_rate",
                        "",
                    ),
                    "negatives": grid.get("negatives", "5"),
                    "noise_power": grid.get("noise_power", "0.75"),
                    "x_max": grid.get("x_max", "100"),
                    "alpha": grid.get("alpha", "0.75"),
                    "distance_weighting": grid.get("distance_weighting", "1"),
                }
                cell_manifest = RunManifest(
                    config=train_config, corpus_fingerprint=stream_fingerprint, seed=seed
                )
                embeddings[(trainer, window, dim)] = emb_path
                if existing_manifest_matches(emb_path, cell_manifest):
                    print(f"sweep: {emb_path.name} up to date, skipped")
                    continue
                epochs_key = "glove_epochs" if trainer == "glove" else "sgns_epochs"
                lr_key = "glove_learning_rate" if trainer == "glove" else "sgns_learning_rate"
                emb = _train_embedding(
                    trainer,
                    stream,
                    vocab,
                    dim=dim,
                    window=window,
                    seed=seed,
                    epochs=int(grid[epochs_key]) if epochs_key in grid else None,
                    learning_rate=float(grid[lr_key]) if lr_key in grid else None,
                    negatives=int(grid.get("negatives", "5")),
                    noise_power=float(grid.get("noise_power", "0.75")),
                    x_max=float(grid.get("x_max", "100")),
                    alpha=float(grid.get("alpha", "0.75")),
                    distance_weighting=grid.get("distance_weighting", "1")
                    not in ("0", "false", "False"),
                    threads=threads,
                )
                emb.save(emb_path)
                cell_manifest.write_beside(emb_path)
                print(f"sweep: trained {emb_path.name}")

    # stage 3: evaluate; existing (model, compare, task, dataset) lines are kept
    results_path = out / "results.jsonl"
    done: set[tuple] = set()
    if results_path.exists():
        for rec in report_mod.read_results(results_path):
            done.add(
                (
                    rec["trainer"],
                    int(rec["window"]),
                    int(rec["dim"]),
                    rec["compare"],
                    rec["task"],
                    rec["dataset"],
                )
            )
    eval_args = _EvalArgs(
        normalizer=normalizer,
        n=int(grid.get("n", "10")),
        top_n=int(grid.get("top_n", "3")),
        min_strength=float(grid.get("min_strength", "0.1")),
        seed=seed,
    )
    for trainer in trainers:
        for window in windows:
            for dim in dims:
                emb = load_embedding(embeddings[(trainer, window, dim)])
                for cm in compares:
                    for task, dataset_path in tasks:
                        dataset_name = Path(dataset_path).stem
                        key = (trainer, window, dim, cm.value, task, dataset_name)
                        if key in done:
                            continue
                        score = _run_eval(emb, cm, task, dataset_path, eval_args)
                        _append_result(
                            results_path, _result_record(emb, cm, task, dataset_name, score)
                        )
                        done.add(key)
    RunManifest(
        config={"command": "sweep", "grid": Path(args.grid).name},
        corpus_fingerprint=_corpus_fingerprint(corpus_paths),
        seed=seed,
    ).write_beside(results_path)

    # stage 4: consolidated report
    ns = argparse.Namespace(results=str(results_path), out=str(out))
    cmd_report(ns)
    print(f"sweep: complete -> {out}")
    return 0


# (column indexes, delimiter, header lines) for known release layouts
_CONVERT_PRESETS = {
    "generic": ((0, 1, 2), "\t", 0),
    "simlex999": ((0, 1, 3), "\t", 1),
    "ws353": ((0, 1, 2), None, 1),
}


def cmd_convert(args) -> int:
    cols, preset_delim, preset_header = _CONVERT_PRESETS[args.preset]
    if args.columns:
        parts = [c.strip() for c in args.columns.split(",")]
        if len(parts) != 3:
            raise UsageError("--columns needs exactly three 0-based indexes")
        cols = tuple(int(c) for c in parts)
    skip = preset_header if args.skip_header is None else args.skip_header
    out_lines: list[str] = []
    with open(args.input, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if lineno <= skip or not line.strip():
                continue
            delim = args.delimiter or preset_delim
            fields = line.split(delim) if delim else line.replace(",", "\t").split("\t")
            try:
                a, b, value = (fields[c].strip() for c in cols)
                score = float(value)
            except (IndexError, ValueError) as exc:
                raise ValueError(f"{args.input}:{lineno}: cannot extract columns {cols}") from exc
            if args.task == "association":
                score = score / args.strength_scale
            out_lines.append(f"{a}\t{b}\t{score:g}")
    if not out_lines:
        raise ValueError(f"{args.input}: no data rows")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(out_lines) + "\n", encoding="utf-8")
    RunManifest(
        config={"command": "convert", "task": args.task, "preset": args.preset},
        corpus_fingerprint=file_sha256(args.input),
        seed=0,
    ).write_beside(out)
    print(f"convert: {len(out_lines)} rows -> {out}")
    return 0


def cmd_report(args) -> int:
    records = report_mod.read_results(args.results)
    if not records:
        raise ValueError(f"{args.results}: no result records")
    grid = report_mod.build_grid(records)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    md_path = out / "report.md"
    csv_path = out / "report.csv"
    md_path.write_text(report_mod.render(grid, "markdown"), encoding="utf-8")
    csv_path.write_text(report_mod.render(grid, "csv"), encoding="utf-8")
    manifest = RunManifest(
        config={"command": "report"},
        corpus_fingerprint=file_sha256(args.results),
        seed=0,
    )
    manifest.write_beside(md_path)
    manifest.write_beside(csv_path)
    print(f"report: {len(grid)} consolidated cells -> {md_path}, {csv_path}")
    return 0


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    argv = list(argv)
    try:
        if any(arg == "--config" for arg in argv):
            argv = _expand_config_flags(argv)
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
