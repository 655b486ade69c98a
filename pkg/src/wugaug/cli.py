"""Command-line entry point.

Subcommands mirror the dataset workflows: ``stats``, ``split``, ``augment``,
``baseline``, ``evaluate``, ``pipeline`` and an ``align`` debug view. Every
stochastic command takes an explicit seed (default 0) and writes a JSON
manifest next to its outputs; rerunning with the same inputs and seed
reproduces every artifact byte for byte. No command is interactive, and all
errors exit nonzero.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import align as alignmod
from . import corpus, evalkit, hallucinate, splitter

ENV_OUTDIR = "WUGAUG_OUTDIR"


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _write_dataset(d: corpus.Dataset, path: Path) -> dict:
    path.parent.mkdir(parents=True, exist_ok=True)
    corpus.dump_tsv(d, path)
    return {"path": str(path), "lines": len(d), "sha256": _sha256(path)}


def _context_fingerprint(ctx: hallucinate.GenContext) -> dict:
    return {
        "alphabet_size": len(ctx.alphabet),
        "ngram_count": len(ctx.ngrams),
        "word_bounds": [ctx.word_bounds.min, ctx.word_bounds.max],
        "stem_bounds": None
        if ctx.stem_bounds is None
        else [ctx.stem_bounds.min, ctx.stem_bounds.max],
        "min_stem_run": ctx.min_stem_run,
    }


def _outdir(value: str | None) -> Path:
    if value:
        return Path(value)
    env = os.environ.get(ENV_OUTDIR)
    if env:
        return Path(env)
    raise ValueError(f"no output directory given (flag or {ENV_OUTDIR})")


def cmd_stats(args: argparse.Namespace) -> int:
    datasets = [corpus.load_tsv(f, strict=not args.lenient, nfc=args.nfc) for f in args.files]
    rows = [(datasets[0].label, corpus.compute_stats(datasets[0]))]
    for d in datasets[1:]:
        rows.append((d.label, corpus.compute_stats(d, [datasets[0]])))
    formatter = corpus.format_stats_kv if args.format == "kv" else corpus.format_stats_table
    sys.stdout.write(formatter(rows))
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    out_dir = _outdir(args.out_dir)
    dataset = corpus.load_tsv(args.file, nfc=args.nfc)
    paradigms = corpus.build_paradigms(dataset)
    prefix = args.prefix or Path(args.file).stem
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest: dict = {
        "command": "split",
        "input": {"path": str(args.file), "sha256": _sha256(Path(args.file))},
        "seed": args.seed,
        "ratios": args.ratios,
        "paradigms": len(paradigms),
    }

    def record(split: splitter.Split, into: Path) -> dict:
        assignment = {}
        files = {}
        for name, part in split.parts():
            for lemma in part.lemmata():
                assignment[lemma] = name
            files[name] = _write_dataset(part, into / f"{prefix}.{name}")
        report = splitter.verify_disjoint(split)
        return {
            "files": files,
            "assignment": assignment,
            "sizes": {name: len(part) for name, part in split.parts()},
            "lemma_intersections": {
                "train_dev": sorted(report.train_dev),
                "train_test": sorted(report.train_test),
                "dev_test": sorted(report.dev_test),
            },
        }

    if args.cv:
        folds = splitter.cv_folds(paradigms, args.cv, args.seed)
        manifest["cv"] = args.cv
        manifest["folds"] = [
            record(fold, out_dir / f"fold{i}") for i, fold in enumerate(folds)
        ]
    else:
        spec = splitter.SplitSpec.from_string(args.ratios, args.seed)
        manifest["split"] = record(splitter.wug_split(paradigms, spec), out_dir)
    _write_json(out_dir / "split_manifest.json", manifest)
    return 0


def _augment_once(args: argparse.Namespace, count: int, out_path: Path) -> None:
    train = corpus.load_tsv(args.train, nfc=args.nfc)
    spec = hallucinate.AugmentationSpec(
        method=args.method,
        count=count,
        seed=args.seed,
        copy_tag=args.copy_tag,
        dedupe=not args.no_dedupe,
    )
    ctx = hallucinate.build_context(train, fields=args.fields, min_stem_run=args.min_stem_run)
    sources = []
    if args.lemma_sources:
        for f in args.lemma_sources.split(","):
            sources.append(corpus.load_tsv(f, nfc=args.nfc))
    pool = corpus.concat_datasets(sources, label="lemma-sources") if sources else train
    forbid = frozenset(t.lemma for t in train) if args.forbid_real_lemmas else frozenset()
    generated, report = hallucinate.generate(spec, ctx, pool, forbid)
    augmented = corpus.Dataset(train.triples + generated, label=f"{train.label}+{spec.method}")
    info = _write_dataset(augmented, out_path)
    manifest = {
        "command": "augment",
        "method": spec.method,
        "count": spec.count,
        "seed": spec.seed,
        "copy_tag": spec.copy_tag,
        "dedupe": spec.dedupe,
        "fields": args.fields,
        "min_stem_run": args.min_stem_run,
        "forbid_real_lemmas": bool(args.forbid_real_lemmas),
        "train": {"path": str(args.train), "sha256": _sha256(Path(args.train))},
        "lemma_sources": [
            {"path": f, "sha256": _sha256(Path(f))}
            for f in (args.lemma_sources.split(",") if args.lemma_sources else [])
        ],
        "context": _context_fingerprint(ctx),
        "generation": {
            "requested": report.requested,
            "produced": report.produced,
            "attempts": report.attempts,
            "skipped": report.skipped,
            "duplicates_accepted": report.duplicates_accepted,
        },
        "output": info,
    }
    _write_json(out_path.with_name(out_path.name + ".manifest.json"), manifest)


def cmd_augment(args: argparse.Namespace) -> int:
    counts = [int(c) for c in str(args.count).split(",")]
    for count in counts:
        out = Path(args.out)
        if "{count}" in args.out:
            out = Path(args.out.replace("{count}", str(count)))
        elif len(counts) > 1:
            out = out.with_name(f"{out.stem}.n{count}{out.suffix}")
        _augment_once(args, count, out)
    return 0


def cmd_baseline(args: argparse.Namespace) -> int:
    train = corpus.load_tsv(args.train, nfc=args.nfc)
    eval_set = corpus.load_tsv(args.eval, nfc=args.nfc)
    model = evalkit.train_rules(train, min_stem_run=args.min_stem_run)
    preds = evalkit.predict_dataset(model, eval_set)
    _write_dataset(evalkit.predictions_to_dataset(preds, label="baseline"), Path(args.out))
    report = evalkit.score(eval_set, preds)
    formatter = evalkit.format_report_kv if args.format == "kv" else evalkit.format_report
    sys.stdout.write(formatter(report, label="baseline"))
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    gold = corpus.load_tsv(args.gold, nfc=args.nfc)
    preds = evalkit.predictions_from_dataset(corpus.load_tsv(args.preds, nfc=args.nfc))
    report = evalkit.score(gold, preds)
    formatter = evalkit.format_report_kv if args.format == "kv" else evalkit.format_report
    sys.stdout.write(formatter(report, label="eval"))
    return 0


def cmd_align(args: argparse.Namespace) -> int:
    alignment = alignmod.align(args.lemma, args.form)
    spans = alignmod.extract_stem(alignment, args.min_stem_run)
    lemma_side, form_side = alignmod.format_stem_spans(alignment, spans)
    sys.stdout.write(f"cost {alignment.cost}\n")
    sys.stdout.write(alignmod.format_alignment(alignment) + "\n")
    sys.stdout.write(f"lemma stems: {lemma_side}\n")
    sys.stdout.write(f"form stems:  {form_side}\n")
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    outdir = _outdir(args.outdir)
    dataset = corpus.load_tsv(args.input, nfc=args.nfc)
    lang = args.lang or Path(args.input).stem
    paradigms = corpus.build_paradigms(dataset)
    spec = splitter.SplitSpec.from_string(args.ratios, args.seed)
    split = splitter.wug_split(paradigms, spec)

    split_dir = outdir / "split"
    split_files = {
        name: _write_dataset(part, split_dir / f"{lang}.{name}")
        for name, part in split.parts()
    }
    disjoint = splitter.verify_disjoint(split)
    if not disjoint.ok:
        raise ValueError("wug split produced overlapping lemmata")

    ctx = hallucinate.build_context(split.train, fields=args.fields)
    copy_pool = corpus.concat_datasets([split.dev, split.test], label="dev+test")

    kv = args.format == "kv"
    report_lines: list[str] = []
    rows = [
        (f"{lang}.train", corpus.compute_stats(split.train)),
        (f"{lang}.dev", corpus.compute_stats(split.dev, [split.train])),
        (f"{lang}.test", corpus.compute_stats(split.test, [split.train])),
    ]
    stats_fmt = corpus.format_stats_kv if kv else corpus.format_stats_table
    report_lines.append(stats_fmt(rows))

    def run_eval(train_set: corpus.Dataset, label: str) -> tuple[dict, str]:
        model = evalkit.train_rules(train_set)
        preds = evalkit.predict_dataset(model, split.test)
        _write_dataset(
            evalkit.predictions_to_dataset(preds, label=label),
            outdir / "preds" / f"{lang}.{label}.preds.tsv",
        )
        report = evalkit.score(split.test, preds)
        fmt = evalkit.format_report_kv if kv else evalkit.format_report
        return (
            {"n": report.n, "correct": report.correct, "accuracy": report.accuracy},
            fmt(report, label=label),
        )

    scores = {}
    baseline_score, text = run_eval(split.train, "baseline")
    scores["baseline"] = baseline_score
    report_lines.append(text)

    methods = [m for m in args.methods.split(",") if m]
    aug_manifests = {}
    for method in methods:
        aspec = hallucinate.AugmentationSpec(
            method=method, count=args.count, seed=args.seed, copy_tag=args.copy_tag
        )
        pool = copy_pool if method == "copy-lemmas" else split.train
        generated, gen_report = hallucinate.generate(aspec, ctx, pool)
        augmented = corpus.Dataset(
            split.train.triples + generated, label=f"{lang}.train+{method}"
        )
        info = _write_dataset(augmented, outdir / "aug" / f"{lang}.{method}.train.tsv")
        aug_manifests[method] = {
            "output": info,
            "generation": {
                "requested": gen_report.requested,
                "produced": gen_report.produced,
                "attempts": gen_report.attempts,
                "skipped": gen_report.skipped,
                "duplicates_accepted": gen_report.duplicates_accepted,
            },
        }
        method_score, text = run_eval(augmented, method)
        scores[method] = method_score
        report_lines.append(text)

    report_path = outdir / "reports" / f"{lang}.report.{'kv' if kv else 'txt'}"
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text("\n".join(report_lines), encoding="utf-8")

    _write_json(
        outdir / "manifest.json",
        {
            "command": "pipeline",
            "language": lang,
            "input": {"path": str(args.input), "sha256": _sha256(Path(args.input))},
            "split_seed": args.seed,
            "augment_seed": args.seed,
            "ratios": args.ratios,
            "count": args.count,
            "methods": methods,
            "fields": args.fields,
            "context": _context_fingerprint(ctx),
            "split": {
                "files": split_files,
                "sizes": {name: len(part) for name, part in split.parts()},
            },
            "augmentations": aug_manifests,
            "scores": scores,
            "report": str(report_path),
        },
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wugaug",
        description="Build and augment unseen-lemma (wug test) inflection datasets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--nfc", action="store_true", help="NFC-normalize input text")

    p = sub.add_parser("stats", help="triple/lemma counts and lemma overlap")
    p.add_argument("files", nargs="+", help="TSV files; overlap is reported vs the first")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.add_argument("--lenient", action="store_true", help="skip malformed lines")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("split", help="lemma-disjoint train/dev/test split or CV folds")
    p.add_argument("file")
    p.add_argument("--out-dir", default=None)
    p.add_argument("--ratios", default="7:1:2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prefix", default=None, help="output file prefix (default: input stem)")
    p.add_argument("--cv", type=int, default=0, help="write K cross-validation folds instead")
    common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("augment", help="generate copy or hallucinated training triples")
    p.add_argument("--train", required=True)
    p.add_argument("--method", required=True, choices=hallucinate.METHODS)
    p.add_argument("--count", default="2000", help="item count, or comma list for a size sweep")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output path; '{count}' expands in sweeps")
    p.add_argument("--lemma-sources", default=None, help="comma list of TSVs for copy-lemmas")
    p.add_argument("--fields", choices=("lemma", "form", "both"), default="both")
    p.add_argument("--min-stem-run", type=int, default=1)
    p.add_argument("--copy-tag", default="COPY")
    p.add_argument("--no-dedupe", action="store_true")
    p.add_argument(
        "--forbid-real-lemmas",
        action="store_true",
        help="redraw generated lemmata that collide with training lemmata",
    )
    common(p)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("baseline", help="train the suffix-rule baseline and predict")
    p.add_argument("--train", required=True)
    p.add_argument("--eval", required=True)
    p.add_argument("--out", required=True, help="predictions TSV path")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.add_argument("--min-stem-run", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("evaluate", help="exact-match accuracy of a predictions file")
    p.add_argument("--gold", required=True)
    p.add_argument("--preds", required=True)
    p.add_argument("--format", choices=("text", "kv"), default="text")
    common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("align", help="show the character alignment of one pair")
    p.add_argument("lemma")
    p.add_argument("form")
    p.add_argument("--min-stem-run", type=int, default=1)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("pipeline", help="split, augment, run the baseline and score")
    p.add_argument("--input", required=True)
    p.add_argument("--outdir", default=None)
    p.add_argument("--lang", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ratios", default="7:1:2")
    p.add_argument("--methods", default="hall-substr")
    p.add_argument("--count", type=int, default=2000)
    p.add_argument("--fields", choices=("lemma", "form", "both"), default="both")
    p.add_argument("--copy-tag", default="COPY")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    common(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
