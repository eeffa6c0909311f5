#!/usr/bin/env python3
"""Generate a synthetic corpus, run the pipeline on it and print the accuracy report.

Optionally also scores the real-PDF smoke set in both title modes.

    python scripts/run_benchmark.py --count 1000 --splits 100,500,1000 --workers 4
    python scripts/run_benchmark.py --count 200 --smoke tests/data/smoke
"""

from __future__ import annotations

import argparse
import json
import logging
import tempfile
from pathlib import Path

from rulemeta.cli import load_records
from rulemeta.config import Config
from rulemeta.evaluator import classification_accuracy, load_truth, run_evaluation
from rulemeta.fixtures import PERTURBATIONS, write_corpus
from rulemeta.pipeline import run_pipeline

log = logging.getLogger("benchmark")


def evaluate_dir(input_dir: Path, truth_path: Path, out_dir: Path, config: Config, splits, workers):
    manifest = run_pipeline(input_dir, out_dir, config, workers=workers)
    records, present = load_records(out_dir)
    truth = load_truth(truth_path)
    report = run_evaluation(records, truth, splits or [len(records)], config.jaccard_threshold, present)
    report.docs_per_minute = manifest.docs_per_minute
    report.seconds_per_doc = manifest.seconds_per_doc
    verdicts = {}
    for line in (out_dir / "classifications.jsonl").read_text(encoding="utf-8").splitlines():
        obj = json.loads(line)
        verdicts[obj["id"]] = obj["verdict"] == "scientific"
    pairs = [(verdicts.get(doc_id, False), t.is_scientific) for doc_id, t in truth.items()]
    if any(t for _, t in pairs) and not all(t for _, t in pairs):
        report.classification = classification_accuracy(pairs)
    return manifest, report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--perturb", default="", help=f"comma-separated subset of {','.join(PERTURBATIONS)}")
    ap.add_argument("--splits", default="", help="comma-separated split sizes")
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--smoke", type=Path, help="directory with smoke PDFs and smoke.truth.jsonl")
    ap.add_argument("--keep", type=Path, help="keep outputs here instead of a temporary directory")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    splits = [int(s) for s in args.splits.split(",") if s.strip()]
    perturb = [p for p in args.perturb.split(",") if p.strip()]
    with tempfile.TemporaryDirectory() as tmp:
        root = args.keep or Path(tmp)
        corpus = root / "corpus"
        write_corpus(corpus, args.count, args.seed, perturb)
        manifest, report = evaluate_dir(
            corpus, corpus / "corpus.truth.jsonl", root / "synthetic", Config(), splits, args.workers
        )
        print(f"== synthetic corpus: {args.count} docs, perturbations={perturb or 'none'}")
        print(f"   {manifest.extracted} extracted, {manifest.flagged} flagged, {manifest.wall_clock_seconds:.2f}s")
        print(report.render())

        if args.smoke:
            for strict in (True, False):
                manifest, report = evaluate_dir(
                    args.smoke, args.smoke / "smoke.truth.jsonl", root / f"smoke-strict-{strict}",
                    Config(strict_title=strict), [], 1,
                )
                print(f"== smoke PDFs, strict title={strict}")
                print(report.render())


if __name__ == "__main__":
    main()
