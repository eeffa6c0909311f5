"""Command-line entry point: ``rulemeta <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from .classifier import classify, extract_features
from .config import ConfigError, load_config
from .evaluator import (
    EvaluationError,
    classification_accuracy,
    load_truth,
    run_evaluation,
)
from .extractor import extract_all
from .fixtures import PERTURBATIONS, write_corpus
from .ingest import IngestError, load_document, select_pages
from .model import FIELDS, MetadataRecord
from .pipeline import (
    CLASSIFICATION_NAME,
    FORMATS,
    JSON_NAME,
    MANIFEST_NAME,
    PipelineError,
    collect_inputs,
    run_pipeline,
)
from .store import MetadataStore, StorageError, entries_from_xml, record_from_dict, record_to_dict

log = logging.getLogger("rulemeta")


def _inputs(path: Path) -> list[Path]:
    return collect_inputs(path) if path.is_dir() else [path]


def _csv(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _splits(text: str) -> list[int]:
    try:
        return [int(x) for x in _csv(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--splits expects comma-separated integers, got {text!r}") from None


def _write_or_print(text: str, output: Optional[Path]) -> None:
    if output:
        output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def load_records(path: Path) -> tuple[list[MetadataRecord], dict[str, list[str]]]:
    """Records from a pipeline output directory, ``.db``, ``.xml`` or ``.json`` file.

    JSON may come from another tool; fields it omits are treated as not applicable.
    """
    if path.is_dir():
        path = path / JSON_NAME
    suffix = path.suffix.lower()
    if suffix == ".db":
        with MetadataStore(path) as store:
            records = [e.record for e in store.entries()]
        return records, {r.doc_id: list(FIELDS) for r in records}
    text = path.read_text(encoding="utf-8")
    if suffix == ".xml":
        records = [e.record for e in entries_from_xml(text)]
        return records, {r.doc_id: list(FIELDS) for r in records}
    items = json.loads(text)
    records = [record_from_dict(obj) for obj in items]
    present = {obj["id"]: [name for name in FIELDS if name in obj] for obj in items}
    return records, present


def cmd_pipeline(args, config) -> int:
    formats = FORMATS if args.format == "all" else (args.format,)
    manifest = run_pipeline(args.input, args.output, config, formats=formats, workers=args.workers)
    print(
        f"{manifest.total} documents: {manifest.scientific} scientific, {manifest.unscientific} unscientific, "
        f"{manifest.extracted} extracted, {manifest.flagged} flagged, {manifest.ingest_errors} ingest errors"
    )
    if manifest.docs_per_minute is not None:
        print(f"throughput: {manifest.docs_per_minute:.1f} docs/min")
    return manifest.exit_code


def cmd_classify(args, config) -> int:
    lines, failed = [], False
    for path in _inputs(args.input):
        try:
            doc = load_document(path)
        except IngestError as exc:
            log.error("%s", exc)
            failed = True
            continue
        result = classify(extract_features(select_pages(doc, config.pages), config.markers), config.rule)
        lines.append(json.dumps({**result.to_dict(), "id": path.stem}) + "\n")
    _write_or_print("".join(lines), args.output)
    return 2 if failed else 0


def cmd_extract(args, config) -> int:
    items, flagged = [], False
    for path in _inputs(args.input):
        try:
            doc = load_document(path)
        except IngestError as exc:
            log.error("%s", exc)
            flagged = True
            continue
        doc = type(doc)(path.stem, doc.page_count, doc.spans)
        record, flags = extract_all(doc, config.markers, config.strict_title, config.pages)
        flagged = flagged or bool(flags)
        obj = record_to_dict(record)
        obj["keyword_list"] = record.keyword_list
        obj["flags"] = [f.to_dict() for f in flags]
        items.append(obj)
    _write_or_print(json.dumps(items, indent=2, ensure_ascii=False) + "\n", args.output)
    return 2 if flagged else 0


def cmd_search(args, config) -> int:
    fields = _csv(args.fields) if args.fields else list(FIELDS)
    path = args.input / JSON_NAME if args.input.is_dir() else args.input
    if path.suffix.lower() == ".db":
        store = MetadataStore(path)
    else:
        store = MetadataStore()
        if path.suffix.lower() == ".xml":
            store.import_xml(path)
        else:
            store.import_json(path)
    with store:
        for hit in store.search(args.query, fields):
            print(f"{hit.doc_id}\t{hit.field}\t{hit.snippet}")
    return 0


def cmd_eval(args, config) -> int:
    truth = load_truth(args.truth)
    records, present = load_records(args.input)
    splits = args.splits or [len(records)]
    report = run_evaluation(records, truth, splits, config.jaccard_threshold, present)

    base = args.input if args.input.is_dir() else None
    cls_path = args.classifications or (base / CLASSIFICATION_NAME if base else None)
    if cls_path and cls_path.exists():
        preds = []
        for line in cls_path.read_text(encoding="utf-8").splitlines():
            obj = json.loads(line)
            if obj["id"] in truth:
                preds.append((obj["verdict"] == "scientific", truth[obj["id"]].is_scientific))
        try:
            report.classification = classification_accuracy(preds)
        except EvaluationError as exc:
            log.warning("classification accuracy skipped: %s", exc)
    if base and (base / MANIFEST_NAME).exists():
        manifest = json.loads((base / MANIFEST_NAME).read_text(encoding="utf-8"))
        report.docs_per_minute = manifest.get("docs_per_minute")
        report.seconds_per_doc = manifest.get("seconds_per_doc")

    text = report.render()
    sys.stdout.write(text)
    if args.output:
        args.output.mkdir(parents=True, exist_ok=True)
        (args.output / "report.txt").write_text(text, encoding="utf-8")
        (args.output / "report.json").write_text(report.to_json(), encoding="utf-8")
    return 0


def cmd_fixtures(args, config) -> int:
    perturb = _csv(args.perturb) if args.perturb else []
    unknown = set(perturb) - set(PERTURBATIONS)
    if unknown:
        raise SystemExit(f"unknown perturbations: {sorted(unknown)}; choose from {list(PERTURBATIONS)}")
    paths = write_corpus(args.output, args.count, args.seed, perturb)
    print(f"wrote {len(paths)} documents and corpus.truth.jsonl to {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rulemeta", description="Rule-based scholarly PDF metadata extraction")
    parser.add_argument("--config", type=Path, help="key = value config file (default: $RULEMETA_CONFIG)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output_help="output file (default: stdout)"):
        p.add_argument("--input", type=Path, required=True)
        p.add_argument("--output", type=Path, help=output_help)
        p.add_argument("--strict-title", action=argparse.BooleanOptionalAction, default=None,
                       help="require a bold title (default from config: strict)")

    p = sub.add_parser("pipeline", help="classify, extract and store a directory")
    common(p, "output directory")
    p.add_argument("--format", choices=[*FORMATS, "all"], default="all")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("classify", help="scientific/unscientific verdicts as JSON lines")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("extract", help="extract the six fields to JSON")
    common(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("search", help="substring search over a stored index")
    p.add_argument("--input", type=Path, required=True, help="pipeline output dir, .db, .json or .xml")
    p.add_argument("--query", required=True)
    p.add_argument("--fields", help=f"comma-separated subset of {','.join(FIELDS)}")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("eval", help="score records against ground truth")
    p.add_argument("--input", type=Path, required=True, help="pipeline output dir, .db, .json or .xml")
    p.add_argument("--truth", type=Path, required=True, help=".truth.jsonl ground truth")
    p.add_argument("--splits", type=_splits, help="comma-separated split sizes, e.g. 100,1000")
    p.add_argument("--classifications", type=Path, help="classification JSON lines to score")
    p.add_argument("--output", type=Path, help="directory for report.txt and report.json")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("fixtures", help="write synthetic .spans documents with ground truth")
    p.add_argument("--output", type=Path, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--perturb", help=f"comma-separated subset of {','.join(PERTURBATIONS)}")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = load_config(args.config)
        if getattr(args, "strict_title", None) is not None:
            config = replace(config, strict_title=args.strict_title)
        return args.func(args, config)
    except (ConfigError, PipelineError, EvaluationError, StorageError, OSError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
