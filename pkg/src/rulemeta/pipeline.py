"""Batch driver: ingest, classify, extract and store a directory of documents."""

from __future__ import annotations

import json
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime
from itertools import repeat
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from .classifier import ClassificationResult, Verdict, classify, extract_features
from .config import Config
from .extractor import ReviewFlag, extract_all
from .ingest import SPAN_SUFFIX, IngestError, load_document, select_pages
from .model import FIELDS, MetadataRecord
from .store import IndexEntry, MetadataStore, utc_now

log = logging.getLogger(__name__)

INPUT_SUFFIXES = (".pdf", SPAN_SUFFIX)
FORMATS = ("xml", "json", "db")

XML_NAME = "metadata.xml"
JSON_NAME = "metadata.json"
DB_NAME = "metadata.db"
REVIEW_NAME = "review_queue.jsonl"
CLASSIFICATION_NAME = "classifications.jsonl"
MANIFEST_NAME = "manifest.json"


class PipelineError(Exception):
    """Fatal batch error (the output directory cannot be written)."""


@dataclass
class DocOutcome:
    doc_id: str
    source_path: str
    classification: Optional[ClassificationResult] = None
    record: Optional[MetadataRecord] = None
    flags: list[ReviewFlag] = field(default_factory=list)
    error: Optional[str] = None
    message: str = ""


@dataclass
class RunManifest:
    inputs: list[str] = field(default_factory=list)
    total: int = 0
    scientific: int = 0
    unscientific: int = 0
    extracted: int = 0
    flagged: int = 0
    ingest_errors: int = 0
    wall_clock_seconds: float = 0.0
    docs_per_minute: Optional[float] = None
    seconds_per_doc: Optional[float] = None
    field_flag_counts: dict[str, int] = field(default_factory=dict)
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"


def collect_inputs(input_dir: Path) -> list[Path]:
    return sorted(
        p for p in Path(input_dir).rglob("*") if p.is_file() and p.suffix.lower() in INPUT_SUFFIXES
    )


def process_document(path: Path, config: Config, doc_id: Optional[str] = None) -> DocOutcome:
    """Ingest one file and run classification and, if scientific, extraction."""
    path = Path(path)
    doc_id = doc_id or path.stem
    outcome = DocOutcome(doc_id, str(path))
    try:
        doc = load_document(path)
    except IngestError as exc:
        outcome.error, outcome.message = exc.reason, str(exc)
        outcome.flags = [ReviewFlag(doc_id, None, exc.reason)]
        return outcome
    except OSError as exc:
        outcome.error, outcome.message = "UnreadableFile", str(exc)
        outcome.flags = [ReviewFlag(doc_id, None, "UnreadableFile")]
        return outcome
    if doc.doc_id != doc_id:
        doc = type(doc)(doc_id, doc.page_count, doc.spans)

    sel = select_pages(doc, config.pages)
    outcome.classification = classify(extract_features(sel, config.markers), config.rule)
    if outcome.classification.verdict is Verdict.SCIENTIFIC:
        outcome.record, outcome.flags = extract_all(doc, config.markers, config.strict_title, config.pages)
    return outcome


def _run_all(jobs: Sequence[tuple[Path, str]], config: Config, workers: int) -> list[DocOutcome]:
    paths = [p for p, _ in jobs]
    ids = [d for _, d in jobs]
    if workers <= 1 or len(jobs) <= 1:
        return [process_document(p, config, d) for p, d in jobs]
    chunk = max(1, len(jobs) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(process_document, paths, repeat(config), ids, chunksize=chunk))


def run_pipeline(
    input_dir: Path,
    output_dir: Path,
    config: Config = Config(),
    formats: Iterable[str] = FORMATS,
    workers: Optional[int] = None,
    clock: Callable[[], float] = time.perf_counter,
    now: Callable[[], datetime] = utc_now,
) -> RunManifest:
    input_dir, output_dir = Path(input_dir), Path(output_dir)
    formats = set(formats)
    workers = workers or config.workers or os.cpu_count() or 1
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        probe = output_dir / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise PipelineError(f"output directory {output_dir} is not writable: {exc}") from exc

    started = clock()
    files = collect_inputs(input_dir)
    jobs: list[tuple[Path, str]] = []
    outcomes: list[DocOutcome] = []
    seen: dict[str, Path] = {}
    for path in files:
        if path.stem in seen:
            log.error("document id %r of %s collides with %s", path.stem, path, seen[path.stem])
            outcomes.append(
                DocOutcome(path.stem, str(path), flags=[ReviewFlag(path.stem, None, "DuplicateDocId")],
                           error="DuplicateDocId", message=f"collides with {seen[path.stem]}")
            )
            continue
        seen[path.stem] = path
        jobs.append((path, path.stem))

    outcomes += _run_all(jobs, config, workers)
    outcomes.sort(key=lambda o: (o.doc_id, o.source_path))
    for o in outcomes:
        if o.error:
            log.warning("%s: %s", o.doc_id, o.message)

    db_path = output_dir / DB_NAME
    if "db" in formats and db_path.exists():
        db_path.unlink()
    stamp = now()
    with MetadataStore(db_path if "db" in formats else ":memory:") as store:
        for o in outcomes:
            if o.record is not None:
                source = os.path.relpath(o.source_path, input_dir)
                store.put(IndexEntry(o.doc_id, o.record, stamp, source))
        if "xml" in formats:
            store.export_xml(output_dir / XML_NAME)
        if "json" in formats:
            store.export_json(output_dir / JSON_NAME)

    field_order = {name: i for i, name in enumerate(FIELDS)}
    queue = sorted(
        (f for o in outcomes for f in o.flags), key=lambda f: (f.doc_id, field_order.get(f.field, -1))
    )
    (output_dir / REVIEW_NAME).write_text(
        "".join(json.dumps(f.to_dict(), ensure_ascii=False) + "\n" for f in queue), encoding="utf-8"
    )
    (output_dir / CLASSIFICATION_NAME).write_text(
        "".join(json.dumps(o.classification.to_dict()) + "\n" for o in outcomes if o.classification),
        encoding="utf-8",
    )

    elapsed = clock() - started
    classified = [o for o in outcomes if o.classification]
    manifest = RunManifest(
        inputs=[os.path.relpath(p, input_dir) for p in files],
        total=len(classified),
        scientific=sum(o.classification.verdict is Verdict.SCIENTIFIC for o in classified),
        unscientific=sum(o.classification.verdict is Verdict.UNSCIENTIFIC for o in classified),
        extracted=sum(o.record is not None for o in outcomes),
        flagged=sum(bool(o.flags) for o in outcomes),
        ingest_errors=sum(o.error is not None for o in outcomes),
        wall_clock_seconds=round(elapsed, 6),
        field_flag_counts=dict(Counter(f.field or "document" for f in queue)),
    )
    if elapsed > 0:
        manifest.docs_per_minute = round(manifest.extracted * 60 / elapsed, 3)
        if manifest.extracted:
            manifest.seconds_per_doc = round(elapsed / manifest.extracted, 6)
    manifest.exit_code = 2 if manifest.flagged else 0
    (output_dir / MANIFEST_NAME).write_text(manifest.to_json(), encoding="utf-8")
    return manifest
