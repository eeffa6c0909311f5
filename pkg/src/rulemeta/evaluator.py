"""Score extracted records and classifier verdicts against ground truth."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from .model import FIELDS, FieldValue, MetadataRecord, Status, normalize_text

PathLike = Union[str, Path]

SHORT_FIELDS = ("title", "abstract", "keywords")
LONG_FIELDS = ("body_text", "conclusions", "references")
DEFAULT_JACCARD = 0.95


class EvaluationError(Exception):
    pass


class MissingTruth(EvaluationError):
    def __init__(self, doc_id: str):
        super().__init__(f"no ground truth for document {doc_id!r}")
        self.doc_id = doc_id


class MalformedTruth(EvaluationError):
    pass


class DegenerateTruthSet(EvaluationError):
    pass


class SplitTooLarge(EvaluationError):
    def __init__(self, splits: Sequence[int], corpus_size: int):
        super().__init__(f"split sizes {list(splits)} exceed corpus size {corpus_size}")
        self.splits = list(splits)


@dataclass(frozen=True)
class GroundTruthRecord:
    doc_id: str
    is_scientific: bool = True
    title: str = ""
    abstract: str = ""
    keywords: str = ""
    body_text: str = ""
    conclusions: str = ""
    references: str = ""

    def get(self, name: str) -> str:
        if name not in FIELDS:
            raise KeyError(name)
        return getattr(self, name)

    def to_dict(self) -> dict:
        out = {"id": self.doc_id, "is_scientific": self.is_scientific}
        out.update({name: getattr(self, name) for name in FIELDS})
        return out

    @classmethod
    def from_dict(cls, obj: Mapping) -> "GroundTruthRecord":
        return cls(
            doc_id=str(obj["id"]),
            is_scientific=bool(obj["is_scientific"]),
            **{name: str(obj.get(name) or "") for name in FIELDS},
        )


def dumps_truth(records: Iterable[GroundTruthRecord]) -> str:
    return "".join(json.dumps(r.to_dict(), ensure_ascii=False) + "\n" for r in records)


def load_truth(path: PathLike) -> dict[str, GroundTruthRecord]:
    truth: dict[str, GroundTruthRecord] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = GroundTruthRecord.from_dict(json.loads(line))
            except (ValueError, KeyError, TypeError) as exc:
                raise MalformedTruth(f"{path}:{lineno}: {exc}") from None
            if rec.doc_id in truth:
                raise MalformedTruth(f"{path}:{lineno}: duplicate id {rec.doc_id!r}")
            truth[rec.doc_id] = rec
    return truth


def _tokens(text: str) -> Counter:
    return Counter(normalize_text(text).casefold().split())


def jaccard(a: str, b: str) -> float:
    """Multiset Jaccard similarity of whitespace tokens (1.0 for two empty texts)."""
    ta, tb = _tokens(a), _tokens(b)
    union = sum((ta | tb).values())
    if union == 0:
        return 1.0
    return sum((ta & tb).values()) / union


def field_correct(
    extracted: FieldValue, expected: str, name: str, threshold: float = DEFAULT_JACCARD
) -> bool:
    expected_norm = normalize_text(expected)
    if extracted.status is not Status.EXTRACTED:
        return not expected_norm
    if name in LONG_FIELDS:
        return bool(expected_norm) and jaccard(extracted.value, expected_norm) >= threshold
    return normalize_text(extracted.value).casefold() == expected_norm.casefold()


@dataclass(frozen=True)
class ClassificationScores:
    a1: float
    a2: float
    a: float


def classification_accuracy(preds: Iterable[tuple[bool, bool]]) -> ClassificationScores:
    """``preds`` holds ``(predicted_scientific, truly_scientific)`` pairs.

    A1 is the share of scientific papers recognised, A2 the share of
    unscientific ones, and A their plain average.
    """
    sci = sci_ok = unsci = unsci_ok = 0
    for predicted, truth in preds:
        if truth:
            sci += 1
            sci_ok += bool(predicted)
        else:
            unsci += 1
            unsci_ok += not predicted
    if sci == 0 or unsci == 0:
        raise DegenerateTruthSet(f"need both classes in truth (scientific={sci}, unscientific={unsci})")
    a1 = 100 * sci_ok / sci
    a2 = 100 * unsci_ok / unsci
    return ClassificationScores(a1, a2, (a1 + a2) / 2)


@dataclass
class SplitResult:
    split_size: int
    accuracy: dict[str, Optional[float]]


@dataclass
class EvaluationReport:
    splits: list[SplitResult] = field(default_factory=list)
    overall: dict[str, Optional[float]] = field(default_factory=dict)
    classification: Optional[ClassificationScores] = None
    docs_per_minute: Optional[float] = None
    seconds_per_doc: Optional[float] = None
    label: str = "rulemeta"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render(self) -> str:
        def fmt(v: Optional[float]) -> str:
            return "N/A" if v is None else f"{v:.2f}"

        header = ["Field"] + [f"n={s.split_size}" for s in self.splits] + ["Overall"]
        rows = [header]
        for name in FIELDS:
            rows.append([name] + [fmt(s.accuracy.get(name)) for s in self.splits] + [fmt(self.overall.get(name))])
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        lines = [
            "  ".join(cell.ljust(w) if i == 0 else cell.rjust(w) for i, (cell, w) in enumerate(zip(r, widths)))
            for r in rows
        ]
        lines.insert(1, "  ".join("-" * w for w in widths))
        if self.classification:
            c = self.classification
            lines.append(f"classification: A1={c.a1:.2f}  A2={c.a2:.2f}  A={c.a:.2f}")
        if self.docs_per_minute is not None:
            lines.append(f"throughput: {self.docs_per_minute:.1f} docs/min, {self.seconds_per_doc:.3f} s/doc")
        return "\n".join(lines) + "\n"


def run_evaluation(
    records: Iterable[MetadataRecord],
    truth: Mapping[str, GroundTruthRecord],
    splits: Sequence[int],
    threshold: float = DEFAULT_JACCARD,
    fields_present: Optional[Mapping[str, Sequence[str]]] = None,
) -> EvaluationReport:
    """Per-split, per-field accuracy over doc_id-sorted prefixes of ``records``.

    ``fields_present`` maps doc_id to the fields a tool actually produced; a
    field absent from every document is reported as N/A rather than scored.
    """
    ordered = sorted(records, key=lambda r: r.doc_id)
    for rec in ordered:
        if rec.doc_id not in truth:
            raise MissingTruth(rec.doc_id)
    too_big = [s for s in splits if s > len(ordered) or s < 1]
    if too_big:
        raise SplitTooLarge(too_big, len(ordered))

    applicable = set(FIELDS)
    if fields_present is not None:
        applicable = {name for name in FIELDS if any(name in f for f in fields_present.values())}

    report = EvaluationReport()
    for size in splits:
        subset = ordered[:size]
        acc: dict[str, Optional[float]] = {}
        for name in FIELDS:
            if name not in applicable:
                acc[name] = None
                continue
            correct = sum(field_correct(r.get(name), truth[r.doc_id].get(name), name, threshold) for r in subset)
            acc[name] = correct / size * 100
        report.splits.append(SplitResult(size, acc))
    for name in FIELDS:
        values = [s.accuracy[name] for s in report.splits if s.accuracy[name] is not None]
        report.overall[name] = sum(values) / len(values) if values else None
    return report
