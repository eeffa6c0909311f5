"""The six fixed field rules: title, abstract, keywords, body, conclusions, references."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .ingest import PageSelection, SelectedText, select_pages
from .model import (
    FIELDS,
    DocumentText,
    FieldValue,
    MarkerConfig,
    MarkerHit,
    MetadataRecord,
    Status,
    locate_last_marker,
    locate_marker,
    normalize_text,
    slice_text,
)


class Reason(str, Enum):
    MISSING_START_MARKER = "MissingStartMarker"
    MISSING_END_MARKER = "MissingEndMarker"
    NO_TITLE_CANDIDATE = "NoTitleCandidate"
    EMPTY_WINDOW = "EmptyWindow"
    NOT_BOLD = "NotBold"


@dataclass(frozen=True)
class ReviewFlag:
    doc_id: str
    field: Optional[str]
    reason: str

    def to_dict(self) -> dict:
        return {"id": self.doc_id, "field": self.field, "reason": self.reason}


FieldResult = tuple[FieldValue, Optional[ReviewFlag]]


def _flag(sel: SelectedText, name: str, reason: Reason) -> ReviewFlag:
    return ReviewFlag(sel.doc_id, name, reason.value)


def _windowed(
    sel: SelectedText,
    name: str,
    doc: DocumentText,
    start: MarkerHit,
    end: Optional[MarkerHit],
    fallback: bool,
    remainder: bool = False,
) -> FieldResult:
    text = slice_text(doc, start, end, include_from_remainder=remainder)
    if not text:
        return FieldValue("", Status.EMPTY), _flag(sel, name, Reason.EMPTY_WINDOW)
    flag = _flag(sel, name, Reason.MISSING_END_MARKER) if fallback else None
    return FieldValue(text, Status.EXTRACTED), flag


def _missing(sel: SelectedText, name: str, reason: Reason = Reason.MISSING_START_MARKER) -> FieldResult:
    return FieldValue("", Status.MISSING), _flag(sel, name, reason)


def extract_title(sel: SelectedText, cfg: MarkerConfig = MarkerConfig(), strict: bool = True) -> FieldResult:
    """Bold, biggest-font text between the top of page one and the abstract marker.

    In relaxed mode the bold and page-wide-maximum conditions only raise a
    flag; the largest text before the abstract is still returned.
    """
    first = sel.first_page_spans
    abstract = locate_marker(sel.first_page(), cfg.abstract_markers)
    region = first[: abstract.span_index] if abstract else first
    if not region:
        return _missing(sel, "title", Reason.NO_TITLE_CANDIDATE)

    top = max(s.font_size for s in region)
    if strict and top < max(s.font_size for s in first):
        return _missing(sel, "title", Reason.NO_TITLE_CANDIDATE)
    tied = [i for i, s in enumerate(region) if s.font_size == top]
    bold = [i for i in tied if region[i].bold]
    flag = None
    if not bold:
        if strict:
            return _missing(sel, "title", Reason.NOT_BOLD)
        flag = _flag(sel, "title", Reason.NOT_BOLD)

    start = (bold or tied)[0]
    parts = [region[start].text]
    last = region[start]
    for span in region[start + 1:]:
        if span.style == region[start].style:
            parts.append(span.text)
            last = span
        elif span.font_size < top and abs(span.baseline_y - last.baseline_y) < 1.0:
            continue  # inline footnote marks on the title line
        else:
            break
    return FieldValue(normalize_text("\n".join(parts)), Status.EXTRACTED), flag


def extract_abstract(sel: SelectedText, cfg: MarkerConfig = MarkerConfig()) -> FieldResult:
    first = sel.first_page()
    start = locate_marker(first, cfg.abstract_markers)
    if start is None:
        return _missing(sel, "abstract")
    end = locate_marker(first, cfg.keywords_markers, start.span_index + 1)
    fallback = end is None
    if end is None:
        end = locate_marker(first, cfg.intro_markers, start.span_index + 1)
    return _windowed(sel, "abstract", first, start, end, fallback, remainder=True)


def extract_keywords(sel: SelectedText, cfg: MarkerConfig = MarkerConfig()) -> FieldResult:
    first = sel.first_page()
    start = locate_marker(first, cfg.keywords_markers)
    if start is None:
        return _missing(sel, "keywords")
    end = locate_marker(first, cfg.intro_markers, start.span_index + 1)
    return _windowed(sel, "keywords", first, start, end, end is None, remainder=True)


def extract_body_text(
    sel: SelectedText, full_doc: DocumentText, cfg: MarkerConfig = MarkerConfig()
) -> FieldResult:
    """Intro heading up to the conclusion heading, over every page of the document."""
    first = sel.first_page()
    # Skip title/abstract/keywords so a title such as "Introducing ..." is not an anchor.
    search_from = 0
    for markers in (cfg.abstract_markers, cfg.keywords_markers):
        hit = locate_marker(first, markers)
        if hit is not None:
            search_from = max(search_from, hit.span_index + 1)
    start = locate_marker(full_doc, cfg.intro_markers, search_from)
    if start is None:
        return _missing(sel, "body_text")
    end = locate_marker(full_doc, cfg.conclusion_markers, start.span_index + 1)
    fallback = end is None
    if end is None:
        end = locate_marker(full_doc, cfg.reference_markers, start.span_index + 1)
    return _windowed(sel, "body_text", full_doc, start, end, fallback)


def extract_conclusion(sel: SelectedText, cfg: MarkerConfig = MarkerConfig()) -> FieldResult:
    tail = sel.tail()
    start = locate_marker(tail, cfg.conclusion_markers)
    if start is None:
        return _missing(sel, "conclusions")
    end_markers = cfg.reference_markers + cfg.acknowledgment_markers
    end = locate_marker(tail, end_markers, start.span_index + 1)
    return _windowed(sel, "conclusions", tail, start, end, end is None)


def extract_references(sel: SelectedText, cfg: MarkerConfig = MarkerConfig()) -> FieldResult:
    tail = sel.tail()
    start = locate_last_marker(tail, cfg.reference_markers)
    if start is None:
        return _missing(sel, "references")
    return _windowed(sel, "references", tail, start, None, False)


def extract_fields(
    doc: DocumentText,
    cfg: MarkerConfig = MarkerConfig(),
    strict_title: bool = True,
    pages: PageSelection = PageSelection(),
) -> dict[str, FieldResult]:
    """Every field's value together with its advisory flag, fallbacks included."""
    sel = select_pages(doc, pages)
    return {
        "title": extract_title(sel, cfg, strict_title),
        "abstract": extract_abstract(sel, cfg),
        "keywords": extract_keywords(sel, cfg),
        "body_text": extract_body_text(sel, doc, cfg),
        "conclusions": extract_conclusion(sel, cfg),
        "references": extract_references(sel, cfg),
    }


def extract_all(
    doc: DocumentText,
    cfg: MarkerConfig = MarkerConfig(),
    strict_title: bool = True,
    pages: PageSelection = PageSelection(),
) -> tuple[MetadataRecord, list[ReviewFlag]]:
    """Build the record and the review flags for its Missing/Empty fields.

    Fallback flags on extracted fields are dropped here: each one is implied by
    the Missing flag of the field whose start marker was absent.
    """
    results = extract_fields(doc, cfg, strict_title, pages)
    record = MetadataRecord(doc.doc_id, **{name: results[name][0] for name in FIELDS})
    flags = [
        flag
        for name in FIELDS
        for value, flag in [results[name]]
        if flag is not None and value.status is not Status.EXTRACTED
    ]
    return record, flags
