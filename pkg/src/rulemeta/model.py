"""Shared domain types, text normalization and marker-phrase lookup."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

FIELDS = ("title", "abstract", "keywords", "body_text", "conclusions", "references")


class Status(str, Enum):
    EXTRACTED = "extracted"
    MISSING = "missing"
    EMPTY = "empty"


class InvalidRange(ValueError):
    """Raised when a slice's start anchor does not precede its end anchor."""


_HYPHEN_BREAK = re.compile(r"(?<=[^\W\d_])-[ \t]*\r?\n\s*(?=[^\W\d_])")
_WHITESPACE = re.compile(r"\s+")
# Non-whitespace control characters, surrogates and non-characters (not valid in XML).
_CONTROL = re.compile(r"[\x00-\x08\x0e-\x1b\x7f-\x84\x86-\x9f\ud800-\udfff\ufffe\uffff]")
_SEPARATORS = " —–-:."


def normalize_text(raw: str) -> str:
    """NFC-normalize, repair end-of-line hyphenation and collapse whitespace.

    >>> normalize_text("  Meta-\\ndata   Extraction ")
    'Metadata Extraction'
    """
    if not raw:
        return ""
    text = unicodedata.normalize("NFC", raw)
    text = _CONTROL.sub("", text)
    text = _HYPHEN_BREAK.sub("", text)
    return _WHITESPACE.sub(" ", text).strip()


def trim_separators(text: str) -> str:
    return text.lstrip(_SEPARATORS).strip()


@dataclass(frozen=True)
class TextSpan:
    text: str
    page: int
    order: int
    font_name: str
    font_size: float
    bold: bool = False
    baseline_y: float = 0.0

    def __post_init__(self) -> None:
        if self.font_size <= 0:
            raise ValueError(f"font_size must be positive, got {self.font_size}")
        if self.page < 1 or self.order < 0:
            raise ValueError(f"bad span position page={self.page} order={self.order}")
        if not normalize_text(self.text):
            raise ValueError("span text is empty after normalization")

    @property
    def style(self) -> tuple[str, float, bool]:
        return (self.font_name, self.font_size, self.bold)


@dataclass(frozen=True)
class DocumentText:
    doc_id: str
    page_count: int
    spans: tuple[TextSpan, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "spans", tuple(self.spans))
        if self.page_count < 1:
            raise ValueError(f"page_count must be >= 1, got {self.page_count}")
        prev = None
        for span in self.spans:
            if not 1 <= span.page <= self.page_count:
                raise ValueError(f"span page {span.page} outside 1..{self.page_count}")
            key = (span.page, span.order)
            if prev is not None and key <= prev:
                raise ValueError(f"spans not strictly sorted by (page, order) at {key}")
            prev = key

    @classmethod
    def from_unsorted(cls, doc_id: str, page_count: int, spans: Iterable[TextSpan]) -> "DocumentText":
        return cls(doc_id, page_count, tuple(sorted(spans, key=lambda s: (s.page, s.order))))

    def __len__(self) -> int:
        return len(self.spans)

    def page_spans(self, page: int) -> list[TextSpan]:
        return [s for s in self.spans if s.page == page]


@dataclass(frozen=True)
class MarkerConfig:
    abstract_markers: tuple[str, ...] = ("Abstract", "ABSTRACT")
    keywords_markers: tuple[str, ...] = ("KEYWORDS", "Keywords", "INDEX TERMS", "Index Terms")
    intro_markers: tuple[str, ...] = ("I. Intro", "1. Intro", "Intro", "I. INTRO", "1. INTRO", "INTRO")
    conclusion_markers: tuple[str, ...] = ("Conclusion", "CONCLUSION")
    reference_markers: tuple[str, ...] = ("Reference", "REFERENCE")
    acknowledgment_markers: tuple[str, ...] = (
        "ACKNOWLEDGMENT", "Acknowledgment", "ACKNOWLEDGEMENT", "Acknowledgement",
    )

    def __post_init__(self) -> None:
        for name in self.__dataclass_fields__:
            values = tuple(getattr(self, name))
            if not values:
                raise ValueError(f"{name} must not be empty")
            if len(set(values)) != len(values):
                raise ValueError(f"{name} contains duplicate entries")
            object.__setattr__(self, name, values)

    def all_markers(self) -> set[str]:
        return {m for name in self.__dataclass_fields__ for m in getattr(self, name)}


@dataclass(frozen=True)
class MarkerHit:
    marker: str
    page: int
    span_index: int
    char_offset: int = 0

    @property
    def end_offset(self) -> int:
        return self.char_offset + len(self.marker)


@dataclass(frozen=True)
class FieldValue:
    value: str = ""
    status: Status = Status.MISSING

    def __post_init__(self) -> None:
        status = Status(self.status)
        object.__setattr__(self, "status", status)
        if status is Status.EXTRACTED and not self.value:
            raise ValueError("extracted field must carry a non-empty value")
        if status is not Status.EXTRACTED and self.value:
            raise ValueError(f"{status.value} field must have an empty value")

    @classmethod
    def of(cls, text: str, status_if_empty: Status = Status.EMPTY) -> "FieldValue":
        if text:
            return cls(text, Status.EXTRACTED)
        return cls("", status_if_empty)


@dataclass(frozen=True)
class MetadataRecord:
    doc_id: str
    title: FieldValue = field(default_factory=FieldValue)
    abstract: FieldValue = field(default_factory=FieldValue)
    keywords: FieldValue = field(default_factory=FieldValue)
    body_text: FieldValue = field(default_factory=FieldValue)
    conclusions: FieldValue = field(default_factory=FieldValue)
    references: FieldValue = field(default_factory=FieldValue)

    def get(self, name: str) -> FieldValue:
        if name not in FIELDS:
            raise KeyError(name)
        return getattr(self, name)

    def items(self) -> list[tuple[str, FieldValue]]:
        return [(name, getattr(self, name)) for name in FIELDS]

    @property
    def keyword_list(self) -> list[str]:
        return split_keywords(self.keywords.value)


def split_keywords(raw: str) -> list[str]:
    return [part.strip() for part in re.split(r"[,;]", raw) if part.strip()]


# Leading section label ("1.", "2.3", "IV.") ahead of a heading marker.
_SECTION_LABEL = re.compile(r"^(?:\d+(?:\.\d+)*\.?|[IVXLC]+\.)\s*")


def match_marker(text: str, markers: Sequence[str]) -> Optional[tuple[str, int]]:
    """Return ``(marker, char_offset)`` if ``text`` starts with one of ``markers``.

    A numbered heading such as ``"7. Conclusion"`` also matches ``"Conclusion"``;
    the longest matching marker wins so remainders are computed correctly.
    """
    best: Optional[tuple[str, int]] = None
    for marker in markers:
        if text.startswith(marker) and (best is None or len(marker) > len(best[0])):
            best = (marker, 0)
    if best is not None:
        return best
    label = _SECTION_LABEL.match(text)
    if label and label.end() > 0:
        rest = text[label.end():]
        for marker in markers:
            if rest.startswith(marker) and (best is None or len(marker) > len(best[0])):
                best = (marker, label.end())
    return best


def locate_marker(
    doc: DocumentText,
    markers: Sequence[str],
    search_from: int = 0,
    search_to: Optional[int] = None,
) -> Optional[MarkerHit]:
    """First span in ``[search_from, search_to)`` whose text starts with a marker."""
    if search_to is None:
        search_to = len(doc.spans)
    if not 0 <= search_from <= search_to <= len(doc.spans):
        raise IndexError(f"bad search range [{search_from}, {search_to}) for {len(doc.spans)} spans")
    for index in range(search_from, search_to):
        span = doc.spans[index]
        found = match_marker(normalize_text(span.text), markers)
        if found:
            return MarkerHit(found[0], span.page, index, found[1])
    return None


def locate_last_marker(
    doc: DocumentText,
    markers: Sequence[str],
    search_from: int = 0,
    search_to: Optional[int] = None,
) -> Optional[MarkerHit]:
    if search_to is None:
        search_to = len(doc.spans)
    last = None
    while True:
        hit = locate_marker(doc, markers, search_from, search_to)
        if hit is None:
            return last
        last = hit
        search_from = hit.span_index + 1


def _remainder(text: str, hit: MarkerHit) -> str:
    rest = text[hit.end_offset:]
    # "Conclusions" matched by "Conclusion": drop the tail of the heading word.
    i = 0
    while i < len(rest) and rest[i].isalnum():
        i += 1
    return rest[i:]


def slice_text(
    doc: DocumentText,
    start: Optional[MarkerHit],
    end: Optional[MarkerHit],
    include_from_remainder: bool = False,
) -> str:
    """Normalized text of the spans strictly between two anchors.

    ``None`` for ``start``/``end`` means document start/end. Span texts are
    line-joined before normalization so hyphenated line breaks are repaired.
    """
    lo = 0 if start is None else start.span_index + 1
    hi = len(doc.spans) if end is None else end.span_index
    if start is not None and end is not None and start.span_index >= end.span_index:
        raise InvalidRange(f"start span {start.span_index} does not precede end span {end.span_index}")
    if lo > hi:
        raise InvalidRange(f"empty or reversed range [{lo}, {hi})")
    parts = [doc.spans[i].text for i in range(lo, hi)]
    if start is not None and include_from_remainder:
        head = _remainder(normalize_text(doc.spans[start.span_index].text), start)
        parts.insert(0, head)
    text = normalize_text("\n".join(parts))
    if start is not None:
        text = trim_separators(text)
    return text
