"""Turn PDFs and ``.spans`` files into :class:`DocumentText` and pick rule pages."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .model import DocumentText, TextSpan, normalize_text

log = logging.getLogger(__name__)

PathLike = Union[str, Path]

SPAN_SUFFIX = ".spans"
_BOLD_TOKENS = ("bold", "black", "heavy")


class IngestError(Exception):
    """Base class for per-document ingestion failures (routed to review)."""

    reason = "IngestError"


class UnreadablePdf(IngestError):
    reason = "UnreadablePdf"


class NoTextContent(IngestError):
    reason = "NoTextContent"


class MalformedSpanFile(IngestError):
    reason = "MalformedSpanFile"

    def __init__(self, path: PathLike, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.line = line


def is_bold_font(font_name: str) -> bool:
    lowered = font_name.lower()
    return any(token in lowered for token in _BOLD_TOKENS)


# -- span-interchange files ---------------------------------------------------

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESCAPE = re.compile(r"\\(.)")
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}


def _escape(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def _unescape(text: str) -> str:
    def repl(m: re.Match) -> str:
        try:
            return _UNESCAPES[m.group(1)]
        except KeyError:
            raise ValueError(f"unknown escape \\{m.group(1)}") from None

    if text.endswith("\\") and not text.endswith("\\\\"):
        raise ValueError("dangling escape at end of text")
    return _UNESCAPE.sub(repl, text)


def _format_float(value: float) -> str:
    return repr(float(value))


def dumps_spans(doc: DocumentText) -> str:
    lines = [f"{_escape(doc.doc_id)}\t{doc.page_count}"]
    for s in doc.spans:
        lines.append(
            "\t".join(
                (
                    str(s.page),
                    str(s.order),
                    _escape(s.font_name),
                    _format_float(s.font_size),
                    "1" if s.bold else "0",
                    _format_float(s.baseline_y),
                    _escape(s.text),
                )
            )
        )
    return "\n".join(lines) + "\n"


def save_span_file(doc: DocumentText, path: PathLike) -> None:
    Path(path).write_bytes(dumps_spans(doc).encode("utf-8"))


def loads_spans(content: str, source: PathLike = "<string>") -> DocumentText:
    lines = content.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MalformedSpanFile(source, 1, "missing header line")
    header = lines[0].split("\t")
    if len(header) != 2:
        raise MalformedSpanFile(source, 1, "header must be doc_id<TAB>page_count")
    try:
        doc_id = _unescape(header[0])
        page_count = int(header[1])
    except ValueError as exc:
        raise MalformedSpanFile(source, 1, str(exc)) from None
    if page_count < 1:
        raise MalformedSpanFile(source, 1, f"page_count must be >= 1, got {page_count}")

    spans = []
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        cols = line.split("\t")
        if len(cols) != 7:
            raise MalformedSpanFile(source, lineno, f"expected 7 fields, got {len(cols)}")
        try:
            page, order = int(cols[0]), int(cols[1])
            if cols[4] not in ("0", "1"):
                raise ValueError(f"bold flag must be 0 or 1, got {cols[4]!r}")
            span = TextSpan(
                text=_unescape(cols[6]),
                page=page,
                order=order,
                font_name=_unescape(cols[2]),
                font_size=float(cols[3]),
                bold=cols[4] == "1",
                baseline_y=float(cols[5]),
            )
        except ValueError as exc:
            raise MalformedSpanFile(source, lineno, str(exc)) from None
        if not span.page <= page_count:
            raise MalformedSpanFile(source, lineno, f"page {page} exceeds page_count {page_count}")
        if (page, order) in seen:
            raise MalformedSpanFile(source, lineno, f"duplicate order {order} on page {page}")
        seen.add((page, order))
        spans.append(span)
    return DocumentText.from_unsorted(doc_id, page_count, spans)


def load_span_file(path: PathLike) -> DocumentText:
    try:
        content = Path(path).read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedSpanFile(path, 1, f"not UTF-8: {exc}") from None
    return loads_spans(content, path)


# -- PDF backend --------------------------------------------------------------


def extract_document_text(pdf_path: PathLike) -> DocumentText:
    """Extract styled line-level spans from a PDF with PyMuPDF.

    Consecutive chunks on one line sharing font name and size are merged.
    """
    import pymupdf

    path = Path(pdf_path)
    try:
        pdf = pymupdf.open(path)
    except Exception as exc:
        raise UnreadablePdf(f"{path}: {exc}") from None
    with pdf:
        if pdf.needs_pass:
            raise UnreadablePdf(f"{path}: encrypted")
        if pdf.page_count < 1:
            raise UnreadablePdf(f"{path}: no pages")
        spans: list[TextSpan] = []
        try:
            for page_no, page in enumerate(pdf, start=1):
                spans.extend(_page_spans(page, page_no))
        except Exception as exc:  # pymupdf raises assorted errors on damaged streams
            raise UnreadablePdf(f"{path}: {exc}") from None
        if not spans:
            raise NoTextContent(f"{path}: no extractable text")
        return DocumentText(path.stem, pdf.page_count, tuple(spans))


def _page_spans(page, page_no: int) -> list[TextSpan]:
    out: list[TextSpan] = []
    data = page.get_text("dict")
    for block in data["blocks"]:
        for line in block.get("lines", ()):
            merged: list[list] = []  # [font, size, text, baseline]
            for raw in line["spans"]:
                font, size = raw["font"], round(float(raw["size"]), 2)
                if merged and merged[-1][0] == font and merged[-1][1] == size:
                    merged[-1][2] += raw["text"]
                else:
                    merged.append([font, size, raw["text"], round(float(raw["origin"][1]), 2)])
            for font, size, text, baseline in merged:
                text = normalize_text(text)
                if not text or size <= 0:
                    continue
                out.append(
                    TextSpan(
                        text=text,
                        page=page_no,
                        order=len(out),
                        font_name=font,
                        font_size=size,
                        bold=is_bold_font(font),
                        baseline_y=baseline,
                    )
                )
    return out


def load_document(path: PathLike) -> DocumentText:
    """Dispatch on suffix: ``.spans`` files are parsed, anything else is a PDF."""
    path = Path(path)
    if path.suffix.lower() == SPAN_SUFFIX:
        return load_span_file(path)
    return extract_document_text(path)


# -- page selection -----------------------------------------------------------


@dataclass(frozen=True)
class PageSelection:
    short_doc_pages: int = 7
    short_tail: int = 2
    long_tail: int = 4

    def tail_pages(self, page_count: int) -> list[int]:
        want = self.short_tail if page_count <= self.short_doc_pages else self.long_tail
        n = max(0, min(want, page_count - 1))
        return list(range(page_count - n + 1, page_count + 1))


@dataclass(frozen=True)
class SelectedText:
    doc_id: str
    first_page_spans: tuple[TextSpan, ...]
    tail_spans: tuple[TextSpan, ...]
    tail_page_numbers: tuple[int, ...]
    page_count: int = 1

    def first_page(self) -> DocumentText:
        return DocumentText(self.doc_id, self.page_count, self.first_page_spans)

    def tail(self) -> DocumentText:
        return DocumentText(self.doc_id, self.page_count, self.tail_spans)


def select_pages(doc: DocumentText, selection: PageSelection = PageSelection()) -> SelectedText:
    tail = selection.tail_pages(doc.page_count)
    tail_set = set(tail)
    return SelectedText(
        doc_id=doc.doc_id,
        first_page_spans=tuple(s for s in doc.spans if s.page == 1),
        tail_spans=tuple(s for s in doc.spans if s.page in tail_set),
        tail_page_numbers=tuple(tail),
        page_count=doc.page_count,
    )
