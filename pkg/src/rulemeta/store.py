"""Index records by document name; persist as SQLite, XML and JSON; linear search."""

from __future__ import annotations

import json
import sqlite3
import threading
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .model import FIELDS, FieldValue, MetadataRecord, Status, normalize_text

PathLike = Union[str, Path]
SNIPPET_WIDTH = 80


class StorageError(Exception):
    pass


def utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def parse_timestamp(text: str) -> datetime:
    return datetime.fromisoformat(text.replace("Z", "+00:00")).astimezone(timezone.utc)


@dataclass(frozen=True)
class IndexEntry:
    doc_id: str
    record: MetadataRecord
    indexed_at: datetime
    source_path: str = ""

    def __post_init__(self) -> None:
        if self.record.doc_id != self.doc_id:
            raise ValueError(f"record id {self.record.doc_id!r} != entry id {self.doc_id!r}")
        if self.indexed_at.tzinfo is None:
            raise ValueError("indexed_at must be timezone-aware (UTC)")


@dataclass(frozen=True)
class SearchHit:
    doc_id: str
    field: str
    snippet: str


_COLUMNS = ["doc_id"] + [c for f in FIELDS for c in (f, f"{f}_status")] + ["indexed_at", "source_path"]
# quoted, since some field names (``references``) are SQL keywords
_COLS_SQL = ", ".join(f'"{c}"' for c in _COLUMNS)


class MetadataStore:
    """Single-table SQLite store keyed by document id; ``":memory:"`` for a scratch store.

    Writes are serialized through a lock; the connection may be shared by threads.
    """

    def __init__(self, path: PathLike = ":memory:"):
        self.path = str(path)
        self._lock = threading.Lock()
        try:
            self._conn = sqlite3.connect(self.path, check_same_thread=False)
            cols = ", ".join(f'"{c}" TEXT NOT NULL' for c in _COLUMNS[1:])
            self._conn.execute(f'CREATE TABLE IF NOT EXISTS articles ("doc_id" TEXT PRIMARY KEY, {cols})')
            self._conn.commit()
        except sqlite3.Error as exc:
            raise StorageError(f"cannot open store {self.path}: {exc}") from exc

    def close(self) -> None:
        self._conn.close()

    def __enter__(self) -> "MetadataStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def __len__(self) -> int:
        return self._conn.execute("SELECT COUNT(*) FROM articles").fetchone()[0]

    def put(self, entry: IndexEntry) -> None:
        row = [entry.doc_id]
        for name, value in entry.record.items():
            row += [value.value, value.status.value]
        row += [format_timestamp(entry.indexed_at), entry.source_path]
        marks = ", ".join("?" * len(_COLUMNS))
        with self._lock:
            try:
                self._conn.execute(f"INSERT OR REPLACE INTO articles ({_COLS_SQL}) VALUES ({marks})", row)
                self._conn.commit()
            except sqlite3.Error as exc:
                raise StorageError(str(exc)) from exc

    def put_all(self, entries: Iterable[IndexEntry]) -> None:
        for entry in entries:
            self.put(entry)

    @staticmethod
    def _entry(row: Sequence[str]) -> IndexEntry:
        fields = {}
        for i, name in enumerate(FIELDS):
            fields[name] = FieldValue(row[1 + 2 * i], Status(row[2 + 2 * i]))
        return IndexEntry(row[0], MetadataRecord(row[0], **fields), parse_timestamp(row[-2]), row[-1])

    def get(self, doc_id: str) -> Optional[IndexEntry]:
        row = self._conn.execute(
            f"SELECT {_COLS_SQL} FROM articles WHERE doc_id = ?", (doc_id,)
        ).fetchone()
        return self._entry(row) if row else None

    def entries(self) -> list[IndexEntry]:
        rows = self._conn.execute(f"SELECT {_COLS_SQL} FROM articles").fetchall()
        # sort in Python so ordering is code-point based regardless of collation
        return sorted((self._entry(r) for r in rows), key=lambda e: e.doc_id)

    def search(self, query: str, fields: Sequence[str] = FIELDS) -> list[SearchHit]:
        """Case-insensitive substring crawl over every stored field value."""
        unknown = set(fields) - set(FIELDS)
        if unknown:
            raise ValueError(f"unknown fields: {sorted(unknown)}")
        needle = normalize_text(query).casefold()
        if not needle:
            return []
        hits = []
        for entry in self.entries():
            for name in FIELDS:
                if name not in fields:
                    continue
                text = normalize_text(entry.record.get(name).value)
                if needle in text.casefold():
                    hits.append(SearchHit(entry.doc_id, name, make_snippet(text, needle)))
        return hits

    # -- export / import -------------------------------------------------------

    def export_xml(self, path: PathLike) -> None:
        _write(path, entries_to_xml(self.entries()))

    def export_json(self, path: PathLike) -> None:
        _write(path, entries_to_json(self.entries()))

    def import_xml(self, path: PathLike) -> None:
        self.put_all(entries_from_xml(_read(path)))

    def import_json(self, path: PathLike) -> None:
        self.put_all(entries_from_json(_read(path)))


def make_snippet(text: str, needle: str, width: int = SNIPPET_WIDTH) -> str:
    folded = text.casefold()
    pos = folded.find(needle)
    if len(folded) != len(text):  # casefolding changed lengths; approximate position
        pos = int(pos * len(text) / max(len(folded), 1))
    center = pos + len(needle) // 2
    lo = max(0, min(center - width // 2, len(text) - width))
    return text[lo : lo + width]


def _write(path: PathLike, content: str) -> None:
    try:
        Path(path).write_bytes(content.encode("utf-8"))
    except OSError as exc:
        raise StorageError(f"cannot write {path}: {exc}") from exc


def _read(path: PathLike) -> str:
    try:
        return Path(path).read_bytes().decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise StorageError(f"cannot read {path}: {exc}") from exc


def entries_to_xml(entries: Iterable[IndexEntry]) -> str:
    root = ET.Element("articles")
    for entry in sorted(entries, key=lambda e: e.doc_id):
        art = ET.SubElement(
            root,
            "article",
            {"id": entry.doc_id, "indexed_at": format_timestamp(entry.indexed_at), "source_path": entry.source_path},
        )
        for name, value in entry.record.items():
            el = ET.SubElement(art, name, {"status": value.status.value})
            el.text = value.value
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def entries_from_xml(content: str) -> list[IndexEntry]:
    try:
        root = ET.fromstring(content.encode("utf-8"))
    except ET.ParseError as exc:
        raise StorageError(f"malformed XML: {exc}") from exc
    if root.tag != "articles":
        raise StorageError(f"expected <articles> root, got <{root.tag}>")
    out = []
    for art in root:
        children = {el.tag: el for el in art}
        if art.tag != "article" or sorted(children) != sorted(FIELDS) or len(art) != len(FIELDS):
            raise StorageError(f"malformed <{art.tag}> element {art.get('id')!r}")
        doc_id = art.get("id", "")
        fields = {
            name: FieldValue(children[name].text or "", Status(children[name].get("status")))
            for name in FIELDS
        }
        out.append(
            IndexEntry(
                doc_id,
                MetadataRecord(doc_id, **fields),
                parse_timestamp(art.get("indexed_at", "")),
                art.get("source_path", ""),
            )
        )
    return out


def record_to_dict(record: MetadataRecord) -> dict:
    out: dict = {"id": record.doc_id}
    for name, value in record.items():
        out[name] = {"value": value.value, "status": value.status.value}
    return out


def record_from_dict(obj: dict) -> MetadataRecord:
    fields = {}
    for name in FIELDS:
        if name in obj:
            fields[name] = FieldValue(obj[name]["value"], Status(obj[name]["status"]))
    return MetadataRecord(obj["id"], **fields)


def entries_to_json(entries: Iterable[IndexEntry]) -> str:
    items = []
    for entry in sorted(entries, key=lambda e: e.doc_id):
        obj = record_to_dict(entry.record)
        obj["indexed_at"] = format_timestamp(entry.indexed_at)
        obj["source_path"] = entry.source_path
        items.append(obj)
    return json.dumps(items, indent=2, ensure_ascii=False) + "\n"


def entries_from_json(content: str) -> list[IndexEntry]:
    try:
        items = json.loads(content)
        return [
            IndexEntry(obj["id"], record_from_dict(obj), parse_timestamp(obj["indexed_at"]), obj.get("source_path", ""))
            for obj in items
        ]
    except (ValueError, KeyError, TypeError) as exc:
        raise StorageError(f"malformed JSON store: {exc}") from exc
