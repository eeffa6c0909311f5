from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rulemeta.model import FIELDS, DocumentText, FieldValue, MetadataRecord, Status, TextSpan, normalize_text
from rulemeta.store import IndexEntry

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).parent / "data"
SMOKE = DATA / "smoke"

# -- hypothesis strategies ------------------------------------------------------

_chars = st.characters(blacklist_categories=("Cs",))
raw_text = st.text(_chars, max_size=40)
span_text = raw_text.filter(lambda t: normalize_text(t) != "")
field_text = st.text(st.characters(blacklist_categories=("Cs", "Cc")), min_size=1, max_size=60).map(
    normalize_text
).filter(bool)


@st.composite
def documents(draw, max_pages: int = 5, max_spans: int = 12) -> DocumentText:
    page_count = draw(st.integers(1, max_pages))
    n = draw(st.integers(0, max_spans))
    pages = sorted(draw(st.lists(st.integers(1, page_count), min_size=n, max_size=n)))
    spans, order = [], {}
    for page in pages:
        order[page] = order.get(page, -1) + draw(st.integers(1, 3))
        spans.append(
            TextSpan(
                text=draw(span_text),
                page=page,
                order=order[page],
                font_name=draw(st.text(_chars, max_size=12)),
                font_size=draw(st.floats(0.5, 72, allow_nan=False)),
                bold=draw(st.booleans()),
                baseline_y=draw(st.floats(-1000, 1000, allow_nan=False)),
            )
        )
    doc_id = draw(st.text(_chars, max_size=16))
    return DocumentText(doc_id, page_count, tuple(spans))


@st.composite
def field_values(draw) -> FieldValue:
    status = draw(st.sampled_from(list(Status)))
    if status is Status.EXTRACTED:
        return FieldValue(draw(field_text), status)
    return FieldValue("", status)


_ids = st.text(st.characters(whitelist_categories=("L", "N"), whitelist_characters="-_."), min_size=1, max_size=12)


@st.composite
def entries(draw, doc_id=None) -> IndexEntry:
    doc_id = doc_id or draw(_ids)
    record = MetadataRecord(doc_id, **{name: draw(field_values()) for name in FIELDS})
    ts = datetime(2020, 1, 1, tzinfo=timezone.utc).timestamp() + draw(st.integers(0, 10**8))
    source = draw(st.text(st.characters(blacklist_categories=("Cs", "Cc")), max_size=30))
    return IndexEntry(doc_id, record, datetime.fromtimestamp(ts, timezone.utc), source)


@st.composite
def entry_sets(draw, max_size: int = 8) -> list[IndexEntry]:
    ids = draw(st.lists(_ids, max_size=max_size, unique=True))
    return [draw(entries(doc_id=i)) for i in ids]


# -- acceptance reporting -------------------------------------------------------

_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    def record(name: str, passed: bool, detail: str = "") -> None:
        _CRITERIA[name] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split()[0])):
        passed, detail = _CRITERIA[name]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
