import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rulemeta.extractor import (
    extract_abstract,
    extract_all,
    extract_body_text,
    extract_conclusion,
    extract_fields,
    extract_keywords,
    extract_references,
    extract_title,
)
from rulemeta.fixtures import PERTURBATIONS, generate, spec_for_seed
from rulemeta.ingest import select_pages
from rulemeta.model import FIELDS, DocumentText, Status, TextSpan, split_keywords


def build(pages):
    """``pages`` is a list of pages, each a list of texts or (text, size, bold) tuples."""
    spans = []
    for p, items in enumerate(pages, start=1):
        for o, item in enumerate(items):
            text, size, bold = (item, 10.0, False) if isinstance(item, str) else item
            spans.append(TextSpan(text, p, o, "Times-Bold" if bold else "Times-Roman", size, bold, 72.0 + 14 * o))
    return DocumentText("doc", len(pages), tuple(spans))


def sel_of(*pages):
    return select_pages(build(list(pages)))


# -- title --------------------------------------------------------------------------


def test_title_basic():
    sel = sel_of([("Deep Parsing", 18, True), ("J. Doe", 10, False), ("Abstract—We parse.", 9, False)])
    value, flag = extract_title(sel)
    assert value.value == "Deep Parsing" and value.status is Status.EXTRACTED and flag is None


def test_title_not_bold_strict_and_relaxed():
    sel = sel_of([("Deep Parsing", 18, False), ("J. Doe", 10, False), ("Abstract—We parse.", 9, False)])
    value, flag = extract_title(sel, strict=True)
    assert value.status is Status.MISSING and flag.reason == "NotBold"
    value, flag = extract_title(sel, strict=False)
    assert value.value == "Deep Parsing" and value.status is Status.EXTRACTED and flag.reason == "NotBold"


def _maximal_runs(items):
    """Reference: split into maximal runs of identical (size, bold) and join the top bold run."""
    runs = []
    for text, size, bold in items:
        if runs and runs[-1][0] == (size, bold):
            runs[-1][1].append(text)
        else:
            runs.append([(size, bold), [text]])
    top = max(size for (size, _), _ in runs)
    for (size, bold), texts in runs:
        if size == top and bold:
            return " ".join(texts)


def test_multiline_title():
    items = [("Rule Based Metadata", 18, True), ("Extraction Framework", 18, True), ("A. Author", 11, False)]
    sel = sel_of(items + [("Abstract", 12, True), "text"])
    value, _ = extract_title(sel)
    assert value.value == _maximal_runs(items) == "Rule Based Metadata Extraction Framework"


def test_title_tie_prefers_bold():
    sel = sel_of([("Author Line", 18, False), ("The Title", 18, True), ("Abstract", 12, True)])
    assert extract_title(sel)[0].value == "The Title"


def test_title_requires_page_maximum_in_strict_mode():
    sel = sel_of([("Small Title", 14, True), ("Abstract", 12, True), ("Huge Drop Cap", 30, True)])
    value, flag = extract_title(sel)
    assert value.status is Status.MISSING and flag.reason == "NoTitleCandidate"
    assert extract_title(sel, strict=False)[0].value == "Small Title"


def test_title_without_candidates():
    value, flag = extract_title(sel_of([("Abstract", 12, True), "text"]))
    assert value.status is Status.MISSING and flag.reason == "NoTitleCandidate"


def test_title_skips_inline_footnote_mark():
    spans = [
        TextSpan("Robust Parsing", 1, 0, "Times-Bold", 18.0, True, 72.0),
        TextSpan("*", 1, 1, "Times-Roman", 7.0, False, 72.0),
        TextSpan("of Tables", 1, 2, "Times-Bold", 18.0, True, 94.0),
        TextSpan("Abstract", 1, 3, "Times-Bold", 12.0, True, 130.0),
    ]
    sel = select_pages(DocumentText("d", 1, tuple(spans)))
    assert extract_title(sel)[0].value == "Robust Parsing of Tables"


# -- abstract / keywords ------------------------------------------------------------


def test_abstract_examples():
    assert extract_abstract(sel_of(["Abstract", "We propose X.", "Keywords: a, b"]))[0].value == "We propose X."
    value, flag = extract_abstract(sel_of(["Title", "Intro", "text"]))
    assert value.status is Status.MISSING and flag.reason == "MissingStartMarker"
    value, flag = extract_abstract(sel_of(["Abstract— We propose X.", "Index Terms—A, B"]))
    assert value.value == "We propose X." and flag is None


def test_abstract_falls_back_to_intro():
    value, flag = extract_abstract(sel_of(["ABSTRACT", "We propose X.", "1. Introduction", "Body"]))
    assert value.value == "We propose X." and flag.reason == "MissingEndMarker"


def test_abstract_empty_window():
    value, flag = extract_abstract(sel_of(["Abstract", "Keywords: a"]))
    assert value.status is Status.EMPTY and flag.reason == "EmptyWindow"


def test_keywords_examples():
    value, _ = extract_keywords(sel_of(["Keywords: parsing; indexing", "1. Introduction"]))
    assert value.value == "parsing; indexing"
    assert split_keywords(value.value) == ["parsing", "indexing"]
    value, flag = extract_keywords(sel_of(["Abstract", "x", "1. Introduction"]))
    assert value.status is Status.MISSING and flag.reason == "MissingStartMarker"


def _split_oracle(text):
    out, cur = [], ""
    for ch in text + ",":
        if ch in ",;":
            if cur.strip():
                out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    return out


def test_index_terms_list():
    value, _ = extract_keywords(sel_of(["Index Terms—A, B, C", "I. INTRODUCTION"]))
    assert split_keywords(value.value) == _split_oracle(value.value) == ["A", "B", "C"]


# -- body / conclusion / references -----------------------------------------------------


def test_body_window():
    first = ["Title", "Abstract", "abs", "Keywords: k"] + [f"pre {i}" for i in range(6)] + ["1. Introduction"]
    body = [f"line {i}" for i in range(11, 500)]
    doc = build([first + body + ["5. Conclusion", "done"]])
    assert first.index("1. Introduction") == 10
    value, flag = extract_body_text(select_pages(doc), doc)
    assert value.value == " ".join(body) and flag is None


def test_body_missing_intro():
    doc = build([["Title", "Abstract", "x"], ["Conclusion", "y"]])
    value, flag = extract_body_text(select_pages(doc), doc)
    assert value.status is Status.MISSING and flag.reason == "MissingStartMarker"


def test_body_ignores_inline_conclusion_word():
    pages = [["Abstract", "a", "1. Introduction", "The Conclusion of this line is inline.", "more"],
             ["2. Conclusion", "end"]]
    doc = build(pages)
    # span-anchored oracle: only spans whose text starts with the marker end the window
    anchors = [i for i, s in enumerate(doc.spans) if s.text.split(". ", 1)[-1].startswith("Conclusion")]
    assert anchors == [5]
    value, _ = extract_body_text(select_pages(doc), doc)
    assert value.value == "The Conclusion of this line is inline. more"


def test_body_falls_back_to_references():
    doc = build([["Abstract", "a", "Introduction", "b"], ["References", "[1] x"]])
    value, flag = extract_body_text(select_pages(doc), doc)
    assert value.value == "b" and flag.reason == "MissingEndMarker"


def test_conclusion_examples():
    assert extract_conclusion(sel_of(["p1"], ["7. Conclusion", "We built Y.", "References"]))[0].value == "We built Y."
    value, flag = extract_conclusion(sel_of(["p1"], ["Body", "References"]))
    assert value.status is Status.MISSING and flag.reason == "MissingStartMarker"


@pytest.mark.parametrize(
    "tail",
    [
        ["Conclusion", "We built Y.", "Acknowledgment", "thanks", "References", "[1] r"],
        ["Conclusion", "We built Y.", "References", "[1] r", "Acknowledgment", "thanks"],
    ],
)
def test_conclusion_ends_at_first_end_marker(tail):
    ends = [i for i, t in enumerate(tail) if t in ("Acknowledgment", "References")]
    expected = " ".join(tail[1 : min(ends)])
    assert extract_conclusion(sel_of(["p1"], tail))[0].value == expected == "We built Y."


def test_conclusion_runs_to_end_of_tail():
    value, flag = extract_conclusion(sel_of(["p1"], ["Conclusion", "We built Y."]))
    assert value.value == "We built Y." and flag.reason == "MissingEndMarker"


def test_references_examples():
    value, _ = extract_references(sel_of(["p1"], ["References", "[1] A. Author…", "[2] B. Author…"]))
    assert value.value == "[1] A. Author… [2] B. Author…"
    value, flag = extract_references(sel_of(["p1"], ["text", "References"]))
    assert value.status is Status.EMPTY and flag.reason == "EmptyWindow"


def test_references_use_last_hit():
    tail = ["References", "see below", "Body", "REFERENCES", "[1] r"]
    hits = [i for i, t in enumerate(tail) if t.startswith(("Reference", "REFERENCE"))]
    value, _ = extract_references(sel_of(["p1"], tail))
    assert value.value == " ".join(tail[max(hits) + 1 :]) == "[1] r"


# -- extract_all ----------------------------------------------------------------------


def test_extract_all_happy_path():
    doc, truth = generate(spec_for_seed(3))
    record, flags = extract_all(doc)
    assert flags == []
    assert all(v.status is Status.EXTRACTED for _, v in record.items())
    assert record.title.value == truth.title


def test_extract_all_missing_keywords():
    doc, _ = generate(spec_for_seed(3, ["drop_keywords"]))
    record, flags = extract_all(doc)
    statuses = [v.status for _, v in record.items()]
    assert statuses.count(Status.EXTRACTED) == 5 and record.keywords.status is Status.MISSING
    assert [(f.field, f.reason) for f in flags] == [("keywords", "MissingStartMarker")]
    # the per-field result still records the abstract's fallback
    assert extract_fields(doc)["abstract"][1].reason == "MissingEndMarker"


def test_extract_all_deterministic():
    doc, _ = generate(spec_for_seed(11))
    assert extract_all(doc) == extract_all(doc)


seeds = st.integers(0, 10**6)


@settings(max_examples=60)
@given(seeds, st.sets(st.sampled_from(PERTURBATIONS), max_size=2))
def test_flags_match_missing_statuses(seed, perturbations):
    doc, _ = generate(spec_for_seed(seed, perturbations))
    record, flags = extract_all(doc)
    flagged = [f.field for f in flags]
    assert len(flagged) == len(set(flagged))
    assert set(flagged) == {name for name, v in record.items() if v.status is not Status.EXTRACTED}


@settings(max_examples=60)
@given(seeds)
def test_generated_documents_recovered(seed):
    doc, truth = generate(spec_for_seed(seed))
    record, _ = extract_all(doc)
    for name in FIELDS:
        assert record.get(name).value == truth.get(name)
    first_page_max = max(s.font_size for s in doc.spans if s.page == 1)
    title_sizes = {s.font_size for s in doc.spans if s.page == 1 and s.text in record.title.value}
    assert min(title_sizes) >= first_page_max


@settings(max_examples=40)
@given(seeds)
def test_window_order(seed):
    doc, truth = generate(spec_for_seed(seed))
    record, _ = extract_all(doc)
    full = " ".join(s.text for s in doc.spans)
    positions = [full.index(record.get(name).value) for name in ("abstract", "keywords", "body_text", "conclusions", "references")]
    assert positions == sorted(positions)
    # title window ends before the abstract begins
    assert full.index(record.title.value) + len(record.title.value) <= positions[0]
