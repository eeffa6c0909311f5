from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rulemeta.classifier import (
    FLAG_NAMES,
    ClassificationResult,
    DecisionRule,
    Verdict,
    classify,
    extract_features,
    has_title_candidate,
)
from rulemeta.ingest import select_pages
from rulemeta.model import DocumentText, TextSpan


def span(text, page=1, order=0, size=10.0, bold=False, font=None):
    font = font or ("Times-Bold" if bold else "Times-Roman")
    return TextSpan(text, page, order, font, size, bold)


def doc_of(pages, spans):
    return DocumentText.from_unsorted("d", pages, spans)


def flags(*values):
    return ClassificationResult("d", **dict(zip(FLAG_NAMES, values)))


def test_features_from_markers():
    doc = doc_of(
        3,
        [
            span("Paper Title", order=0, size=18, bold=True),
            span("ABSTRACT", order=1, size=12, bold=True),
            span("We study things.", order=2),
            span("Keywords: a, b", order=3),
            span("More text", page=2),
            span("References", page=3, order=0, bold=True),
            span("[1] A. Author.", page=3, order=1),
        ],
    )
    res = extract_features(select_pages(doc))
    assert res.has_abstract_marker and res.has_keywords_marker and res.has_references_marker
    assert res.has_title_candidate
    assert not res.has_conclusion_marker
    assert classify(res).verdict is Verdict.SCIENTIFIC


def test_markers_on_wrong_pages_do_not_count():
    # abstract only on page 2, references only on page 1
    doc = doc_of(2, [span("References", page=1), span("Abstract", page=2)])
    res = extract_features(select_pages(doc))
    assert not res.has_abstract_marker and not res.has_references_marker


def test_empty_document_has_no_features():
    res = extract_features(select_pages(DocumentText("d", 1, ())))
    assert res.flags == (False,) * 5
    assert classify(res).verdict is Verdict.UNSCIENTIFIC


def _strict_max_oracle(sizes_styles, abstract_index):
    """Enumerate spans, group runs of identical style, require one top run before the marker."""
    top = max(s for s, _ in sizes_styles)
    run_starts = [
        i for i, (s, style) in enumerate(sizes_styles)
        if s == top and not (i > 0 and sizes_styles[i - 1] == (s, style))
    ]
    limit = len(sizes_styles) if abstract_index is None else abstract_index
    return len(run_starts) == 1 and run_starts[0] < limit


@pytest.mark.parametrize(
    "spec, abstract_index",
    [
        ([(18, "b"), (10, "r"), (18, "b")], None),  # two separate max-size spans: tie
        ([(18, "b"), (18, "r")], None),  # same size, different style: tie
        ([(18, "b"), (18, "b"), (10, "r")], 2),  # one two-line title run
        ([(10, "r"), (18, "b")], 1),  # only max span sits after the marker
        ([(18, "b"), (12, "b"), (10, "r")], 2),
    ],
)
def test_title_candidate_strict_max(spec, abstract_index):
    spans = [span(f"s{i}", order=i, size=s, bold=style == "b") for i, (s, style) in enumerate(spec)]
    assert has_title_candidate(spans, abstract_index) == _strict_max_oracle(spec, abstract_index)


def test_tied_title_sizes_disqualify():
    spans = [span("Title", order=0, size=18, bold=True), span("Author", order=1, size=18)]
    assert not has_title_candidate(spans, None)


def _default_rule_oracle(abstract, keywords, conclusion, references, title):
    return abstract and references and title


@pytest.mark.parametrize("values", list(product([False, True], repeat=5)))
def test_default_rule_truth_table(values):
    expected = Verdict.SCIENTIFIC if _default_rule_oracle(*values) else Verdict.UNSCIENTIFIC
    assert classify(flags(*values)).verdict is expected


def test_rule_examples():
    assert classify(flags(True, True, True, True, True)).verdict is Verdict.SCIENTIFIC
    assert classify(flags(False, False, False, False, False)).verdict is Verdict.UNSCIENTIFIC
    assert classify(flags(True, False, False, True, True)).verdict is Verdict.SCIENTIFIC
    assert classify(flags(True, False, False, True, True), DecisionRule.all_five()).verdict is Verdict.UNSCIENTIFIC
    assert classify(flags(True, False, False, True, False), DecisionRule.k_of_five(2)).verdict is Verdict.SCIENTIFIC


@pytest.mark.parametrize("text", ["default", "all", "3-of-5", "0-of-5"])
def test_rule_parse(text):
    DecisionRule.parse(text)


@pytest.mark.parametrize("text", ["some", "6-of-5", "2-of-4"])
def test_rule_parse_rejects(text):
    with pytest.raises(ValueError):
        DecisionRule.parse(text)


rules = st.one_of(
    st.just(DecisionRule()), st.just(DecisionRule.all_five()), st.integers(0, 5).map(DecisionRule.k_of_five)
)
flag_vectors = st.tuples(*[st.booleans()] * 5)


@given(flag_vectors, rules)
def test_classify_is_pure(values, rule):
    a = classify(flags(*values), rule)
    b = classify(ClassificationResult("other", **dict(zip(FLAG_NAMES, values))), rule)
    assert a.verdict is b.verdict


@given(flag_vectors, st.integers(0, 4), st.one_of(st.just(DecisionRule()), st.integers(0, 5).map(DecisionRule.k_of_five)))
def test_monotone(values, i, rule):
    before = classify(flags(*values), rule).verdict
    raised = list(values)
    raised[i] = True
    after = classify(flags(*raised), rule).verdict
    assert not (before is Verdict.SCIENTIFIC and after is Verdict.UNSCIENTIFIC)


@given(flag_vectors)
def test_scientific_needs_references(values):
    if classify(flags(*values)).verdict is Verdict.SCIENTIFIC:
        assert values[3]
