import pytest
from hypothesis import given
from hypothesis import strategies as st

from rulemeta.ingest import (
    MalformedSpanFile,
    NoTextContent,
    PageSelection,
    UnreadablePdf,
    dumps_spans,
    extract_document_text,
    is_bold_font,
    load_document,
    load_span_file,
    loads_spans,
    save_span_file,
    select_pages,
)
from rulemeta.model import DocumentText, TextSpan

from conftest import SMOKE, documents


def _doc(page_count, per_page=2):
    spans = [
        TextSpan(f"p{p} s{o}", p, o, "Times-Roman", 10.0)
        for p in range(1, page_count + 1)
        for o in range(per_page)
    ]
    return DocumentText("d", page_count, tuple(spans))


# -- span files -----------------------------------------------------------------


def test_load_fixture_sorts_spans(tmp_path):
    path = tmp_path / "three.spans"
    path.write_text(
        "three\t2\n"
        "2\t0\tTimes-Roman\t10.0\t0\t72.0\tsecond page\n"
        "1\t1\tTimes-Roman\t10.0\t0\t90.0\tbody\\tcell\n"
        "1\t0\tTimes-Bold\t18.0\t1\t72.0\tTitle\n",
        encoding="utf-8",
    )
    doc = load_span_file(path)
    assert [(s.page, s.order) for s in doc.spans] == [(1, 0), (1, 1), (2, 0)]
    assert doc.spans[0].bold and doc.spans[0].font_size == 18.0
    assert doc.spans[1].text == "body\tcell"
    assert doc.page_count == 2 and doc.doc_id == "three"


@pytest.mark.parametrize(
    "body, line",
    [
        ("d\t1\n1\t0\tF\t0\t0\t1.0\tx\n", 2),  # font_size <= 0
        ("d\t1\n1\t0\tF\t-3\t0\t1.0\tx\n", 2),
        ("d\t1\n1\t0\tF\t10\t2\t1.0\tx\n", 2),  # bold flag
        ("d\t1\n1\t0\tF\t10\t0\t1.0\n", 2),  # column count
        ("d\t1\n2\t0\tF\t10\t0\t1.0\tx\n", 2),  # page beyond page_count
        ("d\t1\n1\t0\tF\t10\t0\t1.0\tx\n1\t0\tF\t10\t0\t1.0\ty\n", 3),  # duplicate order
        ("d\tzero\n", 1),
        ("", 1),
    ],
)
def test_malformed_span_files(tmp_path, body, line):
    path = tmp_path / "bad.spans"
    path.write_text(body, encoding="utf-8")
    with pytest.raises(MalformedSpanFile) as err:
        load_span_file(path)
    assert err.value.line == line


def test_save_shapes(tmp_path):
    empty = DocumentText("e", 3, ())
    assert dumps_spans(empty) == "e\t3\n"
    one = DocumentText("o", 1, (TextSpan("hi", 1, 0, "F", 9.5, True, 70.25),))
    assert dumps_spans(one).splitlines() == ["o\t1", "1\t0\tF\t9.5\t1\t70.25\thi"]
    save_span_file(one, tmp_path / "o.spans")
    assert (tmp_path / "o.spans").read_bytes() == dumps_spans(one).encode()


@given(documents())
def test_span_roundtrip(doc):
    assert loads_spans(dumps_spans(doc)) == doc
    assert dumps_spans(loads_spans(dumps_spans(doc))) == dumps_spans(doc)


# -- page selection ---------------------------------------------------------------


@pytest.mark.parametrize(
    "pages, tail",
    [(6, [5, 6]), (12, [9, 10, 11, 12]), (1, []), (2, [2]), (7, [6, 7]), (8, [5, 6, 7, 8])],
)
def test_select_pages(pages, tail):
    sel = select_pages(_doc(pages))
    assert list(sel.tail_page_numbers) == tail
    assert all(s.page == 1 for s in sel.first_page_spans)
    assert sorted({s.page for s in sel.tail_spans}) == tail


def test_select_pages_override():
    sel = select_pages(_doc(20), PageSelection(long_tail=6))
    assert list(sel.tail_page_numbers) == list(range(15, 21))


@given(st.integers(1, 50))
def test_select_pages_property(n):
    tail = select_pages(_doc(n, 1)).tail_page_numbers
    assert list(tail) == list(range(n - len(tail) + 1, n + 1))
    assert 1 not in tail
    assert len(tail) == (min(2, n - 1) if n <= 7 else 4)


# -- PDF backend --------------------------------------------------------------------


@pytest.mark.parametrize(
    "name, bold",
    [("Times-Bold", True), ("ABCDEF+NimbusSans-Black", True), ("Arial-HeavyItalic", True), ("Times-Roman", False)],
)
def test_bold_from_font_name(name, bold):
    assert is_bold_font(name) is bold


def test_six_page_pdf(article_pdf):
    doc = extract_document_text(article_pdf)
    assert doc.page_count == 6
    assert len(doc.spans) > 0
    assert doc.doc_id == article_pdf.stem
    title = doc.spans[0]
    assert title.text == "A Six Page Test Article" and title.bold and title.font_size == 20.0
    assert [(s.page, s.order) for s in doc.spans] == sorted((s.page, s.order) for s in doc.spans)


def test_smoke_pdfs_satisfy_invariants():
    for path in sorted(SMOKE.glob("*.pdf")):
        doc = load_document(path)
        assert all(1 <= s.page <= doc.page_count for s in doc.spans)


def test_zero_byte_pdf(tmp_path):
    path = tmp_path / "empty.pdf"
    path.write_bytes(b"")
    with pytest.raises(UnreadablePdf):
        extract_document_text(path)


def test_corrupt_pdf(tmp_path):
    path = tmp_path / "junk.pdf"
    path.write_bytes(b"%PDF-1.4\n" + bytes(range(256)) * 4)
    with pytest.raises(UnreadablePdf):
        extract_document_text(path)


def test_image_only_pdf(image_pdf):
    with pytest.raises(NoTextContent):
        extract_document_text(image_pdf)


# -- PDF builders (reportlab) -----------------------------------------------------


@pytest.fixture(scope="module")
def article_pdf(tmp_path_factory):
    from reportlab.lib.pagesizes import LETTER
    from reportlab.pdfgen import canvas

    path = tmp_path_factory.mktemp("pdf") / "six_pages.pdf"
    c = canvas.Canvas(str(path), pagesize=LETTER)
    c.setFont("Helvetica-Bold", 20)
    c.drawString(72, 700, "A Six Page Test Article")
    c.setFont("Helvetica", 10)
    c.drawString(72, 680, "Abstract")
    for page in range(2, 7):
        c.showPage()
        c.setFont("Helvetica", 10)
        c.drawString(72, 700, f"Body text on page {page}")
    c.save()
    return path


@pytest.fixture(scope="module")
def image_pdf(tmp_path_factory):
    from PIL import Image
    from reportlab.pdfgen import canvas

    tmp = tmp_path_factory.mktemp("img")
    png = tmp / "scan.png"
    Image.new("RGB", (200, 100), "white").save(png)
    path = tmp / "scanned.pdf"
    c = canvas.Canvas(str(path))
    c.drawImage(str(png), 72, 500, 200, 100)
    c.save()
    return path
