"""Synthetic span documents with known ground truth.

Every document follows the usual article layout: a bold 18 pt title above the
abstract marker, then abstract, keywords, introduction and body sections, and
a conclusion plus references inside the tail pages. Perturbations break one
rule each so tests can check exactly which field reacts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .evaluator import GroundTruthRecord, dumps_truth
from .ingest import PageSelection, save_span_file
from .model import DocumentText, MarkerConfig, TextSpan, match_marker, normalize_text

PERTURBATIONS = (
    "drop_keywords",
    "unbold_title",
    "tie_title_sizes",
    "duplicate_references_marker",
    "inline_conclusion_word",
)

TITLE_FONT = ("Times-Bold", 18.0, True)
HEADING_FONT = ("Times-Bold", 12.0, True)
BODY_FONT = ("Times-Roman", 10.0, False)
AUTHOR_FONT = ("Times-Roman", 11.0, False)
AFFIL_FONT = ("Times-Italic", 9.0, False)

_WORDS = """
accurate adaptive algorithm analysis approach array baseline batch benchmark
binary block bound buffer cache candidate channel chunk cluster coarse column
compact compiler complex component compute corpus cost coverage data dataset
decoder dense density depth design detector device digital document domain
dynamic edge encoder entity error estimate evaluation event experiment factor
feature field filter fixed font format frame framework function gradient graph
grid header heuristic hybrid image input instance kernel label language latency
layer layout learning length library linear local logic machine margin matrix
measure memory metadata method metric model module network node noise object
offset operator optimal order output page paper parallel parameter parser path
pattern pipeline pixel policy precision predictor prefix process query random
rank rate recall record region regular relation result robust rule runtime
sample scale schema score search segment semantic sequence server signal
simple size source sparse spatial speed stable state static storage stream
structure style subset summary system table target task tensor text threshold
token topology training tree unit update value variable vector version weight
window word workload
""".split()

_SURNAMES = "Smith Jones Garcia Müller Novak Tanaka Okafor Silva Rossi Kowalski Haddad Lindqvist".split()
_INITIALS = "ABDEFGHJKMNPRST"
_VENUES = ["Journal of Data Systems", "Proc. Document Engineering", "Trans. Information Retrieval"]
_SECTIONS = ["Related Work", "Method", "Experiments", "Results", "Discussion", "Evaluation", "Background"]
_ROMAN = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"]


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class FixtureSpec:
    seed: int
    page_count: int
    abstract_marker: str = "Abstract"
    abstract_inline: str = ""  # separator when the marker shares the first abstract line
    keywords_marker: str = "Keywords"
    keywords_inline: str = ": "
    keyword_separator: str = "; "
    intro_heading: str = "1. Introduction"
    conclusion_heading: str = "Conclusion"
    acknowledgment_heading: str = ""
    references_heading: str = "References"
    numbering: str = "arabic"
    title_lines: tuple[str, ...] = ("Synthetic Title",)
    authors: str = "A. Smith"
    affiliation: str = "Department of Testing"
    abstract: tuple[str, ...] = ()
    keywords: tuple[str, ...] = ()
    body: tuple[tuple[str, tuple[str, ...]], ...] = ()  # (section heading, lines)
    conclusion: tuple[str, ...] = ()
    acknowledgment: tuple[str, ...] = ()
    references: tuple[str, ...] = ()
    perturbations: frozenset[str] = field(default_factory=frozenset)

    def with_perturbations(self, *names: str) -> "FixtureSpec":
        from dataclasses import replace

        return replace(self, perturbations=frozenset(names))


def _sentence(rng: random.Random, lo: int = 6, hi: int = 14) -> str:
    words = rng.choices(_WORDS, k=rng.randint(lo, hi))
    return " ".join(words).capitalize() + "."


def _wrap(text: str, rng: random.Random, lo: int = 7, hi: int = 11) -> tuple[str, ...]:
    words = text.split()
    lines = []
    while words:
        n = rng.randint(lo, hi)
        lines.append(" ".join(words[:n]))
        words = words[n:]
    return tuple(lines)


def _paragraph(rng: random.Random, sentences: int) -> tuple[str, ...]:
    return _wrap(" ".join(_sentence(rng) for _ in range(sentences)), rng)


def _author(rng: random.Random) -> str:
    return f"{rng.choice(_INITIALS)}. {rng.choice(_SURNAMES)}"


def spec_for_seed(seed: int, perturbations: Iterable[str] = (), page_count: Optional[int] = None) -> FixtureSpec:
    """Draw a complete document description from ``seed``.

    Content depends only on the seed, so the same seed with and without a
    perturbation differs only where the perturbation acts.
    """
    rng = random.Random(seed)
    pages = page_count if page_count is not None else rng.randint(2, 12)
    numbering = rng.choice(["arabic", "roman", "none"])
    upper = rng.random() < 0.5

    def heading(n: int, name: str) -> str:
        if numbering == "arabic":
            return f"{n}. {name}"
        if numbering == "roman":
            return f"{_ROMAN[n - 1]}. {name.upper()}"
        return name.upper() if upper else name

    sections = rng.sample(_SECTIONS, k=min(len(_SECTIONS), max(1, pages - 1)))
    body: list[tuple[str, tuple[str, ...]]] = [("", _paragraph(rng, rng.randint(2, 4)))]
    for i, name in enumerate(sections, start=2):
        body.append((heading(i, name), _paragraph(rng, rng.randint(2, 4))))

    n_title = rng.randint(1, 2)
    title_words = [w.capitalize() for w in rng.choices(_WORDS, k=rng.randint(4, 9))]
    cut = len(title_words) // 2 if n_title == 2 else len(title_words)
    title_lines = tuple(x for x in (" ".join(title_words[:cut]), " ".join(title_words[cut:])) if x)

    abstract_marker = "ABSTRACT" if upper else "Abstract"
    keywords_marker = rng.choice(["Keywords", "KEYWORDS", "Index Terms", "INDEX TERMS"])
    ack = rng.random() < 0.4
    refs = tuple(
        f"[{i}] {_author(rng)}, {_author(rng)}. {_sentence(rng, 4, 8)} {rng.choice(_VENUES)}, {rng.randint(1990, 2024)}."
        for i in range(1, rng.randint(3, 8))
    )
    return FixtureSpec(
        seed=seed,
        page_count=pages,
        abstract_marker=abstract_marker,
        abstract_inline=rng.choice(["", "—", ": ", ". ", "— "]),
        keywords_marker=keywords_marker,
        keywords_inline=rng.choice(["", "—", ": "]),
        keyword_separator=rng.choice(["; ", ", "]),
        intro_heading=heading(1, "Introduction"),
        conclusion_heading=heading(len(sections) + 2, rng.choice(["Conclusion", "Conclusions"])),
        acknowledgment_heading=("ACKNOWLEDGMENT" if upper else "Acknowledgment") if ack else "",
        references_heading="REFERENCES" if upper else "References",
        numbering=numbering,
        title_lines=title_lines,
        authors=", ".join(_author(rng) for _ in range(rng.randint(1, 4))),
        affiliation=f"Department of {rng.choice(_WORDS).capitalize()} Science",
        abstract=_paragraph(rng, rng.randint(2, 5)),
        keywords=tuple(dict.fromkeys(rng.sample(_WORDS, k=rng.randint(2, 6)))),
        body=tuple(body),
        conclusion=_paragraph(rng, rng.randint(1, 3)),
        acknowledgment=_paragraph(rng, 1) if ack else (),
        references=tuple(line for r in refs for line in _wrap(r, rng, 6, 10)),
        perturbations=frozenset(perturbations),
    )


class _Layout:
    def __init__(self, page_count: int):
        self.page_count = page_count
        self.spans: list[TextSpan] = []
        self.page = 1
        self._order = 0
        self._y = 72.0

    def new_page(self) -> None:
        if self.page < self.page_count:
            self.page += 1
            self._order = 0
            self._y = 72.0

    def add(self, text: str, style: tuple[str, float, bool]) -> None:
        font, size, bold = style
        self.spans.append(TextSpan(text, self.page, self._order, font, size, bold, self._y))
        self._order += 1
        self._y += size * 1.2


def _check_spec(spec: FixtureSpec, cfg: MarkerConfig) -> None:
    if spec.page_count < 2:
        raise InvalidSpec("page_count must be >= 2 so conclusion and references fall in tail pages")
    unknown = set(spec.perturbations) - set(PERTURBATIONS)
    if unknown:
        raise InvalidSpec(f"unknown perturbations {sorted(unknown)}")
    if not (spec.title_lines and spec.abstract and spec.body and spec.conclusion and spec.references):
        raise InvalidSpec("title, abstract, body, conclusion and references must be non-empty")
    markers = sorted(cfg.all_markers())
    planted = [*spec.title_lines, spec.authors, spec.affiliation, *spec.abstract, *spec.keywords,
               *spec.conclusion, *spec.acknowledgment, *spec.references]
    for heading, lines in spec.body:
        planted += [heading, *lines] if heading else list(lines)
    for line in planted:
        if match_marker(normalize_text(line), markers):
            raise InvalidSpec(f"planted text starts with a marker: {line!r}")


def generate(spec: FixtureSpec, cfg: MarkerConfig = MarkerConfig()) -> tuple[DocumentText, GroundTruthRecord]:
    _check_spec(spec, cfg)
    p = spec.perturbations
    doc_id = f"synth-{spec.seed:06d}"
    out = _Layout(spec.page_count)

    title_style = ("Times-Roman", 18.0, False) if "unbold_title" in p else TITLE_FONT
    for line in spec.title_lines:
        out.add(line, title_style)
    out.add(spec.authors, ("Times-Roman", 18.0, False) if "tie_title_sizes" in p else AUTHOR_FONT)
    out.add(spec.affiliation, AFFIL_FONT)

    def marked_block(marker: str, sep: str, lines: tuple[str, ...]) -> None:
        if sep:
            out.add(f"{marker}{sep}{lines[0]}", BODY_FONT)
            rest = lines[1:]
        else:
            out.add(marker, HEADING_FONT)
            rest = lines
        for line in rest:
            out.add(line, BODY_FONT)

    marked_block(spec.abstract_marker, spec.abstract_inline, spec.abstract)
    keywords_raw = spec.keyword_separator.join(spec.keywords)
    if "drop_keywords" not in p and spec.keywords:
        marked_block(spec.keywords_marker, spec.keywords_inline, _split_line(keywords_raw))
    else:
        keywords_raw = ""

    out.add(spec.intro_heading, HEADING_FONT)
    conclusion_page = spec.page_count - 1 if spec.page_count >= 3 else spec.page_count
    body_lines: list[tuple[str, tuple[str, float, bool]]] = []
    for heading, lines in spec.body:
        if heading:
            body_lines.append((heading, HEADING_FONT))
        body_lines += [(line, BODY_FONT) for line in lines]

    # Spread body lines over pages 1..conclusion_page, keeping two for that page.
    keep = 2 if len(body_lines) > 2 else 1
    head, last = body_lines[:-keep], body_lines[-keep:]
    pages_before = conclusion_page - 1
    per_page = -(-len(head) // (pages_before + 1)) if head else 0
    body_truth: list[str] = []
    for i, (text, style) in enumerate(head):
        if per_page and i and i % per_page == 0:
            out.new_page()
        out.add(text, style)
        body_truth.append(text)
    while out.page < conclusion_page:
        out.new_page()

    for i, (text, style) in enumerate(last):
        if i == 0 and "inline_conclusion_word" in p:
            words = text.split()
            text = " ".join(words[:1] + ["Conclusion"] + words[1:])
        out.add(text, style)
        body_truth.append(text)
        if i == 0 and "duplicate_references_marker" in p:
            out.add(spec.references_heading, HEADING_FONT)
            body_truth.append(spec.references_heading)

    out.add(spec.conclusion_heading, HEADING_FONT)
    for line in spec.conclusion:
        out.add(line, BODY_FONT)
    if spec.acknowledgment_heading:
        out.add(spec.acknowledgment_heading, HEADING_FONT)
        for line in spec.acknowledgment:
            out.add(line, BODY_FONT)
    out.add(spec.references_heading, HEADING_FONT)
    split = len(spec.references) // 2 if spec.page_count > conclusion_page else len(spec.references)
    for i, line in enumerate(spec.references):
        if i == split:
            out.new_page()
        out.add(line, BODY_FONT)

    doc = DocumentText(doc_id, spec.page_count, tuple(out.spans))
    truth = GroundTruthRecord(
        doc_id=doc_id,
        is_scientific=True,
        title=normalize_text("\n".join(spec.title_lines)),
        abstract=normalize_text("\n".join(spec.abstract)),
        keywords=normalize_text(keywords_raw),
        body_text=normalize_text("\n".join(body_truth)),
        conclusions=normalize_text("\n".join(spec.conclusion)),
        references=normalize_text("\n".join(spec.references)),
    )
    return doc, truth


def _split_line(text: str, width: int = 9) -> tuple[str, ...]:
    words = text.split()
    return tuple(" ".join(words[i : i + width]) for i in range(0, len(words), width)) or (text,)


def write_corpus(
    out_dir: Path,
    count: int,
    seed: int = 0,
    perturbations: Iterable[str] = (),
    truth_name: str = "corpus.truth.jsonl",
) -> list[Path]:
    """Write ``count`` ``.spans`` files plus one ground-truth JSONL file."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths, truths = [], []
    for i in range(count):
        doc, truth = generate(spec_for_seed(seed + i, perturbations))
        path = out_dir / f"{doc.doc_id}.spans"
        save_span_file(doc, path)
        paths.append(path)
        truths.append(truth)
    (out_dir / truth_name).write_text(dumps_truth(truths), encoding="utf-8")
    return paths


def tail_pages_for(spec: FixtureSpec, pages: PageSelection = PageSelection()) -> list[int]:
    return pages.tail_pages(spec.page_count)
