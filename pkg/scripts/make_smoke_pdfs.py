#!/usr/bin/env python3
"""Typeset the real-PDF smoke set and its ground truth.

Twelve short articles in different venue styles plus three non-scientific
documents. Texts are original and released with this repository; ground truth
is written here by hand, independent of the extractor.

    python scripts/make_smoke_pdfs.py --output tests/data/smoke
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from reportlab import rl_config
from reportlab.lib.enums import TA_CENTER, TA_LEFT
from reportlab.lib.pagesizes import LETTER
from reportlab.lib.styles import ParagraphStyle
from reportlab.lib.units import inch
from reportlab.platypus import (
    BaseDocTemplate,
    Frame,
    FrameBreak,
    NextPageTemplate,
    PageBreak,
    PageTemplate,
    Paragraph,
    SimpleDocTemplate,
    Spacer,
)

# Each article: title, authors, affiliation, abstract, keywords, sections
# [(heading, [paragraphs])] where the first is the introduction, conclusion,
# references, plus layout knobs.
ARTICLES = [
    dict(
        id="smoke01_ieee",
        style="ieee",
        title="Lightweight Consistency Checks for Sensor Time Series",
        authors="Marta Keller and Oskar Lind",
        affiliation="Institute of Embedded Systems, Northfield University",
        abstract=(
            "Sensor networks frequently deliver readings with gaps, duplicated samples and clock drift. "
            "We describe a set of lightweight consistency checks that run on the gateway before data "
            "reach long term storage. The checks flag suspicious intervals without discarding them, "
            "which keeps later analysis auditable. On three field deployments the checks caught most "
            "injected faults while adding under two milliseconds of latency per batch."
        ),
        keywords="sensor networks, data quality, time series, edge computing",
        sections=[
            ("I. INTRODUCTION", [
                "Field deployments of environmental sensors rarely produce clean data. Batteries fade, "
                "radios drop packets and clocks wander, so a stored series often mixes true signal with "
                "transport artefacts.",
                "Most pipelines clean the data after it has been archived. We argue that cheap checks at "
                "the gateway are more useful because the gateway still knows the transport context.",
            ]),
            ("II. CHECKS", [
                "Each batch passes through four checks: monotonic timestamps, bounded sampling interval, "
                "duplicate suppression and a rolling range test. Every check only annotates samples.",
            ]),
            ("III. EVALUATION", [
                "We replayed six months of readings from three deployments and injected synthetic faults "
                "at known positions. The annotated output was compared against the injection log.",
            ]),
        ],
        conclusion_heading="IV. CONCLUSION",
        conclusion=(
            "Simple checks placed at the gateway catch a large share of transport faults at negligible "
            "cost. Future work will adapt the range test to seasonal drift."
        ),
        references=[
            "[1] P. Ortega and L. Chen, Gateway processing for sensor fleets, Sensors Journal, 2019.",
            "[2] R. Hanley, Auditable cleaning of environmental records, Data Engineering Letters, 2021.",
            "[3] S. Iwata, Clock drift in low power radios, Embedded Systems Review, 2018.",
        ],
        pages=3,
    ),
    dict(
        id="smoke02_acm",
        page_numbers=True,
        style="acm",
        title="Caching Query Plans Across Tenants in a Shared Database",
        authors="Priya Natarajan, Tomas Varga, Elise Fournier",
        affiliation="Department of Computer Science, Lakeside Institute of Technology",
        abstract=(
            "Multi tenant database services compile the same query shapes many times for different "
            "customers. We present a plan cache keyed on normalized query templates that is shared "
            "across tenants while respecting per tenant statistics. A prototype reduces compilation "
            "time by a factor of four on a production trace."
        ),
        keywords="query optimization, plan caching, multi tenancy",
        sections=[
            ("1 INTRODUCTION", [
                "Query compilation is a visible part of latency for short transactional queries. In a "
                "shared service thousands of tenants issue structurally identical statements.",
            ]),
            ("2 TEMPLATE NORMALIZATION", [
                "We strip literals, canonicalize identifiers and hash the resulting tree. Plans are stored "
                "with the statistics snapshot used to cost them.",
            ]),
            ("3 EXPERIMENTS", [
                "A one week trace from a hosted service was replayed against the prototype. Cache hit rates "
                "stabilized after roughly twenty minutes.",
            ]),
        ],
        conclusion_heading="4 CONCLUSION",
        conclusion=(
            "Sharing plans across tenants is safe when plans carry their statistics context. The approach "
            "cuts compilation work substantially."
        ),
        references=[
            "[1] A. Baker. Plan stability in production optimizers. Database Systems Quarterly, 2017.",
            "[2] M. Ruiz and K. Osei. Multi tenant isolation revisited. Cloud Data Conference, 2020.",
        ],
        pages=4,
    ),
    dict(
        id="smoke03_lncs",
        style="lncs",
        title="Counting Triangles in Streaming Graphs with Bounded Memory",
        authors="Jonas Weber and Ana Costa",
        affiliation="Faculty of Informatics, University of Eastbridge",
        abstract=(
            "Triangle counts summarize the clustering of a graph but are expensive to maintain when edges "
            "arrive as a stream. We give a sampling estimator that keeps a fixed number of edges and "
            "reports an unbiased count with a variance bound. Experiments on social and web graphs show "
            "relative errors below three percent with one megabyte of memory."
        ),
        keywords="graph streams; triangle counting; sampling",
        sections=[
            ("1 Introduction", [
                "Many graph statistics are easy to compute offline and hard to maintain online. Triangle "
                "counting is a standard example because each new edge may close many triangles.",
            ]),
            ("2 Estimator", [
                "We keep a reservoir of edges and count the triangles closed by each arriving edge inside "
                "the reservoir. Each closed triangle is weighted by the inverse of its sampling probability.",
            ]),
        ],
        conclusion_heading="3 Conclusion",
        conclusion=(
            "A fixed memory reservoir suffices for accurate triangle estimates on large streams. The "
            "variance bound guides the choice of reservoir size."
        ),
        references=[
            "1. Tsourakakis, C.: Fast counting of triangles in large networks. Data Mining Journal (2008)",
            "2. Lim, Y., Kang, U.: Memory efficient triangle counting. Knowledge Discovery Letters (2015)",
        ],
        pages=3,
    ),
    dict(
        id="smoke04_elsevier",
        style="elsevier",
        title="Estimating Urban Heat Islands from Crowdsourced Weather Stations",
        authors="Hannah Berg, Luca Moretti",
        affiliation="School of Geography, Riverton University",
        abstract=(
            "Private weather stations are dense in cities but uneven in quality. We combine a quality "
            "control filter with spatial kriging to estimate night time temperature excess across a "
            "metropolitan area. The resulting maps agree with reference stations to within half a "
            "degree on most nights."
        ),
        keywords="urban climate, crowdsourcing, kriging",
        sections=[
            ("1. Introduction", [
                "Urban heat islands raise night temperatures and health risks. Official networks have too "
                "few stations to map them at neighbourhood scale.",
            ]),
            ("2. Data and methods", [
                "We collected one summer of readings from about two thousand private stations and removed "
                "stations with implausible daily cycles before interpolation.",
            ]),
            ("3. Results", [
                "The warmest districts were dense residential blocks with little vegetation, consistent "
                "with earlier campaign measurements.",
            ]),
        ],
        conclusion_heading="4. Conclusions",
        conclusion=(
            "Quality controlled crowdsourced data can map urban heat at fine resolution. Station placement "
            "bias remains the main limitation."
        ),
        references=[
            "Chapman, L., Bell, C., 2018. High resolution monitoring of city temperatures. Urban Climate 3, 12-20.",
            "Meier, F., 2017. Private stations as a data source. Weather and Society 5, 40-52.",
        ],
        pages=5,
        title_bold=False,
    ),
    dict(
        id="smoke05_twoline",
        style="ieee",
        title="A Comparison of Scheduling Heuristics for Heterogeneous Cluster Workloads",
        authors="Daniel Okoro and Mei Lin",
        affiliation="Computing Research Centre, Harbour City University",
        abstract=(
            "Clusters that mix processors and accelerators complicate job scheduling. We compare five "
            "list scheduling heuristics on traces from two clusters and find that simple earliest "
            "finish time rules remain competitive. Accelerator aware backfilling gives the largest gain "
            "when queues are long."
        ),
        keywords="scheduling, heterogeneous computing, cluster management",
        sections=[
            ("I. INTRODUCTION", [
                "Heterogeneous clusters are now common in research computing. Jobs differ in how much they "
                "benefit from accelerators, which makes placement decisions harder.",
            ]),
            ("II. HEURISTICS", [
                "We implement earliest finish time, min min, max min, sufferage and an accelerator aware "
                "backfilling variant inside a trace driven simulator.",
            ]),
        ],
        conclusion_heading="III. CONCLUSION",
        conclusion=(
            "Simple heuristics perform well on heterogeneous clusters, and backfilling that understands "
            "accelerators is worth adopting."
        ),
        references=[
            "[1] H. Topcuoglu, Performance effective task scheduling, Parallel Systems Transactions, 2002.",
            "[2] J. Ward, Backfilling in practice, Cluster Computing Notes, 2016.",
        ],
        pages=3,
        title_size=22,
    ),
    dict(
        id="smoke06_twocol",
        style="twocol",
        title="Detecting Duplicate Bug Reports with Sentence Embeddings",
        authors="Rui Almeida, Sofia Petrova",
        affiliation="Software Engineering Group, Coastal Technical University",
        abstract=(
            "Duplicate bug reports waste triage effort in large projects. We embed report titles and "
            "descriptions and retrieve likely duplicates by cosine similarity. On two open issue "
            "trackers the method ranks the true duplicate in the top five for most reports."
        ),
        keywords="bug triage, duplicate detection, embeddings",
        sections=[
            ("1. Introduction", [
                "Users often report the same defect more than once. Maintainers must link these reports "
                "manually, which slows down triage for everyone.",
            ]),
            ("2. Approach", [
                "Each report is encoded once. Incoming reports are compared with an index of open reports "
                "and the closest candidates are shown to the maintainer.",
            ]),
            ("3. Evaluation", [
                "We used historical duplicate links as ground truth and measured recall at five over two "
                "years of reports.",
            ]),
        ],
        conclusion_heading="4. Conclusion",
        conclusion=(
            "Off the shelf sentence embeddings provide a strong baseline for duplicate retrieval in issue "
            "trackers."
        ),
        references=[
            "[1] C. Sun et al., Retrieval of duplicate reports, Software Maintenance Conference, 2011.",
            "[2] N. Jalbert and W. Weimer, Automated duplicate detection, Dependable Systems Conference, 2008.",
        ],
        pages=3,
    ),
    dict(
        id="smoke07_future",
        style="lncs",
        title="Incremental Parsing of Configuration Files for Editor Tooling",
        authors="Felix Braun",
        affiliation="Department of Informatics, Hillcrest University",
        abstract=(
            "Editors need fast feedback when users change configuration files. We adapt incremental "
            "parsing to a family of indentation sensitive formats and reuse unchanged subtrees between "
            "edits. Typical keystrokes are reparsed in well under a millisecond."
        ),
        keywords="incremental parsing, editors, configuration languages",
        sections=[
            ("1 Introduction", [
                "Configuration languages are edited constantly, yet most tools reparse the whole file on "
                "every change. This is wasteful for large files.",
            ]),
            ("2 Design", [
                "The parser records the byte range of every node. After an edit only nodes overlapping the "
                "changed range and their ancestors are rebuilt.",
            ]),
        ],
        conclusion_heading="3 Conclusions and Future Work",
        conclusion=(
            "Incremental parsing makes responsive tooling practical for indentation sensitive formats. "
            "We plan to support error recovery next."
        ),
        references=[
            "1. Wagner, T., Graham, S.: Efficient incremental parsing. Programming Languages Review (1998)",
            "2. Dubroy, P.: Incremental packrat parsing. Software Language Engineering (2017)",
        ],
        pages=3,
    ),
    dict(
        id="smoke08_ack",
        page_numbers=True,
        style="acm",
        title="Energy Aware Placement of Microservices on Edge Nodes",
        authors="Ines Duarte, Karl Svensson",
        affiliation="Centre for Distributed Systems, Northgate University",
        abstract=(
            "Edge nodes run on limited power budgets. We formulate microservice placement as a bin "
            "packing problem with energy costs and solve it with a greedy heuristic that respects "
            "latency targets. The heuristic saves a fifth of the energy of a latency only baseline."
        ),
        keywords="edge computing, microservices, energy efficiency",
        sections=[
            ("1 INTRODUCTION", [
                "Edge deployments bring computation close to users but must work within tight power "
                "limits. Placement decisions therefore matter for both latency and energy.",
            ]),
            ("2 MODEL", [
                "Each service has a demand vector and a latency target. Each node has capacity, an idle "
                "power draw and a marginal cost per unit of load.",
            ]),
        ],
        conclusion_heading="3 CONCLUSION",
        conclusion=(
            "Accounting for idle power when placing services yields large savings at the edge without "
            "breaking latency targets."
        ),
        acknowledgment=("ACKNOWLEDGMENTS", "We thank the operators of the campus edge testbed for access to their nodes."),
        references=[
            "[1] W. Shi et al. Edge computing: vision and challenges. Internet of Things Journal, 2016.",
            "[2] T. Ngo. Greedy placement with power models. Green Computing Letters, 2020.",
        ],
        pages=6,
    ),
    dict(
        id="smoke09_header",
        style="elsevier",
        title="Modelling Bicycle Traffic with Open Counter Data",
        authors="Pieter de Vries",
        affiliation="Transport Research Lab, Delta University",
        abstract=(
            "Automatic bicycle counters publish hourly counts in many cities. We fit a regression with "
            "weather, calendar and holiday effects to counts from forty locations. Temperature and rain "
            "explain most day to day variation."
        ),
        keywords="cycling, traffic counts, regression",
        sections=[
            ("1. Introduction", [
                "Cities invest in cycling infrastructure but lack models for everyday demand. Open counter "
                "data make such models cheap to build.",
            ]),
            ("2. Method", [
                "We aggregate counts to daily totals and fit a negative binomial model per location with "
                "shared weather coefficients.",
            ]),
        ],
        conclusion_heading="3. Conclusion",
        conclusion="Weather dominates short term cycling demand, while infrastructure drives long term trends.",
        references=[
            "Miranda, R., 2013. Weather and cycling. Journal of Transport Geography 30, 10-18.",
            "Nosal, T., 2014. Counting cyclists. Transportation Research Record 2443, 1-9.",
        ],
        pages=4,
        running_header="Journal of Open Mobility Data 12 (2024) 101-112",
        title_bold=False,
    ),
    dict(
        id="smoke10_indexterms",
        page_numbers=True,
        style="ieee",
        title="Low Cost Indoor Localization Using Bluetooth Beacons",
        authors="Aisha Rahman and Georg Hofer",
        affiliation="Department of Electrical Engineering, Westfield University",
        abstract=(
            "Indoor positioning remains difficult without dedicated infrastructure. We deploy inexpensive "
            "Bluetooth beacons and estimate position with a particle filter fed by signal strength. "
            "Median error in an office building is under two meters."
        ),
        keywords="indoor localization, Bluetooth, particle filter",
        sections=[
            ("I. INTRODUCTION", [
                "Satellite positioning does not work indoors, and commercial indoor systems are expensive. "
                "Beacons cost a few dollars each and run for years on a battery.",
            ]),
            ("II. SYSTEM", [
                "Phones scan for beacons once per second. A particle filter combines the readings with a "
                "floor plan that removes impossible transitions through walls.",
            ]),
            ("III. RESULTS", [
                "We walked fixed routes through two floors and compared estimates with surveyed markers.",
            ]),
        ],
        conclusion_heading="IV. CONCLUSION",
        conclusion="Cheap beacons with a map aware particle filter deliver room level accuracy indoors.",
        references=[
            "[1] F. Zafari, A survey of indoor localization, Communications Surveys, 2019.",
            "[2] Y. Zhuang, Smartphone based beacon positioning, Sensors Letters, 2016.",
        ],
        pages=8,
        title_size=20,
    ),
    dict(
        id="smoke11_centered",
        style="acm",
        title="Fair Allocation of Shared Telescope Time",
        authors="Noor Haddad, Viktor Elm",
        affiliation="Observatory Operations Group, Highland Institute",
        abstract=(
            "Observatories divide telescope nights among competing programmes. We cast the allocation as "
            "a fair division problem with weather uncertainty and compute schedules that equalize "
            "expected observing time. Simulations over five seasons show fewer starved programmes than "
            "the current manual process."
        ),
        keywords="scheduling, fair division, astronomy operations",
        sections=[
            ("1 INTRODUCTION", [
                "Telescope time is scarce and weather makes every allocation uncertain. Manual allocation "
                "tends to favour programmes with flexible targets.",
            ]),
            ("2 METHOD", [
                "We model each night as a lottery over weather states and solve for allocations that "
                "maximize the minimum expected share.",
            ]),
        ],
        conclusion_heading="3 CONCLUSIONS",
        conclusion="Fair division gives more even outcomes for telescope programmes under uncertain weather.",
        references=[
            "[1] H. Moulin. Fair Division and Collective Welfare. Academic Press, 2003.",
            "[2] L. Ortiz. Night scheduling at small observatories. Astronomy Operations Notes, 2019.",
        ],
        pages=3,
        centered_headings=True,
    ),
    dict(
        id="smoke12_long",
        page_numbers=True,
        style="lncs",
        title="Verifying Rate Limiters with Bounded Model Checking",
        authors="Clara Jansen and Mateo Ruiz",
        affiliation="Formal Methods Lab, Southport University",
        abstract=(
            "Rate limiters protect services from overload but subtle bugs let bursts through. We encode "
            "token bucket and sliding window limiters as transition systems and check burst bounds with "
            "a bounded model checker. The tool found two defects in open source implementations."
        ),
        keywords="model checking, rate limiting, verification",
        sections=[
            ("1 Introduction", [
                "Rate limiting code is short but concurrency and clock handling make it easy to get wrong. "
                "Testing rarely exercises the rare interleavings that cause violations.",
            ]),
            ("2 Encoding", [
                "Each limiter is translated into a transition system whose state includes the clock, the "
                "bucket level and pending requests.",
            ]),
            ("3 Case Studies", [
                "We checked four libraries. Two allowed bursts above the configured limit after clock "
                "adjustments.",
            ]),
        ],
        conclusion_heading="4 Conclusion",
        conclusion="Bounded model checking is an effective and cheap way to validate rate limiter implementations.",
        references=[
            "1. Biere, A.: Bounded model checking. Handbook of Satisfiability (2009)",
            "2. Clarke, E., Grumberg, O., Peled, D.: Model Checking. Research Press (1999)",
        ],
        pages=10,
    ),
]

# Non-scientific documents: (id, title, paragraphs)
OTHER_DOCS = [
    ("smoke13_memo", "Facilities Memo: Parking Garage Closure", [
        "The north parking garage will close for resurfacing from Monday to Friday next week.",
        "Staff may use the visitor lot on Elm Street during this period. Permits remain valid.",
        "Please direct questions to the facilities office.",
    ]),
    ("smoke14_manual", "Quick Start Guide for the Model K2 Kettle", [
        "Fill the kettle with fresh water between the minimum and maximum marks.",
        "Place the kettle on its base and press the switch. The light turns off when the water boils.",
        "Descale the kettle every month in hard water areas.",
    ]),
    ("smoke15_newsletter", "Community Garden Newsletter, Spring Edition", [
        "Our spring planting day is scheduled for the last Saturday of April.",
        "New plots are available for families on the waiting list. Tools will be provided.",
        "Thank you to everyone who helped repair the fence over the winter.",
    ]),
]


def _styles(article: dict) -> dict[str, ParagraphStyle]:
    kind = article["style"]
    serif = kind in ("ieee", "lncs", "twocol")
    base = "Times-Roman" if serif else "Helvetica"
    bold = "Times-Bold" if serif else "Helvetica-Bold"
    title_font = bold if article.get("title_bold", True) else base
    title_size = article.get("title_size", {"ieee": 22, "acm": 18, "lncs": 14, "elsevier": 17, "twocol": 18}[kind])
    align = TA_CENTER if article.get("centered_headings") or kind in ("ieee",) else TA_LEFT
    return {
        "title": ParagraphStyle("title", fontName=title_font, fontSize=title_size, leading=title_size * 1.2,
                                alignment=TA_CENTER, spaceAfter=10),
        "author": ParagraphStyle("author", fontName=base, fontSize=11, leading=13, alignment=TA_CENTER),
        "affil": ParagraphStyle("affil", fontName=base, fontSize=9, leading=11, alignment=TA_CENTER, spaceAfter=12),
        "heading": ParagraphStyle("heading", fontName=bold, fontSize=11, leading=14, alignment=align,
                                  spaceBefore=8, spaceAfter=4),
        "body": ParagraphStyle("body", fontName=base, fontSize=10, leading=12, spaceAfter=6),
        "small": ParagraphStyle("small", fontName=base, fontSize=9, leading=11, spaceAfter=6),
        "header": ParagraphStyle("header", fontName=base, fontSize=8, leading=10, alignment=TA_CENTER,
                                 spaceAfter=8),
        "bold": bold,
    }


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _front_matter(article: dict, st: dict) -> list:
    kind = article["style"]
    story = []
    if article.get("running_header"):
        story.append(Paragraph(_esc(article["running_header"]), st["header"]))
    story += [
        Paragraph(_esc(article["title"]), st["title"]),
        Paragraph(_esc(article["authors"]), st["author"]),
        Paragraph(_esc(article["affiliation"]), st["affil"]),
    ]
    abstract, keywords = _esc(article["abstract"]), _esc(article["keywords"])
    b = st["bold"]
    if kind in ("ieee", "twocol"):
        story.append(Paragraph(f'<font name="{b}">Abstract—</font>{abstract}', st["small"]))
        story.append(Paragraph(f'<font name="{b}">Index Terms—</font>{keywords}', st["small"]))
    elif kind == "lncs":
        story.append(Paragraph(f'<font name="{b}">Abstract.</font> {abstract}', st["small"]))
        story.append(Paragraph(f'<font name="{b}">Keywords:</font> {keywords}', st["small"]))
    elif kind == "acm":
        story.append(Paragraph("ABSTRACT", st["heading"]))
        story.append(Paragraph(abstract, st["body"]))
        story.append(Paragraph("KEYWORDS", st["heading"]))
        story.append(Paragraph(keywords, st["body"]))
    else:  # elsevier
        story.append(Paragraph("Abstract", st["heading"]))
        story.append(Paragraph(abstract, st["body"]))
        story.append(Paragraph(f'<font name="{b}">Keywords:</font> {keywords}', st["body"]))
    return story


def _main_matter(article: dict, st: dict) -> list:
    story = []
    sections = article["sections"]
    breaks = article["pages"] - 2  # page 1 + conclusion/reference page
    for i, (heading, paragraphs) in enumerate(sections):
        if i > 0 and breaks > 0:
            # spread forced breaks over section boundaries
            n = breaks // (len(sections) - 1) + (1 if i <= breaks % (len(sections) - 1) else 0)
            story += [PageBreak()] * n
        story.append(Paragraph(_esc(heading), st["heading"]))
        story += [Paragraph(_esc(p), st["body"]) for p in paragraphs]
    story.append(Paragraph(_esc(article["conclusion_heading"]), st["heading"]))
    story.append(Paragraph(_esc(article["conclusion"]), st["body"]))
    if article.get("acknowledgment"):
        head, text = article["acknowledgment"]
        story.append(Paragraph(head, st["heading"]))
        story.append(Paragraph(_esc(text), st["body"]))
    story.append(Paragraph("References" if article["style"] != "acm" else "REFERENCES", st["heading"]))
    story += [Paragraph(_esc(r), st["small"]) for r in article["references"]]
    return story


def build_article(article: dict, path: Path) -> None:
    st = _styles(article)
    if article["style"] == "twocol":
        doc = BaseDocTemplate(str(path), pagesize=LETTER, title="")
        w, h = LETTER
        m = 0.75 * inch
        gap = 0.3 * inch
        colw = (w - 2 * m - gap) / 2
        top_h = 3.6 * inch
        first = [
            Frame(m, h - m - top_h, w - 2 * m, top_h, id="top"),
            Frame(m, m, colw, h - 2 * m - top_h, id="c1"),
            Frame(m + colw + gap, m, colw, h - 2 * m - top_h, id="c2"),
        ]
        later = [Frame(m, m, colw, h - 2 * m, id="l1"), Frame(m + colw + gap, m, colw, h - 2 * m, id="l2")]
        doc.addPageTemplates([PageTemplate("first", first), PageTemplate("later", later)])
        story = _front_matter(article, st) + [NextPageTemplate("later"), FrameBreak()]
        story += _main_matter(article, st)
    else:
        doc = SimpleDocTemplate(str(path), pagesize=LETTER, title="")
        story = _front_matter(article, st) + [Spacer(1, 6)] + _main_matter(article, st)
    decorate = _decorator(article)
    doc.build(story, **({"onFirstPage": decorate, "onLaterPages": decorate} if decorate else {}))


def _decorator(article: dict):
    """Page furniture: footer page numbers and a running header on later pages."""
    footer, header = article.get("page_numbers"), article.get("running_header")
    if not (footer or header):
        return None

    def draw(canvas, doc):
        canvas.saveState()
        canvas.setFont("Times-Roman", 8)
        if footer:
            canvas.drawCentredString(LETTER[0] / 2, 0.5 * inch, str(doc.page))
        if header and doc.page > 1:
            canvas.drawCentredString(LETTER[0] / 2, LETTER[1] - 0.5 * inch, header)
        canvas.restoreState()

    return draw


def build_other(title: str, paragraphs: list[str], path: Path) -> None:
    body = ParagraphStyle("b", fontName="Helvetica", fontSize=11, leading=14, spaceAfter=8)
    head = ParagraphStyle("h", fontName="Helvetica-Bold", fontSize=16, leading=20, spaceAfter=12)
    SimpleDocTemplate(str(path), pagesize=LETTER, title="").build(
        [Paragraph(_esc(title), head)] + [Paragraph(_esc(p), body) for p in paragraphs]
    )


def article_truth(article: dict) -> dict:
    body = []
    for i, (heading, paragraphs) in enumerate(article["sections"]):
        if i > 0:
            body.append(heading)
        body += paragraphs
    return {
        "id": article["id"],
        "is_scientific": True,
        "title": article["title"],
        "abstract": article["abstract"],
        "keywords": article["keywords"],
        "body_text": " ".join(body),
        "conclusions": article["conclusion"],
        "references": " ".join(article["references"]),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--output", type=Path, default=Path("tests/data/smoke"))
    args = parser.parse_args()
    rl_config.invariant = 1  # reproducible bytes
    args.output.mkdir(parents=True, exist_ok=True)
    lines = []
    for article in ARTICLES:
        build_article(article, args.output / f"{article['id']}.pdf")
        lines.append(json.dumps(article_truth(article), ensure_ascii=False))
    for doc_id, title, paragraphs in OTHER_DOCS:
        build_other(title, paragraphs, args.output / f"{doc_id}.pdf")
        empty = dict.fromkeys(["title", "abstract", "keywords", "body_text", "conclusions", "references"], "")
        lines.append(json.dumps({"id": doc_id, "is_scientific": False, **empty}))
    (args.output / "smoke.truth.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(ARTICLES) + len(OTHER_DOCS)} PDFs to {args.output}")


if __name__ == "__main__":
    main()
