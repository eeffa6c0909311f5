"""Scientific / unscientific gate run before extraction."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence

from .ingest import SelectedText
from .model import MarkerConfig, TextSpan, locate_marker

FLAG_NAMES = (
    "has_abstract_marker",
    "has_keywords_marker",
    "has_conclusion_marker",
    "has_references_marker",
    "has_title_candidate",
)


class Verdict(str, Enum):
    SCIENTIFIC = "scientific"
    UNSCIENTIFIC = "unscientific"


@dataclass(frozen=True)
class ClassificationResult:
    doc_id: str
    has_abstract_marker: bool = False
    has_keywords_marker: bool = False
    has_conclusion_marker: bool = False
    has_references_marker: bool = False
    has_title_candidate: bool = False
    verdict: Optional[Verdict] = None

    @property
    def flags(self) -> tuple[bool, ...]:
        return tuple(getattr(self, name) for name in FLAG_NAMES)

    def to_dict(self) -> dict:
        out = {"id": self.doc_id}
        out.update({name: getattr(self, name) for name in FLAG_NAMES})
        out["verdict"] = self.verdict.value if self.verdict else None
        return out


@dataclass(frozen=True)
class DecisionRule:
    """``required`` flags must all hold; then at least ``min_true`` of the five.

    The default needs the three features extraction cannot do without.
    """

    required: tuple[str, ...] = ("has_abstract_marker", "has_references_marker", "has_title_candidate")
    min_true: int = 0

    def __post_init__(self) -> None:
        unknown = set(self.required) - set(FLAG_NAMES)
        if unknown:
            raise ValueError(f"unknown classifier flags: {sorted(unknown)}")
        if not 0 <= self.min_true <= len(FLAG_NAMES):
            raise ValueError(f"min_true must be in 0..{len(FLAG_NAMES)}")

    @classmethod
    def all_five(cls) -> "DecisionRule":
        return cls(required=FLAG_NAMES)

    @classmethod
    def k_of_five(cls, k: int) -> "DecisionRule":
        return cls(required=(), min_true=k)

    @classmethod
    def parse(cls, text: str) -> "DecisionRule":
        """``default``, ``all`` or ``k-of-5`` (e.g. ``3-of-5``)."""
        text = text.strip().lower()
        if text == "default":
            return cls()
        if text in ("all", "all-five"):
            return cls.all_five()
        head, sep, tail = text.partition("-of-")
        if sep and tail == "5" and head.isdigit():
            return cls.k_of_five(int(head))
        raise ValueError(f"unknown decision rule {text!r}")

    def decide(self, result: ClassificationResult) -> Verdict:
        ok = all(getattr(result, name) for name in self.required) and sum(result.flags) >= self.min_true
        return Verdict.SCIENTIFIC if ok else Verdict.UNSCIENTIFIC


def style_runs(spans: Sequence[TextSpan]) -> list[list[int]]:
    """Group indices of consecutive spans with identical style."""
    runs: list[list[int]] = []
    for i, span in enumerate(spans):
        if runs and spans[runs[-1][-1]].style == span.style:
            runs[-1].append(i)
        else:
            runs.append([i])
    return runs


def has_title_candidate(first_page: Sequence[TextSpan], abstract_index: Optional[int]) -> bool:
    """A unique run of max-font-size spans exists and starts before the abstract marker.

    Multi-line titles (consecutive same-style lines) count as one run; any
    other span sharing the maximum size is a tie and disqualifies.
    """
    if not first_page:
        return False
    top = max(s.font_size for s in first_page)
    runs = [r for r in style_runs(first_page) if first_page[r[0]].font_size == top]
    if len(runs) != 1:
        return False
    limit = len(first_page) if abstract_index is None else abstract_index
    return runs[0][0] < limit


def extract_features(sel: SelectedText, cfg: MarkerConfig = MarkerConfig()) -> ClassificationResult:
    first = sel.first_page()
    tail = sel.tail()
    abstract = locate_marker(first, cfg.abstract_markers)
    return ClassificationResult(
        doc_id=sel.doc_id,
        has_abstract_marker=abstract is not None,
        has_keywords_marker=locate_marker(first, cfg.keywords_markers) is not None,
        has_conclusion_marker=locate_marker(tail, cfg.conclusion_markers) is not None,
        has_references_marker=locate_marker(tail, cfg.reference_markers) is not None,
        has_title_candidate=has_title_candidate(
            sel.first_page_spans, abstract.span_index if abstract else None
        ),
    )


def classify(features: ClassificationResult, rule: DecisionRule = DecisionRule()) -> ClassificationResult:
    return replace(features, verdict=rule.decide(features))
