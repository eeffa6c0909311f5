"""Run configuration and its ``key = value`` file format."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional, Union

from .classifier import DecisionRule
from .evaluator import DEFAULT_JACCARD
from .ingest import PageSelection
from .model import MarkerConfig

CONFIG_ENV = "RULEMETA_CONFIG"

_MARKER_KEYS = {f.name for f in fields(MarkerConfig)}
_PAGE_KEYS = {
    "short_doc_pages": "short_doc_pages",
    "short_tail_pages": "short_tail",
    "long_tail_pages": "long_tail",
}
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    markers: MarkerConfig = field(default_factory=MarkerConfig)
    strict_title: bool = True
    pages: PageSelection = field(default_factory=PageSelection)
    rule: DecisionRule = field(default_factory=DecisionRule)
    jaccard_threshold: float = DEFAULT_JACCARD
    workers: Optional[int] = None


def _bool(key: str, value: str) -> bool:
    v = value.lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def parse_config(text: str, source: str = "<config>") -> Config:
    """Parse ``key = value`` lines; ``#`` starts a comment, lists are ``|``-separated."""
    cfg = Config()
    markers, pages = {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or not key:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        try:
            if key in _MARKER_KEYS:
                markers[key] = tuple(v.strip() for v in value.split("|") if v.strip())
            elif key in _PAGE_KEYS:
                pages[_PAGE_KEYS[key]] = int(value)
            elif key == "strict_title":
                cfg = replace(cfg, strict_title=_bool(key, value))
            elif key == "classifier_rule":
                cfg = replace(cfg, rule=DecisionRule.parse(value))
            elif key == "jaccard_threshold":
                cfg = replace(cfg, jaccard_threshold=float(value))
            elif key == "workers":
                cfg = replace(cfg, workers=int(value))
            else:
                raise ConfigError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: {exc}") from None
    try:
        return replace(cfg, markers=replace(cfg.markers, **markers), pages=replace(cfg.pages, **pages))
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path: Union[str, Path, None] = None) -> Config:
    """Explicit path, else ``$RULEMETA_CONFIG``, else built-in defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    return parse_config(Path(path).read_text(encoding="utf-8"), str(path))
