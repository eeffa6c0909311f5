"""Rule-based metadata extraction for scholarly PDFs."""

from .classifier import ClassificationResult, DecisionRule, Verdict, classify, extract_features
from .config import Config, load_config
from .evaluator import (
    EvaluationReport,
    GroundTruthRecord,
    classification_accuracy,
    field_correct,
    run_evaluation,
)
from .extractor import ReviewFlag, extract_all
from .ingest import (
    SelectedText,
    extract_document_text,
    load_span_file,
    save_span_file,
    select_pages,
)
from .model import (
    FIELDS,
    DocumentText,
    FieldValue,
    MarkerConfig,
    MarkerHit,
    MetadataRecord,
    Status,
    TextSpan,
    locate_marker,
    normalize_text,
    slice_text,
)
from .store import IndexEntry, MetadataStore

__version__ = "0.1.0"
