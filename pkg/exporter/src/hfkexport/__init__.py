"""Bridge from the external knot Floer engine to canonical fixture files."""

from .engine import (
    EngineNotAvailable,
    SnapPyEngine,
    TranslationError,
    find_tables,
    load_engine,
    translate_payload,
)
from .export import ExportJob, census_manifest, display_name, export

__all__ = [
    "EngineNotAvailable", "SnapPyEngine", "TranslationError", "find_tables",
    "load_engine", "translate_payload", "ExportJob", "census_manifest",
    "display_name", "export",
]
