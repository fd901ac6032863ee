"""Embedded orbit tables and the harness that recomputes them."""
from .dataset import (
    Dataset,
    DatasetError,
    ModuleTable,
    OrbitRecord,
    Summary,
    load_paper_tables,
    parse_table_text,
)
from .support import minimal_support_check
from .verify import VerificationReport, verify_all, verify_module, verify_record

__all__ = [
    "Dataset",
    "DatasetError",
    "ModuleTable",
    "OrbitRecord",
    "Summary",
    "VerificationReport",
    "load_paper_tables",
    "minimal_support_check",
    "parse_table_text",
    "verify_all",
    "verify_module",
    "verify_record",
]
