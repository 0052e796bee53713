"""Search engine for scientific tables."""

from ._core import (
    ConfigError,
    DuplicateTableError,
    Engine,
    FileError,
    FormatError,
    QueryError,
    TrainingError,
    average_precision,
    err,
    is_numeric_cell,
    load_records,
    ndcg,
    parse_table_xml,
    tokenize,
)

__all__ = [
    "ConfigError",
    "DuplicateTableError",
    "Engine",
    "FileError",
    "FormatError",
    "QueryError",
    "TrainingError",
    "average_precision",
    "err",
    "is_numeric_cell",
    "load_records",
    "ndcg",
    "parse_table_xml",
    "tokenize",
]
