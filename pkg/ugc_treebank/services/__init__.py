"""Services package - lexicon and conversion-table files, input discovery."""
from .lexicon_store import Lexicon, get_default_lexicon, load_lexicons, merge_lexicons
from .conversion_table import ConversionTable, get_default_table, load_conversion_table
from .file_runner import InputFile, collect_files, run_files

__all__ = [
    "Lexicon",
    "get_default_lexicon",
    "load_lexicons",
    "merge_lexicons",
    "ConversionTable",
    "get_default_table",
    "load_conversion_table",
    "InputFile",
    "collect_files",
    "run_files",
]
