"""Incremental multiple longest common subsequence (MLCS) length."""
from .ort import RangeTree
from .seqstore import Alphabet, EmptyPopError, SequenceStore
from .structure import IncrementalMLCS

__all__ = ["Alphabet", "EmptyPopError", "IncrementalMLCS", "RangeTree", "SequenceStore"]
__version__ = "0.1.0"
