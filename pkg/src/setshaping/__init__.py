"""Table-free set shaping transform, Huffman codec and coding-limit experiments."""

from .errors import BudgetExceeded, DecodeError, DomainError, NotInShapedSet, ScaleGuardError
from .experiment import ExperimentConfig, ExperimentReport, TrialRecord, run_experiment, run_trial
from .huffman import CodeBook, build_code, decode, encode, self_encoded_length
from .ranking import (
    rank_in_type,
    rank_lex,
    rank_shaped,
    unrank_in_type,
    unrank_lex,
    unrank_shaped,
)
from .seqcore import Histogram, Sequence, coding_limit, empirical_histogram, type_coding_limit
from .shaping import ShapingParams, shape, unshape
from .typespace import ShapedIndex, build_shaped_index, enumerate_types, type_class_size

__version__ = "0.1.0"
