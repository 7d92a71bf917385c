"""Grammar compression toolkit built around pair and maximal-repeat substitution.

Three compressors over one engine (classic pair replacement, whole-repeat
substitution, and the naive wholesale variant), a bit-exact grammar codec,
adversarial text generators, and desk-scale checkers for the structural
claims that relate pairs, maximal repeats, and tie-break order.
"""

from .analysis import (
    AnalysisCapError,
    AnalysisError,
    CheckResult,
    GsdrpReport,
    brute_maximal_repeats,
    check_overlap_bound,
    check_pair_mr_bijection,
    check_phase_isomorphism,
    gsdrp_lower_bound,
    gsdrp_measure,
    partition_by_mr_order,
)
from .codec import CodecError, decode, decompress, encode, sym_decode, sym_encode
from .core import (
    Grammar,
    GrammarError,
    GrammarStats,
    Rule,
    SizeMetric,
    Symbol,
    decompressed,
    expand,
    grammar_size,
    grammar_stats,
    isomorphic,
    validate,
)
from .generators import gen_fibonacci, gen_gsdrp, gen_power, gen_repetitive
from .mrrepair import (
    MaxRepeat,
    MRPhase,
    MRSelection,
    MRTrace,
    extend_to_maximal_repeat,
    mr_repair_compress,
    naive_mr_compress,
    trim_if_bookended,
)
from .pairmodel import (
    PairFreq,
    PairIndex,
    build_index,
    most_frequent_pairs,
    replace_pair,
    replace_run,
)
from .repair import (
    EnumerationLimitError,
    RunLog,
    RunStep,
    TieBreak,
    TraceMismatchError,
    repair_compress,
    repair_enumerate,
    repair_following_trace,
)

__version__ = "0.1.0"
