"""Keyboard layout analysis and optimization toolkit.

Pipeline: corpus statistics -> keystroke expansion (dead keys, alt
chords) -> triad typing-effort evaluation -> constrained simulated
annealing over key permutations -> comparison reports, heatmaps and
OS driver files.
"""

from .bundled import bundled_corpus_path, bundled_geometry, bundled_layout, bundled_layout_names
from .corpus import (
    ALPHABETS,
    BREAK,
    CorpusStats,
    TriadTable,
    build_triads,
    count_chars,
    extract_lexicon,
    load_stats,
    load_triads,
    merge_stats,
    normalize,
    save_stats,
    save_triads,
)
from .effort import (
    EffortBreakdown,
    EffortParams,
    StrokeCosts,
    classify_stroke,
    key_base_effort,
    key_penalty,
    parse_params,
    total_effort,
    triad_effort,
)
from .errors import FormatError, KeylabError, UnreachableSymbolError, ValidationError
from .geometry import Geometry, Key, parse_geometry, serialize_geometry
from .layout import (
    KeystrokeSeq,
    Layout,
    Stroke,
    expand_symbol,
    parse_layout,
    serialize_layout,
    swap_keys,
    validate_layout,
)
from .metrics import (
    MetricReport,
    alternation_and_repeats,
    audit_layout,
    finger_travel,
    home_words,
    load_distribution,
    metric_report,
    press_economy,
)
from .optimizer import (
    Constraints,
    Objective,
    Schedule,
    SearchResult,
    anneal,
    brute_force,
    objective_value,
    search_space_size,
)

__version__ = "0.1.0"
