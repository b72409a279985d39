"""
APUnroll Core - colorings, verification, counting and search
"""
from .count import average_over_colorings, count_cyclic, count_line, empirical_coefficient, exhaustive_average, total_instances
from .errors import ApunrollError, ColoringFormatError, LimitExceededError, PatternError, PreconditionError
from .line import (
    BlockColoring,
    LineColoring,
    PeriodicColoring,
    SolidColoring,
    UnrolledColoring,
    blocks_coloring,
    color_at_unrolled,
    percent_vs_random,
    periodic_coefficient,
    random_coefficient,
    unrolled_coefficient,
)
from .models import CosetLabels, CountResult, Instance, Pattern, SearchReport, Verdict, VerifyMethod, ZmColoring
from .residue import coset_labels, fast_verdict, is_prime, longest_wild_run, primitive_root, residue_coloring
from .search import search_primes, search_zm_exhaustive, tensor
from .table import BEST_KNOWN, table_check
from .zm import dilate, instance_elements, parse_pattern, pattern_from_k, relabel, verify_zm

__all__ = [
    'ApunrollError',
    'ColoringFormatError',
    'LimitExceededError',
    'PatternError',
    'PreconditionError',
    'Pattern',
    'ZmColoring',
    'Instance',
    'Verdict',
    'VerifyMethod',
    'CosetLabels',
    'CountResult',
    'SearchReport',
    'pattern_from_k',
    'parse_pattern',
    'instance_elements',
    'verify_zm',
    'dilate',
    'relabel',
    'is_prime',
    'primitive_root',
    'coset_labels',
    'residue_coloring',
    'longest_wild_run',
    'fast_verdict',
    'SolidColoring',
    'BlockColoring',
    'PeriodicColoring',
    'UnrolledColoring',
    'LineColoring',
    'blocks_coloring',
    'color_at_unrolled',
    'periodic_coefficient',
    'unrolled_coefficient',
    'random_coefficient',
    'percent_vs_random',
    'total_instances',
    'count_line',
    'count_cyclic',
    'empirical_coefficient',
    'average_over_colorings',
    'exhaustive_average',
    'search_primes',
    'search_zm_exhaustive',
    'tensor',
    'BEST_KNOWN',
    'table_check',
]
