"""Perfect matching association scheme of K_2k and set-wise EKR checks."""
from .matchings import MatchingFamily, canonical_family, count_matchings, enumerate_matchings
from .partitions import double_factorial, even_partitions, hook_dimension
from .scheme import build_intersection_graph, class_degree

__version__ = "0.1.0"
