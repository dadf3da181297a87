"""Discrete Morse theory on finite posets with exact integer homology."""

from .cellular import cellular_chain_complex, cellular_homology, generator_table, incidence, skeleton_homology_scan
from .errors import *  # noqa: F401,F403
from .fixtures import Fixture, load_fixture, load_fixtures
from .homology import (
    ChainComplex,
    HomologySummary,
    SimplicialComplex,
    chain_complex,
    complex_homology,
    face_poset,
    homology,
    order_complex,
    poset_homology,
)
from .io import parse_complex, parse_matching, parse_poset, serialize_complex, serialize_matching, serialize_poset
from .linalg import IntMatrix, invariant_factors, smith_normal_form, solve_integer
from .matching import (
    Matching,
    height_step_check,
    classify_poset,
    edge_admissible,
    hasse_digraph,
    morse_check,
    morse_function,
    path_rise_check,
    path_stats,
)
from .morse_complex import build_flow, morse_complex, morse_inequalities
from .poset import (
    Poset,
    beat_point_reduce,
    beat_points,
    build_poset,
    chain,
    cone,
    degrees,
    grading_info,
    interval,
    join,
    opposite,
    poset_algebra,
    skeleton,
)
from .search import SearchPolicy, greedy_matching, verify_and_report

__version__ = "0.1.0"
