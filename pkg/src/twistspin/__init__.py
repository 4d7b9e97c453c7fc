"""Group presentations of twist-spun 2-knots and coset-enumeration checks
of their projective-plane connected sums."""

__version__ = "0.1.0"

from .codec import (KnotDiagram, TwoBridgeFraction, parse_braid, parse_knot, parse_pd,
                    parse_two_bridge, render_knot, render_pd, two_bridge)
from .coset import (Limits, double_coset_equal, enumerate_cosets, group_order, verify_table,
                    word_is_trivial)
from .fpcore import MarkedPresentation, abelian_invariants, free_reduce, tietze_simplify
from .spun import connect_sum_rp2, parity_reduce, twist_spin_presentation
from .verify import verify_lemma2, verify_theorem1_group_level
from .wirtinger import knot_longitude, knot_presentation, longitude_word, wirtinger_presentation

__all__ = [
    "KnotDiagram", "TwoBridgeFraction", "parse_braid", "parse_knot", "parse_pd",
    "parse_two_bridge", "render_knot", "render_pd", "two_bridge",
    "Limits", "double_coset_equal", "enumerate_cosets", "group_order", "verify_table",
    "word_is_trivial",
    "MarkedPresentation", "abelian_invariants", "free_reduce", "tietze_simplify",
    "connect_sum_rp2", "parity_reduce", "twist_spin_presentation",
    "verify_lemma2", "verify_theorem1_group_level",
    "knot_longitude", "knot_presentation", "longitude_word", "wirtinger_presentation",
]
