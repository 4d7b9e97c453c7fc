"""Twist-spun 2-knot groups and their projective-plane connected sums.

For a knot group ``< A | R >`` with meridian ``a1``, the n-twist spun sphere
has group ``< A | R, a1^n a_i a1^-n a_i^-1 (i != 1) >``. Summing with an
unknotted projective plane adds ``a1^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codec import TwoBridgeFraction, render_knot
from .errors import ParityMismatch
from .fpcore import MarkedPresentation, Word, commutator, cyclic_reduce, power
from .wirtinger import knot_presentation

# Bookkeeping only: the summand sign never changes a presentation.
HANDLE_RULE = ("(t^n K # P1(+-2)) + h = s^n K # P1(+-2), "
               "with t^n K # P3(+-2) = (t^n K # P1(+-2)) + h")


def twist_relator(p: MarkedPresentation, n: int, gen: int) -> Word:
    m = p.meridian
    return cyclic_reduce(power(m, n) + (gen,) + power(m, -n) + (-gen,))


def twist_spin_presentation(p: MarkedPresentation, n: int) -> MarkedPresentation:
    if n < 0:
        raise ValueError("twist parameter must be >= 0")
    extra = [twist_relator(p, n, g) for g in range(1, p.generator_count + 1)
             if g != p.meridian_index]
    return p.with_relators(extra)


def meridian_power_quotient(p: MarkedPresentation, m: int) -> MarkedPresentation:
    if m < 1:
        raise ValueError("meridian power must be >= 1")
    return p.with_relators([power(p.meridian, m)])


def connect_sum_rp2(p: MarkedPresentation) -> MarkedPresentation:
    """Group after summing with ``P1(+2)`` or ``P1(-2)``; both give ``a1^2 = 1``."""
    return meridian_power_quotient(p, 2)


def parity_reduce(p: MarkedPresentation, n: int) -> MarkedPresentation:
    """Use ``a1^2 = 1`` to rewrite the twist relators.

    Odd ``n``: each twist relator becomes ``[a1, a_i]``. Even ``n``: twist
    relators are dropped. Everything else is kept in order.
    """
    square = cyclic_reduce(power(p.meridian, 2))
    rels = list(p.relators)
    if square not in rels:
        raise ParityMismatch("presentation has no a1^2 relator")
    others = [g for g in range(1, p.generator_count + 1) if g != p.meridian_index]
    for g in others:
        r = twist_relator(p, n, g)
        # search from the end: twist relators follow the knot relators
        for k in range(len(rels) - 1, -1, -1):
            if rels[k] == r:
                del rels[k]
                break
        else:
            raise ParityMismatch(f"no twist relator for a{g} with n = {n}")
    if n % 2:
        rels += [commutator(p.meridian, (g,)) for g in others]
    return MarkedPresentation(p.generator_count, tuple(rels), p.meridian_index, "derived")


@dataclass(frozen=True)
class SurfaceKnotSpec:
    """``t^n K`` summed with unknotted nonorientable surfaces ``P_g(e)``.

    ``summands`` holds ``(genus, euler_number)`` pairs.
    """

    knot: object
    n: int
    summands: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("twist parameter must be >= 0")
        for g, e in self.summands:
            if g not in (1, 3) or e not in (2, -2):
                raise ValueError(f"unsupported summand P_{g}({e})")

    @property
    def is_two_bridge(self) -> bool:
        return isinstance(self.knot, TwoBridgeFraction)

    def presentation(self) -> MarkedPresentation:
        p = twist_spin_presentation(knot_presentation(self.knot), self.n)
        if self.summands:
            p = connect_sum_rp2(p)
        return p

    def describe(self) -> str:
        s = f"t^{self.n} {render_knot(self.knot)}"
        for g, e in self.summands:
            s += f" # P{g}({e:+d})"
        return s
