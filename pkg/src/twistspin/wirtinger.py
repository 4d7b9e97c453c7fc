"""Knot group presentations and longitude words."""

from __future__ import annotations

from .codec import KnotDiagram, TwoBridgeFraction
from .fpcore import MarkedPresentation, Word, exponent_sum, free_reduce, inverse, power


def writhe(d: KnotDiagram) -> int:
    return sum(c.sign for c in d.crossings)


def arc_generators(d: KnotDiagram) -> dict[int, int]:
    """Map each diagram edge to its Wirtinger generator.

    An over-strand keeps its generator through a crossing, an under-strand
    starts a new one. Generators are numbered in walk order from edge 1, so
    ``a1`` is the over-strand containing edge 1.
    """
    ends_under = {c.under_in for c in d.crossings}
    gen = {}
    current = 1
    order = d.walk(1)
    for e in order:
        gen[e] = current
        if e in ends_under:
            current += 1
    if d.crossings and order[-1] not in ends_under:
        # the last strand runs over into edge 1
        for e, g in gen.items():
            if g == current:
                gen[e] = 1
    return gen


def wirtinger_presentation(d: KnotDiagram) -> MarkedPresentation:
    """One generator per over-strand and one relator per crossing.

    The relator at a crossing with sign ``e`` is
    ``under_out * over^-e * under_in^-1 * over^e``, so walking along the knot
    each new generator is the previous one conjugated by ``over^-e``.
    """
    if not d.crossings:
        return MarkedPresentation(1, (), 1, "wirtinger")
    gen = arc_generators(d)
    k = max(gen.values())
    rels = []
    for c in d.crossings:
        o, e = gen[c.over_arc], c.sign
        rels.append((gen[c.under_out],) + power((o,), -e) + (-gen[c.under_in],) + power((o,), e))
    return MarkedPresentation(k, tuple(rels), 1, "wirtinger")


def longitude_word(d: KnotDiagram, base_arc: int = 1) -> Word:
    """Preferred longitude based at the generator of ``base_arc``.

    Collects ``over^sign`` at every undercrossing met while walking from
    ``base_arc``, then corrects by ``meridian^-writhe``.
    """
    if not 1 <= base_arc <= d.arc_count:
        raise ValueError(f"base arc {base_arc} out of range")
    if not d.crossings:
        return ()
    gen = arc_generators(d)
    under_at = {c.under_in: c for c in d.crossings}
    letters: list[int] = []
    for e in d.walk(base_arc):
        c = under_at.get(e)
        if c is not None:
            letters.append(gen[c.over_arc] if c.sign > 0 else -gen[c.over_arc])
    letters.extend(power((gen[base_arc],), -writhe(d)))
    return free_reduce(letters)


def schubert_word(f: TwoBridgeFraction) -> Word:
    """``w = b^e1 a^e2 b^e3 ...`` of length p-1 with ``e_i = (-1)^floor(i q / p)``.

    An even ``q`` is replaced by ``q + p`` (same knot); the exponent pattern
    only presents the knot group for odd ``q``.
    """
    q = f.q if f.q % 2 else f.q + f.p
    letters = []
    for i in range(1, f.p):
        e = -1 if (i * q // f.p) % 2 else 1
        g = 2 if i % 2 else 1
        letters.append(g * e)
    return tuple(letters)


def schubert_presentation(f: TwoBridgeFraction) -> MarkedPresentation:
    """``< a, b | a w b^-1 w^-1 >`` with ``a = a1``, ``b = a2``."""
    if f.p == 1:
        return MarkedPresentation(1, (), 1, "schubert")
    w = schubert_word(f)
    return MarkedPresentation(2, ((1,) + w + (-2,) + inverse(w),), 1, "schubert")


def schubert_longitude(f: TwoBridgeFraction) -> Word:
    """Longitude commuting with ``a1``: ``w * reverse(w) * a1^(-2 sigma)``.

    ``sigma`` is the exponent sum of ``w``. For odd ``q`` reversing ``w``
    swaps its ``a`` and ``b`` letters, and ``b = w^-1 a w`` together with its
    mirror ``b = w' a w'^-1`` makes ``w w'`` centralize ``a``.
    """
    if f.p == 1:
        return ()
    w = schubert_word(f)
    return free_reduce(w + tuple(reversed(w)) + power((1,), -2 * exponent_sum(w)))


def knot_presentation(knot) -> MarkedPresentation:
    if isinstance(knot, TwoBridgeFraction):
        return schubert_presentation(knot)
    return wirtinger_presentation(knot)


def knot_longitude(knot) -> Word:
    if isinstance(knot, TwoBridgeFraction):
        return schubert_longitude(knot)
    return longitude_word(knot, 1)
