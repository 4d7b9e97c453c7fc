"""Knot notations: PD codes, closed braids and 2-bridge fractions.

PD convention: ``X(i, j, k, l)`` lists the four edge labels around a
crossing counterclockwise, starting from the incoming under-edge. So ``i``
enters under, ``k`` leaves under and ``j``/``l`` are the over-strand. For the
left-handed trefoil::

        PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]

           4     (crossing 1: under 1 -> 2, over 5 -> 4, negative)
           |
      2 ---|--- 1
           |
           5

A crossing is positive when the over-strand runs from the ``l`` slot to the
``j`` slot.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .errors import (ArityError, EvenP, LabelError, LetterOutOfRange,
                     MalformedSyntax, MultiComponent, NotCoprime, OutOfRange)


@dataclass(frozen=True)
class Crossing:
    over_arc: int
    under_in: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class KnotDiagram:
    """Oriented one-component diagram.

    Arcs here are the edges between consecutive crossing visits (PD labels),
    numbered from 1; ``successor[e - 1]`` is the edge following ``e``.
    """

    arc_count: int
    crossings: tuple
    successor: tuple

    def __post_init__(self):
        if sorted(self.successor) != list(range(1, self.arc_count + 1)):
            raise LabelError("successor map is not a permutation of the arcs")
        if len(_cycle_from(self.successor, 1)) != self.arc_count:
            raise MultiComponent("diagram has more than one component")
        for c in self.crossings:
            if self.next_arc(c.under_in) != c.under_out:
                raise LabelError(f"under-strand of {c} is not consecutive")
            if c.sign not in (1, -1):
                raise ValueError("crossing sign must be +1 or -1")

    def next_arc(self, arc: int) -> int:
        return self.successor[arc - 1]

    def walk(self, start: int = 1) -> list[int]:
        return _cycle_from(self.successor, start)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class BraidSpec:
    strand_count: int
    letters: tuple


@dataclass(frozen=True)
class TwoBridgeFraction:
    p: int
    q: int

    @property
    def determinant(self) -> int:
        return self.p


def _cycle_from(successor, start):
    seen = [start]
    x = successor[start - 1]
    while x != start and len(seen) <= len(successor):
        seen.append(x)
        x = successor[x - 1]
    return seen


# ---------------------------------------------------------------------------
# PD codes
# ---------------------------------------------------------------------------

_PD = re.compile(r"^PD\[(.*)\]$")
_X = re.compile(r"X\(([^()]*)\)")


def _parse_pd_tuples(text: str) -> list[tuple]:
    compact = re.sub(r"\s+", "", text)
    m = _PD.match(compact)
    if m is None:
        raise MalformedSyntax(f"expected PD[...], got {text!r}")
    body = m.group(1)
    if not body:
        return []
    items = _X.findall(body)
    if ",".join(f"X({it})" for it in items) != body:
        raise MalformedSyntax(f"cannot read crossings in {text!r}")
    tuples = []
    for it in items:
        fields = it.split(",") if it else []
        if len(fields) != 4:
            raise ArityError(f"crossing X({it}) has {len(fields)} labels, expected 4")
        try:
            labels = tuple(int(f) for f in fields)
        except ValueError:
            raise MalformedSyntax(f"non-integer label in X({it})") from None
        if min(labels) < 1:
            raise LabelError("arc labels must be positive")
        tuples.append(labels)
    return tuples


def _resolve_over_strands(tuples):
    """Decide which over slot (1 or 3) is the incoming over-edge at each crossing.

    Roles propagate from the under slots (slot 0 is an edge's head, slot 2 its
    tail); over pairs touching no under slot fall back to cyclic label order.
    """
    n_arcs = 2 * len(tuples)
    where: dict[int, list] = {}
    for c, t in enumerate(tuples):
        for s, label in enumerate(t):
            where.setdefault(label, []).append((c, s))
    head: dict[tuple, bool] = {}
    for c in range(len(tuples)):
        head[(c, 0)] = True
        head[(c, 2)] = False

    def assign(slot, is_head):
        if slot in head:
            if head[slot] != is_head:
                raise LabelError(f"edge {tuples[slot[0]][slot[1]]} has inconsistent orientation")
            return False
        head[slot] = is_head
        return True

    pending = set(range(len(tuples)))
    while pending:
        changed = True
        while changed:
            changed = False
            for label, occ in where.items():
                a, b = occ
                if a in head and b not in head:
                    changed |= assign(b, not head[a])
                elif b in head and a not in head:
                    changed |= assign(a, not head[b])
                elif a in head and b in head and head[a] == head[b]:
                    raise LabelError(f"edge {label} has inconsistent orientation")
            for c in list(pending):
                s1, s3 = (c, 1), (c, 3)
                if s1 in head and s3 not in head:
                    changed |= assign(s3, not head[s1])
                elif s3 in head and s1 not in head:
                    changed |= assign(s1, not head[s3])
                if s1 in head and s3 in head:
                    if head[s1] == head[s3]:
                        raise LabelError(f"over-strand at crossing {c + 1} is inconsistent")
                    pending.discard(c)
        if not pending:
            break
        c = min(pending)
        j, l = tuples[c][1], tuples[c][3]
        j_then_l = l % n_arcs == (j + 1) % n_arcs
        l_then_j = j % n_arcs == (l + 1) % n_arcs
        if j_then_l == l_then_j:
            raise LabelError(f"cannot orient over-strand of crossing {c + 1}")
        assign((c, 1), j_then_l)
        assign((c, 3), l_then_j)
    return [1 if head[(c, 1)] else 3 for c in range(len(tuples))]


def diagram_from_pd(tuples) -> KnotDiagram:
    tuples = [tuple(t) for t in tuples]
    if not tuples:
        return KnotDiagram(1, (), (1,))
    for t in tuples:
        if len(t) != 4:
            raise ArityError(f"crossing {t} has {len(t)} labels, expected 4")
    n_arcs = 2 * len(tuples)
    counts: dict[int, int] = {}
    for t in tuples:
        for x in t:
            counts[x] = counts.get(x, 0) + 1
    if set(counts) != set(range(1, n_arcs + 1)):
        raise LabelError(f"arc labels must be exactly 1..{n_arcs}")
    bad = sorted(x for x, k in counts.items() if k != 2)
    if bad:
        raise LabelError(f"labels {bad} do not appear exactly twice")
    over_in_slots = _resolve_over_strands(tuples)
    successor = [0] * n_arcs
    crossings = []
    for t, slot in zip(tuples, over_in_slots):
        over_in, over_out = t[slot], t[4 - slot]
        for a, b in ((t[0], t[2]), (over_in, over_out)):
            if successor[a - 1]:
                raise LabelError(f"edge {a} leaves two crossings")
            successor[a - 1] = b
        sign = 1 if slot == 3 else -1
        crossings.append(Crossing(over_in, t[0], t[2], sign))
    if sorted(successor) != list(range(1, n_arcs + 1)):
        raise LabelError("edges do not form a closed strand")
    if len(_cycle_from(successor, 1)) != n_arcs:
        raise MultiComponent("PD code describes a link with more than one component")
    return KnotDiagram(n_arcs, tuple(crossings), tuple(successor))


def parse_pd(text: str) -> KnotDiagram:
    return diagram_from_pd(_parse_pd_tuples(text))


def pd_tuples(d: KnotDiagram) -> list[tuple]:
    out = []
    for c in d.crossings:
        over_out = d.next_arc(c.over_arc)
        if c.sign > 0:
            out.append((c.under_in, over_out, c.under_out, c.over_arc))
        else:
            out.append((c.under_in, c.over_arc, c.under_out, over_out))
    return out


def render_pd(d: KnotDiagram) -> str:
    return "PD[" + ",".join("X(%d,%d,%d,%d)" % t for t in pd_tuples(d)) + "]"


# ---------------------------------------------------------------------------
# braids
# ---------------------------------------------------------------------------

_BR = re.compile(r"^BR\[\s*(\d+)\s*;([^\]]*)\]$")


def parse_braid_spec(text: str) -> BraidSpec:
    m = _BR.match(text.strip())
    if m is None:
        raise MalformedSyntax(f"expected BR[s; letters], got {text!r}")
    strands = int(m.group(1))
    try:
        letters = tuple(int(x) for x in m.group(2).replace(",", " ").split())
    except ValueError:
        raise MalformedSyntax(f"non-integer braid letter in {text!r}") from None
    return braid_spec(strands, letters)


def braid_spec(strands: int, letters) -> BraidSpec:
    if strands < 1:
        raise LetterOutOfRange("a braid needs at least one strand")
    letters = tuple(letters)
    for x in letters:
        if x == 0 or abs(x) >= strands:
            raise LetterOutOfRange(f"letter {x} out of range for {strands} strands")
    return BraidSpec(strands, letters)


def braid_closure(b: BraidSpec) -> KnotDiagram:
    """Diagram of the closed braid; letter ``i`` crosses strands i and i+1.

    Strands run upwards. A positive letter is a positive crossing with the
    left strand passing over.
    """
    s = b.strand_count
    perm = list(range(s))
    for x in b.letters:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    # position p at the top holds the strand that started at perm[p]
    start = 0
    cycle = [start]
    top_of = {perm[p]: p for p in range(s)}
    x = top_of[start]
    while x != start:
        cycle.append(x)
        x = top_of[x]
    if len(cycle) != s:
        raise MultiComponent(f"closure of {render_braid(b)} has more than one component")
    if not b.letters:
        return KnotDiagram(1, (), (1,))

    # raw edges: bottom edge per position, then one new edge per crossing output
    current = list(range(s))
    next_id = s
    raw = []
    succ_raw: dict[int, int] = {}
    for x in b.letters:
        i = abs(x) - 1
        left, right = current[i], current[i + 1]
        new_left, new_right = next_id, next_id + 1
        next_id += 2
        # left strand moves to position i+1, right strand to position i
        succ_raw[left] = new_right
        succ_raw[right] = new_left
        if x > 0:
            raw.append((left, right, 1))
        else:
            raw.append((right, left, -1))
        current[i], current[i + 1] = new_left, new_right
    alias = {p: current[p] for p in range(s)}

    def canon(e):
        return alias.get(e, e)

    succ = {canon(a): canon(b_) for a, b_ in succ_raw.items()}
    first = canon(raw[0][1])
    order = [first]
    e = succ[first]
    while e != first:
        order.append(e)
        e = succ[e]
    label = {e: k + 1 for k, e in enumerate(order)}
    successor = tuple(label[succ[e]] for e in order)
    crossings = []
    for over, under, sign in raw:
        u = label[canon(under)]
        crossings.append(Crossing(label[canon(over)], u, successor[u - 1], sign))
    return KnotDiagram(len(order), tuple(crossings), successor)


def parse_braid(text: str) -> KnotDiagram:
    return braid_closure(parse_braid_spec(text))


def render_braid(b: BraidSpec) -> str:
    return f"BR[{b.strand_count}; " + " ".join(map(str, b.letters)) + "]"


# ---------------------------------------------------------------------------
# 2-bridge fractions
# ---------------------------------------------------------------------------

def two_bridge(p: int, q: int) -> TwoBridgeFraction:
    if p < 1:
        raise OutOfRange(f"p must be >= 1, got {p}")
    if p % 2 == 0:
        raise EvenP(f"p = {p} is even: the 2-bridge link has two components")
    if p == 1:
        if q != 1:
            raise OutOfRange("the unknot is written 1/1")
    elif not 0 < q < p:
        raise OutOfRange(f"need 0 < q < p, got {p}/{q}")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    return TwoBridgeFraction(p, q)


_TB = re.compile(r"^TB\[\s*(-?\d+)\s*/\s*(-?\d+)\s*\]$")


def parse_two_bridge(text: str) -> TwoBridgeFraction:
    m = _TB.match(text.strip())
    if m is None:
        raise MalformedSyntax(f"expected TB[p/q], got {text!r}")
    return two_bridge(int(m.group(1)), int(m.group(2)))


def render_two_bridge(f: TwoBridgeFraction) -> str:
    return f"TB[{f.p}/{f.q}]"


def parse_knot(text: str):
    """Dispatch on the notation prefix; returns a diagram or a fraction."""
    head = text.strip()[:3].upper()
    if head.startswith("PD["):
        return parse_pd(text)
    if head.startswith("BR["):
        return parse_braid(text)
    if head.startswith("TB["):
        return parse_two_bridge(text)
    raise MalformedSyntax(f"unknown knot notation {text!r}")


def render_knot(k) -> str:
    if isinstance(k, TwoBridgeFraction):
        return render_two_bridge(k)
    return render_pd(k)
