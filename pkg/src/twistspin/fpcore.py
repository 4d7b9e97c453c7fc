"""Finitely presented groups: words, presentations, Tietze moves and
abelian invariants.

A word is a tuple of nonzero ints: ``i`` stands for generator ``a_i`` and
``-i`` for its inverse. Generators are numbered from 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import BudgetExceeded, MalformedSyntax

Word = tuple


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if x == 0:
            raise ValueError("generator index 0 is not allowed in a word")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def power(w: Sequence[int], n: int) -> Word:
    if n < 0:
        return free_reduce(inverse(w) * -n)
    return free_reduce(tuple(w) * n)


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """``u v u^-1 v^-1``, freely reduced."""
    return free_reduce(tuple(u) + tuple(v) + inverse(u) + inverse(v))


def conjugate(w: Sequence[int], by: Sequence[int]) -> Word:
    """``by w by^-1``."""
    return free_reduce(tuple(by) + tuple(w) + inverse(by))


def exponent_sum(w: Sequence[int], gen: int | None = None) -> int:
    if gen is None:
        return sum(1 if x > 0 else -1 for x in w)
    return sum((x > 0) - (x < 0) for x in w if abs(x) == gen)


def cyclic_canonical(w: Sequence[int]) -> Word:
    """Representative of the cyclic word of ``w`` up to rotation and inversion.

    Two relators with equal canonical forms have the same normal closure.
    """
    w = cyclic_reduce(w)
    if not w:
        return ()
    candidates = []
    for v in (w, inverse(w)):
        for i in range(len(v)):
            candidates.append(v[i:] + v[:i])
    return min(candidates)


def format_word(w: Sequence[int]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        x = w[i]
        j = i
        while j < len(w) and w[j] == x:
            j += 1
        run = j - i
        exp = run if x > 0 else -run
        parts.append(f"a{abs(x)}" if exp == 1 else f"a{abs(x)}^{exp}")
        i = j
    return " ".join(parts)


_TOKEN = re.compile(r"a(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ()
    letters: list[int] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise MalformedSyntax(f"bad word token {tok!r}")
        gen = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if gen == 0:
            raise MalformedSyntax("generators are numbered from a1")
        letters.extend([gen if exp > 0 else -gen] * abs(exp))
    return free_reduce(letters)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkedPresentation:
    """A group presentation with a distinguished meridian generator.

    ``relators`` are stored cyclically reduced. ``provenance`` is one of
    ``"wirtinger"``, ``"schubert"`` or ``"derived"``.
    """

    generator_count: int
    relators: tuple = ()
    meridian_index: int = 1
    provenance: str = "derived"

    def __post_init__(self):
        if self.generator_count < 1:
            raise ValueError("a presentation needs at least one generator")
        if not 1 <= self.meridian_index <= self.generator_count:
            raise ValueError("meridian index out of range")
        rels = tuple(cyclic_reduce(r) for r in self.relators)
        for r in rels:
            for x in r:
                if not 1 <= abs(x) <= self.generator_count:
                    raise ValueError(f"relator {r} uses an unknown generator")
        object.__setattr__(self, "relators", rels)

    @property
    def meridian(self) -> Word:
        return (self.meridian_index,)

    def with_relators(self, extra: Iterable[Sequence[int]], provenance="derived"):
        return replace(self, relators=self.relators + tuple(extra), provenance=provenance)

    def render(self) -> str:
        gens = ", ".join(f"a{i}" for i in range(1, self.generator_count + 1))
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {gens} | {rels} >" if rels else f"< {gens} | >"

    def __str__(self):
        return self.render()


_PRES = re.compile(r"^\s*<(?P<gens>[^|>]*)\|(?P<rels>[^>]*)>\s*$")


def parse_presentation(text: str, meridian_index: int = 1) -> MarkedPresentation:
    """Inverse of :meth:`MarkedPresentation.render`.

    Generators must be listed as ``a1, ..., ak`` in order.
    """
    m = _PRES.match(text)
    if m is None:
        raise MalformedSyntax(f"not a presentation: {text!r}")
    gens = [g.strip() for g in m.group("gens").split(",") if g.strip()]
    if gens != [f"a{i}" for i in range(1, len(gens) + 1)]:
        raise MalformedSyntax("generators must be a1, a2, ... in order")
    rels = [parse_word(r) for r in m.group("rels").split(",") if r.strip()]
    return MarkedPresentation(len(gens), tuple(rels), meridian_index)


# ---------------------------------------------------------------------------
# Tietze simplification
# ---------------------------------------------------------------------------

def _substitute(w: Sequence[int], gen: int, image: Word) -> Word:
    inv = inverse(image)
    out: list[int] = []
    for x in w:
        if x == gen:
            out.extend(image)
        elif x == -gen:
            out.extend(inv)
        else:
            out.append(x)
    return free_reduce(out)


def _renumber(w: Sequence[int], removed: int) -> Word:
    return tuple(x if abs(x) < removed else (x - 1 if x > 0 else x + 1) for x in w)


def _tidy(relators: Iterable[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in relators:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = cyclic_canonical(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def _find_elimination(rels: list[Word], meridian: int):
    """Shortest relator with a generator occurring exactly once; lowest index wins ties."""
    best = None
    for idx, r in enumerate(rels):
        counts: dict[int, int] = {}
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        for gen in sorted(counts):
            if gen == meridian or counts[gen] != 1:
                continue
            key = (len(r), gen, idx)
            if best is None or key < best[0]:
                best = (key, idx, gen)
            break
    return best


def _solve_for(r: Word, gen: int) -> Word:
    """Rewrite ``r = 1`` (with ``gen`` occurring once) as ``gen = image``."""
    pos = next(i for i, x in enumerate(r) if abs(x) == gen)
    rotated = r[pos:] + r[:pos]
    rest = rotated[1:]
    # gen^e * rest = 1
    if rotated[0] > 0:
        return inverse(rest)
    return free_reduce(rest)


def _shorten_once(rels: list[Word]) -> bool:
    """Replace a long piece of one relator inside another by the shorter rest."""
    order = sorted(range(len(rels)), key=lambda i: (len(rels[i]), i))
    for i in order:
        r = rels[i]
        n = len(r)
        if n == 0:
            continue
        for v in (r, inverse(r)):
            for rot in range(n):
                c = v[rot:] + v[:rot]
                for cut in range(n // 2 + 1, n + 1):
                    piece, rest = c[:cut], c[cut:]
                    for j in range(len(rels)):
                        if j == i:
                            continue
                        s = rels[j]
                        if len(s) < len(piece):
                            continue
                        doubled = s + s[: len(piece) - 1]
                        for start in range(len(s)):
                            if doubled[start:start + len(piece)] == piece:
                                rotated = s[start:] + s[:start]
                                new = cyclic_reduce(inverse(rest) + rotated[len(piece):])
                                if len(new) < len(s):
                                    rels[j] = new
                                    return True
    return False


def tietze_simplify(p: MarkedPresentation, budget: int = 10_000) -> MarkedPresentation:
    """Simplify ``p`` with eliminations and shortening substitutions.

    The marked meridian is never eliminated. Raises :class:`BudgetExceeded`
    (with the best presentation so far attached) when more than ``budget``
    moves would be needed.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    ngens = p.generator_count
    meridian = p.meridian_index
    rels = _tidy(p.relators)
    moves = 0

    def snapshot():
        return MarkedPresentation(ngens, tuple(rels), meridian, "derived")

    while True:
        found = _find_elimination(rels, meridian)
        if found is not None:
            _, idx, gen = found
            image = _solve_for(rels[idx], gen)
            del rels[idx]
            rels = [_renumber(_substitute(r, gen, image), gen) for r in rels]
            rels = _tidy(rels)
            ngens -= 1
            if meridian > gen:
                meridian -= 1
        elif _shorten_once(rels):
            rels = _tidy(rels)
        else:
            return snapshot()
        moves += 1
        if moves >= budget:
            raise BudgetExceeded(f"tietze budget of {budget} moves exhausted", snapshot())


# ---------------------------------------------------------------------------
# abelian invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianInvariants:
    """Torsion factors ``d1 | d2 | ...`` (each >= 2) and the free rank."""

    torsion: tuple
    free_rank: int

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def relation_matrix(p: MarkedPresentation) -> list[list[int]]:
    """Relator-by-generator exponent-sum matrix."""
    rows = []
    for r in p.relators:
        row = [0] * p.generator_count
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    a = [list(map(int, row)) for row in matrix]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # every entry of the block must be divisible by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remainder into the pivot position
            best = (t, t)
            for i in range(t, m):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, n):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelian_invariants(p: MarkedPresentation) -> AbelianInvariants:
    diag = smith_diagonal(relation_matrix(p))
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(torsion, p.generator_count - len(diag))
