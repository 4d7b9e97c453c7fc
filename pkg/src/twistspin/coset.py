"""Todd-Coxeter coset enumeration (HLT strategy) and finite-quotient queries.

Columns of a coset table are ordered ``a1, a1^-1, a2, a2^-1, ...``. Cosets
are numbered from 0 internally; coset 0 is the subgroup itself.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .fpcore import MarkedPresentation, Word, free_reduce


@dataclass(frozen=True)
class Limits:
    max_cosets: int = 1_000_000
    max_definitions: Optional[int] = None

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be positive")
        if self.max_definitions is not None and self.max_definitions < 1:
            raise ValueError("max_definitions must be positive")


def _col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


@dataclass(frozen=True)
class CosetTable:
    """Right action of the generators on cosets.

    ``rows[c][col]`` is the image of coset ``c`` under the generator (or
    inverse) of column ``col``, or ``None`` when undefined.
    """

    generator_count: int
    rows: tuple
    complete: bool
    subgroup: tuple = ()

    @property
    def size(self) -> int:
        return len(self.rows)

    def act(self, coset: int, x: int) -> Optional[int]:
        return self.rows[coset][_col(x)]

    def trace(self, coset: int, word: Sequence[int]) -> Optional[int]:
        for x in word:
            coset = self.rows[coset][_col(x)]
            if coset is None:
                return None
        return coset

    def permutation(self, x: int) -> tuple:
        return tuple(row[_col(x)] for row in self.rows)

    def dump(self) -> str:
        """One line per coset: the images under a1, a1^-1, a2, ... (1-based)."""
        head = ["coset"]
        for g in range(1, self.generator_count + 1):
            head += [f"a{g}", f"a{g}^-1"]
        lines = ["\t".join(head)]
        for c, row in enumerate(self.rows):
            cells = [str(c + 1)] + ["-" if v is None else str(v + 1) for v in row]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


@dataclass
class EnumerationStats:
    defined: int = 0
    max_live: int = 0
    coincidences: int = 0


@dataclass
class EnumerationResult:
    index: Optional[int]
    table: CosetTable
    stats: EnumerationStats = field(default_factory=EnumerationStats)

    @property
    def overflow(self) -> bool:
        return self.index is None


class _Overflow(Exception):
    pass


class _Enumerator:
    # single-use; owns its table exclusively

    def __init__(self, ngens: int, limits: Limits):
        self.ncols = 2 * ngens
        self.limits = limits
        self.table: list[list] = []
        self.parent: list[int] = []
        self.live = 0
        self.stats = EnumerationStats()
        self._new_coset()

    def _new_coset(self) -> int:
        if self.live >= self.limits.max_cosets:
            raise _Overflow
        cap = self.limits.max_definitions
        if cap is not None and self.stats.defined >= cap:
            raise _Overflow
        c = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(c)
        self.live += 1
        self.stats.defined += 1
        if self.live > self.stats.max_live:
            self.stats.max_live = self.live
        return c

    def define(self, c: int, col: int) -> int:
        d = self._new_coset()
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        return d

    def rep(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def _merge(self, a: int, b: int, queue: list):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.live -= 1
        queue.append(hi)

    def coincidence(self, a: int, b: int):
        self.stats.coincidences += 1
        queue: list[int] = []
        self._merge(a, b, queue)
        table = self.table
        i = 0
        while i < len(queue):
            dead = queue[i]
            i += 1
            row = table[dead]
            for col in range(self.ncols):
                d = row[col]
                if d is None:
                    continue
                inv = col ^ 1
                if table[d][inv] == dead:
                    table[d][inv] = None
                mu, nu = self.rep(dead), self.rep(d)
                if table[mu][col] is not None:
                    self._merge(nu, table[mu][col], queue)
                elif table[nu][inv] is not None:
                    self._merge(mu, table[nu][inv], queue)
                else:
                    table[mu][col] = nu
                    table[nu][inv] = mu

    def scan_and_fill(self, c: int, cols: Sequence[int]):
        table = self.table
        n = len(cols)
        if n == 0:
            return
        f, i = c, 0
        b, j = c, n - 1
        while True:
            while i <= j and table[f][cols[i]] is not None:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][cols[j] ^ 1] is not None:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                return
            self.define(f, cols[i])

    def run(self, relators: Sequence[Sequence[int]], subgroup: Sequence[Sequence[int]]) -> bool:
        rel_cols = [[_col(x) for x in r] for r in relators if r]
        alpha = 0
        try:
            for w in subgroup:
                self.scan_and_fill(0, [_col(x) for x in w])
            while alpha < len(self.table):
                for cols in rel_cols:
                    if self.parent[alpha] != alpha:
                        break
                    self.scan_and_fill(alpha, cols)
                if self.parent[alpha] == alpha:
                    for col in range(self.ncols):
                        if self.table[alpha][col] is None:
                            self.define(alpha, col)
                alpha += 1
                while alpha < len(self.table) and self.parent[alpha] != alpha:
                    alpha += 1
        except _Overflow:
            return False
        return True

    def standardized(self) -> list[list]:
        """Live cosets renumbered in breadth-first order from coset 0."""
        table = self.table
        order = [0]
        new = {0: 0}
        k = 0
        while k < len(order):
            c = order[k]
            k += 1
            for col in range(self.ncols):
                d = table[c][col]
                if d is None:
                    continue
                d = self.rep(d)
                if d not in new:
                    new[d] = len(order)
                    order.append(d)
        rows = []
        for c in order:
            row = []
            for col in range(self.ncols):
                d = table[c][col]
                row.append(None if d is None else new[self.rep(d)])
            rows.append(row)
        return rows


def enumerate_cosets(p: MarkedPresentation, subgroup: Iterable[Sequence[int]] = (),
                     limits: Optional[Limits] = None) -> EnumerationResult:
    """Enumerate the cosets of the subgroup generated by ``subgroup`` in ``p``.

    On overflow ``index`` is None and the partial table is returned.
    """
    limits = limits or Limits()
    subgroup = tuple(free_reduce(w) for w in subgroup)
    for w in subgroup:
        for x in w:
            if not 1 <= abs(x) <= p.generator_count:
                raise ValueError(f"subgroup word {w} uses an unknown generator")
    e = _Enumerator(p.generator_count, limits)
    done = e.run(p.relators, subgroup)
    rows = tuple(tuple(r) for r in e.standardized())
    table = CosetTable(p.generator_count, rows, done, subgroup)
    return EnumerationResult(len(rows) if done else None, table, e.stats)


def group_order(p: MarkedPresentation, limits: Optional[Limits] = None) -> Optional[int]:
    """Order of the group, or None when enumeration overflows."""
    return enumerate_cosets(p, (), limits).index


def regular_table(p: MarkedPresentation, limits: Optional[Limits] = None) -> Optional[CosetTable]:
    res = enumerate_cosets(p, (), limits)
    return None if res.overflow else res.table


def word_is_trivial(p: MarkedPresentation, w: Sequence[int], limits: Optional[Limits] = None,
                    table: Optional[CosetTable] = None) -> Optional[bool]:
    """Decide ``w == 1`` in a finite group; None when the group does not enumerate.

    The regular action is free, so ``w`` is trivial exactly when it fixes
    coset 0.
    """
    if table is None:
        table = regular_table(p, limits)
        if table is None:
            return None
    return table.trace(0, w) == 0


def _right_closure(t: CosetTable, start: Iterable[int], gens: Sequence[Word]) -> frozenset:
    seen = set(start)
    todo = deque(seen)
    while todo:
        c = todo.popleft()
        for w in gens:
            d = t.trace(c, w)
            if d not in seen:
                seen.add(d)
                todo.append(d)
    return frozenset(seen)


def subgroup_elements(t: CosetTable, gens: Sequence[Sequence[int]]) -> frozenset:
    """Cosets ``0 * h`` for ``h`` in the subgroup generated by ``gens``."""
    return _right_closure(t, [0], [free_reduce(w) for w in gens])


def double_coset(t: CosetTable, gens: Sequence[Sequence[int]], x: Sequence[int]) -> frozenset:
    h = subgroup_elements(t, gens)
    hx = {t.trace(c, x) for c in h}
    return _right_closure(t, hx, [free_reduce(w) for w in gens])


def double_coset_equal(t: CosetTable, gens: Sequence[Sequence[int]], x: Sequence[int],
                       y: Sequence[int]) -> bool:
    """Compare ``H x H`` and ``H y H`` inside the group of a complete regular table."""
    if not t.complete:
        raise ValueError("double cosets need a complete regular table")
    return double_coset(t, gens, x) == double_coset(t, gens, y)


def verify_table(t: CosetTable, p: MarkedPresentation,
                 subgroup: Iterable[Sequence[int]] = ()) -> bool:
    """Re-check a coset table from scratch.

    Every column must be a permutation with its inverse column as inverse,
    every relator must fix every coset, the subgroup words must fix coset 0
    and the action must be transitive.
    """
    n = t.size
    if n == 0 or t.generator_count != p.generator_count:
        return False
    for g in range(1, p.generator_count + 1):
        fwd, back = t.permutation(g), t.permutation(-g)
        if any(v is None or not 0 <= v < n for v in fwd + back):
            return False
        if sorted(fwd) != list(range(n)):
            return False
        if any(back[fwd[c]] != c for c in range(n)):
            return False
    for r in p.relators:
        for c in range(n):
            if t.trace(c, r) != c:
                return False
    for w in subgroup:
        if t.trace(0, w) != 0:
            return False
    reached = _right_closure(t, [0], [(g,) for g in range(1, p.generator_count + 1)])
    return len(reached) == n
