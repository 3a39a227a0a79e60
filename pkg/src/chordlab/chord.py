"""Rooted chord diagrams as matchings of {1,...,2n}, with brute-force
enumeration and the structural predicates used everywhere else.

A diagram is stored as the partner array of a fixed-point-free involution,
0-indexed internally; the textual literal "n: p1 p2 ... p2n" is 1-indexed.
The chord containing endpoint 1 is the root.  Intervals are the spaces to
the right of each endpoint (2n of them, the last one included).

>>> d = ChordDiagram.from_literal("2: 3 4 1 2")   # the crossing pair
>>> d.is_connected(), d.connectivity(), d.is_indecomposable()
(True, 2, True)
>>> sum(1 for _ in enumerate_diagrams(4))
105
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

DEFAULT_MAX_N = 10


def _enumeration_limit() -> int:
    env = os.environ.get("CHORDLAB_MAX_N")
    return int(env) if env else DEFAULT_MAX_N


class ChordDiagram:
    """A perfect matching of {1,...,2n} with the root at endpoint 1."""

    __slots__ = ("partners",)

    def __init__(self, partners: Sequence[int]):
        p = tuple(partners)
        m = len(p)
        if m % 2:
            raise ValueError("a diagram has an even number of endpoints")
        for i, q in enumerate(p):
            if not 0 <= q < m or q == i or p[q] != i:
                raise ValueError("partner array is not a fixed-point-free involution")
        object.__setattr__(self, "partners", p)

    def __setattr__(self, name, value):
        raise AttributeError("ChordDiagram is immutable")

    @property
    def n(self) -> int:
        return len(self.partners) // 2

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, ChordDiagram) and self.partners == other.partners

    def __hash__(self) -> int:
        return hash(self.partners)

    def __repr__(self) -> str:
        return f"ChordDiagram({self.to_literal()!r})"

    # -- text form ----------------------------------------------------------

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[int, int]]) -> "ChordDiagram":
        """Build from 1-indexed endpoint pairs."""
        m = 2 * len(pairs)
        p = [-1] * m
        for a, b in pairs:
            p[a - 1] = b - 1
            p[b - 1] = a - 1
        if -1 in p:
            raise ValueError("pairs do not cover {1,...,2n}")
        return cls(p)

    @classmethod
    def from_literal(cls, text: str) -> "ChordDiagram":
        """Parse "n: p1 p2 ... p2n" (1-indexed partner list)."""
        head, _, body = text.partition(":")
        n = int(head.strip())
        vals = [int(t) for t in body.split()]
        if len(vals) != 2 * n:
            raise ValueError(f"expected {2 * n} partners, got {len(vals)}")
        return cls([v - 1 for v in vals])

    def to_literal(self) -> str:
        body = " ".join(str(q + 1) for q in self.partners)
        return f"{self.n}: {body}" if body else f"{self.n}:"

    # -- chords and crossings -------------------------------------------------

    def chords(self) -> list[tuple[int, int]]:
        """Chords as 0-indexed (a, b) with a < b, sorted by first endpoint."""
        return [
            (i, q) for i, q in enumerate(self.partners) if i < q
        ]

    def root_chord(self) -> tuple[int, int]:
        if not self.n:
            raise ValueError("the empty diagram has no root")
        return (0, self.partners[0])

    def intersection_adjacency(self) -> list[set[int]]:
        """Adjacency of the intersection graph over chord indices."""
        cs = self.chords()
        adj: list[set[int]] = [set() for _ in cs]
        for i, (a1, b1) in enumerate(cs):
            for j in range(i + 1, len(cs)):
                a2, b2 = cs[j]
                if a1 < a2 < b1 < b2:
                    adj[i].add(j)
                    adj[j].add(i)
        return adj

    def components(self) -> list[frozenset[int]]:
        """Connected components of the intersection graph (chord indices),
        ordered by smallest endpoint."""
        adj = self.intersection_adjacency()
        seen = [False] * len(adj)
        comps = []
        for start in range(len(adj)):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = {start}
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    # -- connectivity ---------------------------------------------------------

    def is_connected(self) -> bool:
        return self.n >= 1 and len(self.components()) == 1

    def connectivity(self) -> int:
        """Largest k such that the diagram is k-connected.

        Computed as the minimum, over windows of consecutive endpoints that
        contain a full chord and whose complement contains a full chord, of
        the number of chords crossing the window boundary; if no such window
        exists the diagram cannot be disconnected by deletions and the
        connectivity is n.  Equals the least number of chords whose deletion
        disconnects the intersection graph.
        """
        if not self.n:
            return 0
        return _min_window_cut(self.partners)

    def is_k_connected(self, k: int) -> bool:
        return self.connectivity() >= k

    def is_indecomposable(self) -> bool:
        """True unless the diagram is a concatenation of smaller ones."""
        m = len(self.partners)
        run_max = -1
        for j in range(m - 1):
            q = self.partners[j]
            if q > run_max:
                run_max = q
            if run_max == j:
                return False
        return True

    # -- root-component decomposition ------------------------------------------

    def root_component(self) -> frozenset[int]:
        """Chord indices of the intersection-graph component of the root."""
        if not self.n:
            raise ValueError("the empty diagram has no root component")
        for comp in self.components():
            if 0 in comp:
                return comp
        raise AssertionError("unreachable")

    def subdiagram(self, chord_indices) -> "ChordDiagram":
        """Diagram induced by a subset of chords, positions collapsed."""
        cs = self.chords()
        keep = sorted(chord_indices)
        positions = sorted(
            pos for i in keep for pos in cs[i]
        )
        rank = {pos: r for r, pos in enumerate(positions)}
        p = [-1] * len(positions)
        for i in keep:
            a, b = cs[i]
            p[rank[a]] = rank[b]
            p[rank[b]] = rank[a]
        return ChordDiagram(p)

    def dangling(self, chord_index: int) -> tuple["ChordDiagram", "ChordDiagram"]:
        """The two diagrams hanging right of the two ends of a root-component
        chord: (after the left end, after the right end)."""
        rc = self.root_component()
        if chord_index not in rc:
            raise ValueError("chord is not in the root component")
        cs = self.chords()
        boundary = sorted(pos for i in rc for pos in cs[i])
        boundary_set = set(boundary)
        m = len(self.partners)

        def gap_after(pos: int) -> ChordDiagram:
            run = []
            j = pos + 1
            while j < m and j not in boundary_set:
                run.append(j)
                j += 1
            rank = {q: r for r, q in enumerate(run)}
            p = [-1] * len(run)
            for q in run:
                p[rank[q]] = rank[self.partners[q]]
            return ChordDiagram(p)

        a, b = cs[chord_index]
        return gap_after(a), gap_after(b)


def _min_window_cut(partners: Sequence[int]) -> int:
    """Minimum boundary-crossing count over separating windows (see
    ChordDiagram.connectivity); falls back to n when nothing separates."""
    m = len(partners)
    n = m // 2
    best = n
    for i in range(m):
        out = 0
        inside = False
        for j in range(i, m):
            q = partners[j]
            if i <= q < j:
                out -= 1
                inside = True
            else:
                out += 1
            if out < best and inside and m - (j - i + 1) - out >= 2:
                best = out
                if not best:
                    return 0
    return best


@dataclass(frozen=True)
class Reason:
    """A consecutive endpoint window certifying connectivity 1.

    `window` is the 1-indexed inclusive (start, end); all its endpoints pair
    internally except one endpoint of the cut chord, whose deletion
    disconnects the diagram.
    """

    window: tuple[int, int]
    cut_chord: int


@dataclass(frozen=True)
class ReasonReport:
    connectivity_one: bool
    reasons: tuple[Reason, ...]


def reasons_and_cuts(d: ChordDiagram) -> ReasonReport:
    """All reasons (windows with exactly one boundary-crossing chord and at
    least one internal chord) of a connectivity-1 diagram, with their cuts.

    For a diagram whose connectivity is not 1 the report carries an empty
    list and is flagged via `connectivity_one=False`.
    """
    if d.connectivity() != 1:
        return ReasonReport(False, ())
    p = d.partners
    m = len(p)
    cs = d.chords()
    chord_at = {}
    for idx, (a, b) in enumerate(cs):
        chord_at[a] = idx
        chord_at[b] = idx
    found = []
    for i in range(m):
        open_chords: set[int] = set()
        inside = False
        for j in range(i, m):
            q = p[j]
            if i <= q < j:
                open_chords.discard(chord_at[j])
                inside = True
            else:
                open_chords.add(chord_at[j])
            if len(open_chords) == 1 and inside and m - (j - i + 1) - 1 >= 2:
                found.append(Reason((i + 1, j + 1), next(iter(open_chords))))
    return ReasonReport(True, tuple(found))


def minimal_reasons(report: ReasonReport) -> tuple[Reason, ...]:
    """Reasons that contain no other reason."""
    return tuple(
        r
        for r in report.reasons
        if not any(
            s != r
            and r.window[0] <= s.window[0]
            and s.window[1] <= r.window[1]
            for s in report.reasons
        )
    )


def maximal_reasons(report: ReasonReport) -> tuple[Reason, ...]:
    """Reasons contained in no other reason."""
    return tuple(
        r
        for r in report.reasons
        if not any(
            s != r
            and s.window[0] <= r.window[0]
            and r.window[1] <= s.window[1]
            for s in report.reasons
        )
    )


# -- enumeration ---------------------------------------------------------------


def enumerate_diagrams(n: int) -> Iterator[ChordDiagram]:
    """All (2n-1)!! diagrams on n chords, in the deterministic order given by
    always matching the smallest free endpoint with its partner increasing."""
    limit = _enumeration_limit()
    if n > limit:
        raise ValueError(f"n={n} exceeds the enumeration guard ({limit}); "
                         "set CHORDLAB_MAX_N to raise it")
    if n == 0:
        yield ChordDiagram(())
        return
    m = 2 * n
    p = [-1] * m

    def rec(start: int) -> Iterator[ChordDiagram]:
        i = start
        while p[i] >= 0:
            i += 1
            if i == m:
                yield ChordDiagram(p)
                return
        for j in range(i + 1, m):
            if p[j] < 0:
                p[i] = j
                p[j] = i
                yield from rec(i + 1)
                p[i] = -1
                p[j] = -1

    yield from rec(0)


@dataclass(frozen=True)
class Census:
    total: int
    connected: int
    two_connected: int
    connectivity_one: int
    indecomposable_nonempty: int


def census(n: int) -> Census:
    """Count diagrams on n chords by connectivity class and indecomposability
    in one enumeration pass (no diagram objects are materialised)."""
    limit = _enumeration_limit()
    if n > limit:
        raise ValueError(f"n={n} exceeds the enumeration guard ({limit})")
    if n == 0:
        return Census(1, 0, 0, 0, 0)
    m = 2 * n
    p = [-1] * m
    counts = [0, 0, 0, 0, 0]  # total, conn, 2conn, conn1, indec
    rng_m = range(m)

    def classify() -> None:
        counts[0] += 1
        # indecomposable: no proper self-paired prefix
        run_max = -1
        decomposable = False
        for j in range(m - 1):
            q = p[j]
            if q > run_max:
                run_max = q
            if run_max == j:
                decomposable = True
                break
        if not decomposable:
            counts[4] += 1
        # minimum window cut
        best = n
        for i in rng_m:
            out = 0
            inside = False
            for j in range(i, m):
                q = p[j]
                if i <= q < j:
                    out -= 1
                    inside = True
                else:
                    out += 1
                if out < best and inside and m - (j - i + 1) - out >= 2:
                    best = out
                    if not best:
                        return
        if best >= 1:
            counts[1] += 1
            if best >= 2:
                counts[2] += 1
            else:
                counts[3] += 1

    def rec(start: int) -> None:
        i = start
        while p[i] >= 0:
            i += 1
            if i == m:
                classify()
                return
        for j in range(i + 1, m):
            if p[j] < 0:
                p[i] = j
                p[j] = i
                rec(i + 1)
                p[i] = -1
                p[j] = -1

    rec(0)
    return Census(*counts)


# -- labelled intersection graph ------------------------------------------------


@dataclass(frozen=True)
class IntersectionGraph:
    """The intersection graph with the recursive labelling: the root chord is
    labelled first, then the components left after removing it, ordered by
    first endpoint, are labelled recursively."""

    n: int
    labels: tuple[int, ...]  # labels[chord_index] = label in 1..n
    edges: frozenset[tuple[int, int]]  # (smaller label, larger label)


def labelled_intersection_graph(d: ChordDiagram) -> IntersectionGraph:
    cs = d.chords()
    adj = d.intersection_adjacency()
    labels = [0] * len(cs)
    counter = [0]

    def first_endpoint(indices) -> dict[int, int]:
        return {i: cs[i][0] for i in indices}

    def assign(indices: frozenset[int]) -> None:
        firsts = first_endpoint(indices)
        root = min(indices, key=firsts.get)
        counter[0] += 1
        labels[root] = counter[0]
        rest = indices - {root}
        comps = []
        seen = set()
        for start in sorted(rest, key=firsts.get):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w in rest and w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(comp)
        comps.sort(key=lambda c: min(firsts[i] for i in c))
        for comp in comps:
            assign(frozenset(comp))

    if cs:
        assign(frozenset(range(len(cs))))
    edge_set = frozenset(
        (min(labels[i], labels[j]), max(labels[i], labels[j]))
        for i in range(len(cs))
        for j in adj[i]
        if i < j
    )
    return IntersectionGraph(d.n, tuple(labels), edge_set)


# -- assembly (inverse of the root-component decomposition) ----------------------


def assemble_root_component(
    root: ChordDiagram,
    danglings: Sequence[tuple[ChordDiagram, ChordDiagram]],
) -> ChordDiagram:
    """Rebuild a diagram from a connected core and, for each of its chords,
    the pair of diagrams hanging right of its two ends."""
    if len(danglings) != root.n:
        raise ValueError("one dangling pair per chord is required")
    cs = root.chords()
    by_endpoint: dict[int, ChordDiagram] = {}
    for idx, (a, b) in enumerate(cs):
        by_endpoint[a] = danglings[idx][0]
        by_endpoint[b] = danglings[idx][1]
    layout: list[tuple[str, int, int]] = []  # (kind, owner, local index)
    for pos in range(2 * root.n):
        layout.append(("core", pos, 0))
        sub = by_endpoint[pos]
        for j in range(2 * sub.n):
            layout.append(("gap", pos, j))
    place = {(k, o, j): idx for idx, (k, o, j) in enumerate(layout)}
    p = [-1] * len(layout)
    for a, b in cs:
        p[place[("core", a, 0)]] = place[("core", b, 0)]
        p[place[("core", b, 0)]] = place[("core", a, 0)]
    for pos in range(2 * root.n):
        sub = by_endpoint[pos]
        for j, q in enumerate(sub.partners):
            p[place[("gap", pos, j)]] = place[("gap", pos, q)]
    return ChordDiagram(p)
