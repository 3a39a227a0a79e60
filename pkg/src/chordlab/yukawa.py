"""Three-valent two-edge-type diagram combinatorics: one-leg 1PI graphs
(tadpoles), their recursive pairing algorithm and the induced edge order,
the explicit bijection onto connected chord diagrams, the chord
representation of the no-fermion-loop vertex graphs, and the series-level
identities for the associated generating functions.

A tadpole is stored as
  succ   -- successor along the (counter-clockwise) fermion loops; a
            permutation of the vertex set, fixed points being one-vertex
            loops;
  boson  -- the internal boson matching, an involution on all vertices
            except the leg vertex;
  leg    -- the vertex carrying the single external boson leg.
Vertex names are arbitrary integers; equality of tadpoles means graph
isomorphism respecting the leg and the loop orientation, decided through a
canonical traversal signature (the free end of the leg is never a vertex
here; algorithms that treat it as one use the LEG_END marker instead).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import fps
from .bijections import RootShareTriple, nabla, nabla_inv
from .chord import ChordDiagram
from .fps import FormalPowerSeries
from .gfseries import (
    IdentityReport,
    connected_series,
    two_connected_series,
)

LEG_END = "leg-end"  # the free end of the external leg, used as a mark

DEFAULT_MAX_LOOPS = 4


class TadpoleGraph:
    __slots__ = ("succ", "boson", "leg")

    def __init__(self, succ: dict[int, int], boson: dict[int, int], leg: int):
        vertices = set(succ)
        if leg not in vertices:
            raise ValueError("the leg vertex is not a vertex")
        if set(succ.values()) != vertices:
            raise ValueError("loop successor map is not a permutation")
        if set(boson) != vertices - {leg}:
            raise ValueError("every vertex but the leg needs a boson partner")
        for v, w in boson.items():
            if w == v or boson.get(w) != v:
                raise ValueError("boson map is not a fixed-point-free involution")
        object.__setattr__(self, "succ", dict(succ))
        object.__setattr__(self, "boson", dict(boson))
        object.__setattr__(self, "leg", leg)

    def __setattr__(self, name, value):
        raise AttributeError("TadpoleGraph is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def vertices(self) -> set[int]:
        return set(self.succ)

    @property
    def boson_count(self) -> int:
        """Number of boson edges including the external leg; equals the loop
        number, and the number of vertices is 2*boson_count - 1."""
        return (len(self.succ) + 1) // 2

    def is_single_vertex(self) -> bool:
        return len(self.succ) == 1

    def pred(self, v: int) -> int:
        w = v
        while self.succ[w] != v:
            w = self.succ[w]
        return w

    def loops(self) -> list[list[int]]:
        seen = set()
        out = []
        for start in self.succ:
            if start in seen:
                continue
            loop = [start]
            seen.add(start)
            v = self.succ[start]
            while v != start:
                loop.append(v)
                seen.add(v)
                v = self.succ[v]
            out.append(loop)
        return out

    def _edges(self) -> list[tuple[int, int]]:
        es = [(v, w) for v, w in self.succ.items()]
        es.extend((v, w) for v, w in self.boson.items() if v < w)
        return es

    def is_connected(self) -> bool:
        vs = self.vertices
        adj: dict[int, list[int]] = {v: [] for v in vs}
        for a, b in self._edges():
            adj[a].append(b)
            adj[b].append(a)
        stack = [self.leg]
        seen = {self.leg}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == vs

    def is_one_particle_irreducible(self) -> bool:
        """Bridgeless on the internal (fermion + boson) edges; the external
        leg is not an internal edge and is ignored."""
        return self.is_connected() and not _bridges(self._edges(), self.vertices)

    # -- identity ------------------------------------------------------------

    def canonical_signature(self) -> tuple:
        """Traversal signature: breadth-first from the leg following the
        successor, predecessor and boson functions, numbering vertices by
        first visit.  Two connected tadpoles are isomorphic (leg-preserving,
        orientation kept) exactly when their signatures agree."""
        pred = {w: v for v, w in self.succ.items()}
        number = {self.leg: 0}
        order = [self.leg]
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            neighbours = [self.succ[v], pred[v]]
            if v != self.leg:
                neighbours.append(self.boson[v])
            for w in neighbours:
                if w not in number:
                    number[w] = len(order)
                    order.append(w)
        if len(order) != len(self.succ):
            raise ValueError("signature of a disconnected tadpole is undefined")
        sig = []
        for v in order:
            sig.append(
                (
                    number[self.succ[v]],
                    number[self.boson[v]] if v != self.leg else -1,
                )
            )
        return tuple(sig)

    def relabeled(self, offset: int) -> "TadpoleGraph":
        return TadpoleGraph(
            {v + offset: w + offset for v, w in self.succ.items()},
            {v + offset: w + offset for v, w in self.boson.items()},
            self.leg + offset,
        )

    def canonical(self) -> "TadpoleGraph":
        """The isomorphic copy whose vertex names are the signature order."""
        pred = {w: v for v, w in self.succ.items()}
        number = {self.leg: 0}
        order = [self.leg]
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            neighbours = [self.succ[v], pred[v]]
            if v != self.leg:
                neighbours.append(self.boson[v])
            for w in neighbours:
                if w not in number:
                    number[w] = len(order)
                    order.append(w)
        return TadpoleGraph(
            {number[v]: number[self.succ[v]] for v in order},
            {number[v]: number[self.boson[v]] for v in order if v != self.leg},
            0,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TadpoleGraph)
            and self.canonical_signature() == other.canonical_signature()
        )

    def __hash__(self) -> int:
        return hash(self.canonical_signature())

    def __repr__(self) -> str:
        return f"TadpoleGraph({self.to_literal()!r})"

    # -- text form -------------------------------------------------------------

    def to_literal(self) -> str:
        loops = "".join(
            "(" + " ".join(str(v) for v in loop) + ")" for loop in self.loops()
        )
        bosons = ", ".join(
            f"{v}-{w}" for v, w in sorted(self.boson.items()) if v < w
        )
        return f"loops: {loops} ; bosons: {bosons} ; leg: {self.leg}"

    @classmethod
    def from_literal(cls, text: str) -> "TadpoleGraph":
        parts = [p.strip() for p in text.split(";")]
        if len(parts) != 3:
            raise ValueError("expected 'loops: ... ; bosons: ... ; leg: ...'")
        loops_part = parts[0].split(":", 1)[1].strip()
        bosons_part = parts[1].split(":", 1)[1].strip()
        leg_part = parts[2].split(":", 1)[1].strip()
        succ: dict[int, int] = {}
        chunk = loops_part
        while chunk:
            if not chunk.startswith("("):
                raise ValueError("loops must be parenthesized")
            end = chunk.index(")")
            loop = [int(t) for t in chunk[1:end].split()]
            for a, b in zip(loop, loop[1:] + loop[:1]):
                succ[a] = b
            chunk = chunk[end + 1 :].strip()
        boson: dict[int, int] = {}
        if bosons_part:
            for pair in bosons_part.split(","):
                a, b = (int(t) for t in pair.strip().split("-"))
                boson[a] = b
                boson[b] = a
        return cls(succ, boson, int(leg_part))


def _bridges(edges: Sequence[tuple[int, int]], vertices: set[int]) -> list[int]:
    """Indices of bridge edges (multigraph-aware; self-loops never qualify)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vertices}
    for idx, (a, b) in enumerate(edges):
        if a == b:
            continue
        adj[a].append((b, idx))
        adj[b].append((a, idx))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: list[int] = []
    counter = [0]
    for root in vertices:
        if root in disc:
            continue
        stack = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = counter[0]
        counter[0] += 1
        while stack:
            v, in_edge, it = stack[-1]
            advanced = False
            for w, idx in it:
                if idx == in_edge:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append((w, idx, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.append(in_edge)
    return out


X_TADPOLE = TadpoleGraph({0: 0}, {}, 0)


# -- enumeration -------------------------------------------------------------------


def _matchings(items: list[int]) -> Iterator[dict[int, int]]:
    if not items:
        yield {}
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for sub in _matchings(rest[:i] + rest[i + 1 :]):
            sub[first] = other
            sub[other] = first
            yield sub


def _partitions(n: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    cap = n if cap is None else min(cap, n)
    for head in range(cap, 0, -1):
        for tail in _partitions(n - head, head):
            yield (head,) + tail


def _loops_limit() -> int:
    env = os.environ.get("CHORDLAB_MAX_N")
    return int(env) if env else DEFAULT_MAX_LOOPS


def enumerate_tadpoles(loops: int, allow_five: bool = False) -> list[TadpoleGraph]:
    """All 1PI tadpoles with the given loop number, one per isomorphism
    class, in a deterministic (signature-sorted) order."""
    limit = max(_loops_limit(), 5 if allow_five else 0)
    if loops > limit:
        raise ValueError(
            f"loop number {loops} exceeds the guard ({limit}); "
            "pass allow_five=True or set CHORDLAB_MAX_N"
        )
    if loops < 1:
        raise ValueError("a tadpole has at least one loop")
    m = 2 * loops - 1
    found: dict[tuple, TadpoleGraph] = {}
    for root_len in range(1, m + 1):
        for rest in _partitions(m - root_len):
            succ: dict[int, int] = {}
            start = 0
            for length in (root_len,) + rest:
                block = list(range(start, start + length))
                for a, b in zip(block, block[1:] + block[:1]):
                    succ[a] = b
                start += length
            for matching in _matchings(list(range(1, m))):
                t = TadpoleGraph(succ, matching, 0)
                if not t.is_connected():
                    continue
                if not t.is_one_particle_irreducible():
                    continue
                sig = t.canonical_signature()
                if sig not in found:
                    found[sig] = t.canonical()
    return [found[sig] for sig in sorted(found)]


# -- the pairing algorithm ------------------------------------------------------------


def psi(
    t1: TadpoleGraph,
    marked: TadpoleGraph | tuple[TadpoleGraph, int | str],
    d: int | str | None = None,
):
    """Combine a tadpole with a vertex-marked tadpole; call either as
    psi(t1, (t2, d)) or psi(t1, t2, d).

    With the mark on the free end of the leg, the pair is returned
    unchanged.  Otherwise the two graphs are joined into a single 1PI
    tadpole: the leg end of the second becomes an internal vertex inserted
    after the first's leg vertex, and either the first is a single vertex
    (which subdivides the marked edge together with its leg) or the vertex
    after the first's leg vertex migrates into the marked edge.
    """
    if d is None:
        t2, d = marked
    else:
        t2 = marked
    if d == LEG_END:
        return (t1, t2)
    if d not in t2.vertices:
        raise ValueError("the marked vertex is not in the second tadpole")
    offset = max(t2.vertices) + 1
    t1r = t1.relabeled(offset)
    u2 = max(t1r.vertices) + 1
    succ = dict(t2.succ)
    succ.update(t1r.succ)
    boson = dict(t2.boson)
    boson.update(t1r.boson)
    v1 = t1r.leg
    v2 = t2.leg
    w = t1r.succ[v1]
    if w == v1:
        # single-vertex case: subdivide the marked edge by v1 then u2
        succ[d] = v1
        succ[v1] = u2
        succ[u2] = t2.succ[d]
    else:
        succ[v1] = u2
        succ[u2] = t1r.succ[w]
        succ[d] = w
        succ[w] = t2.succ[d]
    boson[u2] = v2
    boson[v2] = u2
    return TadpoleGraph(succ, boson, v1)


def psi_inv(obj):
    """Inverse of psi.  A pair maps to the pair with the leg-end mark; a
    single tadpole (never the one-vertex one) is split back into
    (t1, (t2, d)).  Vertex names of t2 and the mark d are preserved."""
    if isinstance(obj, tuple):
        t1, t2 = obj
        return (t1, (t2, LEG_END))
    t: TadpoleGraph = obj
    if t.is_single_vertex():
        raise ValueError("the one-vertex tadpole is not in the image")
    v_t = t.leg
    a = t.succ[v_t]
    v2 = t.boson[a]
    # Gamma: remove a from its loop and drop its boson edge
    gamma_succ = dict(t.succ)
    pred_a = t.pred(a)
    gamma_succ[pred_a] = gamma_succ.pop(a)
    gamma_boson = dict(t.boson)
    del gamma_boson[a], gamma_boson[v2]
    gamma_vertices = t.vertices - {a}
    gamma_edges = [(v, w) for v, w in gamma_succ.items()]
    gamma_edges.extend((v, w) for v, w in gamma_boson.items() if v < w)
    gamma_adj: dict[int, set[int]] = {v: set() for v in gamma_vertices}
    for x, y in gamma_edges:
        gamma_adj[x].add(y)
        gamma_adj[y].add(x)
    reach = {v_t}
    stack = [v_t]
    while stack:
        v = stack.pop()
        for nb in gamma_adj[v]:
            if nb not in reach:
                reach.add(nb)
                stack.append(nb)
    connected = reach == gamma_vertices
    bridge_ids = _bridges(gamma_edges, gamma_vertices)

    if connected and not bridge_ids:
        # t1 was the single vertex
        d = v_t
        while gamma_succ[d] != v_t:
            d = gamma_succ[d]
        t2_succ = dict(gamma_succ)
        pred_vt = d
        t2_succ[pred_vt] = t2_succ.pop(v_t)
        t2 = TadpoleGraph(t2_succ, gamma_boson, v2)
        return (X_TADPOLE, (t2, d))

    # locate the bridgeless block of v2 and its unique incident bridge
    bridge_set = {gamma_edges[i] for i in bridge_ids}
    block_adj: dict[int, set[int]] = {v: set() for v in gamma_vertices}
    for x, y in gamma_edges:
        if (x, y) in bridge_set or x == y:
            continue
        block_adj[x].add(y)
        block_adj[y].add(x)
    block = {v2}
    stack = [v2]
    while stack:
        v = stack.pop()
        for nb in block_adj[v]:
            if nb not in block:
                block.add(nb)
                stack.append(nb)
    incident = [
        (x, y) for x, y in bridge_set if (x in block) != (y in block)
    ]
    if len(incident) != 1:
        raise ValueError("malformed input: no unique bridge at the second part")
    bx, by = incident[0]
    w = bx if bx in block else by
    d = w
    while gamma_succ[d] != w:
        d = gamma_succ[d]
    # t2: the block with w removed from its loop, leg at v2
    t2_succ = {v: gamma_succ[v] for v in block if v != w}
    t2_succ[d] = gamma_succ[w]
    t2_boson = {v: p for v, p in gamma_boson.items() if v in block and p in block}
    t2 = TadpoleGraph(t2_succ, t2_boson, v2)
    # t1: everything outside the block, with w inserted after the leg vertex
    t1_vertices = (gamma_vertices - block) | {w}
    t1_succ = {v: gamma_succ[v] for v in gamma_vertices - block}
    t1_succ[w] = t1_succ[v_t]
    t1_succ[v_t] = w
    t1_boson = {
        v: p for v, p in gamma_boson.items() if v in t1_vertices and p in t1_vertices
    }
    t1 = TadpoleGraph(t1_succ, t1_boson, v_t)
    return (t1, (t2, d))


# -- the edge order ----------------------------------------------------------------


def psi_order(t: TadpoleGraph) -> dict[int, int]:
    """Rank of every fermion edge, keyed by its source vertex, in the order
    induced by the recursive decomposition (the leg vertex's outgoing edge
    always comes first).  A bijection onto 1..(2*loops - 1)."""
    if t.is_single_vertex():
        return {t.leg: 1}
    t1, (t2, d) = psi_inv(t)
    q = psi_order(t2)[d]
    v_t = t.leg
    a = t.succ[v_t]  # the reinstated leg end of t2
    order: dict[int, int] = {v_t: 1}
    if t1.is_single_vertex():
        for s, rank in psi_order(t2).items():
            if s == d:
                order[d] = q + 1
            elif rank < q:
                order[s] = rank + 1
            else:
                order[s] = rank + 2
        order[a] = q + 2
    else:
        w = t.succ[d]  # the vertex that migrated out of t1
        ranks1 = psi_order(t1)
        m = max(ranks1.values())
        source_map = {t1.leg: v_t}
        for s in ranks1:
            if s == t1.leg:
                continue
            source_map[s] = a if s == w else s
        for s, rank in ranks1.items():
            if s == t1.leg:
                continue
            order[source_map[s]] = rank + q
        for s, rank in psi_order(t2).items():
            if s == d:
                order[d] = q + 1
            elif rank < q:
                order[s] = rank + 1
            else:
                order[s] = rank + m + 1
        order[w] = m + q + 1
    return order


# -- the explicit bijection onto connected diagrams ----------------------------------


SINGLE_CHORD = ChordDiagram((1, 0))


def tadpole_to_diagram(t: TadpoleGraph) -> ChordDiagram:
    """The recursive size-preserving bijection onto connected diagrams: the
    one-vertex tadpole maps to the single chord, and otherwise the two parts
    of the decomposition are mapped and recombined through the root-share
    composition at the interval given by the marked vertex's edge rank."""
    if t.is_single_vertex():
        return SINGLE_CHORD
    t1, (t2, d) = psi_inv(t)
    k = psi_order(t2)[d]
    return nabla_inv(
        RootShareTriple(tadpole_to_diagram(t1), tadpole_to_diagram(t2), k)
    )


def diagram_to_tadpole(d: ChordDiagram) -> TadpoleGraph:
    """Inverse of tadpole_to_diagram."""
    if not d.is_connected():
        raise ValueError("only connected diagrams correspond to tadpoles")
    if d.n == 1:
        return X_TADPOLE
    triple = nabla(d)
    t2 = diagram_to_tadpole(triple.c2)
    ranks = psi_order(t2)
    marks = [v for v, rank in ranks.items() if rank == triple.k]
    if len(marks) != 1:
        raise AssertionError("edge ranks are not a bijection")
    t1 = diagram_to_tadpole(triple.c1)
    return psi(t1, (t2, marks[0]))


lambda_bij = tadpole_to_diagram
lambda_inv = diagram_to_tadpole


# -- vertex graphs without fermion loops ----------------------------------------------


@dataclass(frozen=True)
class QQEDVertexGraph:
    """A vertex graph of the quenched theory: one directed fermion path
    through all vertices (positions 1..2n-1 along the path), a photon
    matching on the path vertices, and the external photon leg at one of
    them.  Fermion loops are rejected at construction."""

    path_length: int
    photons: tuple[tuple[int, int], ...]  # (smaller, larger) positions
    leg_at: int

    def __post_init__(self):
        positions = set(range(1, self.path_length + 1))
        used = {self.leg_at}
        if self.leg_at not in positions:
            raise ValueError("leg position out of range")
        for a, b in self.photons:
            if not (a in positions and b in positions) or a >= b:
                raise ValueError("bad photon pair")
            if a in used or b in used:
                raise ValueError("photon ends must be distinct vertices")
            used.update((a, b))
        if used != positions:
            raise ValueError("every vertex carries exactly one photon end or the leg")

    @property
    def loop_number(self) -> int:
        return len(self.photons) + 1

    @classmethod
    def from_fermion_edges(
        cls,
        edges: Sequence[tuple[int, int]],
        photons: Sequence[tuple[int, int]],
        leg_at: int,
    ) -> "QQEDVertexGraph":
        """Build from directed fermion edges; rejects inputs whose fermion
        edges close a loop instead of forming one path through all vertices."""
        succ = dict(edges)
        if len(succ) != len(edges):
            raise ValueError("repeated fermion sources")
        vertices = set(succ) | set(succ.values())
        targets = set(succ.values())
        starts = [v for v in vertices if v not in targets]
        if len(starts) != 1:
            raise ValueError("fermion edges contain a loop; no unique path exists")
        order = [starts[0]]
        while order[-1] in succ:
            nxt = succ[order[-1]]
            if nxt in order:
                raise ValueError("fermion edges contain a loop; no unique path exists")
            order.append(nxt)
        if set(order) != vertices:
            raise ValueError("fermion edges contain a loop; no unique path exists")
        index = {v: i + 1 for i, v in enumerate(order)}
        return cls(
            len(order),
            tuple(
                tuple(sorted((index[a], index[b]))) for a, b in photons
            ),
            index[leg_at],
        )


def vertex_graph_to_diagram(g: QQEDVertexGraph) -> ChordDiagram:
    """Straighten the fermion path and pull the photon leg to the front as
    the root: position 0 is the root's near end, path vertex i sits at
    position i, and photons become the remaining chords."""
    m = g.path_length + 1
    p = [0] * m
    p[0] = g.leg_at
    p[g.leg_at] = 0
    for a, b in g.photons:
        p[a] = b
        p[b] = a
    return ChordDiagram(p)


qqed_chord = vertex_graph_to_diagram


def qqed_primitive(g: QQEDVertexGraph) -> bool:
    """No subdivergences: equivalent to 2-connectivity of the chord form."""
    return vertex_graph_to_diagram(g).is_k_connected(2)


def enumerate_vertex_graphs(loop_number: int) -> Iterator[QQEDVertexGraph]:
    """All vertex graphs with the given loop number: a leg position on a
    path of 2*loop_number - 1 vertices plus a photon matching of the rest."""
    k = 2 * loop_number - 1
    for leg in range(1, k + 1):
        rest = [pos for pos in range(1, k + 1) if pos != leg]
        for matching in _matchings(rest):
            photons = tuple(
                sorted((v, w) for v, w in matching.items() if v < w)
            )
            yield QQEDVertexGraph(k, photons, leg)


# -- series identities -----------------------------------------------------------------


def composed_two_connected_kernel(order: int) -> FormalPowerSeries:
    """[C2(t)/t^2] evaluated at t = C^2/x; the common kernel of the vertex
    and propagator Green function identities."""
    c = connected_series(order + 1)
    u = fps.divide_by_power(c * c, 1)
    kernel = fps.divide_by_power(two_connected_series(order + 2), 2)
    return kernel.compose(u.truncate(order))


def vacuum_series(order: int) -> FormalPowerSeries:
    """V = C^2/(2x): 1PI vacuum graphs by boson edge count."""
    c = connected_series(order + 1)
    return fps.divide_by_power(c * c, 1) / 2


def tadpole_series(order: int) -> FormalPowerSeries:
    """T = C: tadpoles by boson edge count."""
    return connected_series(order)


def two_leg_series(order: int) -> FormalPowerSeries:
    """U20 = x(2xC' - C): tadpoles with a second marked boson leg."""
    c = connected_series(order + 1)
    return fps.multiply_by_power(
        (2 * c.x_derivative() - c).truncate(order - 1) if order else fps.zero(0), 1
    )


def fermion_pair_series(order: int) -> FormalPowerSeries:
    """U01 = 2xC' - C: graphs with the two fermion legs and no boson leg."""
    c = connected_series(order)
    return 2 * c.x_derivative() - c


def vertex_residue_series(order: int) -> FormalPowerSeries:
    """U11 = x [C2(t)/t^2]|_{t=C^2/x}: vertex-residue graphs by boson count."""
    if order == 0:
        return fps.zero(0)
    return fps.multiply_by_power(composed_two_connected_kernel(order - 1), 1)


# The classical-order entries of the two-point rows are fixed by the Green
# function conventions (the free part contributes -1) and are not counts.
TWO_POINT_CLASSICAL_TERM = Fraction(-1)


def proper_green_function_table(order: int) -> dict[str, list[Fraction]]:
    """The five rows of proper Green functions, graded by loop number.

    vacuum row n: [x^(n-1)] C^2/2x; tadpole row: C_n; the two two-point rows:
    -1 at degree 0, then [x^n](2xC' - C); vertex row: [x^n] of the composed
    kernel.  (The two-point rows get the conventional -1 classical term.)
    """
    rows: dict[str, list[Fraction]] = {}
    v = vacuum_series(order)
    rows["vacuum"] = [Fraction(0)] + [v[n - 1] for n in range(1, order + 1)]
    c = tadpole_series(order)
    rows["tadpole"] = [c[n] for n in range(order + 1)]
    u = fermion_pair_series(order)
    two_point = [TWO_POINT_CLASSICAL_TERM] + [u[n] for n in range(1, order + 1)]
    rows["two_boson_legs"] = list(two_point)
    rows["two_fermion_legs"] = list(two_point)
    kernel = composed_two_connected_kernel(order)
    rows["vertex"] = [kernel[n] for n in range(order + 1)]
    return rows


def green_identities(order: int) -> list[IdentityReport]:
    """Exact checks of the series identities behind the table above."""
    if order > 32:
        raise ValueError("supported through order 32")
    reports = []

    def compare(name, lhs, rhs):
        n = min(lhs.order, rhs.order, order)
        for i in range(n + 1):
            if lhs[i] != rhs[i]:
                reports.append(IdentityReport(name, n, False, i))
                return
        reports.append(IdentityReport(name, n, True))

    c = connected_series(order + 1)
    # vacuum: C - x = 2x^2 V' for V = C^2/(2x)
    v = vacuum_series(order + 1)
    compare(
        "vacuum_from_marked_tadpoles",
        (c - fps.x(order + 1)).truncate(order),
        2 * fps.multiply_by_power(v.derivative(), 2).truncate(order),
    )
    # two-leg: x(2xC' - C) equals C^2 [C2(t)/t^2]|
    compare(
        "two_leg_kernel_route",
        two_leg_series(order),
        (c.truncate(order) * c.truncate(order))
        * composed_two_connected_kernel(order),
    )
    # fermion pair: T = x/(1 - U01) reproduces C
    u01 = fermion_pair_series(order)
    compare(
        "tadpoles_from_fermion_pair_insertions",
        tadpole_series(order),
        fps.multiply_by_power(
            fps.reciprocal((fps.one(order) - u01).truncate(order - 1)), 1
        )
        if order
        else fps.zero(0),
    )
    # vertex residue: U11 * C^2 = x * U20
    compare(
        "vertex_residue_exchange",
        vertex_residue_series(order) * (c * c).truncate(order),
        fps.multiply_by_power(two_leg_series(order - 1), 1)
        if order
        else fps.zero(0),
    )
    # the no-boson-leg series is the two-leg series with the mark removed
    compare(
        "fermion_pair_equals_two_leg_unmarked",
        fermion_pair_series(order),
        fps.divide_by_power(two_leg_series(order + 1), 1).truncate(order),
    )
    return reports
