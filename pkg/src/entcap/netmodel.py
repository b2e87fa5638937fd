"""Graph model for entanglement networks and the exact multiplicative min-cut.

Networks are multigraphs whose edges carry a positive integer dimension
(the local Schmidt rank of the shared entangled state).  Cuts are valued
by the *product* of crossing dimensions, so all arithmetic is done with
Python's arbitrary-precision integers; no floating point enters any
capacity decision.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from math import prod

ORIENTATIONS = ("undirected", "uv", "vu")

#: Default cap on the number of enumerable cut units (2**20 partitions).
ENUMERATION_LIMIT = 20


class NetworkError(ValueError):
    """Malformed network or invalid operation argument."""


class TooLargeError(NetworkError):
    """Cut enumeration would exceed the partition limit."""


@dataclass(frozen=True)
class Edge:
    """An edge carrying a maximally entangled state of dimension ``dim``.

    ``orientation`` is one of ``"undirected"``, ``"uv"`` (u -> v) or
    ``"vu"`` (v -> u).
    """

    id: str
    u: str
    v: str
    dim: int
    orientation: str = "undirected"

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise NetworkError(f"edge {self.id}: bad orientation {self.orientation!r}")

    @property
    def is_self_loop(self) -> bool:
        return self.u == self.v

    @property
    def is_directed(self) -> bool:
        return self.orientation != "undirected"

    @property
    def tail(self) -> str:
        if self.orientation == "uv":
            return self.u
        if self.orientation == "vu":
            return self.v
        raise NetworkError(f"edge {self.id} is undirected")

    @property
    def head(self) -> str:
        if self.orientation == "uv":
            return self.v
        if self.orientation == "vu":
            return self.u
        raise NetworkError(f"edge {self.id} is undirected")

    def other(self, vertex: str) -> str:
        if vertex == self.u:
            return self.v
        if vertex == self.v:
            return self.u
        raise NetworkError(f"vertex {vertex} not on edge {self.id}")


@dataclass(frozen=True)
class Network:
    """An entanglement network ``(G, d, S, T)``.

    ``stage_pairs`` records early/late vertex pairs created by cycle
    node-splitting: each pair is one logical node with staged I/O.  The
    late stage sees the full input of its early stage, and cut
    enumeration never separates the two.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    sources: tuple[str, ...]
    sinks: tuple[str, ...]
    stage_pairs: tuple[tuple[str, str], ...] = ()

    @property
    def source_set(self) -> frozenset[str]:
        return frozenset(self.sources)

    @property
    def sink_set(self) -> frozenset[str]:
        return frozenset(self.sinks)

    @property
    def terminal_set(self) -> frozenset[str]:
        return self.source_set | self.sink_set

    @property
    def internal_vertices(self) -> tuple[str, ...]:
        t = self.terminal_set
        return tuple(v for v in self.vertices if v not in t)

    def edge_by_id(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise NetworkError(f"unknown edge id {edge_id!r}")


def network(
    vertices,
    edges,
    sources,
    sinks,
    stage_pairs=(),
) -> Network:
    """Convenience constructor accepting any iterables."""
    return Network(
        vertices=tuple(vertices),
        edges=tuple(edges),
        sources=tuple(sources),
        sinks=tuple(sinks),
        stage_pairs=tuple(tuple(p) for p in stage_pairs),
    )


@dataclass(frozen=True)
class Cut:
    """A source-side vertex set together with its exact product value."""

    s_side: frozenset[str]
    value: int


def validate(net: Network) -> list[str]:
    """Return all invariant violations (empty list means the network is ok)."""
    errors = []
    vset = set(net.vertices)
    if len(net.vertices) != len(vset):
        errors.append("duplicate vertex ids")
    if not net.sources:
        errors.append("empty source set")
    if not net.sinks:
        errors.append("empty sink set")
    overlap = net.source_set & net.sink_set
    if overlap:
        errors.append(f"sources and sinks overlap: {sorted(overlap)}")
    for v in itertools.chain(net.sources, net.sinks):
        if v not in vset:
            errors.append(f"terminal {v!r} is not a declared vertex")
    seen_ids = set()
    for e in net.edges:
        if e.id in seen_ids:
            errors.append(f"duplicate edge id {e.id!r}")
        seen_ids.add(e.id)
        for end in (e.u, e.v):
            if end not in vset:
                errors.append(f"edge {e.id}: unknown endpoint {end!r}")
        if e.dim < 1:
            errors.append(f"edge {e.id}: dimension < 1")
    paired = set()
    for early, late in net.stage_pairs:
        for v in (early, late):
            if v not in vset:
                errors.append(f"stage pair vertex {v!r} is not declared")
            elif v in net.terminal_set:
                errors.append(f"stage pair vertex {v!r} is a terminal")
            if v in paired:
                errors.append(f"vertex {v!r} appears in two stage pairs")
            paired.add(v)
    return errors


def incident_edges(net: Network, vertex: str) -> list[Edge]:
    """Edges touching ``vertex``, sorted by edge id (self-loops once)."""
    return sorted(
        (e for e in net.edges if vertex in (e.u, e.v)), key=lambda e: e.id
    )


def crossing_edges(net: Network, s_side: frozenset[str]) -> list[Edge]:
    """Edges contributing to the cut value of the partition ``s_side``.

    Undirected edges count whenever they cross; directed edges only when
    oriented from the source side to the sink side.  Self-loops never
    cross.
    """
    out = []
    for e in net.edges:
        if e.is_self_loop:
            continue
        inu, inv = e.u in s_side, e.v in s_side
        if inu == inv:
            continue
        if not e.is_directed:
            out.append(e)
        elif e.tail in s_side:
            out.append(e)
    return out


def cut_value(net: Network, s_side: frozenset[str]) -> int:
    return prod(e.dim for e in crossing_edges(net, s_side))


def _cut_units(net: Network) -> list[frozenset[str]]:
    """Internal vertices grouped so that stage pairs stay together."""
    group = {v: frozenset([v]) for v in net.internal_vertices}
    for early, late in net.stage_pairs:
        merged = group[early] | group[late]
        for v in merged:
            group[v] = merged
    units, seen = [], set()
    for v in net.internal_vertices:
        if v not in seen:
            units.append(group[v])
            seen.update(group[v])
    return units


def min_cut(net: Network, limit: int = ENUMERATION_LIMIT) -> Cut:
    """Exact multiplicative min-cut by enumeration of all vertex partitions.

    The witness is deterministic: among minimizers the lexicographically
    smallest source side (by sorted vertex ids) is returned.

    Raises:
        TooLargeError: more than ``limit`` enumerable units.
        NetworkError: the network does not validate.
    """
    errors = validate(net)
    if errors:
        raise NetworkError("; ".join(errors))
    units = _cut_units(net)
    if len(units) > limit:
        raise TooLargeError(
            f"{len(units)} cut units exceed the enumeration limit {limit}"
        )
    sources = net.source_set
    best = None
    for mask in range(1 << len(units)):
        s_side = frozenset(
            itertools.chain(
                sources, *(units[i] for i in range(len(units)) if mask >> i & 1)
            )
        )
        key = (cut_value(net, s_side), tuple(sorted(s_side)))
        if best is None or key < best:
            best = key
    return Cut(s_side=frozenset(best[1]), value=best[0])


def tensor_power(net: Network, n: int) -> Network:
    """``N^(boxtimes n)``: same graph, every dimension raised to the n-th power."""
    if n < 1:
        raise NetworkError("tensor power requires n >= 1")
    return replace(net, edges=tuple(replace(e, dim=e.dim**n) for e in net.edges))


def scale(net: Network, k: int) -> Network:
    """``N^(odot k)``: same graph, every dimension multiplied by k."""
    if k < 1:
        raise NetworkError("scale requires k >= 1")
    return replace(net, edges=tuple(replace(e, dim=e.dim * k) for e in net.edges))


def orient(net: Network, assignment: dict[str, str]) -> Network:
    """Apply an edge-id -> direction assignment; all undirected edges must be covered."""
    known = {e.id for e in net.edges}
    for eid in assignment:
        if eid not in known:
            raise NetworkError(f"unknown edge id {eid!r}")
    new_edges = []
    for e in net.edges:
        if e.id in assignment:
            direction = assignment[e.id]
            if direction not in ("uv", "vu"):
                raise NetworkError(f"edge {e.id}: bad direction {direction!r}")
            new_edges.append(replace(e, orientation=direction))
        else:
            if not e.is_directed:
                raise NetworkError(f"undirected edge {e.id} not covered by assignment")
            new_edges.append(e)
    return replace(net, edges=tuple(new_edges))


def _successors(net: Network) -> dict[str, set[str]]:
    """Directed adjacency including the implicit early -> late stage links."""
    succ: dict[str, set[str]] = {v: set() for v in net.vertices}
    for e in net.edges:
        if not e.is_directed:
            raise NetworkError(f"edge {e.id} is undirected")
        succ[e.tail].add(e.head)
    for early, late in net.stage_pairs:
        succ[early].add(late)
    return succ


def topological_order(net: Network) -> list[str]:
    """Topological order of a fully directed network (stage links included).

    Raises NetworkError on a directed cycle.
    """
    succ = _successors(net)
    indeg = {v: 0 for v in net.vertices}
    for v, outs in succ.items():
        for w in outs:
            indeg[w] += 1
    ready = sorted(v for v in net.vertices if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    if len(order) != len(net.vertices):
        raise NetworkError("directed network has a cycle")
    return order


def is_acyclic(net: Network) -> bool:
    """True iff the fully directed network has no directed cycle."""
    try:
        topological_order(net)
    except NetworkError as exc:
        if "cycle" in str(exc):
            return False
        raise
    return True


def all_bidirectional(net: Network) -> Network:
    """Replace every undirected edge by two opposite directed edges of equal dim."""
    new_edges = []
    for e in net.edges:
        if e.is_directed:
            new_edges.append(e)
        else:
            new_edges.append(replace(e, id=e.id + ".fw", orientation="uv"))
            new_edges.append(replace(e, id=e.id + ".bw", orientation="vu"))
    return replace(net, edges=tuple(new_edges))


# ---------------------------------------------------------------------------
# JSON interchange format
# ---------------------------------------------------------------------------

_NET_KEYS = {"vertices", "sources", "sinks", "edges", "stage_pairs"}
_EDGE_KEYS = {"id", "u", "v", "dim", "orientation"}


def network_to_obj(net: Network) -> dict:
    obj = {
        "vertices": list(net.vertices),
        "sources": list(net.sources),
        "sinks": list(net.sinks),
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, "dim": e.dim, "orientation": e.orientation}
            for e in net.edges
        ],
    }
    if net.stage_pairs:
        obj["stage_pairs"] = [list(p) for p in net.stage_pairs]
    return obj


def network_from_obj(obj: dict) -> Network:
    if not isinstance(obj, dict):
        raise NetworkError("network JSON must be an object")
    unknown = set(obj) - _NET_KEYS
    if unknown:
        raise NetworkError(f"unknown network fields: {sorted(unknown)}")
    for key in ("vertices", "sources", "sinks", "edges"):
        if key not in obj:
            raise NetworkError(f"missing network field {key!r}")
    edges = []
    for eobj in obj["edges"]:
        unknown = set(eobj) - _EDGE_KEYS
        if unknown:
            raise NetworkError(f"unknown edge fields: {sorted(unknown)}")
        for key in ("id", "u", "v", "dim"):
            if key not in eobj:
                raise NetworkError(f"edge missing field {key!r}")
        if not isinstance(eobj["dim"], int) or isinstance(eobj["dim"], bool):
            raise NetworkError(f"edge {eobj['id']}: dim must be an integer")
        edges.append(
            Edge(
                id=eobj["id"],
                u=eobj["u"],
                v=eobj["v"],
                dim=eobj["dim"],
                orientation=eobj.get("orientation", "undirected"),
            )
        )
    return network(
        obj["vertices"],
        edges,
        obj["sources"],
        obj["sinks"],
        obj.get("stage_pairs", ()),
    )


def dump_network(net: Network) -> str:
    """Canonical serialization: fixed field order, 2-space indent, trailing newline."""
    return json.dumps(network_to_obj(net), indent=2) + "\n"


def load_network(text: str) -> Network:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkError(f"invalid JSON: {exc}") from exc
    return network_from_obj(obj)


# ---------------------------------------------------------------------------
# Random networks for property suites
# ---------------------------------------------------------------------------


def random_network(rng, max_internal: int = 4, max_dim: int = 4) -> Network:
    """Draw a small random network (single source/sink, <= 6 vertices).

    ``rng`` is a numpy Generator.  Edge counts are kept modest so that the
    tensor-network boundary spaces stay desk-sized.
    """
    n_internal = int(rng.integers(0, max_internal + 1))
    internal = [f"n{i}" for i in range(1, n_internal + 1)]
    vertices = ["s", *internal, "t"]
    edges = []

    def add(u, v):
        dim = int(rng.integers(1, max_dim + 1))
        edges.append(Edge(id=f"e{len(edges)}", u=u, v=v, dim=dim))

    # A guaranteed source->sink route so the boundary map is never trivial.
    route = ["s", *rng.permutation(internal).tolist(), "t"] if internal else ["s", "t"]
    for u, v in zip(route, route[1:]):
        add(u, v)
    # Sprinkle a few extra edges, bounded per terminal to cap boundary sizes.
    budget = {"s": 1, "t": 1}
    for _ in range(int(rng.integers(0, 3))):
        u, v = (str(x) for x in rng.choice(vertices, size=2, replace=True))
        if u == v:
            continue
        if budget.get(u, 9) <= 0 or budget.get(v, 9) <= 0:
            continue
        for w in (u, v):
            if w in budget:
                budget[w] -= 1
        add(u, v)
    return network(vertices, edges, ["s"], ["t"])
