"""Network transformations: cycle node-splitting, the scaled-network
teleportation reduction, and the power-of-two rounding machinery.

Splitting a length-2 cycle turns each of its endpoints into an early/late
stage pair; the pair is one logical node with staged I/O (the late stage
sees the early stage's full input), so no infinite-dimensional
intra-node edge is ever materialized and min-cut values stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .netmodel import (
    Cut,
    Edge,
    Network,
    NetworkError,
    crossing_edges,
    is_acyclic,
    min_cut,
    network,
    tensor_power,
)


@dataclass(frozen=True)
class SplitSpec:
    """Factorization (a, b) of the dimension of the edge to split."""

    edge_id: str
    a: int
    b: int


def split_cycle_edge(net: Network, spec: SplitSpec) -> Network:
    """Split both endpoints of an internal edge into staged node pairs.

    The edge of dimension a*b becomes two directed edges: dimension ``a``
    from the far endpoint's early stage to the near endpoint's late
    stage, and ``b`` the other way round.  In-edges attach to early
    stages, out-edges leave late stages; the result is acyclic by
    construction.
    """
    e = net.edge_by_id(spec.edge_id)
    u, v = e.u, e.v
    terminals = net.terminal_set
    if u in terminals or v in terminals:
        raise NetworkError(f"edge {e.id} touches a source or sink")
    if u == v:
        raise NetworkError(f"edge {e.id} is a self-loop")
    if spec.a < 1 or spec.b < 1 or spec.a * spec.b != e.dim:
        raise NetworkError(
            f"factorization {spec.a}*{spec.b} does not match dim {e.dim}"
        )
    for early, late in net.stage_pairs:
        if {early, late} & {u, v}:
            raise NetworkError(f"vertex {early}/{late} is already staged")

    early = {w: f"{w}_early" for w in (u, v)}
    late = {w: f"{w}_late" for w in (u, v)}

    vertices = []
    for w in net.vertices:
        if w in (u, v):
            vertices.extend([early[w], late[w]])
        else:
            vertices.append(w)

    def redirect(f: Edge) -> Edge:
        touches = {u, v} & {f.u, f.v}
        if len(touches) == 2:
            raise NetworkError(f"parallel edge {f.id} between split vertices")
        if f.is_directed:
            tail, head = f.tail, f.head
        elif f.u in net.source_set or f.v in net.sink_set:
            tail, head = f.u, f.v
        elif f.v in net.source_set or f.u in net.sink_set:
            tail, head = f.v, f.u
        else:
            raise NetworkError(f"cannot infer a direction for edge {f.id}")
        if head in touches:
            head = early[head]
        if tail in touches:
            tail = late[tail]
        return Edge(id=f.id, u=tail, v=head, dim=f.dim, orientation="uv")

    edges = []
    for f in net.edges:
        if f.id == e.id:
            continue
        edges.append(redirect(f))
    edges.append(Edge(id=e.id + "a", u=early[v], v=late[u], dim=spec.a, orientation="uv"))
    edges.append(Edge(id=e.id + "b", u=early[u], v=late[v], dim=spec.b, orientation="uv"))

    result = network(
        vertices,
        edges,
        net.sources,
        net.sinks,
        (*net.stage_pairs, (early[u], late[u]), (early[v], late[v])),
    )
    if not is_acyclic(result):
        raise NetworkError("split produced a cyclic network")  # unreachable
    return result


def unsplit_cycle_edge(net: Network, edge_id: str) -> Network:
    """Inverse of :func:`split_cycle_edge`, up to orientation.

    Re-merges the two stage pairs, multiplies the split-edge dimensions
    back together, and drops all orientations (the undirected shadow).
    """
    ea = net.edge_by_id(edge_id + "a")
    eb = net.edge_by_id(edge_id + "b")
    # a runs v_early -> u_late, b runs u_early -> v_late.
    u_early, u_late = eb.tail, ea.head
    v_early, v_late = ea.tail, eb.head

    def base(name: str) -> str:
        for suffix in ("_early", "_late"):
            if name.endswith(suffix):
                return name[: -len(suffix)]
        return name

    merged = {u_early: base(u_early), u_late: base(u_early),
              v_early: base(v_early), v_late: base(v_early)}

    def mapped(w: str) -> str:
        return merged.get(w, w)

    vertices = []
    for w in net.vertices:
        m = mapped(w)
        if m not in vertices:
            vertices.append(m)
    edges = []
    for f in net.edges:
        if f.id in (ea.id, eb.id):
            continue
        edges.append(
            Edge(id=f.id, u=mapped(f.u), v=mapped(f.v), dim=f.dim,
                 orientation="undirected")
        )
    edges.append(
        Edge(id=edge_id, u=mapped(u_early), v=mapped(v_early),
             dim=ea.dim * eb.dim, orientation="undirected")
    )
    pairs = tuple(
        p for p in net.stage_pairs
        if not ({p[0], p[1]} & set(merged))
    )
    return network(vertices, edges, net.sources, net.sinks, pairs)


@dataclass(frozen=True)
class TeleportReduction:
    """Outcome of teleporting two factor-k qudits across the diamond network."""

    through_rank: int
    residual: Network


def teleport_reduce_scaled(net: Network, k: int) -> TeleportReduction:
    """Consume the factor-k parts of the four boundary edges by teleportation.

    ``net`` must be the 4-vertex diamond (one source, one sink, two
    relays, five edges) with every boundary dimension divisible by k;
    this is the k-scaled family, and the middle edge is left untouched.
    The caller may check the composition bound
    ``R1(net) >= through_rank * R1(residual)`` downstream.
    """
    if k < 1:
        raise NetworkError("k must be >= 1")
    sources, sinks = net.source_set, net.sink_set
    internal = net.internal_vertices
    if len(sources) != 1 or len(sinks) != 1 or len(internal) != 2:
        raise NetworkError("not a 4-vertex diamond network")
    if len(net.edges) != 5:
        raise NetworkError("diamond network must have exactly five edges")
    (s,), (t,) = sources, sinks
    n_a, n_b = internal
    want = sorted(
        [frozenset(p) for p in ((s, n_a), (s, n_b), (n_a, t), (n_b, t), (n_a, n_b))],
        key=sorted,
    )
    got = sorted([frozenset((e.u, e.v)) for e in net.edges], key=sorted)
    if got != want:
        raise NetworkError("edges do not form the diamond shape")

    middle = frozenset((n_a, n_b))
    new_edges = []
    for e in net.edges:
        if frozenset((e.u, e.v)) == middle:
            new_edges.append(e)
        else:
            if e.dim % k:
                raise NetworkError(f"edge {e.id} dim {e.dim} not divisible by {k}")
            new_edges.append(replace(e, dim=e.dim // k))
    return TeleportReduction(
        through_rank=k * k, residual=replace(net, edges=tuple(new_edges))
    )


@dataclass(frozen=True)
class RoundedPair:
    """Power-of-two bracketing of the n-th tensor power of a network."""

    lower: Network
    upper: Network
    c1: int  # crossing-edge count of the lower network's min-cut witness
    c2: int  # crossing-edge count of the n-th power's min-cut witness


def _round_dim(dim: int, n: int) -> tuple[int, int]:
    x = dim**n
    low = 1 << (x.bit_length() - 1)
    high = low if x == low else low * 2
    return low, high


def round_networks(net: Network, n: int) -> RoundedPair:
    """Bracket every dimension of N^(boxtimes n) by adjacent powers of two."""
    if n < 1:
        raise NetworkError("n must be >= 1")
    lows, highs = [], []
    for e in net.edges:
        low, high = _round_dim(e.dim, n)
        lows.append(replace(e, dim=low))
        highs.append(replace(e, dim=high))
    lower = replace(net, edges=tuple(lows))
    upper = replace(net, edges=tuple(highs))
    c1 = len(crossing_edges(lower, min_cut(lower).s_side))
    powered = tensor_power(net, n)
    c2 = len(crossing_edges(powered, min_cut(powered).s_side))
    return RoundedPair(lower=lower, upper=upper, c1=c1, c2=c2)


@dataclass(frozen=True)
class SandwichReport:
    """The five quantities of the power-of-two sandwich around R1(N^boxtimes n)."""

    mc_lower: int
    r1_estimate: int
    mc_upper: int
    mc_power: int
    c1: int
    c2: int
    ok: bool


def sandwich_check(
    net: Network, n: int, rank_estimator: Callable[[Network], int]
) -> SandwichReport:
    """Evaluate MC(N_l) <= R1-est(N^boxtimes n) <= MC(N_u) plus the 2^(+-c) bounds.

    All comparisons are exact integer comparisons; the 2^-c1 bound is
    checked as MC(N^boxtimes n) <= R1 * 2^c1.
    """
    pair = round_networks(net, n)
    powered = tensor_power(net, n)
    mc_lower = min_cut(pair.lower).value
    mc_upper = min_cut(pair.upper).value
    mc_power = min_cut(powered).value
    r1 = rank_estimator(powered)
    ok = (
        mc_lower <= r1 <= mc_upper
        and mc_power <= r1 * 2**pair.c1
        and r1 <= mc_power * 2**pair.c2
    )
    return SandwichReport(
        mc_lower=mc_lower,
        r1_estimate=r1,
        mc_upper=mc_upper,
        mc_power=mc_power,
        c1=pair.c1,
        c2=pair.c2,
        ok=ok,
    )
