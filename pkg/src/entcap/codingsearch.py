"""One-shot classical network coding: simulation and exhaustive search.

A protocol is a source encoder plus one function table per internal
vertex; a decoder exists iff the end-to-end map from messages to sink
symbol tuples is injective, so the decoder is never represented.

The exhaustive search assigns table entries lazily, branching only on
entries actually reached by some message and pruning a branch the moment
two messages produce identical sink tuples.  Entries never reached are
fixed to zero in the returned witness; the enumeration order is
deterministic, so witnesses are reproducible across machines.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from math import prod

from .netmodel import (
    Network,
    NetworkError,
    topological_order,
    validate,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9


class ProtocolError(NetworkError):
    """Protocol tables do not match the network."""


class CyclicNetworkError(NetworkError):
    """The directed network has a cycle; split it first."""


class BudgetExceededError(RuntimeError):
    """Search aborted; carries the best certified alphabet size so far."""

    def __init__(self, message, best_known=0):
        super().__init__(message)
        self.best_known = best_known


@dataclass(frozen=True)
class ProtocolTable:
    """A deterministic one-shot coding protocol.

    ``source_encoder[m]`` is the tuple of symbols placed on the source
    out-edges (edge-id order).  ``node_functions[v]`` is a flat table:
    row index = flattened visible-input tuple (row-major over in-edge
    alphabets in edge-id order, the early stage's in-edges included for
    late stages), value = flattened output tuple over the out-edges.
    """

    alphabet_size: int
    source_encoder: tuple[tuple[int, ...], ...]
    node_functions: dict


@dataclass(frozen=True)
class SearchConfig:
    alphabet_size: int
    budget: int = DEFAULT_BUDGET
    fix_source_bijection: bool = False
    shard: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        index, count = self.shard
        if count < 1 or not 0 <= index < count:
            raise ValueError(f"bad shard {self.shard}")


@dataclass(frozen=True)
class SearchResult:
    status: str  # "witness" | "impossible" | "budget_exceeded"
    witness: ProtocolTable | None
    assignments: int
    space_estimate: int


# ---------------------------------------------------------------------------
# Network wiring helpers
# ---------------------------------------------------------------------------


def _check_directed(net: Network):
    errors = validate(net)
    if errors:
        raise NetworkError("; ".join(errors))
    for e in net.edges:
        if not e.is_directed:
            raise NetworkError(f"edge {e.id} is undirected; orient the network first")
    try:
        topological_order(net)
    except NetworkError as exc:
        raise CyclicNetworkError(str(exc)) from exc


def source_out_edges(net: Network) -> list:
    return sorted(
        (e for e in net.edges if e.tail in net.source_set), key=lambda e: e.id
    )


def sink_in_edges(net: Network) -> list:
    return sorted(
        (e for e in net.edges if e.head in net.sink_set), key=lambda e: e.id
    )


def visible_in_edges(net: Network, vertex: str) -> list:
    """In-edges a vertex may condition on: its own, plus its early stage's."""
    early_of = {late: early for early, late in net.stage_pairs}
    watched = {vertex}
    if vertex in early_of:
        watched.add(early_of[vertex])
    return sorted(
        (e for e in net.edges if e.head in watched), key=lambda e: e.id
    )


def out_edges(net: Network, vertex: str) -> list:
    return sorted((e for e in net.edges if e.tail == vertex), key=lambda e: e.id)


def _flatten(values, dims) -> int:
    idx = 0
    for val, dim in zip(values, dims):
        idx = idx * dim + val
    return idx


def _unflatten(idx, dims) -> tuple:
    out = []
    for dim in reversed(dims):
        out.append(idx % dim)
        idx //= dim
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# Simulation
# ---------------------------------------------------------------------------


def _check_protocol(net: Network, pt: ProtocolTable):
    src = source_out_edges(net)
    if len(pt.source_encoder) != pt.alphabet_size:
        raise ProtocolError("source encoder length differs from alphabet size")
    for row in pt.source_encoder:
        if len(row) != len(src):
            raise ProtocolError("source encoder row arity mismatch")
        for val, e in zip(row, src):
            if not 0 <= val < e.dim:
                raise ProtocolError(f"source symbol {val} outside alphabet of {e.id}")
    for v in net.internal_vertices:
        if v not in pt.node_functions:
            raise ProtocolError(f"missing node function for {v!r}")
        dom = prod(e.dim for e in visible_in_edges(net, v))
        cod = prod(e.dim for e in out_edges(net, v))
        table = pt.node_functions[v]
        if len(table) != dom:
            raise ProtocolError(f"table at {v!r} has {len(table)} rows, expected {dom}")
        for val in table:
            if not 0 <= val < cod:
                raise ProtocolError(f"table value {val} at {v!r} outside codomain")


def simulate(net: Network, pt: ProtocolTable, message: int) -> tuple:
    """Run one message through the protocol; returns the sink symbol tuple.

    Sink-incident symbols are reported in edge-id order.  Sink out-edges
    carry the constant 0 (nothing downstream of a sink can reach it again
    in an acyclic network).
    """
    _check_directed(net)
    _check_protocol(net, pt)
    if not 0 <= message < pt.alphabet_size:
        raise ProtocolError(f"message {message} outside alphabet")
    symbols = {}
    for e, val in zip(source_out_edges(net), pt.source_encoder[message]):
        symbols[e.id] = val
    for e in net.edges:
        if e.tail in net.sink_set:
            symbols[e.id] = 0
    internal = set(net.internal_vertices)
    for v in topological_order(net):
        if v not in internal:
            continue
        vis = visible_in_edges(net, v)
        outs = out_edges(net, v)
        idx = _flatten([symbols[e.id] for e in vis], [e.dim for e in vis])
        out_vals = _unflatten(pt.node_functions[v][idx], [e.dim for e in outs])
        for e, val in zip(outs, out_vals):
            symbols[e.id] = val
    return tuple(symbols[e.id] for e in sink_in_edges(net))


def is_valid(net: Network, pt: ProtocolTable) -> bool:
    """True iff message -> sink tuple is injective (a decoder exists)."""
    seen = set()
    for m in range(pt.alphabet_size):
        t = simulate(net, pt, m)
        if t in seen:
            return False
        seen.add(t)
    return True


# ---------------------------------------------------------------------------
# Exhaustive search
# ---------------------------------------------------------------------------


class _Budget(Exception):
    pass


class _Searcher:
    def __init__(self, net: Network, cfg: SearchConfig):
        _check_directed(net)
        self.net = net
        self.cfg = cfg
        self.l = cfg.alphabet_size
        if self.l < 1:
            raise ValueError("alphabet size must be >= 1")

        self.src_out = source_out_edges(net)
        self.src_dims = [e.dim for e in self.src_out]
        self.P = prod(self.src_dims)

        succ = {v: set() for v in net.vertices}
        pred = {v: set() for v in net.vertices}
        for e in net.edges:
            succ[e.tail].add(e.head)
            pred[e.head].add(e.tail)
        for early, late in net.stage_pairs:
            succ[early].add(late)
            pred[late].add(early)

        def closure(seeds, adj):
            reach, stack = set(seeds), list(seeds)
            while stack:
                for w in adj[stack.pop()]:
                    if w not in reach:
                        reach.add(w)
                        stack.append(w)
            return reach

        reach_t = closure(net.sink_set, pred)
        reach_s = closure(net.source_set, succ)

        internal = set(net.internal_vertices)
        # Vertices whose outputs are fixed to 0: they either see only
        # constants (unreachable from the source) or cannot influence the
        # sink; neither can help or hurt injectivity.
        self.enum_order = []
        self.visible = {}
        self.enum_out = {}
        order = topological_order(net)
        for v in order:
            if v not in internal or v not in reach_s or v not in reach_t:
                continue
            outs = [e for e in out_edges(net, v) if e.head in reach_t]
            if not outs:
                continue  # early stage feeding only its late partner
            self.enum_order.append(v)
            self.visible[v] = visible_in_edges(net, v)
            self.enum_out[v] = outs
        self.sink_in = sink_in_edges(net)

        zero = set()
        for e in net.edges:
            if e.tail in net.source_set or e.tail in net.sink_set:
                continue
            if e.tail not in self.enum_out or e not in self.enum_out[e.tail]:
                zero.add(e.id)
        for v in self.enum_order:
            for e in self.enum_out[v]:
                zero.discard(e.id)
        self.zero_edges = zero

        self.fixed_enc = None
        if cfg.fix_source_bijection and self.l == self.P:
            self.fixed_enc = [
                _unflatten(m, self.src_dims) for m in range(self.l)
            ]

        est = 1 if self.fixed_enc is not None else self.P**self.l
        for v in self.enum_order:
            dom = prod(e.dim for e in self.visible[v])
            cod = prod(e.dim for e in self.enum_out[v])
            est *= cod**dom
        self.space_estimate = est

    def run(self) -> SearchResult:
        if self.l > self.P:
            # Pigeonhole: two messages must share their source symbols,
            # hence their sink tuples; no protocol can decode.
            return SearchResult("impossible", None, 0, self.space_estimate)
        log.info(
            "exhaustive search: l=%d, raw table space ~%.3g",
            self.l,
            float(self.space_estimate),
        )
        self.assignments = 0
        self.enc = [None] * self.l
        self.tables = {v: {} for v in self.enum_order}
        self.seen = set()
        self.witness = None
        self.shard_pending = self.cfg.shard[1] > 1
        try:
            found = self._extend(0)
        except _Budget:
            return SearchResult(
                "budget_exceeded", None, self.assignments, self.space_estimate
            )
        status = "witness" if found else "impossible"
        return SearchResult(status, self.witness, self.assignments, self.space_estimate)

    def _eval(self, m):
        symbols = {}
        if self.fixed_enc is not None:
            row = self.fixed_enc[m]
        else:
            if self.enc[m] is None:
                return ("need_enc", m, self.P)
            row = _unflatten(self.enc[m], self.src_dims)
        for e, val in zip(self.src_out, row):
            symbols[e.id] = val
        for eid in self.zero_edges:
            symbols[eid] = 0
        for v in self.enum_order:
            vis = self.visible[v]
            idx = _flatten(
                [symbols.get(e.id, 0) for e in vis], [e.dim for e in vis]
            )
            out_idx = self.tables[v].get(idx)
            if out_idx is None:
                cod = prod(e.dim for e in self.enum_out[v])
                return ("need_tab", (v, idx), cod)
            outs = self.enum_out[v]
            for e, val in zip(outs, _unflatten(out_idx, [e.dim for e in outs])):
                symbols[e.id] = val
        return ("tuple", tuple(symbols.get(e.id, 0) for e in self.sink_in), None)

    def _choices(self, n):
        if self.shard_pending:
            self.shard_pending = False
            index, count = self.cfg.shard
            return [c for c in range(n) if c % count == index], True
        return range(n), False

    def _extend(self, m) -> bool:
        if m == self.l:
            self.witness = self._build_witness()
            return True
        kind, key, n = self._eval(m)
        if kind == "tuple":
            if key in self.seen:
                return False
            self.seen.add(key)
            if self._extend(m + 1):
                return True
            self.seen.remove(key)
            return False
        choices, was_first = self._choices(n)
        for c in choices:
            self.assignments += 1
            if self.assignments > self.cfg.budget:
                raise _Budget
            if kind == "need_enc":
                self.enc[key] = c
            else:
                v, idx = key
                self.tables[v][idx] = c
            if self._extend(m):
                return True
            if kind == "need_enc":
                self.enc[key] = None
            else:
                self.tables[v].pop(idx)
        if was_first:
            self.shard_pending = True
        return False

    def _build_witness(self) -> ProtocolTable:
        if self.fixed_enc is not None:
            encoder = tuple(self.fixed_enc)
        else:
            encoder = tuple(
                _unflatten(v if v is not None else 0, self.src_dims)
                for v in self.enc
            )
        node_functions = {}
        for v in self.net.internal_vertices:
            vis = visible_in_edges(self.net, v)
            outs = out_edges(self.net, v)
            dom = prod(e.dim for e in vis)
            out_dims = [e.dim for e in outs]
            table = []
            enum_outs = self.enum_out.get(v, [])
            enum_pos = {e.id: i for i, e in enumerate(enum_outs)}
            for idx in range(dom):
                out_idx = self.tables.get(v, {}).get(idx, 0)
                enum_vals = _unflatten(out_idx, [e.dim for e in enum_outs])
                full = [
                    enum_vals[enum_pos[e.id]] if e.id in enum_pos else 0
                    for e in outs
                ]
                table.append(_flatten(full, out_dims))
            node_functions[v] = tuple(table)
        return ProtocolTable(
            alphabet_size=self.l,
            source_encoder=encoder,
            node_functions=node_functions,
        )


def exhaustive_achievable(net: Network, cfg: SearchConfig) -> SearchResult:
    """Search all protocols for alphabet size ``cfg.alphabet_size``.

    Returns the lexicographically first witness under the deterministic
    lazy enumeration, ``impossible`` only after exhausting the space, or
    ``budget_exceeded``.  With ``fix_source_bijection`` and l equal to
    the product of source out-edge alphabets, the encoder is pinned to
    the canonical bijection: a non-injective encoder already fails, and
    node tables absorb any bijection by post-composition.
    """
    return _Searcher(net, cfg).run()


def c1_exact(net: Network, l_max: int, cfg: SearchConfig | None = None) -> int:
    """Largest achievable alphabet size <= l_max.

    Achievability is monotone in l (drop messages), so the scan ascends
    and stops at the first impossible size.  A budget exhaustion raises
    BudgetExceededError carrying the best certified value.
    """
    if cfg is None:
        cfg = SearchConfig(alphabet_size=1)
    best = 0
    for l in range(1, l_max + 1):
        result = exhaustive_achievable(net, replace(cfg, alphabet_size=l))
        if result.status == "witness":
            best = l
        elif result.status == "impossible":
            break
        else:
            raise BudgetExceededError(
                f"budget exhausted at l={l}", best_known=best
            )
    return best


# ---------------------------------------------------------------------------
# The two protocols transcribed from the cyclic-splitting construction
# ---------------------------------------------------------------------------


def paper_protocol_n4() -> ProtocolTable:
    """The alphabet-6 protocol on the split network with d5 = 2*2.

    Messages are (x1, x2) with x1 on the dim-2 source edge and x2 on the
    dim-3 one.  The up edge signals whether x2 is in {0,1}; if so both
    late stages forward their staged inputs, otherwise n1 emits the
    escape symbol 2 and n2 relays x1 received through the down edge.
    """
    return ProtocolTable(
        alphabet_size=6,
        source_encoder=tuple((m // 3, m % 3) for m in range(6)),
        node_functions={
            # visible (d1,) -> out (d5b,): always forward x1 down
            "n1_early": (0, 1),
            # visible (d2,) -> out (d5a,): flag x2 == 2
            "n2_early": (0, 0, 1),
            # visible (d1, d5a) -> out (d3,): forward x1, or escape 2
            "n1_late": (0, 2, 1, 2),
            # visible (d2, d5b) -> out (d4,): forward x2, or relay x1
            "n2_late": (0, 0, 1, 1, 0, 1),
        },
    )


def paper_protocol_n2() -> ProtocolTable:
    """The alphabet-5 protocol on the up-oriented split network (d5 = 2*1).

    Transmits the pairs (0,0), (0,1), (1,0), (1,1), (0,2); the trivial
    down edge means n2 can no longer learn x1, so only one escape pair
    survives.
    """
    return ProtocolTable(
        alphabet_size=5,
        source_encoder=((0, 0), (0, 1), (1, 0), (1, 1), (0, 2)),
        node_functions={
            # visible (d1,) -> out (d5b,): the down edge is trivial
            "n1_early": (0, 0),
            # visible (d2,) -> out (d5a,): flag x2 == 2
            "n2_early": (0, 0, 1),
            # visible (d1, d5a) -> out (d3,)
            "n1_late": (0, 2, 1, 2),
            # visible (d2, d5b) -> out (d4,): x2 if small, else 0
            "n2_late": (0, 1, 0),
        },
    )


# ---------------------------------------------------------------------------
# Protocol JSON
# ---------------------------------------------------------------------------


def protocol_to_obj(pt: ProtocolTable) -> dict:
    return {
        "l": pt.alphabet_size,
        "source": [list(row) for row in pt.source_encoder],
        "nodes": {
            v: {"table": list(table)} for v, table in sorted(pt.node_functions.items())
        },
    }


def protocol_from_obj(obj: dict) -> ProtocolTable:
    if set(obj) != {"l", "source", "nodes"}:
        raise ProtocolError(f"bad protocol fields: {sorted(obj)}")
    return ProtocolTable(
        alphabet_size=obj["l"],
        source_encoder=tuple(tuple(row) for row in obj["source"]),
        node_functions={
            v: tuple(spec["table"]) for v, spec in obj["nodes"].items()
        },
    )
