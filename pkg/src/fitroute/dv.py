"""Classical distance-vector routing over hop count, as a baseline engine.

The exchange model is deliberately naive: synchronous full-vector rounds with
no split horizon and no poisoned reverse, so the engine exhibits the textbook
count-to-infinity behaviour after a link failure. Distances cap at a
configurable infinity metric (conventionally 16), at which point a
destination is reported unreachable.

All transitions are pure: a round maps one DvState to a new one, computed
entirely from the previous round's vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .topology import Topology, remove_link


@dataclass(frozen=True)
class DvState:
    """Per-node distance vectors and next hops.

    dist[v][d] is the hop metric from v to d, stored capped: a value equal to
    infinity_metric means unreachable. next_hop[v][d] is the neighbor v
    forwards through, or None for self/unreachable entries.
    """

    topology: Topology
    dist: tuple[tuple[int, ...], ...]
    next_hop: tuple[tuple[int | None, ...], ...]
    infinity_metric: int

    def reachable(self, src: int, dst: int) -> bool:
        return self.dist[src][dst] < self.infinity_metric


@dataclass(frozen=True)
class DvTrace:
    """Per-round (round index, probe metric) records after a link failure.

    Metrics are stored capped; a value equal to infinity_metric means the
    probe node reported the destination unreachable in that round.
    """

    entries: tuple[tuple[int, int], ...]
    infinity_metric: int


def init_tables(t: Topology, infinity_metric: int = 16) -> DvState:
    """Initial vectors: self at 0, direct neighbors at 1, all else infinity."""
    if infinity_metric < 2:
        raise ValueError("infinity_metric must be at least 2")
    inf = infinity_metric
    dist = []
    next_hop = []
    for v in range(t.n):
        row = [inf] * t.n
        hops: list[int | None] = [None] * t.n
        row[v] = 0
        for u, _ in t.adjacency(v):
            row[u] = 1
            hops[u] = u
        dist.append(tuple(row))
        next_hop.append(tuple(hops))
    return DvState(t, tuple(dist), tuple(next_hop), inf)


def exchange_round(s: DvState) -> tuple[DvState, bool]:
    """One synchronous exchange: every node recomputes its vector from its
    neighbors' previous-round vectors.

    dist[v][d] = min over neighbors m of 1 + dist[m][d], capped at the
    infinity metric (0 for v = d). Next-hop ties go to the smallest neighbor
    id. Returns the new state and whether any entry changed.
    """
    t = s.topology
    inf = s.infinity_metric
    old = s.dist
    new_dist = []
    new_next = []
    for v in range(t.n):
        row = [inf] * t.n
        hops: list[int | None] = [None] * t.n
        row[v] = 0
        neighbors = t.adjacency(v)
        for d in range(t.n):
            if d == v:
                continue
            best = inf
            best_hop = None
            for m, _ in neighbors:  # ascending m: strict < keeps smallest id
                cand = 1 + old[m][d]
                if cand < best:
                    best = cand
                    best_hop = m
            if best >= inf:
                best, best_hop = inf, None
            row[d] = best
            hops[d] = best_hop
        new_dist.append(tuple(row))
        new_next.append(tuple(hops))
    state = DvState(t, tuple(new_dist), tuple(new_next), inf)
    changed = state.dist != s.dist or state.next_hop != s.next_hop
    return state, changed


def converge(s: DvState, max_rounds: int) -> tuple[DvState, int]:
    """Run exchange rounds until a fixed point; return it and the number of
    rounds that changed anything.

    On a static topology the fixed point always arrives within n-1 changing
    rounds; not reaching it within max_rounds exchanges is an engine bug and
    raises RuntimeError.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    changing = 0
    for _ in range(max_rounds):
        nxt, changed = exchange_round(s)
        if not changed:
            return s, changing
        s = nxt
        changing += 1
    raise RuntimeError(
        f"distance-vector failed to converge within {max_rounds} rounds "
        f"on a static topology (engine bug)")


def extract_path(s: DvState, src: int, dst: int) -> list[int] | None:
    """Follow next hops from src to dst; None when dst is unreachable.

    Requires a converged state. A next-hop cycle cannot occur after
    convergence, so hitting one raises RuntimeError.
    """
    n = s.topology.n
    if not (0 <= src < n and 0 <= dst < n):
        raise ValueError(f"query ({src}, {dst}) outside [0, {n})")
    if src == dst:
        return [src]
    if not s.reachable(src, dst):
        return None
    path = [src]
    seen = {src}
    v = src
    while v != dst:
        nxt = s.next_hop[v][dst]
        if nxt is None or nxt in seen:
            raise RuntimeError(
                f"next-hop cycle at node {v} for destination {dst} (engine bug)")
        path.append(nxt)
        seen.add(nxt)
        v = nxt
    return path


def fail_link_and_trace(s: DvState, a: int, b: int, probe: int, dest: int,
                        max_rounds: int) -> DvTrace:
    """Remove link {a, b} from a converged state and record the probe node's
    metric toward dest each synchronous round.

    Rounds stop when the probe metric caps at the infinity metric, when the
    whole destination column stops changing (the failure did not affect any
    route toward dest, or counting has finished), or after max_rounds.
    """
    t = remove_link(s.topology, a, b)
    state = DvState(t, s.dist, s.next_hop, s.infinity_metric)
    entries = []
    for rnd in range(1, max_rounds + 1):
        prev_col = tuple(state.dist[v][dest] for v in range(t.n))
        state, _ = exchange_round(state)
        metric = state.dist[probe][dest]
        entries.append((rnd, metric))
        if metric >= s.infinity_metric:
            break
        col = tuple(state.dist[v][dest] for v in range(t.n))
        if col == prev_col:
            break
    return DvTrace(tuple(entries), s.infinity_metric)


def format_trace(trace: DvTrace) -> str:
    """CSV dump `round,metric`, with INF for capped metrics."""
    lines = ["round,metric"]
    for rnd, metric in trace.entries:
        value = "INF" if metric >= trace.infinity_metric else str(metric)
        lines.append(f"{rnd},{value}")
    return "\n".join(lines) + "\n"
