"""Fitness-estimation router: bandwidth gating plus loop-free path search.

Bandwidth is a hard constraint, not a cost term: links that cannot carry the
requested demand are pruned before any search runs, which is what gives the
engine its bandwidth guarantee. The remaining QoS attributes (delay, jitter,
loss) are folded into an additive edge cost, and paths are selected by a
label-setting search over the lexicographic label (hops, cost). The search
settles each node permanently at most once, so it terminates after at most n
settlements regardless of topology changes, and its predecessor pointers form
a spanning tree of the reachable component, which makes routing loops
structurally impossible.

Loss enters the cost as -ln(1 - loss) so that multiplicative path delivery
probability becomes additive, keeping the metric exact for label-setting.
A path's fitness is 1 / (1 + cost): 1 for a free path, approaching 0 as the
accumulated cost grows.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import ClassVar, Union

from .topology import QosLink, Topology, bfs_hops, feasible_subgraph


@dataclass(frozen=True)
class Weights:
    """Per-attribute cost weights: delay and jitter per ms, loss applied to
    -ln(1 - loss). All non-negative, not all zero."""

    delay: float = 1.0
    jitter: float = 1.0
    loss: float = 1.0

    def __post_init__(self):
        if min(self.delay, self.jitter, self.loss) < 0:
            raise ValueError("weights must be non-negative")
        if self.delay == self.jitter == self.loss == 0:
            raise ValueError("at least one weight must be positive")


DEFAULT_WEIGHTS = Weights()


@dataclass(frozen=True)
class RouteRequest:
    src: int
    dst: int
    demand: float = 5.0  # Mbps the route must carry on every link
    weights: Weights = DEFAULT_WEIGHTS

    def __post_init__(self):
        if self.demand < 0:
            raise ValueError("demand must be non-negative")


@dataclass(frozen=True)
class Route:
    """A selected path with its hop count, additive cost and fitness."""

    path: tuple[int, ...]
    hops: int
    cost: float
    fitness: float

    status: ClassVar[str] = "route"


@dataclass(frozen=True)
class NoSufficientBandwidth:
    """Destination reachable in the full topology but not at this demand."""

    status: ClassVar[str] = "no_bandwidth"


@dataclass(frozen=True)
class Unreachable:
    """Destination unreachable even ignoring bandwidth."""

    status: ClassVar[str] = "unreachable"


RouteOutcome = Union[Route, NoSufficientBandwidth, Unreachable]

NO_SUFFICIENT_BANDWIDTH = NoSufficientBandwidth()
UNREACHABLE = Unreachable()


def edge_cost(link: QosLink, w: Weights) -> float:
    """w.delay*delay + w.jitter*jitter + w.loss*(-ln(1-loss)).

    Bandwidth is deliberately absent: it is enforced by pruning, never
    traded off against the other attributes.
    """
    if link.loss >= 1:
        raise ValueError(f"link {link.pair} has loss {link.loss}, unusable")
    return (w.delay * link.delay
            + w.jitter * link.jitter
            + w.loss * -math.log1p(-link.loss))


def path_fitness(path: list[int] | tuple[int, ...], t: Topology,
                 w: Weights) -> tuple[float, float]:
    """(cost, fitness) of a concrete path: cost sums edge costs left to
    right, fitness = 1/(1+cost). A single-node path costs 0 (fitness 1)."""
    cost = 0.0
    for u, v in zip(path, path[1:]):
        link = t.link_between(u, v)
        if link is None:
            raise ValueError(f"path step {u}-{v} is not a link")
        cost += edge_cost(link, w)
    return cost, 1.0 / (1.0 + cost)


@dataclass(frozen=True)
class SpanningTree:
    """Predecessor tree of a label-setting search from `root`.

    label maps every settled node to its final (hops, cost); parent maps
    every settled node except the root to (predecessor, link). Tree paths are
    loop-free by construction. relaxations counts edge examinations, bounded
    by twice the link count.
    """

    root: int
    parent: dict[int, tuple[int, QosLink]]
    label: dict[int, tuple[int, float]]
    relaxations: int

    def settled(self, node: int) -> bool:
        return node in self.label

    def path_to(self, node: int) -> list[int] | None:
        """Root-to-node tree path, or None if the node was never settled."""
        if node not in self.label:
            return None
        path = [node]
        while node != self.root:
            node = self.parent[node][0]
            path.append(node)
        path.reverse()
        return path


def build_spanning_tree(t: Topology, root: int, w: Weights) -> SpanningTree:
    """Label-setting search over `t` with lexicographic (hops, cost) labels.

    Repeatedly settles the unsettled node with the smallest label, ties going
    to the smaller node id, and relaxes its incident links. Settled nodes are
    never relabeled, which bounds the search to at most n settlements: there
    is no counting behaviour whatever the topology looks like. Equal-label
    relaxations keep the smaller predecessor id, so the tree is fully
    deterministic.
    """
    if not 0 <= root < t.n:
        raise ValueError(f"root {root} outside [0, {t.n})")
    best: dict[int, tuple[int, float]] = {root: (0, 0.0)}
    pred: dict[int, tuple[int, QosLink]] = {}
    label: dict[int, tuple[int, float]] = {}
    parent: dict[int, tuple[int, QosLink]] = {}
    heap: list[tuple[int, float, int]] = [(0, 0.0, root)]
    relaxations = 0
    while heap:
        hops, cost, u = heapq.heappop(heap)
        if u in label or (hops, cost) > best[u]:
            continue  # already settled, or a stale queue entry
        label[u] = (hops, cost)
        if u != root:
            parent[u] = pred[u]
        for v, link in t.adjacency(u):
            relaxations += 1
            if v in label:
                continue
            cand = (hops + 1, cost + edge_cost(link, w))
            known = best.get(v)
            if known is None or cand < known:
                best[v] = cand
                pred[v] = (u, link)
                heapq.heappush(heap, (cand[0], cand[1], v))
            elif cand == known and u < pred[v][0]:
                pred[v] = (u, link)  # same label, keep smaller predecessor
    return SpanningTree(root, parent, label, relaxations)


def select_route(t: Topology, req: RouteRequest) -> RouteOutcome:
    """Route a request: prune infeasible links, search, classify the result.

    Returns a Route when the destination is settled in the pruned graph,
    NoSufficientBandwidth when it is reachable only in the unpruned
    topology, and Unreachable otherwise. All failure modes are outcomes,
    never exceptions.
    """
    n = t.n
    if not (0 <= req.src < n and 0 <= req.dst < n):
        raise ValueError(f"query ({req.src}, {req.dst}) outside [0, {n})")
    if req.src == req.dst:
        return Route((req.src,), 0, 0.0, 1.0)
    pruned = feasible_subgraph(t, req.demand)
    tree = build_spanning_tree(pruned, req.src, req.weights)
    return classify_outcome(t, pruned, tree, req)


def classify_outcome(t: Topology, pruned: Topology, tree: SpanningTree,
                     req: RouteRequest,
                     full_hops: dict[int, int] | None = None) -> RouteOutcome:
    """Turn a search result into a RouteOutcome.

    Shared with the comparison harness, which reuses one tree per source
    across many queries and passes a precomputed full-graph BFS map to avoid
    recomputing reachability per query.
    """
    if req.src == req.dst:
        return Route((req.src,), 0, 0.0, 1.0)
    if tree.settled(req.dst):
        path = tree.path_to(req.dst)
        hops = tree.label[req.dst][0]
        cost, fitness = path_fitness(path, t, req.weights)
        return Route(tuple(path), hops, cost, fitness)
    if full_hops is None:
        full_hops = bfs_hops(t, req.src)
    if req.dst in full_hops:
        return NO_SUFFICIENT_BANDWIDTH
    return UNREACHABLE
