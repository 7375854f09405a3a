"""Road construction and the counterclockwise edge labeling.

The road is a spanning tree grown from the root dart by always taking the
right-most edge to an unvisited vertex; the labeling walks once around the
boundary of that tree, numbering every edge of the map on first contact.
"""

from __future__ import annotations

import dataclasses

from .planarmap import RootedMap, edge_of


@dataclasses.dataclass(frozen=True)
class Road:
    """Spanning walk used by the labeling.

    ``steps`` records every dart traversed during construction in order,
    back-travel steps flagged ``True``.  ``edges`` is the resulting tree.
    """

    steps: tuple[tuple[int, bool], ...]
    edges: frozenset[int]
    vertex_order: tuple[int, ...]


def build_road(m: RootedMap) -> Road:
    """Grow the road from the root dart.

    At each vertex the walk continues along the right-most edge whose far
    endpoint is unvisited: scanning ``sigma`` from the reversal of the
    arrival dart gives candidates in deepest-clockwise-turn-first order.
    When no candidate exists the walk backtracks along the road until a
    vertex with an unvisited neighbour appears.
    """
    sigma = m.sigma
    vertex_of = m.vertex_of
    visited = [False] * m.n_vertices
    steps: list[tuple[int, bool]] = []
    vertex_order = [vertex_of[m.root]]
    visited[vertex_of[m.root]] = True
    edges: set[int] = set()
    trail: list[int] = []  # forward darts, for back-travel

    d = m.root
    visited[vertex_of[d ^ 1]] = True
    vertex_order.append(vertex_of[d ^ 1])
    steps.append((d, False))
    edges.add(edge_of(d))
    trail.append(d)
    remaining = m.n_vertices - 2

    while remaining:
        # scan counterclockwise from the dart we arrived on
        e = sigma[d ^ 1]
        nxt = -1
        while e != d ^ 1:
            if not visited[vertex_of[e ^ 1]]:
                nxt = e
                break
            e = sigma[e]
        if nxt >= 0:
            d = nxt
            visited[vertex_of[d ^ 1]] = True
            vertex_order.append(vertex_of[d ^ 1])
            steps.append((d, False))
            edges.add(edge_of(d))
            trail.append(d)
            remaining -= 1
        else:
            if not trail:
                raise ValueError("road construction stuck; map not connected?")
            back = trail.pop()
            steps.append((back ^ 1, True))
            # resume as if we had just travelled back along the popped dart
            d = back ^ 1

    return Road(tuple(steps), frozenset(edges), tuple(vertex_order))


@dataclasses.dataclass(frozen=True)
class EdgeLabeling:
    """Bijection from edges to 1..E; the root edge always gets 1."""

    labels: tuple[int, ...]  # indexed by edge

    def label_of(self, e: int) -> int:
        return self.labels[e]

    def edge_with(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"no edge labeled {label}") from None

    def as_pairs(self) -> list[tuple[int, int]]:
        """(smallest 1-based dart, label) pairs sorted by label."""
        pairs = [(2 * e + 1, lab) for e, lab in enumerate(self.labels)]
        pairs.sort(key=lambda p: p[1])
        return pairs


def label_edges(m: RootedMap, road: Road | None = None) -> EdgeLabeling:
    """Label every edge by walking counterclockwise around the road boundary.

    Starting along the root dart inside the root face, the walk travels each
    road dart once (keeping the tree on the left) and crosses every non-road
    edge it sweeps past at a vertex corner; an edge is numbered the first
    time it is travelled alongside or crossed.
    """
    if road is None:
        road = build_road(m)
    sigma = m.sigma
    on_road = [False] * m.n_edges
    for e in road.edges:
        on_road[e] = True

    labels = [0] * m.n_edges
    labels[edge_of(m.root)] = 1
    next_label = 2

    d = m.root
    while True:
        e = sigma[d ^ 1]
        while not on_road[edge_of(e)]:
            if not labels[edge_of(e)]:
                labels[edge_of(e)] = next_label
                next_label += 1
            e = sigma[e]
        if not labels[edge_of(e)]:
            labels[edge_of(e)] = next_label
            next_label += 1
        d = e
        if d == m.root:
            break

    if next_label != m.n_edges + 1:
        raise AssertionError("boundary walk missed an edge")
    return EdgeLabeling(tuple(labels))
