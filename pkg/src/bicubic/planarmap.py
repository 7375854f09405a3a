"""Dart-based rooted planar maps with counterclockwise rotation systems.

Darts are integers ``0 .. 2E-1``; darts ``2i`` and ``2i+1`` are the two
halves of edge ``i``, so the edge involution is ``d ^ 1`` and is never
stored.  ``sigma`` sends each dart to the next dart counterclockwise
around its vertex.  Faces are the orbits of ``d -> sigma[d ^ 1]``; the
orbit through a dart traces the face to the *right* of that dart, so the
root face is simply the orbit of the root dart.

The text format uses 1-based darts, pairing ``(2i-1, 2i)``.
"""

from __future__ import annotations

import dataclasses
from functools import cached_property
from typing import Iterable, Iterator


class MapFormatError(ValueError):
    """Raised when a map file violates the format or a map invariant."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def alpha(d: int) -> int:
    """Opposite dart of the same edge."""
    return d ^ 1


def edge_of(d: int) -> int:
    """Edge index carrying dart ``d``."""
    return d >> 1


@dataclasses.dataclass(frozen=True)
class RootedMap:
    """An oriented map given by its rotation system and a root dart."""

    sigma: tuple[int, ...]
    root: int = 0

    def __post_init__(self):
        if len(self.sigma) % 2:
            raise ValueError("dart count must be even")
        if not 0 <= self.root < len(self.sigma):
            raise ValueError(f"root dart {self.root} out of range")

    def __repr__(self):
        return f"RootedMap(edges={self.n_edges}, root={self.root})"

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @cached_property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        """Rotation cycles, each starting at its smallest dart."""
        seen = [False] * self.n_darts
        out = []
        for d in range(self.n_darts):
            if seen[d]:
                continue
            cycle = []
            e = d
            while not seen[e]:
                seen[e] = True
                cycle.append(e)
                e = self.sigma[e]
            out.append(tuple(cycle))
        return tuple(out)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        v_of = [0] * self.n_darts
        for v, cycle in enumerate(self.vertices):
            for d in cycle:
                v_of[d] = v
        return tuple(v_of)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def tail(self, d: int) -> int:
        return self.vertex_of[d]

    def head(self, d: int) -> int:
        return self.vertex_of[d ^ 1]

    def phi(self, d: int) -> int:
        """Next dart along the face to the right of ``d``."""
        return self.sigma[d ^ 1]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Face cycles (orbits of ``phi``), each starting at its smallest dart."""
        seen = [False] * self.n_darts
        out = []
        for d in range(self.n_darts):
            if seen[d]:
                continue
            cycle = []
            e = d
            while not seen[e]:
                seen[e] = True
                cycle.append(e)
                e = self.sigma[e ^ 1]
            out.append(tuple(cycle))
        return tuple(out)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        f_of = [0] * self.n_darts
        for f, cycle in enumerate(self.faces):
            for d in cycle:
                f_of[d] = f
        return tuple(f_of)

    @property
    def root_face(self) -> int:
        """Index of the face to the right of the root dart."""
        return self.face_of[self.root]

    @cached_property
    def colors(self) -> tuple[bool, ...]:
        """Vertex 2-coloring with the root vertex dark (``True``).

        Derived, never stored: rerooting recolors the same map.
        """
        color: list[bool | None] = [None] * self.n_vertices
        start = self.vertex_of[self.root]
        color[start] = True
        queue = [start]
        while queue:
            v = queue.pop()
            for d in self.vertices[v]:
                w = self.vertex_of[d ^ 1]
                if color[w] is None:
                    color[w] = not color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    raise ValueError("map is not bipartite")
        if any(c is None for c in color):
            raise ValueError("map is not connected")
        return tuple(color)  # type: ignore[arg-type]

    def dark_dart(self, e: int) -> int:
        """The dart of edge ``e`` based at its dark endpoint."""
        d = 2 * e
        if self.colors[self.vertex_of[d]]:
            return d
        return d ^ 1

    def degree(self, v: int) -> int:
        return len(self.vertices[v])


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    """Pass/fail record for every structural invariant of a bicubic map."""

    permutation: bool
    connected: bool
    genus_zero: bool
    cubic: bool
    bipartite: bool
    vertex_count: int = 0
    edge_count: int = 0
    face_count: int = 0

    @property
    def ok(self) -> bool:
        return (self.permutation and self.connected and self.genus_zero
                and self.cubic and self.bipartite)

    def failures(self) -> list[str]:
        return [name for name in
                ("permutation", "connected", "genus_zero", "cubic", "bipartite")
                if not getattr(self, name)]


def validate(m: RootedMap) -> ValidationReport:
    """Check all invariants of a rooted bicubic planar map; never raises."""
    n = m.n_darts
    permutation = sorted(m.sigma) == list(range(n))
    if not permutation:
        return ValidationReport(False, False, False, False, False)

    # Connectivity: <sigma, alpha> must act transitively on darts.
    seen = [False] * n
    if n:
        seen[0] = True
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (d ^ 1, m.sigma[d]):
                if not seen[e]:
                    seen[e] = True
                    stack.append(e)
    connected = all(seen)

    v = m.n_vertices
    e = m.n_edges
    f = len(m.faces)
    genus_zero = connected and (v - e + f == 2)
    cubic = all(len(cycle) == 3 for cycle in m.vertices)
    try:
        m.colors
        bipartite = True
    except ValueError:
        bipartite = False
    return ValidationReport(permutation, connected, genus_zero, cubic,
                            bipartite, v, e, f)


def reroot(m: RootedMap, dart: int) -> RootedMap:
    """Same map, new root dart; the coloring re-derives automatically."""
    if not 0 <= dart < m.n_darts:
        raise ValueError(f"dart {dart} out of range")
    return RootedMap(m.sigma, dart)


def dual(m: RootedMap) -> RootedMap:
    """Exchange vertices and faces on the same dart set, keeping the root."""
    phi = tuple(m.sigma[d ^ 1] for d in range(m.n_darts))
    return RootedMap(phi, m.root)


# ---------------------------------------------------------------------------
# Canonical codes

def _code_from(sigma: tuple[int, ...], root: int) -> tuple[int, ...]:
    ids = [0] * len(sigma)
    ids[root] = 1
    order = [root]
    k = 1
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        e = d ^ 1
        if not ids[e]:
            k += 1
            ids[e] = k
            order.append(e)
        s = sigma[d]
        if not ids[s]:
            k += 1
            ids[s] = k
            order.append(s)
    code = []
    for d in order:
        code.append(ids[d ^ 1])
        code.append(ids[sigma[d]])
    return tuple(code)


@dataclasses.dataclass(frozen=True, order=True)
class CanonicalCode:
    """Traversal certificate: equal codes iff the rooted maps are isomorphic
    by a root-preserving, orientation-preserving map isomorphism."""

    code: tuple[int, ...]

    def serialize(self) -> str:
        return " ".join(str(x) for x in self.code)

    @classmethod
    def parse(cls, text: str) -> "CanonicalCode":
        return cls(tuple(int(t) for t in text.split()))

    def to_map(self) -> RootedMap:
        """Rebuild the rooted map the code describes (root becomes dart 0)."""
        n = len(self.code) // 2
        if n == 0 or len(self.code) % 2:
            raise ValueError("malformed canonical code")
        alpha_c = {d: self.code[2 * (d - 1)] for d in range(1, n + 1)}
        sigma_c = {d: self.code[2 * (d - 1) + 1] for d in range(1, n + 1)}
        pairs = [(d, alpha_c[d]) for d in range(1, n + 1) if d < alpha_c[d]]
        new_id: dict[int, int] = {}
        for k, (a, b) in enumerate(pairs):
            new_id[a] = 2 * k
            new_id[b] = 2 * k + 1
        if len(new_id) != n:
            raise ValueError("malformed canonical code")
        sigma = [0] * n
        for d, nd in new_id.items():
            sigma[nd] = new_id[sigma_c[d]]
        return RootedMap(tuple(sigma), new_id[1])


def canonical_code(m: RootedMap, root: int | None = None) -> CanonicalCode:
    """Code of ``m`` rooted at ``root`` (default: its own root dart)."""
    return CanonicalCode(_code_from(m.sigma, m.root if root is None else root))


def rooting_codes(m: RootedMap) -> dict[tuple[int, ...], int]:
    """Distinct rooted codes over all root choices, with a witness dart each."""
    out: dict[tuple[int, ...], int] = {}
    for d in range(m.n_darts):
        c = _code_from(m.sigma, d)
        if c not in out:
            out[c] = d
    return out

def count_rootings(m: RootedMap) -> int:
    """Number of distinct rootings; always divides the dart count."""
    return len(rooting_codes(m))


def unrooted_code(m: RootedMap) -> CanonicalCode:
    """Minimum rooted code over all rootings; identifies the unrooted map."""
    return CanonicalCode(min(rooting_codes(m)))


# ---------------------------------------------------------------------------
# Edge connectivity

def _adjacency(m: RootedMap) -> list[list[tuple[int, int]]]:
    """Per-vertex list of (edge, neighbor) incidences."""
    adj: list[list[tuple[int, int]]] = [[] for _ in m.vertices]
    for v, cycle in enumerate(m.vertices):
        for d in cycle:
            adj[v].append((d >> 1, m.vertex_of[d ^ 1]))
    return adj


def _has_bridge(adj: list[list[tuple[int, int]]], skip: int = -1) -> bool:
    """Bridge detection by iterative DFS lowpoints; ``skip`` removes one edge.

    Parallel edges are distinct edge ids, so a doubled edge is never a bridge.
    """
    n = len(adj)
    visited = [False] * n
    disc = [0] * n
    low = [0] * n
    timer = 1
    root = 0
    visited[root] = True
    disc[root] = low[root] = timer
    timer += 1
    # stack entries: (vertex, incoming edge id, iterator index)
    stack: list[list[int]] = [[root, -1, 0]]
    while stack:
        frame = stack[-1]
        v, in_edge, idx = frame
        if idx < len(adj[v]):
            frame[2] += 1
            e, w = adj[v][idx]
            if e == skip or e == in_edge:
                continue
            if visited[w]:
                if disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                visited[w] = True
                disc[w] = low[w] = timer
                timer += 1
                stack.append([w, e, 0])
        else:
            stack.pop()
            if stack:
                parent = stack[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if low[v] > disc[parent]:
                    return True
    # a disconnected remainder counts as cut as well
    return not all(visited)


def edge_participates_in_cut(m: RootedMap, e: int) -> bool:
    """True iff some pair of edges containing ``e`` disconnects the map."""
    adj = _adjacency(m)
    if _has_bridge(adj):
        return True  # with a bridge present, removing it plus e disconnects
    return _has_bridge(adj, skip=e)


def is_primitive(m: RootedMap) -> bool:
    """True iff no pair of distinct edges disconnects the map."""
    adj = _adjacency(m)
    if _has_bridge(adj):
        return False
    return all(not _has_bridge(adj, skip=e) for e in range(m.n_edges))


def is_connected_without(m: RootedMap, removed: Iterable[int]) -> bool:
    """Connectivity of the underlying graph after deleting some edges."""
    banned = set(removed)
    adj = _adjacency(m)
    n = len(adj)
    if n == 0:
        return True
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for e, w in adj[v]:
            if e not in banned and not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def two_edge_cut_pairs(m: RootedMap) -> list[tuple[int, int]]:
    """Brute-force reference oracle: all pairs whose removal disconnects."""
    out = []
    for e in range(m.n_edges):
        for f in range(e + 1, m.n_edges):
            if not is_connected_without(m, (e, f)):
                out.append((e, f))
    return out


def vertex_components_without(m: RootedMap, removed: Iterable[int]) -> list[set[int]]:
    """Vertex sets of the components of the graph minus some edges."""
    banned = set(removed)
    adj = _adjacency(m)
    seen = [False] * len(adj)
    comps = []
    for start in range(len(adj)):
        if seen[start]:
            continue
        seen[start] = True
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for e, w in adj[v]:
                if e not in banned and not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


# ---------------------------------------------------------------------------
# Rebuilding after surgery

def renumber(pairs: list[tuple[int, int]], sigma_of, root: int) -> RootedMap:
    """Build a map from explicit edge pairs over arbitrary dart labels.

    ``pairs`` lists each kept dart exactly once; their order fixes the new
    edge numbering, so callers get deterministic output.  ``sigma_of`` maps
    old dart labels to old dart labels.
    """
    new_id: dict[int, int] = {}
    for k, (a, b) in enumerate(pairs):
        new_id[a] = 2 * k
        new_id[b] = 2 * k + 1
    sigma = [0] * (2 * len(pairs))
    for d, nd in new_id.items():
        sigma[nd] = new_id[sigma_of(d)]
    return RootedMap(tuple(sigma), new_id[root])


class MapBuilder:
    """Assemble a map from per-vertex counterclockwise lists of edge ends.

    Each edge has ends 0 and 1; ``finalize`` numbers edge ``k``'s ends as
    darts ``2k`` and ``2k+1``.
    """

    def __init__(self):
        self._n_edges = 0
        self._rotations: list[list[tuple[int, int]]] = []

    def edge(self) -> int:
        self._n_edges += 1
        return self._n_edges - 1

    def vertex(self, rotation: list[tuple[int, int]]) -> None:
        self._rotations.append(list(rotation))

    def finalize(self, root: tuple[int, int]) -> RootedMap:
        sigma = [-1] * (2 * self._n_edges)
        used = set()
        for rotation in self._rotations:
            darts = [2 * e + side for e, side in rotation]
            for d in darts:
                if d in used:
                    raise ValueError(f"edge end used twice: {d}")
                used.add(d)
            for i, d in enumerate(darts):
                sigma[d] = darts[(i + 1) % len(darts)]
        if len(used) != 2 * self._n_edges:
            raise ValueError("some edge ends are unattached")
        return RootedMap(tuple(sigma), 2 * root[0] + root[1])


# ---------------------------------------------------------------------------
# Text format

FORMAT_VERSION = 1


def serialize(m: RootedMap) -> str:
    """Render in the line-based text format (1-based darts)."""
    lines = [f"bicubicmap {FORMAT_VERSION}",
             f"darts {m.n_darts}",
             f"root {m.root + 1}"]
    for cycle in m.vertices:
        lines.append("vertex " + " ".join(str(d + 1) for d in cycle))
    return "\n".join(lines) + "\n"


def _meaningful_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_map(text: str) -> RootedMap:
    """Parse one map, rejecting any invariant violation with a line number."""
    maps = parse_maps(text)
    if len(maps) != 1:
        raise MapFormatError(1, f"expected exactly one map, found {len(maps)}")
    return maps[0]


def parse_maps(text: str) -> list[RootedMap]:
    """Parse a concatenation of map blocks."""
    out = []
    block: list[tuple[int, list[str]]] = []
    for lineno, tokens in _meaningful_lines(text):
        if tokens[0] == "bicubicmap" and block:
            out.append(_parse_block(block))
            block = []
        block.append((lineno, tokens))
    if block:
        out.append(_parse_block(block))
    if not out:
        raise MapFormatError(1, "empty input")
    return out


def _parse_block(lines: list[tuple[int, list[str]]]) -> RootedMap:
    header_line, tokens = lines[0]
    if tokens[0] != "bicubicmap" or len(tokens) != 2 or tokens[1] != str(FORMAT_VERSION):
        raise MapFormatError(header_line, "expected header 'bicubicmap 1'")
    if len(lines) < 3:
        raise MapFormatError(header_line, "truncated map block")

    lineno, tokens = lines[1]
    if tokens[0] != "darts" or len(tokens) != 2 or not tokens[1].isdigit():
        raise MapFormatError(lineno, "expected 'darts <count>'")
    n_darts = int(tokens[1])
    if n_darts <= 0 or n_darts % 2:
        raise MapFormatError(lineno, f"dart count must be positive and even, got {n_darts}")

    lineno, tokens = lines[2]
    if tokens[0] != "root" or len(tokens) != 2 or not tokens[1].isdigit():
        raise MapFormatError(lineno, "expected 'root <dart>'")
    root = int(tokens[1])
    if not 1 <= root <= n_darts:
        raise MapFormatError(lineno, f"root dart {root} out of range 1..{n_darts}")

    sigma = [-1] * n_darts
    seen_line = [0] * n_darts
    for lineno, tokens in lines[3:]:
        if tokens[0] != "vertex":
            raise MapFormatError(lineno, f"expected 'vertex' line, got '{tokens[0]}'")
        darts = tokens[1:]
        if len(darts) != 3:
            raise MapFormatError(lineno, f"vertex must list 3 darts (cubic map), got {len(darts)}")
        try:
            ds = [int(t) for t in darts]
        except ValueError:
            raise MapFormatError(lineno, "darts must be integers") from None
        for d in ds:
            if not 1 <= d <= n_darts:
                raise MapFormatError(lineno, f"dart {d} out of range 1..{n_darts}")
            if seen_line[d - 1]:
                raise MapFormatError(lineno, f"dart {d} listed twice (also line {seen_line[d - 1]})")
            seen_line[d - 1] = lineno
        for i, d in enumerate(ds):
            sigma[d - 1] = ds[(i + 1) % 3] - 1

    missing = [d + 1 for d in range(n_darts) if sigma[d] < 0]
    if missing:
        raise MapFormatError(header_line, f"darts never listed: {missing[:5]}")

    m = RootedMap(tuple(sigma), root - 1)
    report = validate(m)
    if not report.ok:
        raise MapFormatError(header_line,
                             "map invariant violated: " + ", ".join(report.failures()))
    return m
