"""Generation of 3-connected (primitive) bicubic planar maps.

Two local insertions grow primitives: subdividing two odd-separated edges
of a face and joining them by a pair of chords (adds 4 vertices), and
blowing a vertex up into a hexagon (adds 6 vertices).  Iterating both from
the smallest primitive and deduplicating by unrooted canonical code yields
the catalog of all primitives up to a vertex ceiling.
"""

from __future__ import annotations

import dataclasses
import itertools
import os
from pathlib import Path

from .planarmap import (CanonicalCode, RootedMap, edge_of, is_primitive,
                        parse_maps, renumber, reroot, rooting_codes,
                        serialize)


def theta() -> RootedMap:
    """The smallest primitive: two vertices joined by three parallel edges."""
    return RootedMap((2, 5, 4, 1, 0, 3), 0)


def prism(k: int) -> RootedMap:
    """The k-prism: two k-cycles joined rung by rung, rooted on the outer
    cycle.  Bipartiteness forces k even."""
    if k % 2 or k < 4:
        raise ValueError("prism needs even k >= 4")
    n = 6 * k
    sigma = [0] * n
    for t in range(k):
        prev = (t - 1) % k
        # outer vertex t: outer-next, spoke, outer-prev
        sigma[2 * t] = 4 * k + 2 * t
        sigma[4 * k + 2 * t] = 2 * prev + 1
        sigma[2 * prev + 1] = 2 * t
        # inner vertex t: spoke, inner-next, inner-prev
        sigma[4 * k + 2 * t + 1] = 2 * k + 2 * t
        sigma[2 * k + 2 * t] = 2 * k + 2 * prev + 1
        sigma[2 * k + 2 * prev + 1] = 4 * k + 2 * t + 1
    return RootedMap(tuple(sigma), 0)


def insert6(m: RootedMap, v: int) -> RootedMap:
    """Blow vertex ``v`` up into a hexagon: alternate hexagon vertices take
    over the former neighbor edges, the others attach to ``v``."""
    if not 0 <= v < m.n_vertices:
        raise ValueError(f"vertex {v} out of range")
    old = m.vertices[v]
    if len(old) != 3:
        raise ValueError("insertion needs a cubic vertex")
    d1, d2, d3 = old
    n = m.n_darts
    # ring edge t joins hexagon corners t+1 and t+2 (darts n+2t, n+2t+1);
    # spoke i joins v to corner 2i (darts n+12+2(i-1), n+13+2(i-1))
    ring_at = lambda i, toward_next: (n + 2 * (i - 1)) if toward_next else (n + 2 * ((i - 2) % 6) + 1)
    rotations = [
        (n + 12, n + 14, n + 16),                       # v: spokes to corners 2, 4, 6
        (d1, ring_at(1, True), ring_at(1, False)),      # corner 1
        (ring_at(2, False), ring_at(2, True), n + 13),  # corner 2
        (d2, ring_at(3, True), ring_at(3, False)),      # corner 3
        (ring_at(4, False), ring_at(4, True), n + 15),  # corner 4
        (d3, ring_at(5, True), ring_at(5, False)),      # corner 5
        (ring_at(6, False), ring_at(6, True), n + 17),  # corner 6
    ]
    sigma = list(m.sigma) + [0] * 18
    for cycle in rotations:
        for i, d in enumerate(cycle):
            sigma[d] = cycle[(i + 1) % 3]
    pairs = [(2 * e, 2 * e + 1) for e in range(m.n_edges)]
    pairs += [(n + 2 * t, n + 2 * t + 1) for t in range(6)]
    pairs += [(n + 12 + 2 * i, n + 13 + 2 * i) for i in range(3)]
    return renumber(pairs, lambda d: sigma[d], m.root)


def insert4(m: RootedMap, face: int, e: int, e2: int) -> RootedMap:
    """Subdivide edges ``e`` and ``e2`` of the given face twice each and join
    the new vertices by the two non-crossing chords through the face.

    The edges must be separated by an odd number of boundary edges in both
    directions, which is exactly what makes the chords color-compatible.
    """
    if e == e2:
        raise ValueError("the two edges must be distinct")
    cycle = m.faces[face]
    pos = {edge_of(d): i for i, d in enumerate(cycle)}
    if e not in pos or e2 not in pos:
        raise ValueError("both edges must lie on the face")
    gap = (pos[e2] - pos[e]) % len(cycle)
    if gap % 2:
        raise ValueError("edges are not separated by odd arcs on this face")

    de, de2 = cycle[pos[e]], cycle[pos[e2]]
    n = m.n_darts
    # new darts: subdivision points p1, p2 on e (near tail, near head) and
    # q1, q2 on e2; chords p1-q2 and p2-q1
    a, b, c, d_ = n, n + 1, n + 2, n + 3          # p1->x, p1->p2, p2->p1, p2->y
    a2, b2, c2, d2_ = n + 4, n + 5, n + 6, n + 7  # same along e2
    ch1, ch1b = n + 8, n + 9                      # p1->q2, q2->p1
    ch2, ch2b = n + 10, n + 11                    # p2->q1, q1->p2

    rotations = [
        (b, a, ch1),      # p1: onward, back to tail, chord (face lies right)
        (d_, c, ch2),     # p2
        (b2, a2, ch2b),   # q1
        (d2_, c2, ch1b),  # q2
    ]
    sigma = list(m.sigma) + [0] * 12
    for cyc in rotations:
        for i, d in enumerate(cyc):
            sigma[d] = cyc[(i + 1) % 3]
    pairs = [(2 * g, 2 * g + 1) for g in range(m.n_edges) if g not in (e, e2)]
    pairs += [(de, a), (b, c), (d_, de ^ 1),
              (de2, a2), (b2, c2), (d2_, de2 ^ 1),
              (ch1, ch1b), (ch2, ch2b)]
    return renumber(pairs, lambda d: sigma[d], m.root)


def insert4_sites(m: RootedMap) -> list[tuple[int, int, int]]:
    """All (face, e, e2) triples satisfying the odd-separation condition."""
    out = []
    for fi, cycle in enumerate(m.faces):
        length = len(cycle)
        for i in range(length):
            for j in range(i + 2, length):
                if (j - i) % 2 == 0:
                    e, e2 = edge_of(cycle[i]), edge_of(cycle[j])
                    if e != e2:
                        out.append((fi, e, e2))
    return out


# ---------------------------------------------------------------------------
# Catalog

@dataclasses.dataclass(frozen=True)
class CatalogEntry:
    """One unrooted primitive: a rooted representative, its unrooted code
    (minimum rooted code over all rootings), and its rooting count."""

    rep: RootedMap
    code: CanonicalCode
    rootings: int


class CatalogIncompleteError(Exception):
    """A primitive was requested that the catalog does not contain."""


class PrimitiveCatalog:
    """Per-size sets of unrooted primitives with their distinct rootings."""

    def __init__(self, entries: dict[int, list[CatalogEntry]], max_vertices: int):
        self.entries = entries
        self.max_vertices = max_vertices
        self._rooted_cache: dict[int, list[RootedMap]] = {}
        self._handle_cache: dict[int, dict[tuple[int, ...], int]] = {}

    def sizes(self) -> list[int]:
        return sorted(self.entries)

    def entries_at(self, size: int) -> list[CatalogEntry]:
        return self.entries.get(size, [])

    def rooting_sum(self, size: int) -> int:
        return sum(entry.rootings for entry in self.entries_at(size))

    def rooted(self, j: int) -> list[RootedMap]:
        """All rooted primitives on 2j vertices, ordered by rooted code."""
        size = 2 * j
        if size not in self._rooted_cache:
            out = []
            for entry in self.entries_at(size):
                codes = rooting_codes(entry.rep)
                for code in sorted(codes):
                    out.append(reroot(entry.rep, codes[code]))
            self._rooted_cache[size] = out
        return self._rooted_cache[size]

    def _handles(self, size: int) -> dict[tuple[int, ...], int]:
        from .planarmap import canonical_code
        if size not in self._handle_cache:
            self._handle_cache[size] = {
                canonical_code(r).code: i for i, r in enumerate(self.rooted(size // 2))}
        return self._handle_cache[size]

    def handle_of(self, m: RootedMap) -> str | None:
        from .planarmap import canonical_code
        size = m.n_vertices
        idx = self._handles(size).get(canonical_code(m).code)
        if idx is None:
            return None
        return f"P{size}.{idx}"

    def contains_rooted(self, m: RootedMap) -> bool:
        return self.handle_of(m) is not None

    def resolve(self, handle: str) -> RootedMap:
        try:
            size_s, idx_s = handle[1:].split(".")
            size, idx = int(size_s), int(idx_s)
        except (ValueError, IndexError):
            raise ValueError(f"malformed catalog handle {handle!r}") from None
        rooted = self.rooted(size // 2)
        if handle[0] != "P" or not 0 <= idx < len(rooted):
            raise CatalogIncompleteError(f"no primitive for handle {handle!r}")
        return rooted[idx]


def _expand_parent(task: tuple[tuple[int, ...], int, str]) -> list[tuple[tuple[int, ...], int]]:
    sigma, root, kind = task
    m = RootedMap(sigma, root)
    out = []
    if kind == "insert4":
        for site in insert4_sites(m):
            child = insert4(m, *site)
            out.append((child.sigma, child.root))
    else:
        for v in range(m.n_vertices):
            child = insert6(m, v)
            out.append((child.sigma, child.root))
    return out


def generate_catalog(max_vertices: int, workers: int | None = None) -> PrimitiveCatalog:
    """Every primitive with at most ``max_vertices`` vertices, grown by
    exhaustive insertion from the smallest one and deduplicated by unrooted
    canonical code."""
    if max_vertices < 2:
        raise ValueError("max_vertices must be at least 2")
    seed = theta()
    entries: dict[int, list[CatalogEntry]] = {
        2: [CatalogEntry(seed, CanonicalCode(min(rooting_codes(seed))), 1)]}
    if workers is None:
        workers = int(os.environ.get("BICUBIC_WORKERS", "1") or "1")

    for size in range(4, max_vertices + 1, 2):
        tasks = []
        for parent in entries.get(size - 4, []):
            tasks.append((parent.rep.sigma, parent.rep.root, "insert4"))
        for parent in entries.get(size - 6, []):
            tasks.append((parent.rep.sigma, parent.rep.root, "insert6"))
        if workers > 1 and len(tasks) > 1:
            from multiprocessing import Pool
            with Pool(workers) as pool:
                batches = pool.map(_expand_parent, tasks)
        else:
            batches = [_expand_parent(t) for t in tasks]

        found: dict[tuple[int, ...], CatalogEntry] = {}
        for batch in batches:
            for sigma, root in batch:
                child = RootedMap(sigma, root)
                if not is_primitive(child):
                    continue
                codes = rooting_codes(child)
                key = min(codes)
                if key not in found:
                    found[key] = CatalogEntry(child, CanonicalCode(key), len(codes))
        entries[size] = [found[k] for k in sorted(found)]

    return PrimitiveCatalog(entries, max_vertices)


def three_rooting_census(catalog: PrimitiveCatalog) -> list[tuple[int, CatalogEntry]]:
    """Catalog entries with exactly three distinct rootings."""
    out = []
    for size in catalog.sizes():
        for entry in catalog.entries_at(size):
            if entry.rootings == 3:
                out.append((size, entry))
    return out


# ---------------------------------------------------------------------------
# Named primitives

def truncated_octahedron() -> RootedMap:
    """The 24-vertex primitive with six quadrilateral and eight hexagonal
    faces, built as the adjacent-transposition graph on 4-element orderings
    (rotation order flips with the ordering's parity)."""
    from .planarmap import MapBuilder

    perms = sorted(itertools.permutations(range(4)))
    index = {p: i for i, p in enumerate(perms)}

    def swap(p: tuple[int, ...], i: int) -> tuple[int, ...]:
        q = list(p)
        q[i], q[i + 1] = q[i + 1], q[i]
        return tuple(q)

    def parity(p: tuple[int, ...]) -> int:
        inv = sum(1 for a in range(4) for b in range(a + 1, 4) if p[a] > p[b])
        return inv % 2

    builder = MapBuilder()
    handles: dict[tuple[int, int], int] = {}
    for p in perms:
        for i in range(3):
            key = (min(index[p], index[swap(p, i)]), i)
            if key not in handles:
                handles[key] = builder.edge()

    def end(p: tuple[int, ...], i: int) -> tuple[int, int]:
        q = swap(p, i)
        key = (min(index[p], index[q]), i)
        side = 0 if index[p] < index[q] else 1
        return handles[key], side

    for p in perms:
        order = (0, 1, 2) if parity(p) == 0 else (2, 1, 0)
        builder.vertex([end(p, i) for i in order])
    return builder.finalize(end(perms[0], 0))


def construct_asymmetric(n: int) -> RootedMap:
    """A primitive on 2n vertices with the maximal number ``6n`` of
    rootings: a hexagon blow-up of a prism for odd n, an off-center chord
    insertion into a prism for even n."""
    if n != 9 and n < 11:
        raise ValueError("asymmetric primitives exist only for n = 9 and n >= 11")
    if n % 2:
        return insert6(prism(n - 3), 0)
    base = prism(n - 2)
    big = next(fi for fi, cycle in enumerate(base.faces) if len(cycle) == n - 2)
    cycle = base.faces[big]
    # split the big face into faces of sizes 6, 4, and n-4
    e, e2 = edge_of(cycle[0]), edge_of(cycle[4])
    return insert4(base, big, e, e2)


# ---------------------------------------------------------------------------
# Persistence

def save_catalog(catalog: PrimitiveCatalog, directory: str | Path) -> None:
    """One map file per size plus a sorted index of codes and rootings."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    index_lines = []
    for size in catalog.sizes():
        entries = catalog.entries_at(size)
        index_lines.append(f"size {size}")
        for entry in entries:
            index_lines.append(f"{entry.code.serialize()} {entry.rootings}")
        if entries:
            text = "".join(serialize(entry.rep) for entry in entries)
            (directory / f"size-{size:02d}.map").write_text(text)
    (directory / "index.txt").write_text("\n".join(index_lines) + "\n")


def load_catalog(directory: str | Path) -> PrimitiveCatalog:
    """Load and re-verify a saved catalog."""
    directory = Path(directory)
    entries: dict[int, list[CatalogEntry]] = {}
    size = None
    expected: dict[int, list[tuple[tuple[int, ...], int]]] = {}
    for raw in (directory / "index.txt").read_text().splitlines():
        tokens = raw.split()
        if not tokens:
            continue
        if tokens[0] == "size":
            size = int(tokens[1])
            expected[size] = []
            entries[size] = []
        else:
            if size is None:
                raise ValueError("index entry before any size header")
            expected[size].append((tuple(int(t) for t in tokens[:-1]), int(tokens[-1])))
    for size, rows in expected.items():
        if not rows:
            continue
        maps = parse_maps((directory / f"size-{size:02d}.map").read_text())
        if len(maps) != len(rows):
            raise ValueError(f"size {size}: {len(maps)} maps but {len(rows)} index rows")
        for m, (code, rootings) in zip(maps, rows):
            codes = rooting_codes(m)
            if min(codes) != code or len(codes) != rootings:
                raise ValueError(f"size {size}: map does not match its index row")
            entries[size].append(CatalogEntry(m, CanonicalCode(code), rootings))
    return PrimitiveCatalog(entries, max(entries) if entries else 2)
