"""Dyck words with ascent labels, merge targets, splicing, and enumeration.

Up-steps are labeled per maximal ascent in reversed order (the top step of
an ascent gets the smallest number of its block), which makes the label of
the up-step matched by the closing down-step of each descent the gluing
target for map assembly.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Callable, Iterator

from .planarmap import CanonicalCode, RootedMap, canonical_code


@dataclasses.dataclass(frozen=True)
class DyckPath:
    """Balanced lattice word over up/down steps, never below zero."""

    steps: tuple[bool, ...]  # True = up

    def __post_init__(self):
        h = 0
        for s in self.steps:
            h += 1 if s else -1
            if h < 0:
                raise ValueError("path dips below zero")
        if h != 0:
            raise ValueError("path is not balanced")

    @classmethod
    def from_word(cls, word: str) -> "DyckPath":
        cleaned = [c for c in word if not c.isspace()]
        bad = {c for c in cleaned if c not in "UD"}
        if bad:
            raise ValueError(f"invalid step characters: {sorted(bad)}")
        return cls(tuple(c == "U" for c in cleaned))

    def word(self) -> str:
        """Step word with maximal runs separated by spaces."""
        out = []
        for up, run in itertools.groupby(self.steps):
            out.append(("U" if up else "D") * len(list(run)))
        return " ".join(out)

    def __str__(self):
        return self.word()

    @property
    def semilength(self) -> int:
        return len(self.steps) // 2

    @property
    def is_empty(self) -> bool:
        return not self.steps

    def ascents(self) -> list[tuple[int, int]]:
        """(start, length) of each maximal run of up-steps."""
        out = []
        i = 0
        pos = 0
        for up, run in itertools.groupby(self.steps):
            n = len(list(run))
            if up:
                out.append((pos, n))
            pos += n
            i += 1
        return out

    def matches(self) -> tuple[int, ...]:
        """Position of the partner step, by parenthesis matching."""
        match = [-1] * len(self.steps)
        stack: list[int] = []
        for i, up in enumerate(self.steps):
            if up:
                stack.append(i)
            else:
                j = stack.pop()
                match[i] = j
                match[j] = i
        return tuple(match)


def label_up_steps(path: DyckPath) -> dict[int, int]:
    """Label of each up-step position; within an ascent labels decrease upward."""
    labels: dict[int, int] = {}
    base = 0
    for start, length in path.ascents():
        for t in range(length):
            labels[start + t] = base + length - t
        base += length
    return labels


def merge_targets(path: DyckPath) -> tuple[int, ...]:
    """For each descent but the last, the label of the up-step matched by
    its final down-step."""
    asc = path.ascents()
    labels = label_up_steps(path)
    match = path.matches()
    steps = path.steps
    out = []
    for start, length in asc[:-1]:
        d = start + length
        while d + 1 < len(steps) and not steps[d + 1]:
            d += 1
        out.append(labels[match[d]])
    return tuple(out)


def compose(p1: DyckPath, a: int, p2: DyckPath) -> DyckPath:
    """Splice ``p2`` right after the down-step matching ``p1``'s up-step
    labeled ``a``."""
    labels = label_up_steps(p1)
    positions = {lab: pos for pos, lab in labels.items()}
    if a not in positions:
        raise ValueError(f"no up-step labeled {a}")
    q = p1.matches()[positions[a]]
    return DyckPath(p1.steps[:q + 1] + p2.steps + p1.steps[q + 1:])


@dataclasses.dataclass(frozen=True)
class DecoratedDyckPath:
    """Dyck path with one rooted primitive bound to each maximal ascent."""

    path: DyckPath
    decorations: tuple[RootedMap, ...]

    def __post_init__(self):
        asc = self.path.ascents()
        if len(asc) != len(self.decorations):
            raise ValueError(f"{len(asc)} ascents but {len(self.decorations)} decorations")
        for (_, length), dec in zip(asc, self.decorations):
            if length % 3:
                raise ValueError(f"ascent length {length} not a multiple of 3")
            if dec.n_edges != length:
                raise ValueError(
                    f"decoration has {dec.n_edges} edges for a {length}-ascent")

    @property
    def semilength(self) -> int:
        return self.path.semilength

    def key(self) -> tuple:
        """Value identity: word plus decoration codes."""
        return (self.path.steps,
                tuple(canonical_code(d).code for d in self.decorations))


def compose_decorated(p1: DecoratedDyckPath, a: int,
                      p2: DecoratedDyckPath) -> DecoratedDyckPath:
    """Decorated splice; decorations interleave by ascent position."""
    labels = label_up_steps(p1.path)
    positions = {lab: pos for pos, lab in labels.items()}
    if a not in positions:
        raise ValueError(f"no up-step labeled {a}")
    q = p1.path.matches()[positions[a]]
    path = DyckPath(p1.path.steps[:q + 1] + p2.path.steps + p1.path.steps[q + 1:])
    before = sum(1 for start, _ in p1.path.ascents() if start <= q)
    decorations = (p1.decorations[:before] + p2.decorations
                   + p1.decorations[before:])
    return DecoratedDyckPath(path, decorations)


def split_last(p: DecoratedDyckPath) -> tuple[DecoratedDyckPath, int, DecoratedDyckPath]:
    """Cut off the final ascent block; re-composing at the last merge target
    restores the path."""
    asc = p.path.ascents()
    if len(asc) < 2:
        raise ValueError("path has a single ascent")
    start, length = asc[-1]
    tail = p.path.steps[start:start + 2 * length]
    if not all(tail[:length]) or any(tail[length:]):
        raise AssertionError("final block is not an ascent followed by its descent")
    p1 = DecoratedDyckPath(
        DyckPath(p.path.steps[:start] + p.path.steps[start + 2 * length:]),
        p.decorations[:-1])
    p2 = DecoratedDyckPath(
        DyckPath((True,) * length + (False,) * length), p.decorations[-1:])
    target = merge_targets(p.path)[-1]
    return p1, target, p2


# ---------------------------------------------------------------------------
# Enumeration

def _run_shapes(n_up: int, allowed: list[int]) -> Iterator[tuple[tuple[int, int], ...]]:
    """All (ascent semisize, descent length) run sequences, lexicographic."""
    def rec(up_used: int, height: int, runs: list[tuple[int, int]]):
        for j in allowed:
            if up_used + 3 * j > n_up:
                continue
            top = height + 3 * j
            if up_used + 3 * j == n_up:
                runs.append((j, top))
                yield tuple(runs)
                runs.pop()
            else:
                for fall in range(1, top + 1):
                    runs.append((j, fall))
                    yield from rec(up_used + 3 * j, top - fall, runs)
                    runs.pop()

    yield from rec(0, 0, [])


def _shape_to_path(runs: tuple[tuple[int, int], ...]) -> DyckPath:
    steps: list[bool] = []
    for j, fall in runs:
        steps.extend([True] * (3 * j))
        steps.extend([False] * fall)
    return DyckPath(tuple(steps))


def enumerate_decorated(n: int, catalog) -> Iterator[DecoratedDyckPath]:
    """Stream every decorated path of semilength ``3n`` in a fixed order:
    run shapes lexicographically, decorations in catalog order."""
    if n < 1:
        raise ValueError("n must be positive")
    if catalog.max_vertices < 2 * n:
        raise ValueError(
            f"catalog ceiling {catalog.max_vertices} below required {2 * n}")
    allowed = [j for j in range(1, n + 1) if catalog.rooted(j)]
    for runs in _run_shapes(3 * n, allowed):
        path = _shape_to_path(runs)
        pools = [catalog.rooted(j) for j, _ in runs]
        for decorations in itertools.product(*pools):
            yield DecoratedDyckPath(path, tuple(decorations))


def count_decorated(n: int, gs: list[int]) -> int:
    """Census of decorated paths of semilength ``3n`` by dynamic programming
    over block insertions; ``gs[j]`` counts colors for a ``3j``-ascent."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 6 * n
    top = 3 * n
    ways = [[0] * (top + 2) for _ in range(total + 1)]
    ways[0][0] = 1
    for s in range(total):
        row = ways[s]
        for h in range(top + 1):
            w = row[h]
            if not w:
                continue
            if h:
                ways[s + 1][h - 1] += w
            for j in range(1, (top - h) // 3 + 1):
                g = gs[j] if j < len(gs) else 0
                if g and s + 3 * j + 1 <= total:
                    ways[s + 3 * j + 1][h + 3 * j - 1] += w * g
    return ways[total][0]


# ---------------------------------------------------------------------------
# Text format

def path_to_text(p: DecoratedDyckPath,
                 handle_of: Callable[[RootedMap], str | None] | None = None) -> str:
    """Render a decorated path; decorations use catalog handles when
    available, inline canonical codes otherwise."""
    lines = ["path " + p.path.word()]
    for i, dec in enumerate(p.decorations):
        handle = handle_of(dec) if handle_of else None
        lines.append(f"decor {i} {handle or canonical_code(dec).serialize()}")
    return "\n".join(lines) + "\n"


def path_from_text(text: str,
                   resolve: Callable[[str], RootedMap] | None = None) -> DecoratedDyckPath:
    """Parse the path text format; ``resolve`` maps catalog handles to maps."""
    word_parts: list[str] = []
    decor_lines: dict[int, list[str]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "path":
            word_parts.extend(tokens[1:])
        elif tokens[0] == "decor":
            if len(tokens) < 3:
                raise ValueError(f"malformed decor line: {line!r}")
            decor_lines[int(tokens[1])] = tokens[2:]
        else:
            raise ValueError(f"unexpected line: {line!r}")
    path = DyckPath.from_word("".join(word_parts))
    n_asc = len(path.ascents())
    if sorted(decor_lines) != list(range(n_asc)):
        raise ValueError(f"need decorations 0..{n_asc - 1}, got {sorted(decor_lines)}")
    decorations = []
    for i in range(n_asc):
        tokens = decor_lines[i]
        if len(tokens) == 1 and tokens[0].startswith("P"):
            if resolve is None:
                raise ValueError(f"catalog handle {tokens[0]} needs a catalog")
            decorations.append(resolve(tokens[0]))
        else:
            code = CanonicalCode(tuple(int(t) for t in tokens))
            decorations.append(code.to_map())
    return DecoratedDyckPath(path, tuple(decorations))
