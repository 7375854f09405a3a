"""Gluing two rooted maps along a labeled edge, and its inverse surgery.

Gluing cuts the target edge of the host and the root edge of the guest and
cross-connects the four half-edges, dark side to white side, leaving every
rotation untouched.  Decomposing finds the first labeled edge lying in a
2-edge cut, removes the cut pair, and reseals both sides; done this way,
``glue(m1, a, m2)`` rebuilds the decomposed map exactly.
"""

from __future__ import annotations

import dataclasses
import logging

from .labeling import label_edges
from .planarmap import (RootedMap, edge_of, edge_participates_in_cut,
                        is_connected_without, renumber,
                        vertex_components_without)

log = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Decomposition:
    """Result of splitting at a 2-edge cut.

    ``m1`` keeps the original root and carries the resealed edge whose label
    is ``distinguished_label``; ``m2`` is rooted at its own resealed edge.
    """

    m1: RootedMap
    distinguished_label: int
    m2: RootedMap


def glue(m: RootedMap, label: int, n: RootedMap) -> RootedMap:
    """Glue ``n`` onto the edge of ``m`` carrying ``label``.

    The label refers to the labeling of ``m`` alone; labels of the result
    must be recomputed.  The root dart of ``m`` survives as the root.
    """
    if not 1 <= label <= m.n_edges:
        raise ValueError(f"label {label} out of range 1..{m.n_edges}")
    ell = label_edges(m).edge_with(label)
    a = m.dark_dart(ell)          # host half kept with its dark vertex
    r = n.root + m.n_darts        # guest root dart, dark tail by derivation
    offset = m.n_darts

    pairs = [(2 * e, 2 * e + 1) for e in range(m.n_edges) if e != ell]
    pairs += [(offset + 2 * e, offset + 2 * e + 1)
              for e in range(n.n_edges) if e != edge_of(n.root)]
    # dark host half joins white guest half, and vice versa
    pairs.append((a, r ^ 1))
    pairs.append((a ^ 1, r))

    def sigma_of(d: int) -> int:
        if d < offset:
            return m.sigma[d]
        return n.sigma[d - offset] + offset

    return renumber(pairs, sigma_of, m.root)


def find_first_cut_edge(m: RootedMap) -> int | None:
    """First edge in label order lying in some 2-edge cut; None if primitive."""
    labeling = label_edges(m)
    order = sorted(range(m.n_edges), key=labeling.label_of)
    for e in order:
        if edge_participates_in_cut(m, e):
            return e
    return None


def decompose(m: RootedMap) -> Decomposition:
    """Split a non-primitive map at its first 2-edge cut.

    The cut pair is the first cut edge ``e`` together with the other edge
    shared by the two faces flanking ``e`` that joins the root component to
    the rest; the root component is taken with all face-shared edges
    removed, which makes ``m1`` minimal.
    """
    e = find_first_cut_edge(m)
    if e is None:
        raise ValueError("map is primitive; nothing to decompose")

    f1 = m.face_of[2 * e]
    f2 = m.face_of[2 * e + 1]
    if f1 == f2:
        raise AssertionError("cut edge bounds a single face (bridge)")
    shared = [g for g in range(m.n_edges)
              if {m.face_of[2 * g], m.face_of[2 * g + 1]} == {f1, f2}]

    comps = vertex_components_without(m, shared)
    root_v = m.vertex_of[m.root]
    root_comp = next(c for c in comps if root_v in c)

    def crosses(g: int) -> bool:
        return (m.vertex_of[2 * g] in root_comp) != (m.vertex_of[2 * g + 1] in root_comp)

    if not crosses(e):
        raise AssertionError("first cut edge does not touch the root component")
    candidates = [g for g in shared if g != e and crosses(g)]
    if not candidates:
        raise AssertionError("no partner edge for the cut")
    if len(candidates) == 1:
        e2 = candidates[0]
    else:
        # tie-break: first candidate along the face to the right of the dart
        # of e leaving the root component
        log.warning("ambiguous cut partner for edge %d; using face order", e)
        d = 2 * e if m.vertex_of[2 * e] in root_comp else 2 * e + 1
        cand = set(candidates)
        cur = m.phi(d)
        e2 = -1
        while cur != d:
            if edge_of(cur) in cand:
                e2 = edge_of(cur)
                break
            cur = m.phi(cur)
        if e2 < 0:
            raise AssertionError("cut partner not on the shared face")

    if is_connected_without(m, (e, e2)):
        raise AssertionError("selected pair is not a 2-edge cut")
    halves = vertex_components_without(m, (e, e2))
    if len(halves) != 2:
        raise AssertionError("cut does not split the map in two")
    m1_vertices = next(c for c in halves if root_v in c)
    m2_vertices = next(c for c in halves if root_v not in c)

    # near/far darts of the cut pair relative to the root side
    e_in = 2 * e if m.vertex_of[2 * e] in m1_vertices else 2 * e + 1
    e2_in = 2 * e2 if m.vertex_of[2 * e2] in m1_vertices else 2 * e2 + 1
    if m.colors[m.vertex_of[e_in]] == m.colors[m.vertex_of[e2_in]]:
        raise AssertionError("cut halves would join equal colors")

    def submap(vertex_set: set[int], seal: tuple[int, int], root: int) -> RootedMap:
        pairs = [(2 * g, 2 * g + 1) for g in range(m.n_edges)
                 if g not in (e, e2)
                 and m.vertex_of[2 * g] in vertex_set
                 and m.vertex_of[2 * g + 1] in vertex_set]
        pairs.append(seal)
        return renumber(pairs, lambda d: m.sigma[d], root)

    m1 = submap(m1_vertices, (e_in, e2_in), m.root)
    # rooting m2 at the dark end of its sealed edge makes glue the exact
    # inverse: re-gluing joins dark to white halves as they were
    far_e, far_e2 = e_in ^ 1, e2_in ^ 1
    m2_root = far_e if m.colors[m.vertex_of[far_e]] else far_e2
    m2 = submap(m2_vertices, (far_e, far_e2), m2_root)

    sealed_edge_m1 = m1.n_edges - 1  # seal pair listed last by construction
    a = label_edges(m1).label_of(sealed_edge_m1)
    return Decomposition(m1, a, m2)
