"""The assembly map from decorated Dyck paths to rooted bicubic maps and
its inverse by repeated cut decomposition."""

from __future__ import annotations

from typing import Iterator

from .dyck import (DecoratedDyckPath, DyckPath, compose_decorated,
                   enumerate_decorated, merge_targets)
from .planarmap import RootedMap, canonical_code, validate
from .series import f_closed
from .surgery import decompose, find_first_cut_edge, glue


class CatalogIncompleteError(Exception):
    """A primitive arose that the supplied catalog does not contain."""


def phi(p: DecoratedDyckPath) -> RootedMap:
    """Assemble the rooted map of a decorated path: start from the first
    decoration and glue each next one at its merge target."""
    m = p.decorations[0]
    for target, dec in zip(merge_targets(p.path), p.decorations[1:]):
        m = glue(m, target, dec)
    return m


def _single_ascent(m: RootedMap) -> DecoratedDyckPath:
    e = m.n_edges
    return DecoratedDyckPath(DyckPath((True,) * e + (False,) * e), (m,))


def phi_inverse(m: RootedMap, catalog=None) -> DecoratedDyckPath:
    """Invert the assembly: peel the minimal root piece off at the first cut
    until every piece is primitive, splicing the sub-paths back together.

    Uses an explicit work stack rather than call recursion.  With a catalog
    given, every primitive piece is checked against it and an unknown piece
    raises ``CatalogIncompleteError``.
    """
    work: list[tuple[str, object]] = [("map", m)]
    results: list[DecoratedDyckPath] = []
    while work:
        kind, item = work.pop()
        if kind == "map":
            piece = item  # type: RootedMap
            if find_first_cut_edge(piece) is None:
                if catalog is not None and not catalog.contains_rooted(piece):
                    raise CatalogIncompleteError(
                        f"unknown primitive on {piece.n_vertices} vertices: "
                        f"{canonical_code(piece).serialize()}")
                results.append(_single_ascent(piece))
            else:
                d = decompose(piece)
                work.append(("combine", d.distinguished_label))
                work.append(("map", d.m2))
                work.append(("map", d.m1))
        else:
            p2 = results.pop()
            p1 = results.pop()
            results.append(compose_decorated(p1, item, p2))
    return results[0]


def enumerate_maps(n: int, catalog) -> Iterator[RootedMap]:
    """All rooted bicubic planar maps on 2n vertices, one per decorated path."""
    for p in enumerate_decorated(n, catalog):
        yield phi(p)


def verify_bijection(n: int, catalog, check_maps: bool = True) -> dict:
    """Exhaustive consistency check at one size: census, validity, and both
    round trips.  Returns a machine-readable summary."""
    paths = 0
    codes = set()
    bad_maps = 0
    bad_path_trips = 0
    bad_map_trips = 0
    for p in enumerate_decorated(n, catalog):
        paths += 1
        m = phi(p)
        if not validate(m).ok or m.n_vertices != 2 * n:
            bad_maps += 1
        codes.add(canonical_code(m).code)
        q = phi_inverse(m)
        if q.key() != p.key():
            bad_path_trips += 1
        if check_maps:
            if canonical_code(phi(q)).code != canonical_code(m).code:
                bad_map_trips += 1
    expected = f_closed(n)
    summary = {
        "n": n,
        "paths": paths,
        "distinct_maps": len(codes),
        "f_n": expected,
        "invalid_maps": bad_maps,
        "path_round_trip_failures": bad_path_trips,
        "map_round_trip_failures": bad_map_trips,
    }
    summary["ok"] = (paths == expected == len(codes)
                     and not bad_maps and not bad_path_trips and not bad_map_trips)
    return summary
