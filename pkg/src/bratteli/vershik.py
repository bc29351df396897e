"""Inverse-lexicographic successor dynamics on path prefixes, and
finite-depth diagnostics for the extremal-path structure.

Everything operates on prefixes (depth-N cylinders), the finitely checkable
stand-ins for points of the path space: extremal prefix sets approximate
the sets of maximal/minimal paths from outside, and a successor that is
undetermined at depth N (every edge already maximal) is reported as such
rather than guessed.
"""

from __future__ import annotations

from typing import Literal, NamedTuple

from .diagram import OrderedBratteliDiagram, PathPrefix

Side = Literal["max", "min"]


def _require_nonempty(p: PathPrefix) -> None:
    if p.depth == 0:
        raise ValueError("empty prefix")


def is_maximal_prefix(p: PathPrefix) -> bool:
    """True iff every edge is the highest-order edge at its source."""
    _require_nonempty(p)
    d = p.diagram
    return all(e.order == len(d.edges_from(e.level, e.source)) - 1 for e in p.edges)


def is_minimal_prefix(p: PathPrefix) -> bool:
    """True iff every edge is the lowest-order edge at its source."""
    _require_nonempty(p)
    return all(e.order == 0 for e in p.edges)


def successor(p: PathPrefix) -> PathPrefix | None:
    """The next prefix in inverse-lexicographic order, or ``None`` when all
    edges are maximal and the prefix does not determine its successor.

    Finds the least index whose edge is non-maximal, bumps it to the
    next-order edge at the same source, and rebuilds everything above as the
    chain of minimal-order edges.  The deep source vertex is preserved.
    """
    _require_nonempty(p)
    d = p.diagram
    edges = list(p.edges)
    for i, e in enumerate(edges):
        fan = d.edges_from(e.level, e.source)
        if e.order < len(fan) - 1:
            edges[i] = fan[e.order + 1]
            v = edges[i].target
            for j in range(i - 1, -1, -1):
                edges[j] = d.edges_from(j + 1, v)[0]
                v = edges[j].target
            return PathPrefix(d, tuple(edges))
    return None


def predecessor(p: PathPrefix) -> PathPrefix | None:
    """Mirror of :func:`successor`: ``None`` when all edges are minimal."""
    _require_nonempty(p)
    d = p.diagram
    edges = list(p.edges)
    for i, e in enumerate(edges):
        if e.order > 0:
            fan = d.edges_from(e.level, e.source)
            edges[i] = fan[e.order - 1]
            v = edges[i].target
            for j in range(i - 1, -1, -1):
                edges[j] = d.edges_from(j + 1, v)[-1]
                v = edges[j].target
            return PathPrefix(d, tuple(edges))
    return None


def _extremal_prefixes(diagram: OrderedBratteliDiagram, depth: int, pick: int) -> set[PathPrefix]:
    if not 1 <= depth <= diagram.depth:
        raise ValueError(f"depth {depth} outside 1..{diagram.depth}")
    out = set()
    for v in range(diagram.level_size(depth)):
        chain = []
        u = v
        for k in range(depth, 0, -1):
            e = diagram.edges_from(k, u)[pick]
            chain.append(e)
            u = e.target
        out.add(PathPrefix(diagram, tuple(reversed(chain))))
    return out


def maximal_prefixes(diagram: OrderedBratteliDiagram, depth: int) -> set[PathPrefix]:
    """The depth-N prefixes all of whose edges are maximal; one per deep
    vertex, since the extremal edge at each source is unique."""
    return _extremal_prefixes(diagram, depth, -1)


def minimal_prefixes(diagram: OrderedBratteliDiagram, depth: int) -> set[PathPrefix]:
    return _extremal_prefixes(diagram, depth, 0)


def interior_witness(diagram: OrderedBratteliDiagram, side: Side, depth: int,
                     probe_depth: int) -> list[PathPrefix]:
    """Depth-N extremal prefixes whose every extension down to
    ``min(depth + probe_depth, diagram.depth)`` is still extremal.

    An empty list certifies, to the probe depth, that no depth-N cylinder
    lies inside the extremal set.  A non-empty list is candidate evidence
    only: deeper levels could still break it.
    """
    if side not in ("max", "min"):
        raise ValueError(f"side must be 'max' or 'min', got {side!r}")
    if not depth + 1 <= diagram.depth:
        raise ValueError(f"need depth + 1 <= {diagram.depth} to probe anything")
    if probe_depth < 1:
        raise ValueError(f"probe depth must be >= 1, got {probe_depth}")
    limit = min(depth + probe_depth, diagram.depth)
    want_max = side == "max"
    memo: dict[tuple[int, int], bool] = {}

    def all_extremal_below(vertex: int, level: int) -> bool:
        if level == limit:
            return True
        key = (vertex, level)
        if key in memo:
            return memo[key]
        ok = True
        for e in diagram.edges_to(level + 1, vertex):
            fan = diagram.edges_from(level + 1, e.source)
            extremal = e.order == (len(fan) - 1 if want_max else 0)
            if not (extremal and all_extremal_below(e.source, level + 1)):
                ok = False
                break
        memo[key] = ok
        return ok

    base = maximal_prefixes(diagram, depth) if want_max else minimal_prefixes(diagram, depth)
    hits = [p for p in base if all_extremal_below(p.source[1], depth)]
    return sorted(hits, key=lambda p: p.indices())


def orbit(p: PathPrefix, steps: int) -> list[PathPrefix]:
    """Iterated successor starting at ``p``; truncated where the successor
    stops being determined.  Length is at most ``steps + 1``."""
    out = [p]
    for _ in range(steps):
        nxt = successor(out[-1])
        if nxt is None:
            break
        out.append(nxt)
    return out


def prefix_set_diameter(prefixes) -> float:
    """Diameter under d(x, y) = 2^-(shared initial edges); 0 for at most one
    element."""
    ps = list(prefixes)
    if len(ps) <= 1:
        return 0.0
    shared = 0
    for level_edges in zip(*(p.edges for p in ps)):
        first = level_edges[0]
        if any(e != first for e in level_edges[1:]):
            break
        shared += 1
    return 2.0 ** (-shared)


class ProfilePoint(NamedTuple):
    diameter: float
    undetermined: int


def image_diameter_profile(diagram: OrderedBratteliDiagram, n_max: int,
                           depth: int) -> list[ProfilePoint]:
    """For n = 0..n_max, the diameter of the n-th successor image of the
    depth-D minimal prefix set.

    Prefixes whose n-th successor is not determined at this depth are
    excluded from the diameter and counted separately; once undetermined,
    always undetermined.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    current: list[PathPrefix | None] = sorted(minimal_prefixes(diagram, depth),
                                              key=lambda p: p.indices())
    profile = []
    for n in range(n_max + 1):
        determined = [p for p in current if p is not None]
        profile.append(ProfilePoint(prefix_set_diameter(determined),
                                    len(current) - len(determined)))
        if n < n_max:
            current = [None if p is None else successor(p) for p in current]
    return profile


def all_prefixes(diagram: OrderedBratteliDiagram, depth: int) -> list[PathPrefix]:
    """Every depth-N prefix, in a deterministic order."""
    if not 0 <= depth <= diagram.depth:
        raise ValueError(f"depth {depth} outside 0..{diagram.depth}")
    out = [PathPrefix(diagram, ())]
    for k in range(1, depth + 1):
        out = [p.extend(e) for p in out for e in diagram.edges_to(k, p.source[1])]
    return sorted(out, key=lambda p: p.indices())


def extension_count(diagram: OrderedBratteliDiagram, p: PathPrefix,
                    to_depth: int | None = None) -> int:
    """Number of depth-``to_depth`` prefixes extending ``p`` (cylinder size
    at that depth)."""
    if to_depth is None:
        to_depth = diagram.depth
    if not p.depth <= to_depth <= diagram.depth:
        raise ValueError(f"target depth {to_depth} outside {p.depth}..{diagram.depth}")
    counts = {p.source[1]: 1}
    for k in range(p.depth + 1, to_depth + 1):
        nxt: dict[int, int] = {}
        for v, c in counts.items():
            for e in diagram.edges_to(k, v):
                nxt[e.source] = nxt.get(e.source, 0) + c
        counts = nxt
    return sum(counts.values())
