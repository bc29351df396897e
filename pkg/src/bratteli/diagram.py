"""Finite ordered Bratteli diagrams: structure, validation and text formats.

A diagram is a level-structured multigraph.  Level 0 is a single root
vertex; an edge of ``E_k`` runs from a *source* in ``V_k`` to a *target* in
``V_{k-1}``, and the edges sharing a source are linearly ordered by their
``order`` values.  Everything here is a finite truncation: the diagram has
``depth`` levels below the root and paths are finite prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


class BVDParseError(ValueError):
    """Malformed BVD text; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DiagramValidationError(ValueError):
    """A parsed diagram violates the structural axioms."""

    def __init__(self, violations: Iterable["Violation"]):
        self.violations = tuple(violations)
        super().__init__("; ".join(v.message for v in self.violations))


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    level: int | None = None
    vertex: int | None = None


@dataclass(frozen=True)
class Edge:
    """Edge of E_level: source in V_level, target in V_{level-1}."""

    level: int
    source: int
    order: int
    target: int


class OrderedBratteliDiagram:
    """Immutable finite ordered Bratteli diagram.

    ``level_sizes`` gives ``|V_0|, ..., |V_K|``; ``edges`` is any iterable of
    :class:`Edge`; ``labels`` optionally attaches an opaque string payload to
    ``(level, vertex)`` pairs.  The constructor normalizes edge storage
    (sorted by ``(source, order)`` within each level) but does not enforce
    the structural axioms; use :meth:`validate`.
    """

    def __init__(
        self,
        level_sizes: Iterable[int],
        edges: Iterable[Edge] = (),
        labels: Mapping[tuple[int, int], str] | None = None,
    ):
        self._sizes = tuple(int(n) for n in level_sizes)
        if not self._sizes:
            raise ValueError("a diagram needs at least the root level")
        per_level: dict[int, list[Edge]] = {k: [] for k in range(1, len(self._sizes))}
        for e in edges:
            if e.level not in per_level:
                raise ValueError(f"edge level {e.level} outside 1..{self.depth}")
            per_level[e.level].append(e)
        self._edges = tuple(
            tuple(sorted(per_level[k], key=lambda e: (e.source, e.order)))
            for k in range(1, len(self._sizes))
        )
        self._labels = dict(labels or {})
        self._out: dict[tuple[int, int], tuple[Edge, ...]] = {}
        self._in: dict[tuple[int, int], tuple[Edge, ...]] = {}
        self._index: dict[Edge, int] = {}
        for k in range(1, len(self._sizes)):
            outs: dict[int, list[Edge]] = {}
            ins: dict[int, list[Edge]] = {}
            for i, e in enumerate(self.edges_at(k)):
                self._index[e] = i
                outs.setdefault(e.source, []).append(e)
                ins.setdefault(e.target, []).append(e)
            for v, lst in outs.items():
                self._out[(k, v)] = tuple(sorted(lst, key=lambda e: e.order))
            for v, lst in ins.items():
                self._in[(k, v)] = tuple(lst)

    @property
    def depth(self) -> int:
        return len(self._sizes) - 1

    @property
    def level_sizes(self) -> tuple[int, ...]:
        return self._sizes

    def level_size(self, level: int) -> int:
        if not 0 <= level <= self.depth:
            raise IndexError(f"level {level} outside 0..{self.depth}")
        return self._sizes[level]

    def edges_at(self, level: int) -> tuple[Edge, ...]:
        """All edges of E_level, sorted by ``(source, order)``."""
        if not 1 <= level <= self.depth:
            raise IndexError(f"edge level {level} outside 1..{self.depth}")
        return self._edges[level - 1]

    def edges_from(self, level: int, vertex: int) -> tuple[Edge, ...]:
        """Edges sourced at ``vertex`` in V_level, ascending by order."""
        if not 1 <= level <= self.depth:
            raise IndexError(f"edge level {level} outside 1..{self.depth}")
        if not 0 <= vertex < self._sizes[level]:
            raise IndexError(f"vertex {vertex} outside V_{level}")
        return self._out.get((level, vertex), ())

    def edges_to(self, level: int, vertex: int) -> tuple[Edge, ...]:
        """Edges of E_level whose target is ``vertex`` in V_{level-1}."""
        if not 1 <= level <= self.depth:
            raise IndexError(f"edge level {level} outside 1..{self.depth}")
        if not 0 <= vertex < self._sizes[level - 1]:
            raise IndexError(f"vertex {vertex} outside V_{level - 1}")
        return self._in.get((level, vertex), ())

    def edge_index(self, e: Edge) -> int:
        """Position of ``e`` within the serialized E_level list."""
        try:
            return self._index[e]
        except KeyError:
            raise ValueError(f"edge {e} does not belong to this diagram") from None

    def label(self, level: int, vertex: int) -> str | None:
        return self._labels.get((level, vertex))

    @property
    def labels(self) -> dict[tuple[int, int], str]:
        return dict(self._labels)

    def validate(self) -> list[Violation]:
        """Check every structural axiom; returns one entry per violation."""
        out: list[Violation] = []
        if self._sizes[0] != 1:
            out.append(Violation("root-not-singleton",
                                 f"level 0 has {self._sizes[0]} vertices, expected 1", level=0))
        for k, n in enumerate(self._sizes):
            if n < 0:
                out.append(Violation("negative-level-size",
                                     f"level {k} has negative size {n}", level=k))
        for k in range(1, self.depth + 1):
            targeted: set[int] = set()
            by_source: dict[int, list[int]] = {}
            for e in self.edges_at(k):
                if not 0 <= e.source < self._sizes[k]:
                    out.append(Violation("edge-source-out-of-range",
                                         f"E_{k} edge {e} sources nonexistent vertex {e.source}",
                                         level=k, vertex=e.source))
                    continue
                if not 0 <= e.target < self._sizes[k - 1]:
                    out.append(Violation("edge-target-out-of-range",
                                         f"E_{k} edge {e} targets nonexistent vertex {e.target}",
                                         level=k, vertex=e.target))
                    continue
                targeted.add(e.target)
                by_source.setdefault(e.source, []).append(e.order)
            for u in range(self._sizes[k - 1]):
                if u not in targeted:
                    out.append(Violation("uncovered-target",
                                         f"vertex {u} of V_{k - 1} is the target of no E_{k} edge",
                                         level=k - 1, vertex=u))
            for v in range(self._sizes[k]):
                orders = by_source.get(v)
                if not orders:
                    out.append(Violation("uncovered-source",
                                         f"vertex {v} of V_{k} sources no edge",
                                         level=k, vertex=v))
                elif sorted(orders) != list(range(len(orders))):
                    out.append(Violation("order-not-permutation",
                                         f"edge orders at V_{k} vertex {v} are {sorted(orders)}, "
                                         f"expected 0..{len(orders) - 1}",
                                         level=k, vertex=v))
        return out

    def structurally_equal(self, other: "OrderedBratteliDiagram") -> bool:
        return (self._sizes == other._sizes
                and self._edges == other._edges
                and self._labels == other._labels)

    def __repr__(self) -> str:
        return (f"OrderedBratteliDiagram(depth={self.depth}, "
                f"level_sizes={list(self._sizes)})")


@dataclass(frozen=True)
class PathPrefix:
    """Finite path from the root: edges ``e_1..e_N`` with ``e_k`` in E_k.

    Adjacency runs upward: the target of ``e_1`` is the root and the target
    of ``e_{k+1}`` is the source of ``e_k``.
    """

    diagram: OrderedBratteliDiagram = field(repr=False)
    edges: tuple[Edge, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.edges)

    @property
    def source(self) -> tuple[int, int]:
        """``(level, vertex)`` at the deep end; the root for an empty prefix."""
        if not self.edges:
            return (0, 0)
        e = self.edges[-1]
        return (e.level, e.source)

    def extend(self, e: Edge) -> "PathPrefix":
        """Append ``e`` as the next deeper edge."""
        n = self.depth
        if n >= self.diagram.depth:
            raise ValueError(f"prefix of depth {n} exceeds truncation depth {self.diagram.depth}")
        if e.level != n + 1:
            raise ValueError(f"expected an E_{n + 1} edge, got level {e.level}")
        self.diagram.edge_index(e)  # membership check
        want = self.edges[-1].source if self.edges else 0
        if e.target != want:
            raise ValueError(f"adjacency violation: edge targets {e.target}, prefix source is {want}")
        return PathPrefix(self.diagram, self.edges + (e,))

    def indices(self) -> tuple[int, ...]:
        """Edge positions within the serialized per-level edge lists."""
        return tuple(self.diagram.edge_index(e) for e in self.edges)

    def __str__(self) -> str:
        return "/".join(str(i) for i in self.indices())


def empty_prefix(diagram: OrderedBratteliDiagram) -> PathPrefix:
    return PathPrefix(diagram, ())


def prefix_from_indices(diagram: OrderedBratteliDiagram, indices: Iterable[int]) -> PathPrefix:
    """Build a prefix from per-level edge-list positions, checking adjacency."""
    p = empty_prefix(diagram)
    for k, i in enumerate(indices, start=1):
        if k > diagram.depth:
            raise ValueError(f"path longer than diagram depth {diagram.depth}")
        level_edges = diagram.edges_at(k)
        if not 0 <= i < len(level_edges):
            raise ValueError(f"edge index {i} outside E_{k} (size {len(level_edges)})")
        p = p.extend(level_edges[i])
    return p


def parse_path_spec(diagram: OrderedBratteliDiagram, spec: str) -> PathPrefix:
    """Parse the ``i1/i2/.../iN`` path syntax."""
    parts = spec.strip().split("/")
    if parts == [""]:
        raise ValueError("empty path spec")
    try:
        indices = [int(x) for x in parts]
    except ValueError:
        raise ValueError(f"malformed path spec {spec!r}") from None
    if any(i < 0 for i in indices):
        raise ValueError(f"negative edge index in path spec {spec!r}")
    return prefix_from_indices(diagram, indices)


# --- BVD text format ------------------------------------------------------
#
# Line-based, UTF-8, lines starting with '#' are comments:
#
#   BVD 1
#   DEPTH <K>
#   LEVEL <k> <num_vertices>          for every k = 0..K
#   LABEL <k> <vertex> "<string>"     optional, backslash escapes \" \\ \n
#   EDGE <k> <source> <order> <target>


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def _unescape(s: str, line: int) -> str:
    out = []
    i = 0
    while i < len(s):
        c = s[i]
        if c == "\\":
            if i + 1 >= len(s):
                raise BVDParseError(line, "dangling backslash in label")
            nxt = s[i + 1]
            if nxt == "n":
                out.append("\n")
            elif nxt in ('"', "\\"):
                out.append(nxt)
            else:
                raise BVDParseError(line, f"unknown escape \\{nxt}")
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def serialize(diagram: OrderedBratteliDiagram) -> str:
    lines = ["BVD 1", f"DEPTH {diagram.depth}"]
    for k, n in enumerate(diagram.level_sizes):
        lines.append(f"LEVEL {k} {n}")
    for (k, v) in sorted(diagram.labels):
        lines.append(f'LABEL {k} {v} "{_escape(diagram.labels[(k, v)])}"')
    for k in range(1, diagram.depth + 1):
        for e in diagram.edges_at(k):
            lines.append(f"EDGE {k} {e.source} {e.order} {e.target}")
    return "\n".join(lines) + "\n"


def _int_fields(parts: list[str], n: int, lineno: int, what: str) -> list[int]:
    if len(parts) != n:
        raise BVDParseError(lineno, f"{what}: expected {n} fields, got {len(parts)}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise BVDParseError(lineno, f"{what}: non-integer field") from None


def deserialize(text: str) -> OrderedBratteliDiagram:
    """Parse BVD text; raises :class:`BVDParseError` or, for a structurally
    invalid diagram, :class:`DiagramValidationError`."""
    depth: int | None = None
    sizes: dict[int, int] = {}
    labels: dict[tuple[int, int], str] = {}
    edges: list[Edge] = []
    header_seen = False
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != "BVD 1":
                raise BVDParseError(lineno, f"expected 'BVD 1' header, got {line!r}")
            header_seen = True
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "DEPTH":
            if depth is not None:
                raise BVDParseError(lineno, "duplicate DEPTH")
            (depth,) = _int_fields(tokens[1:], 1, lineno, "DEPTH")
            if depth < 0:
                raise BVDParseError(lineno, f"negative depth {depth}")
        elif kind == "LEVEL":
            if depth is None:
                raise BVDParseError(lineno, "LEVEL before DEPTH")
            k, n = _int_fields(tokens[1:], 2, lineno, "LEVEL")
            if not 0 <= k <= depth:
                raise BVDParseError(lineno, f"level {k} outside 0..{depth}")
            if k in sizes:
                raise BVDParseError(lineno, f"duplicate LEVEL {k}")
            if n < 0:
                raise BVDParseError(lineno, f"negative vertex count {n}")
            sizes[k] = n
        elif kind == "LABEL":
            if depth is None:
                raise BVDParseError(lineno, "LABEL before DEPTH")
            head = line.split(None, 3)
            if len(head) != 4:
                raise BVDParseError(lineno, "LABEL: expected level, vertex and quoted string")
            k, v = _int_fields(head[1:3], 2, lineno, "LABEL")
            if k not in sizes:
                raise BVDParseError(lineno, f"LABEL references undeclared level {k}")
            if not 0 <= v < sizes[k]:
                raise BVDParseError(lineno, f"LABEL references nonexistent vertex {v} of V_{k}")
            quoted = head[3].strip()
            if len(quoted) < 2 or not quoted.startswith('"') or not quoted.endswith('"'):
                raise BVDParseError(lineno, "LABEL string must be double-quoted")
            labels[(k, v)] = _unescape(quoted[1:-1], lineno)
        elif kind == "EDGE":
            if depth is None:
                raise BVDParseError(lineno, "EDGE before DEPTH")
            k, s, o, t = _int_fields(tokens[1:], 4, lineno, "EDGE")
            if not 1 <= k <= depth:
                raise BVDParseError(lineno, f"edge level {k} outside 1..{depth}")
            if k not in sizes or (k - 1) not in sizes:
                raise BVDParseError(lineno, f"EDGE before LEVEL declarations for {k} and {k - 1}")
            if not 0 <= s < sizes[k]:
                raise BVDParseError(lineno, f"EDGE references nonexistent source vertex {s} of V_{k}")
            if not 0 <= t < sizes[k - 1]:
                raise BVDParseError(lineno, f"EDGE references nonexistent target vertex {t} of V_{k - 1}")
            if o < 0:
                raise BVDParseError(lineno, f"negative edge order {o}")
            edges.append(Edge(k, s, o, t))
        else:
            raise BVDParseError(lineno, f"unknown record {kind!r}")
    if not header_seen:
        raise BVDParseError(max(lineno, 1), "missing 'BVD 1' header")
    if depth is None:
        raise BVDParseError(max(lineno, 1), "missing DEPTH")
    for k in range(depth + 1):
        if k not in sizes:
            raise BVDParseError(max(lineno, 1), f"missing LEVEL {k}")
    diagram = OrderedBratteliDiagram([sizes[k] for k in range(depth + 1)], edges, labels)
    violations = diagram.validate()
    if violations:
        raise DiagramValidationError(violations)
    return diagram


def to_dot(diagram: OrderedBratteliDiagram) -> str:
    """DOT rendering: one rank per level, root on top, edges labeled by order."""
    def dot_escape(s: str) -> str:
        return s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")

    lines = ["digraph bratteli {", "  rankdir=BT;", "  node [shape=circle];"]
    for k in range(diagram.depth + 1):
        names = " ".join(f"n{k}_{i};" for i in range(diagram.level_size(k)))
        lines.append(f"  {{ rank=same; {names} }}")
    for k in range(diagram.depth + 1):
        for i in range(diagram.level_size(k)):
            text = diagram.label(k, i)
            if text is None:
                text = f"{k}:{i}"
            lines.append(f'  n{k}_{i} [label="{dot_escape(text)}"];')
    for k in range(1, diagram.depth + 1):
        for e in diagram.edges_at(k):
            lines.append(f'  n{k}_{e.source} -> n{k - 1}_{e.target} [label="{e.order}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
