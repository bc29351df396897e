"""Trapezoid extraction from marked words and assembly of the full-shift
diagram.

A k-block is the segment between two consecutive row-k markers (both
boundary markers included).  A k-trapezoid is the rows-1..k column over a
k-block (its *core*) widened, for every schedule width w < k in decreasing
order, by one w-block rectangle on each side.  Vertices of the constructed
diagram are the trapezoids occurring anywhere in the binary full shift;
edges record the internal occurrences of level-k trapezoids inside level-
(k+1) trapezoids, ordered left to right (order 0 = leftmost).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .diagram import Edge, OrderedBratteliDiagram, PathPrefix
from .markers import MarkedWord, mark_all_rows


class InsufficientWindowError(ValueError):
    """The available window cannot determine the requested configuration."""


@dataclass(frozen=True)
class WidenSchedule:
    """Rectangle widths used to widen cores into trapezoids."""

    widths: tuple[int, ...] = (1,)

    def __post_init__(self):
        w = self.widths
        if not w:
            raise ValueError("schedule needs at least one width")
        if any(x < 1 for x in w):
            raise ValueError(f"widths must be >= 1, got {list(w)}")
        if any(a >= b for a, b in zip(w, w[1:])):
            raise ValueError(f"widths must be strictly increasing, got {list(w)}")

    def widths_below(self, level: int) -> tuple[int, ...]:
        return tuple(x for x in self.widths if x < level)

    @classmethod
    def parse(cls, text: str) -> "WidenSchedule":
        try:
            widths = tuple(int(x) for x in text.split(","))
        except ValueError:
            raise ValueError(f"malformed widths list {text!r}") from None
        return cls(widths)


@dataclass(frozen=True)
class TrapezoidRow:
    """One row of a trapezoid: cells starting at ``offset`` (core-left = 0)
    and the marker positions on the boundaries of that extent."""

    offset: int
    symbols: str
    markers: frozenset[int]


@dataclass(frozen=True)
class Trapezoid:
    """Translation-normalized multi-row configuration over a core block.

    ``rows[r-1]`` is row r; row ``level`` is the core row, whose left
    boundary marker sits at offset 0.  Equality and hashing use the full
    content.
    """

    level: int
    core_width: int
    rows: tuple[TrapezoidRow, ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")
        if not 1 <= self.core_width <= self.level:
            raise ValueError(f"core width {self.core_width} outside 1..{self.level}")
        if len(self.rows) != self.level:
            raise ValueError(f"expected {self.level} rows, got {len(self.rows)}")
        deep = self.rows[-1]
        if deep.offset != 0 or len(deep.symbols) != self.core_width:
            raise ValueError("core row must span exactly the core")
        if not {0, self.core_width} <= deep.markers:
            raise ValueError("core row must carry both boundary markers")
        for r, row in enumerate(self.rows, start=1):
            if set(row.symbols) - {"0", "1"}:
                raise ValueError("symbols must be over {0,1}")
            if any(not row.offset <= p <= row.offset + len(row.symbols) for p in row.markers):
                raise ValueError(f"row {r} markers outside its extent")
        for shallow, deeper in zip(self.rows, self.rows[1:]):
            if (deeper.offset < shallow.offset
                    or deeper.offset + len(deeper.symbols) > shallow.offset + len(shallow.symbols)):
                raise ValueError("row extents must nest downward")
            if not deeper.markers <= shallow.markers:
                raise ValueError("marker nesting violated between adjacent rows")

    def row(self, r: int) -> TrapezoidRow:
        if not 1 <= r <= self.level:
            raise IndexError(f"row {r} outside 1..{self.level}")
        return self.rows[r - 1]


def canonical_text(t: Trapezoid) -> str:
    """Canonical serialization used for hashing order and vertex labels."""
    lines = [f"T {t.level} {t.core_width}"]
    for r, row in enumerate(t.rows, start=1):
        marks = ",".join(str(p) for p in sorted(row.markers))
        lines.append(f"R {r} {row.offset} {row.symbols} M {marks}")
    return "\n".join(lines)


def trapezoid_from_text(text: str) -> Trapezoid:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("T "):
        raise ValueError("canonical trapezoid text must start with a T line")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError(f"malformed T line {lines[0]!r}")
    level, core_width = int(head[1]), int(head[2])
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) not in (5, 6) or parts[0] != "R" or parts[4] != "M":
            raise ValueError(f"malformed R line {ln!r}")
        marks = frozenset(int(x) for x in parts[5].split(",")) if len(parts) == 6 else frozenset()
        rows.append(TrapezoidRow(int(parts[2]), parts[3], marks))
    return Trapezoid(level, core_width, tuple(rows))


def render_trapezoid(t: Trapezoid) -> str:
    """Pictorial form matching the published listings: rows top-down, each
    cell preceded by '|' where a marker is drawn; only markers on the core
    range ``[0, core_width]`` are drawn."""
    base = t.rows[0].offset
    lines = []
    for row in t.rows:
        last = row.offset + len(row.symbols)
        buf = [" "] * (2 * (last - base) + 1)
        for i, sym in enumerate(row.symbols):
            p = row.offset + i
            if p in row.markers and 0 <= p <= t.core_width:
                buf[2 * (p - base)] = "|"
            buf[2 * (p - base) + 1] = sym
        if last in row.markers and 0 <= last <= t.core_width:
            buf[2 * (last - base)] = "|"
        lines.append("".join(buf))
    while all(ln.startswith(" ") for ln in lines if ln.strip()):
        lines = [ln[1:] for ln in lines]
    return "\n".join(ln.rstrip() for ln in lines)


# --- extraction ------------------------------------------------------------


class _Grid:
    """Read interface over a partially known symbol/marker plane.

    Reads outside the known ranges raise :class:`InsufficientWindowError`;
    extraction stays honest about what a finite window determines.
    """

    def __init__(self, depth: int):
        self.depth = depth
        self.symbols: list[dict[int, str]] = [dict() for _ in range(depth)]
        self.markers: list[set[int]] = [set() for _ in range(depth)]
        self.sym_range: list[tuple[int, int]] = [(0, -1)] * depth
        self.mark_range: list[tuple[int, int]] = [(0, -1)] * depth

    @classmethod
    def from_marked_word(cls, mw: MarkedWord, depth: int) -> "_Grid":
        if depth > mw.depth:
            raise ValueError(f"marked word has {mw.depth} rows, need {depth}")
        g = cls(depth)
        for r in range(1, depth + 1):
            row = mw.row(r)
            g.symbols[r - 1] = {i: c for i, c in enumerate(mw.word)}
            g.sym_range[r - 1] = (0, len(mw.word) - 1)
            g.markers[r - 1] = set(row.positions)
            g.mark_range[r - 1] = (row.lo, row.hi)
        return g

    @classmethod
    def from_trapezoid(cls, t: Trapezoid) -> "_Grid":
        g = cls(t.level)
        for r in range(1, t.level + 1):
            row = t.row(r)
            g.symbols[r - 1] = {row.offset + i: c for i, c in enumerate(row.symbols)}
            g.sym_range[r - 1] = (row.offset, row.offset + len(row.symbols) - 1)
            g.markers[r - 1] = set(row.markers)
            g.mark_range[r - 1] = (row.offset, row.offset + len(row.symbols))
        return g

    def symbol(self, r: int, p: int) -> str:
        lo, hi = self.sym_range[r - 1]
        if not lo <= p <= hi:
            raise InsufficientWindowError(f"row {r} cell {p} outside the known range [{lo}, {hi}]")
        return self.symbols[r - 1][p]

    def is_marker(self, r: int, p: int) -> bool:
        lo, hi = self.mark_range[r - 1]
        if not lo <= p <= hi:
            raise InsufficientWindowError(
                f"row {r} marker bit at {p} outside the determined range [{lo}, {hi}]")
        return p in self.markers[r - 1]


def _extract(grid: _Grid, start: int, end: int, level: int, schedule: WidenSchedule) -> Trapezoid:
    """Extract the level-``level`` trapezoid whose core is the block
    ``[start, end]``, normalized to core-left = 0."""
    if end - start < 1:
        raise ValueError(f"empty core block ({start}, {end})")
    if grid.depth < level:
        raise ValueError(f"grid has {grid.depth} rows, need {level}")
    if not grid.is_marker(level, start) or not grid.is_marker(level, end):
        raise ValueError(f"block ends ({start}, {end}) are not row-{level} markers")
    for m in range(start + 1, end):
        if grid.is_marker(level, m):
            raise ValueError(f"block ({start}, {end}) contains an interior row-{level} marker")
    left = [start] * (level + 1)
    right = [end - 1] * (level + 1)
    for w in sorted(schedule.widths_below(level), reverse=True):
        edge = left[w]
        if not grid.is_marker(w, edge):
            raise ValueError(f"widening boundary {edge} is not a row-{w} marker")
        p = edge - 1
        while not grid.is_marker(w, p):
            p -= 1
        for r in range(1, w + 1):
            left[r] = p
        edge = right[w] + 1
        if not grid.is_marker(w, edge):
            raise ValueError(f"widening boundary {edge} is not a row-{w} marker")
        q = edge + 1
        while not grid.is_marker(w, q):
            q += 1
        for r in range(1, w + 1):
            right[r] = q - 1
    rows = []
    for r in range(1, level + 1):
        symbols = "".join(grid.symbol(r, p) for p in range(left[r], right[r] + 1))
        marks = frozenset(p - start for p in range(left[r], right[r] + 2)
                          if grid.is_marker(r, p))
        rows.append(TrapezoidRow(left[r] - start, symbols, marks))
    return Trapezoid(level, end - start, tuple(rows))


def k_blocks(mw: MarkedWord, k: int) -> list[tuple[int, int]]:
    """Consecutive row-k marker pairs inside the determined range."""
    positions = sorted(mw.row(k).positions)
    if len(positions) < 2:
        raise InsufficientWindowError(
            f"fewer than two determined row-{k} markers (got {len(positions)})")
    return list(zip(positions, positions[1:]))


def trapezoid_at(mw: MarkedWord, block: tuple[int, int], k: int,
                 schedule: WidenSchedule = WidenSchedule()) -> Trapezoid:
    """The level-k trapezoid over one k-block of a marked word."""
    return _extract(_Grid.from_marked_word(mw, k), block[0], block[1], k, schedule)


def dependence_bound(k: int, schedule: WidenSchedule = WidenSchedule()) -> tuple[int, int, int]:
    """``(pad_left, pad_right, min_word_length)`` for level-k extraction.

    ``pad_left``/``pad_right`` are the cells needed around a core so that
    the whole trapezoid, including every marker determination it reads, is
    a function of that window alone.
    """
    margin = sum(schedule.widths_below(k))
    pad_left = margin + k - 1
    pad_right = margin + 2 * k - 1
    return pad_left, pad_right, k + pad_left + pad_right + 1


def enumerate_level(k: int, schedule: WidenSchedule = WidenSchedule(),
                    word_length: int = 18, backend: str | None = None) -> tuple[Trapezoid, ...]:
    """All level-k trapezoids occurring in the binary full shift.

    Exhausts every word of ``word_length`` cells; complete because any
    trapezoid is a function of a bounded window and every binary pattern of
    that size occurs among the enumerated words.  Result is sorted by
    canonical serialization, which fixes vertex index assignment.
    """
    if k < 1:
        raise ValueError(f"level must be >= 1, got {k}")
    pad_left, pad_right, min_len = dependence_bound(k, schedule)
    if word_length < min_len:
        raise InsufficientWindowError(
            f"word length {word_length} below the dependence bound {min_len} for level {k}")
    keys = _kernels.enumerate_block_window_keys(word_length, k, pad_left, pad_right,
                                                backend=backend)
    found: set[Trapezoid] = set()
    for key in keys.tolist():
        cw, window = _kernels.decode_key(key, pad_left, pad_right)
        mw = mark_all_rows(window, k)
        found.add(_extract(_Grid.from_marked_word(mw, k), pad_left, pad_left + cw, k, schedule))
    return tuple(sorted(found, key=canonical_text))


def decompose(trap: Trapezoid, level_set, schedule: WidenSchedule = WidenSchedule()
              ) -> tuple[list[Trapezoid], tuple[Trapezoid | None, Trapezoid | None]]:
    """Split a level-(k+1) trapezoid into its internal level-k trapezoids,
    listed left to right, plus the two external ones where the content
    window determines them (``None`` where it does not).

    Every internal trapezoid must belong to ``level_set``; a miss means the
    enumeration was incomplete.
    """
    if trap.level < 2:
        raise ValueError("level-1 trapezoids have no decomposition")
    k = trap.level - 1
    grid = _Grid.from_trapezoid(trap)
    cuts = sorted(p for p in trap.row(k).markers if 0 <= p <= trap.core_width)
    if not cuts or cuts[0] != 0 or cuts[-1] != trap.core_width:
        raise ValueError("core boundaries are missing from the row below the core")
    internal = [_extract(grid, a, b, k, schedule) for a, b in zip(cuts, cuts[1:])]
    members = set(level_set)
    for t in internal:
        if t not in members:
            raise ValueError(
                f"internal trapezoid not found in the level-{k} set:\n{canonical_text(t)}")
    external: list[Trapezoid | None] = []
    for scan_from, step in ((-1, -1), (trap.core_width + 1, 1)):
        try:
            p = scan_from
            while not grid.is_marker(k, p):
                p += step
            a, b = (p, 0) if step < 0 else (trap.core_width, p)
            external.append(_extract(grid, a, b, k, schedule))
        except InsufficientWindowError:
            external.append(None)
    return internal, (external[0], external[1])


def build_diagram(levels: int, schedule: WidenSchedule = WidenSchedule(),
                  word_length: int = 18, backend: str | None = None) -> OrderedBratteliDiagram:
    """The ordered diagram whose level-k vertices are all k-trapezoids and
    whose edges are internal occurrences (order 0 = leftmost).

    Vertex labels carry the canonical trapezoid text, so the diagram
    round-trips through BVD serialization with full geometric content.
    """
    if levels < 1:
        raise ValueError(f"need at least one level, got {levels}")
    level_traps = [enumerate_level(k, schedule, word_length, backend=backend)
                   for k in range(1, levels + 1)]
    sizes = [1] + [len(ts) for ts in level_traps]
    labels = {}
    for k, ts in enumerate(level_traps, start=1):
        for i, t in enumerate(ts):
            labels[(k, i)] = canonical_text(t)
    edges = [Edge(1, i, 0, 0) for i in range(len(level_traps[0]))]
    for k in range(2, levels + 1):
        index = {t: i for i, t in enumerate(level_traps[k - 2])}
        for si, big in enumerate(level_traps[k - 1]):
            internal, _ = decompose(big, level_traps[k - 2], schedule)
            for occ, small in enumerate(internal):
                edges.append(Edge(k, si, occ, index[small]))
    return OrderedBratteliDiagram(sizes, edges, labels)


# --- path-to-window correspondence -----------------------------------------


@dataclass(frozen=True)
class ArrayWindow:
    """The portion of an array a path prefix determines.

    Rows are in coordinates where the distinguished origin cell is 0;
    ``core_offsets[k-1]`` is the core-left coordinate of the level-k
    trapezoid along the path.
    """

    rows: tuple[TrapezoidRow, ...]
    core_offsets: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.rows)

    def symbol_at(self, r: int, p: int) -> str | None:
        row = self.rows[r - 1]
        if row.offset <= p < row.offset + len(row.symbols):
            return row.symbols[p - row.offset]
        return None

    def marker_at(self, r: int, p: int) -> bool | None:
        row = self.rows[r - 1]
        if row.offset <= p <= row.offset + len(row.symbols):
            return p in row.markers
        return None


def path_to_window(diagram: OrderedBratteliDiagram, prefix: PathPrefix,
                   schedule: WidenSchedule = WidenSchedule()) -> ArrayWindow:
    """Resolve a prefix of a trapezoid-labeled diagram into the array window
    it determines, with the origin cell at coordinate 0.

    The chain of internal-occurrence indices pins each level's trapezoid
    inside the next; the level-1 core cell is the origin.  Raises if the
    labels are inconsistent with the edge structure.
    """
    depth = prefix.depth
    if depth < 1:
        raise ValueError("empty prefix determines no window")
    traps = []
    for e in prefix.edges:
        text = diagram.label(e.level, e.source)
        if text is None:
            raise ValueError(f"vertex {e.source} of V_{e.level} carries no trapezoid label")
        traps.append(trapezoid_from_text(text))
    positions = {depth: 0}
    for k in range(depth, 1, -1):
        big = traps[k - 1]
        occ = prefix.edges[k - 1].order
        cuts = sorted(p for p in big.row(k - 1).markers if 0 <= p <= big.core_width)
        if occ >= len(cuts) - 1:
            raise ValueError(f"edge order {occ} exceeds the {len(cuts) - 1} internal "
                             f"occurrences of the level-{k} trapezoid")
        got = _extract(_Grid.from_trapezoid(big), cuts[occ], cuts[occ + 1], k - 1, schedule)
        if got != traps[k - 2]:
            raise ValueError(f"label inconsistency at level {k - 1}: occurrence {occ} of the "
                             "parent trapezoid does not match the vertex label")
        positions[k - 1] = positions[k] + cuts[occ]
    origin = positions[1]
    deep = traps[depth - 1]
    core_left = positions[depth] - origin
    assert core_left <= 0 <= core_left + deep.core_width - 1, "origin escaped the deepest core"
    rows = tuple(TrapezoidRow(row.offset - origin, row.symbols,
                              frozenset(m - origin for m in row.markers))
                 for row in deep.rows)
    return ArrayWindow(rows, tuple(positions[k] - origin for k in range(1, depth + 1)))


def window_shift_mismatches(before: ArrayWindow, after: ArrayWindow,
                            shift: int = 1) -> list[str]:
    """Cells/markers where ``after`` disagrees with ``before`` moved left by
    ``shift`` (i.e. ``after[r, p]`` vs ``before[r, p + shift]``), over the
    overlap of the two windows.  Empty list = perfect agreement."""
    problems = []
    for r in range(1, min(before.depth, after.depth) + 1):
        arow = after.rows[r - 1]
        for p in range(arow.offset, arow.offset + len(arow.symbols)):
            a = after.symbol_at(r, p)
            b = before.symbol_at(r, p + shift)
            if a is not None and b is not None and a != b:
                problems.append(f"row {r} cell {p}: {a} != {b}")
        for p in range(arow.offset, arow.offset + len(arow.symbols) + 1):
            a = after.marker_at(r, p)
            b = before.marker_at(r, p + shift)
            if a is not None and b is not None and a != b:
                problems.append(f"row {r} marker {p}: {a} != {b}")
    return problems
