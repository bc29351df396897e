"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's own algorithms: the
marker oracle uses python string comparison as the block order, and the
successor oracle sorts explicitly enumerated prefixes.
"""

from __future__ import annotations

import pytest

from bratteli.diagram import OrderedBratteliDiagram, PathPrefix
from bratteli.trapezoids import WidenSchedule, build_diagram


def oracle_row_positions(word: str, k: int) -> set[int]:
    """Marker rule via lexicographic maxima: a marker sits at n iff the
    block at n is >= every block starting in some length-k window of
    starting positions containing n."""
    length = len(word)
    lo, hi = k - 1, length - 2 * k + 1
    positions = set()
    for n in range(lo, hi + 1):
        mine = word[n:n + k]
        for i in range(n - k + 1, n + 1):
            if all(mine >= word[j:j + k] for j in range(i, i + k)):
                positions.add(n)
                break
    return positions


def enumerate_prefixes(diagram: OrderedBratteliDiagram, depth: int) -> list[PathPrefix]:
    """Recursive prefix enumeration, independent of vershik.all_prefixes."""
    if depth == 0:
        return [PathPrefix(diagram, ())]
    out = []
    for shorter in enumerate_prefixes(diagram, depth - 1):
        want = shorter.edges[-1].source if shorter.edges else 0
        for e in diagram.edges_at(depth):
            if e.target == want:
                out.append(PathPrefix(diagram, shorter.edges + (e,)))
    return out


def inverse_lex_key(p: PathPrefix) -> tuple[int, ...]:
    """Inverse lexicographic order = lexicographic on orders read deep-first."""
    return tuple(e.order for e in reversed(p.edges))


def oracle_successor(p: PathPrefix) -> PathPrefix | None:
    """Exhaustive successor: the minimum strictly-greater same-source prefix."""
    same = [q for q in enumerate_prefixes(p.diagram, p.depth)
            if q.edges[-1].source == p.edges[-1].source]
    same.sort(key=inverse_lex_key)
    i = same.index(p)
    return same[i + 1] if i + 1 < len(same) else None


@pytest.fixture(scope="session")
def fullshift3() -> OrderedBratteliDiagram:
    """Three-level full-shift diagram at a stabilized word length."""
    return build_diagram(3, WidenSchedule((1,)), 14)
