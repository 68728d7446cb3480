"""Independent reference computations that pin expected test values.

Everything in this module is written directly from the plain combinatorial
definitions and never imports the package under test, so its outputs can
serve as oracles for the engine.
"""

from __future__ import annotations

import itertools
from functools import cache
from math import comb

ColoredView = tuple[int, frozenset[int]]


def fubini(n: int) -> int:
    """Number of ordered set partitions of an n-element set."""
    if n == 0:
        return 1
    return sum(comb(n, k) * fubini(n - k) for k in range(1, n + 1))


@cache
def _layered_count(remaining: tuple[tuple[int, int], ...]) -> int:
    if not remaining:
        return 1
    procs = [p for p, _ in remaining]
    total = 0
    for size in range(1, len(procs) + 1):
        for layer in itertools.combinations(procs, size):
            nxt = dict(remaining)
            for p in layer:
                nxt[p] -= 1
            total += _layered_count(
                tuple(sorted((p, c) for p, c in nxt.items() if c > 0))
            )
    return total


def layered_sequence_count(counts: dict[int, int]) -> int:
    """Count sequences of nonempty process sets in which process ``p``
    occurs in exactly ``counts[p]`` of the sets.

    These sequences are the layered executions of a round counter, so the
    result must equal the facet count of the corresponding complex.
    """
    return _layered_count(tuple(sorted((p, c) for p, c in counts.items() if c > 0)))


def chromatic_total(k: int) -> int:
    """Total number of simplices, the empty one included, of the chromatic
    subdivision of a simplex with ``k`` vertices."""
    if k == 0:
        return 1
    return 1 + sum(
        comb(k, j) * (2**j - 1) * chromatic_total(k - j) for j in range(1, k + 1)
    )


def _views_compatible(a: ColoredView, b: ColoredView) -> bool:
    (ca, va), (cb, vb) = a, b
    if ca == cb:
        return False
    if not (va <= vb or vb <= va):
        return False
    if ca in vb and not va <= vb:
        return False
    if cb in va and not vb <= va:
        return False
    return True


def subdivision_simplices(n: int) -> list[frozenset[ColoredView]]:
    """All simplices (including the empty one) of the chromatic subdivision
    of the n-simplex, as sets of (color, view) pairs.

    A view is a nonempty subset of the colors containing its own color; a
    collection of distinctly colored views forms a simplex when the views
    are pairwise ordered by inclusion and every view containing another's
    color also contains that entire view.
    """
    colors = range(n + 1)
    verts = [
        (c, frozenset(view))
        for c in colors
        for size in range(1, n + 2)
        for view in itertools.combinations(colors, size)
        if c in view
    ]
    out: list[frozenset[ColoredView]] = [frozenset()]
    for size in range(1, n + 2):
        for combo in itertools.combinations(verts, size):
            if all(
                _views_compatible(a, b) for a, b in itertools.combinations(combo, 2)
            ):
                out.append(frozenset(combo))
    return out


def subdivision_f_vector(n: int) -> tuple[int, ...]:
    counts = [0] * (n + 1)
    for simplex in subdivision_simplices(n):
        if simplex:
            counts[len(simplex) - 1] += 1
    return tuple(counts)
