"""Layered execution schedules and per-process views.

A schedule is an ordered sequence of nonempty concurrency classes; each
process must appear in exactly as many layers as its round count.  The
facet encoding and the view computation route through the witness-structure
machinery, which this module treats as the execution semantics.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from itertools import combinations

from .counters import RoundCounter
from .errors import ComplexTooLargeError
from .witness import WitnessStructure, ghost

Schedule = tuple[frozenset[int], ...]


def is_valid_schedule(s: Sequence[frozenset[int]], r: RoundCounter) -> bool:
    if any(not layer for layer in s):
        return False
    if any(not layer <= r.active for layer in s):
        return False
    return all(sum(1 for layer in s if p in layer) == r[p] for p in r.support)


def enumerate_schedules(
    r: RoundCounter, *, max_schedules: int | None = None
) -> Iterator[Schedule]:
    """Yield every layered schedule of ``r`` (left to right, with
    remaining-multiplicity pruning)."""
    produced = 0

    def walk(remaining: dict[int, int]) -> Iterator[Schedule]:
        live = sorted(p for p, c in remaining.items() if c > 0)
        if not live:
            yield ()
            return
        for k in range(1, len(live) + 1):
            for chosen in combinations(live, k):
                layer = frozenset(chosen)
                rest = {p: c - 1 if p in layer else c for p, c in remaining.items()}
                for tail in walk(rest):
                    yield (layer,) + tail

    for schedule in walk(dict(r)):
        produced += 1
        if max_schedules is not None and produced > max_schedules:
            raise ComplexTooLargeError(max_schedules, "schedule cap exceeded")
        yield schedule


def schedule_count(r: RoundCounter) -> int:
    return sum(1 for _ in enumerate_schedules(r))


def to_facet(s: Sequence[frozenset[int]], r: RoundCounter) -> WitnessStructure:
    """The facet indexed by a schedule: full support in row 0, one witness
    row per layer."""
    if not is_valid_schedule(tuple(s), r):
        raise ValueError("not a valid schedule for the counter")
    rows = [(r.support, frozenset())]
    rows.extend((frozenset(layer), frozenset()) for layer in s)
    return WitnessStructure(rows)


def views(s: Sequence[frozenset[int]], r: RoundCounter) -> dict[int, WitnessStructure]:
    """The vertex seen by each process after executing the schedule.

    The view of ``p`` is the color-``p`` vertex of the schedule's facet,
    i.e. the facet with every other process ghosted.
    """
    facet = to_facet(s, r)
    active = facet.active_set
    return {p: ghost(facet, active - {p}) for p in active}


def schedule_to_json_obj(s: Sequence[frozenset[int]]) -> list[list[int]]:
    return [sorted(layer) for layer in s]


def schedule_from_json_obj(obj: Sequence[Sequence[int]]) -> Schedule:
    return tuple(frozenset(layer) for layer in obj)
