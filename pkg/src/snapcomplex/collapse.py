"""Discrete collapses of snapshot complexes.

The central routine removes, pair by pair, every simplex whose row-0
ghosts are ``∅`` or ``{pivot}``; what survives is the part of the
boundary not facing the pivot.  The removal order is organised around
the fact that a coface never has more row-0 ghosts than its faces, so
classes with fewer absorbed processes can always go first.  A full
collapse of the whole complex replays that routine once per row-0 ghost
set, from the top facets all the way down to the final vertex.

Every sequence produced here can be replayed and checked move by move
with :func:`validate_collapse`.
"""

from __future__ import annotations

import itertools
from collections import Counter as Multiset
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .complexes import Complex, build
from .counters import RoundCounter
from .errors import CollapseStalledError
from .strata import delta_inverse, rho
from .witness import WitnessStructure

Builder = Callable[[RoundCounter], Complex]


@dataclass(frozen=True)
class CollapseStep:
    """One elementary collapse: drop ``free`` together with ``cofacet``."""

    free: WitnessStructure
    cofacet: WitnessStructure
    stage: str

    def to_json_obj(self) -> dict:
        return {
            "free": self.free.encode(),
            "cofacet": self.cofacet.encode(),
            "stage": self.stage,
        }


@dataclass(frozen=True)
class CollapseSequence:
    """An ordered list of elementary collapses over one counter."""

    counter: RoundCounter
    kind: str
    steps: tuple[CollapseStep, ...]
    pivot: int | None = None

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def stage_counts(self) -> dict[str, int]:
        counts: Multiset[str] = Multiset(step.stage for step in self.steps)
        return dict(sorted(counts.items()))

    @property
    def fallback_count(self) -> int:
        return sum(1 for step in self.steps if step.stage == "greedy-fallback")

    def to_json_obj(self) -> dict:
        return {
            "counter": self.counter.to_json_obj(),
            "kind": self.kind,
            "pivot": self.pivot,
            "stage_counts": self.stage_counts,
            "steps": [step.to_json_obj() for step in self.steps],
        }


def _scan_order(sigma: WitnessStructure) -> tuple[int, str]:
    return (sigma.dim, sigma.encode())


def _scan_label(sigma: WitnessStructure, pivot: int) -> str:
    """Stage tag for a residue pair, read off the free face's round-1 row."""
    if sigma.t == 0:
        return "stage3"
    row = sigma.witness_row(1) | sigma.ghost_row(1)
    return "stage2" if row - {pivot} else "stage3"


def _ctrb_steps(
    counter: RoundCounter,
    pivot: int,
    builder: Builder,
    memo: dict[tuple[RoundCounter, int], tuple[CollapseStep, ...]],
) -> tuple[CollapseStep, ...]:
    key = (counter, pivot)
    if key not in memo:
        memo[key] = tuple(_compute_ctrb(counter, pivot, builder, memo))
    return memo[key]


def _compute_ctrb(
    counter: RoundCounter,
    pivot: int,
    builder: Builder,
    memo: dict[tuple[RoundCounter, int], tuple[CollapseStep, ...]],
) -> list[CollapseStep]:
    support = counter.support
    if pivot not in support:
        raise ValueError(f"pivot {pivot} is outside the support of {counter.to_text()!r}")
    active = counter.active

    if not active:
        # The complex is the full simplex on the (all-passive) support.
        free = WitnessStructure(((support - {pivot}, frozenset({pivot})),))
        top = WitnessStructure(((support, frozenset()),))
        return [CollapseStep(free, top, "stage3")]

    steps: list[CollapseStep] = []

    # Stage one: everything whose round-1 row avoids the pivot is removed
    # by translating the same collapse from a smaller complex.  Classes
    # are keyed by the exact round-1 row (witnesses S∖A, ghosts A); a
    # coface can only sit in a class with strictly fewer ghosts, so
    # running the pairs in order of |A| keeps every move legal.
    others = sorted(active - {pivot})
    pairs: list[tuple[frozenset[int], frozenset[int]]] = []
    for size in range(1, len(others) + 1):
        for sel in itertools.combinations(others, size):
            for a_size in range(size):
                for absorbed in itertools.combinations(sel, a_size):
                    pairs.append((frozenset(sel), frozenset(absorbed)))
    pairs.sort(key=lambda sa: (len(sa[1]), sorted(sa[0]), sorted(sa[1])))
    for sel, absorbed in pairs:
        sub_counter = counter.restrict(sel, absorbed)
        for step in _ctrb_steps(sub_counter, pivot, builder, memo):
            steps.append(
                CollapseStep(
                    rho(step.free, sel, absorbed),
                    rho(step.cofacet, sel, absorbed),
                    "stage1",
                )
            )
    removed = {s for step in steps for s in (step.free, step.cofacet)}

    # Stage two: the residue, where the pivot itself shows up in round 1.
    complex_ = builder(counter)
    pending: set[WitnessStructure] = set()
    for sigma in complex_.simplices:
        if (
            sigma.t >= 1
            and not sigma.ghost_row(0)
            and pivot in (sigma.witness_row(1) | sigma.ghost_row(1))
        ):
            pending.add(sigma)
    if active == {pivot}:
        pending.add(WitnessStructure(((support - {pivot}, frozenset({pivot})),)))

    while pending:
        chosen: CollapseStep | None = None
        for sigma in sorted(pending, key=_scan_order):
            cofaces = [t for t in complex_.proper_cofaces(sigma) if t not in removed]
            if len(cofaces) == 1 and cofaces[0] in pending:
                chosen = CollapseStep(sigma, cofaces[0], _scan_label(sigma, pivot))
                break
        if chosen is None:
            for sigma in sorted(pending, key=_scan_order):
                cofaces = [t for t in complex_.proper_cofaces(sigma) if t not in removed]
                if len(cofaces) == 1:
                    chosen = CollapseStep(sigma, cofaces[0], "greedy-fallback")
                    break
        if chosen is None:
            raise CollapseStalledError(
                f"collapse stalled over {counter.to_text()!r} with "
                f"{len(pending)} simplices unmatched"
            )
        steps.append(chosen)
        removed.add(chosen.free)
        removed.add(chosen.cofacet)
        pending.discard(chosen.free)
        pending.discard(chosen.cofacet)
    return steps


def _cached_builder(complex_: Complex) -> Builder:
    cache: dict[RoundCounter, Complex] = {complex_.counter: complex_}

    def builder(counter: RoundCounter) -> Complex:
        if counter not in cache:
            cache[counter] = build(counter)
        return cache[counter]

    return builder


def collapse_to_relative_boundary(complex_: Complex, pivot: int) -> CollapseSequence:
    """Collapse away every simplex whose row-0 ghosts are ``∅`` or ``{pivot}``.

    The survivors form the boundary minus the open star of the
    pivot-facing side: exactly the simplices with some other row-0
    ghost.  Raises :class:`CollapseStalledError` if the residue scan
    cannot finish.
    """
    if pivot not in complex_.counter.support:
        raise ValueError(f"pivot {pivot} is outside the support")
    memo: dict[tuple[RoundCounter, int], tuple[CollapseStep, ...]] = {}
    steps = _ctrb_steps(complex_.counter, pivot, _cached_builder(complex_), memo)
    return CollapseSequence(
        counter=complex_.counter, kind="relative-boundary", steps=steps, pivot=pivot
    )


def relative_boundary_remainder(
    complex_: Complex, pivot: int
) -> frozenset[WitnessStructure]:
    """The simplices :func:`collapse_to_relative_boundary` must leave behind."""
    return frozenset(
        s
        for s in complex_.simplices
        if s.ghost_row(0) not in (frozenset(), frozenset({pivot}))
    )


def collapse_all(complex_: Complex) -> CollapseSequence:
    """Collapse the whole complex, empty simplex included, to nothing.

    Simplices are matched in phases by their row-0 ghost set minus the
    pivot; each phase replays the relative-boundary collapse of the
    complex with those ghosts deleted.  Phases run smallest ghost set
    first, which keeps cofaces ahead of their faces.
    """
    counter = complex_.counter
    support = counter.support
    if not support:
        raise ValueError("cannot collapse a complex over an empty counter")
    pivot = min(support)
    builder = _cached_builder(complex_)
    memo: dict[tuple[RoundCounter, int], tuple[CollapseStep, ...]] = {}
    steps: list[CollapseStep] = []
    rest = sorted(support - {pivot})
    phases = []
    for size in range(len(rest) + 1):
        for dropped in itertools.combinations(rest, size):
            phases.append(frozenset(dropped))
    for dropped in phases:
        for step in _ctrb_steps(counter.delete(dropped), pivot, builder, memo):
            if dropped:
                steps.append(
                    CollapseStep(
                        delta_inverse(step.free, dropped),
                        delta_inverse(step.cofacet, dropped),
                        "recursive",
                    )
                )
            else:
                steps.append(step)
    return CollapseSequence(counter=counter, kind="full", steps=tuple(steps), pivot=pivot)


def greedy_collapse(complex_: Complex) -> CollapseSequence:
    """Collapse by always taking the lowest free pair available.

    Blind but deterministic; useful as an independent cross-check on
    small complexes.  Stops when no free pair remains.
    """
    remaining = set(complex_.simplices)
    steps: list[CollapseStep] = []
    while True:
        chosen: CollapseStep | None = None
        for sigma in sorted(remaining, key=WitnessStructure.encode):
            cofaces = [t for t in complex_.proper_cofaces(sigma) if t in remaining]
            if len(cofaces) == 1:
                chosen = CollapseStep(sigma, cofaces[0], "greedy-fallback")
                break
        if chosen is None:
            break
        steps.append(chosen)
        remaining.discard(chosen.free)
        remaining.discard(chosen.cofacet)
    return CollapseSequence(
        counter=complex_.counter, kind="greedy", steps=tuple(steps), pivot=None
    )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of replaying a collapse sequence move by move."""

    ok: bool
    checked_steps: int
    stage_counts: dict[str, int] = field(default_factory=dict)
    remainder: frozenset[WitnessStructure] = frozenset()
    violation: str | None = None

    def to_json_obj(self) -> dict:
        return {
            "ok": self.ok,
            "checked_steps": self.checked_steps,
            "stage_counts": dict(sorted(self.stage_counts.items())),
            "remainder_size": len(self.remainder),
            "violation": self.violation,
        }


def validate_collapse(
    complex_: Complex,
    sequence: CollapseSequence,
    expected_remainder: Iterable[WitnessStructure] | None = None,
) -> ValidationReport:
    """Replay ``sequence`` on ``complex_`` and check every move.

    A move is legal when the free face is still present with the stated
    cofacet as its one remaining proper coface, one dimension up and
    maximal.  If ``expected_remainder`` is given the survivors must
    match it exactly.
    """
    remaining = set(complex_.simplices)
    counts: Multiset[str] = Multiset()

    def failure(index: int, message: str) -> ValidationReport:
        return ValidationReport(
            ok=False,
            checked_steps=index,
            stage_counts=dict(counts),
            remainder=frozenset(remaining),
            violation=f"step {index}: {message}",
        )

    for index, step in enumerate(sequence.steps):
        free, cofacet = step.free, step.cofacet
        if free not in remaining:
            return failure(index, f"free face {free.encode()} is not present")
        if cofacet not in remaining:
            return failure(index, f"cofacet {cofacet.encode()} is not present")
        live = [t for t in complex_.proper_cofaces(free) if t in remaining]
        if live != [cofacet]:
            return failure(
                index,
                f"{free.encode()} has {len(live)} remaining cofaces, "
                f"expected exactly {cofacet.encode()}",
            )
        if cofacet.dim != free.dim + 1:
            return failure(index, f"{cofacet.encode()} is not one dimension up")
        if any(t in remaining for t in complex_.proper_cofaces(cofacet)):
            return failure(index, f"cofacet {cofacet.encode()} is not maximal")
        remaining.discard(free)
        remaining.discard(cofacet)
        counts[step.stage] += 1

    if expected_remainder is not None:
        expected = frozenset(expected_remainder)
        if frozenset(remaining) != expected:
            extra = sorted(s.encode() for s in remaining - expected)[:3]
            missing = sorted(s.encode() for s in expected - remaining)[:3]
            return ValidationReport(
                ok=False,
                checked_steps=len(sequence.steps),
                stage_counts=dict(counts),
                remainder=frozenset(remaining),
                violation=f"remainder mismatch: unexpected {extra}, missing {missing}",
            )
    return ValidationReport(
        ok=True,
        checked_steps=len(sequence.steps),
        stage_counts=dict(counts),
        remainder=frozenset(remaining),
        violation=None,
    )
