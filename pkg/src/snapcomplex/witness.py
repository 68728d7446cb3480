"""Witness structures: the combinatorial records that index simplices.

A witness structure is a sequence of rows ``(W_i, G_i)``: ``W_i`` holds the
processes whose activity is witnessed in round ``i``, ``G_i`` the processes
whose last (passive) appearance is round ``i``.  Two presentations are kept:

* the *pair form* above, which is the storage and interchange form, and
* the *trace form* ``(active, ghost, traces)``, which records for every
  process the set of rounds it appears in and is the convenient form for
  stabilization.

Rows are addressed leniently: reading past the last row yields the empty
set, which is the convention used throughout the stratification code.
"""

from __future__ import annotations

import enum
import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

Row = tuple[frozenset[int], frozenset[int]]

# Raw input for one row: any pair of iterables of process ids.
RawRow = tuple[Iterable[int], Iterable[int]]


class Classification(enum.Enum):
    """Strength of a sequence of set pairs, weakest to strongest."""

    INVALID = "invalid"
    PRESTRUCTURE = "prestructure"
    STABLE = "stable"
    WITNESS = "witness"


def _normalize(rows: Iterable[RawRow]) -> tuple[Row, ...]:
    out = []
    for pair in rows:
        w, g = pair
        out.append((frozenset(w), frozenset(g)))
    return tuple(out)


def _structure_violation(rows: tuple[Row, ...]) -> str | None:
    """Return a description of the first violated prestructure condition."""
    if not rows:
        return "a witness structure needs at least one row"
    w0 = rows[0][0]
    for i, (w, g) in enumerate(rows):
        if i >= 1 and not (w <= w0 and g <= w0):
            return f"row {i} is not contained in row 0"
    for i, (_, gi) in enumerate(rows):
        for j in range(i, len(rows)):
            wj, gj = rows[j]
            if gi & wj:
                return f"ghost row {i} meets witness row {j}"
            if j > i and gi & gj:
                return f"ghost rows {i} and {j} overlap"
    return None


def validate(rows: Iterable[RawRow]) -> Classification:
    """Classify a raw sequence of set pairs.

    Returns the strongest satisfied class: ``WITNESS`` if every row past the
    first has a nonempty witness set, ``STABLE`` if at least the last one
    has, ``PRESTRUCTURE`` if only the containment/disjointness conditions
    hold, and ``INVALID`` otherwise.
    """
    normalized = _normalize(rows)
    if _structure_violation(normalized) is not None:
        return Classification.INVALID
    tail = [w for w, _ in normalized[1:]]
    if all(tail):
        return Classification.WITNESS
    if tail[-1]:
        return Classification.STABLE
    return Classification.PRESTRUCTURE


class WitnessStructure:
    """An immutable, validated prestructure in pair form."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[RawRow]):
        normalized = _normalize(rows)
        problem = _structure_violation(normalized)
        if problem is not None:
            raise ValueError(f"not a prestructure: {problem}")
        self._rows = normalized
        self._hash = hash(normalized)

    # -- basic accessors ----------------------------------------------------

    @property
    def rows(self) -> tuple[Row, ...]:
        return self._rows

    @property
    def t(self) -> int:
        """Index of the last row."""
        return len(self._rows) - 1

    def witness_row(self, i: int) -> frozenset[int]:
        """``W_i``, with out-of-range rows read as empty."""
        if 0 <= i <= self.t:
            return self._rows[i][0]
        return frozenset()

    def ghost_row(self, i: int) -> frozenset[int]:
        """``G_i``, with out-of-range rows read as empty."""
        if 0 <= i <= self.t:
            return self._rows[i][1]
        return frozenset()

    @property
    def support(self) -> frozenset[int]:
        """All participating processes: row 0 witnesses plus row 0 ghosts."""
        return self._rows[0][0] | self._rows[0][1]

    @property
    def ghost_union(self) -> frozenset[int]:
        """Processes ghosted in some row."""
        out: frozenset[int] = frozenset()
        for _, g in self._rows:
            out |= g
        return out

    @property
    def active_set(self) -> frozenset[int]:
        """Processes never ghosted; these are the colors of the simplex."""
        return self.support - self.ghost_union

    @property
    def dim(self) -> int:
        return len(self.active_set) - 1

    @property
    def is_empty(self) -> bool:
        """True for the dimension -1 simplex (no active processes)."""
        return not self.active_set

    @property
    def classification(self) -> Classification:
        return validate(self._rows)

    @property
    def is_stable(self) -> bool:
        return self.classification in (Classification.STABLE, Classification.WITNESS)

    @property
    def is_witness(self) -> bool:
        return self.classification is Classification.WITNESS

    def traces(self) -> dict[int, frozenset[int]]:
        """Round sets: ``traces()[p]`` is the set of rows mentioning ``p``."""
        acc: dict[int, set[int]] = {p: set() for p in self.support}
        for i, (w, g) in enumerate(self._rows):
            for p in w:
                acc[p].add(i)
            for p in g:
                acc[p].add(i)
        return {p: frozenset(s) for p, s in acc.items()}

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WitnessStructure):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "WitnessStructure") -> bool:
        # Deterministic total order: canonical encoding.
        return self.encode() < other.encode()

    def __repr__(self) -> str:
        body = ",".join(
            f"({sorted(w)},{sorted(g)})" for w, g in self._rows
        )
        return f"WitnessStructure([{body}])"

    # -- canonical encoding / JSON --------------------------------------------

    def encode(self) -> str:
        """Canonical string key: pair form with sorted sets, compact JSON."""
        return json.dumps(
            [[sorted(w), sorted(g)] for w, g in self._rows],
            separators=(",", ":"),
        )

    @classmethod
    def decode(cls, text: str) -> "WitnessStructure":
        return cls(json.loads(text))

    def to_json_obj(self) -> dict[str, list[list[list[int]]]]:
        return {"pairs": [[sorted(w), sorted(g)] for w, g in self._rows]}

    @classmethod
    def from_json_obj(cls, obj: Mapping[str, object]) -> "WitnessStructure":
        return cls(obj["pairs"])  # type: ignore[arg-type]


@dataclass(frozen=True)
class TraceForm:
    """The ``(active, ghost, traces)`` presentation of a prestructure."""

    active: frozenset[int]
    ghost: frozenset[int]
    traces: Mapping[int, frozenset[int]]

    def last(self, p: int) -> int:
        """Largest row in which ``p`` is witnessed (-1 if never)."""
        tr = self.traces[p]
        if p in self.ghost:
            inner = tr - {max(tr)}
            return max(inner) if inner else -1
        return max(tr)


def to_trace_form(sigma: WitnessStructure) -> TraceForm:
    return TraceForm(sigma.active_set, sigma.ghost_union, sigma.traces())


def from_trace_form(tf: TraceForm) -> WitnessStructure:
    """Rebuild the pair form.  Inverse of :func:`to_trace_form` on stable
    prestructures.

    An active process occupies ``W_i`` for every trace entry ``i``; a ghost
    occupies ``G_m`` at its last trace entry ``m`` and ``W_i`` before that.
    """
    if tf.active & tf.ghost:
        raise ValueError(f"active and ghost sets overlap: {sorted(tf.active & tf.ghost)}")
    if set(tf.traces) != set(tf.active | tf.ghost):
        raise ValueError("traces must cover exactly the active and ghost processes")
    for p, tr in tf.traces.items():
        if 0 not in tr:
            raise ValueError(f"trace of process {p} does not contain round 0")
        if any(i < 0 for i in tr):
            raise ValueError(f"trace of process {p} has a negative round")
    top = max((max(tr) for tr in tf.traces.values()), default=0)
    witnesses: list[set[int]] = [set() for _ in range(top + 1)]
    ghosts: list[set[int]] = [set() for _ in range(top + 1)]
    for p in tf.active:
        for i in tf.traces[p]:
            witnesses[i].add(p)
    for p in tf.ghost:
        m = max(tf.traces[p])
        ghosts[m].add(p)
        for i in tf.traces[p]:
            if i < m:
                witnesses[i].add(p)
    return WitnessStructure(zip(witnesses, ghosts))


def canonical_form(sigma: WitnessStructure) -> WitnessStructure:
    """Drop rows with empty witness sets, merging their ghosts forward.

    Requires a stable prestructure; the result is a witness structure and
    the operation is the identity on witness structures.
    """
    if not sigma.is_stable:
        raise ValueError("canonical form is defined for stable prestructures only")
    keep = [i for i in range(1, sigma.t + 1) if sigma.witness_row(i)]
    rows: list[Row] = [sigma.rows[0]]
    prev = 0
    for k in keep:
        merged: frozenset[int] = frozenset()
        for j in range(prev + 1, k + 1):
            merged |= sigma.ghost_row(j)
        rows.append((sigma.witness_row(k), merged))
        prev = k
    return WitnessStructure(rows)


def stabilize(sigma: WitnessStructure, hide: Iterable[int]) -> WitnessStructure:
    """Ghost the processes in ``hide`` and truncate unwitnessed activity.

    ``hide`` must consist of active processes.  Rows are cut at the last row
    whose witness set is not absorbed by ``hide`` and the existing ghosts
    (round 0 when no such row remains), and every trace is restricted
    accordingly.  The result is a stable prestructure.
    """
    hide = frozenset(hide)
    if not hide <= sigma.active_set:
        raise ValueError(
            f"cannot ghost {sorted(hide - sigma.active_set)}: not active in the structure"
        )
    absorbed = hide | sigma.ghost_union
    cut = max(
        (i for i in range(sigma.t + 1) if not sigma.witness_row(i) <= absorbed),
        default=0,
    )
    traces = sigma.traces()
    return from_trace_form(
        TraceForm(
            active=sigma.active_set - hide,
            ghost=sigma.ghost_union | hide,
            traces={p: frozenset(i for i in tr if i <= cut) for p, tr in traces.items()},
        )
    )


def ghost(sigma: WitnessStructure, hide: Iterable[int]) -> WitnessStructure:
    """Stabilize modulo ``hide`` and take the canonical form.

    This realizes the face of ``sigma`` obtained by forgetting the views of
    the processes in ``hide``; the dimension drops by exactly ``len(hide)``.
    """
    return canonical_form(stabilize(sigma, hide))
