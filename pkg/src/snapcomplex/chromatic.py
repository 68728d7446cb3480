"""Independent enumeration of the standard chromatic subdivision.

The subdivision of the color simplex on ``{0..n}`` is enumerated directly
as tuples ``((B_1..B_t), (C_1..C_t))`` of pairwise disjoint nonempty
blocks ``B_i`` with nonempty survivor sets ``C_i`` inside them; nothing
here touches the witness-structure construction, so the table map onto the
all-ones complex can be certified as a genuine cross-check.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import combinations

from .counters import RoundCounter
from .complexes import Complex, build
from .errors import VerificationError
from .witness import WitnessStructure

DEFAULT_COLOR_BOUND = 3


@dataclass(frozen=True)
class ChromaticSimplex:
    """One simplex of the subdivision: ordered disjoint blocks with chosen
    survivors.  The empty tuple is the empty simplex."""

    blocks: tuple[frozenset[int], ...]
    chosen: tuple[frozenset[int], ...]

    @property
    def dim(self) -> int:
        return sum(len(c) for c in self.chosen) - 1

    def vertices(self) -> frozenset[tuple[int, frozenset[int]]]:
        """Vertices are (color, set of colors seen) pairs."""
        out = set()
        seen: frozenset[int] = frozenset()
        for b, c in zip(self.blocks, self.chosen):
            seen |= b
            out.update((color, seen) for color in c)
        return frozenset(out)


def _nonempty_subsets(items: tuple[int, ...]) -> Iterator[frozenset[int]]:
    for k in range(1, len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def chromatic_oracle(n: int, *, bound: int = DEFAULT_COLOR_BOUND) -> frozenset[ChromaticSimplex]:
    """Enumerate every simplex of the chromatic subdivision of the
    ``n``-simplex on colors ``0..n`` (empty simplex included)."""
    if n > bound:
        raise ValueError(f"color bound exceeded: n={n} > {bound}")
    if n < 0:
        raise ValueError("n must be nonnegative")

    def walk(rest: tuple[int, ...]) -> Iterator[tuple[tuple[frozenset[int], ...], tuple[frozenset[int], ...]]]:
        yield ((), ())
        for block in _nonempty_subsets(rest):
            leftover = tuple(c for c in rest if c not in block)
            for survivors in _nonempty_subsets(tuple(sorted(block))):
                for blocks, chosen in walk(leftover):
                    yield (block,) + blocks, (survivors,) + chosen

    colors = tuple(range(n + 1))
    return frozenset(ChromaticSimplex(b, c) for b, c in walk(colors))


def chromatic_f_vector(simplices: frozenset[ChromaticSimplex]) -> tuple[int, ...]:
    top = max(s.dim for s in simplices)
    counts = [0] * (top + 1)
    for s in simplices:
        if s.dim >= 0:
            counts[s.dim] += 1
    return tuple(counts)


def table_map(cs: ChromaticSimplex, n: int) -> WitnessStructure:
    """The block/survivor tuple rewritten as a witness structure: all
    blocks witnessed in round 0, survivors of block ``i`` witnessed in
    round ``i`` with the rest of the block ghosted there."""
    colors = frozenset(range(n + 1))
    w0 = frozenset().union(*cs.blocks) if cs.blocks else frozenset()
    rows: list[tuple[frozenset[int], frozenset[int]]] = [(w0, colors - w0)]
    rows.extend((c, b - c) for b, c in zip(cs.blocks, cs.chosen))
    return WitnessStructure(rows)


@dataclass(frozen=True)
class PhiReport:
    n: int
    simplices: int
    f_vector: tuple[int, ...]
    bijective: bool
    dimension_preserving: bool
    face_preserving: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.dimension_preserving and self.face_preserving


def phi_iso(n: int, *, bound: int = DEFAULT_COLOR_BOUND) -> PhiReport:
    """Certify the table map as a dimension- and face-relation-preserving
    bijection from the independently enumerated subdivision onto the
    complex of the all-ones counter."""
    oracle = chromatic_oracle(n, bound=bound)
    target: Complex = build(RoundCounter({p: 1 for p in range(n + 1)}))

    image = {cs: table_map(cs, n) for cs in oracle}
    bijective = (
        len(set(image.values())) == len(oracle) and set(image.values()) == target.simplices
    )
    dimension_preserving = all(cs.dim == ws.dim for cs, ws in image.items())

    # Subdivision-side face relation is vertex containment (checked to be
    # faithful); target-side face relation is the ghosting one.
    oracle_vertices = {cs: cs.vertices() for cs in oracle}
    if len(set(oracle_vertices.values())) != len(oracle):
        raise VerificationError("subdivision simplices are not determined by their vertices")
    target_faces = {ws: target.faces(ws) for ws in target.simplices}

    face_preserving = True
    listed = sorted(oracle, key=lambda s: (s.dim, sorted(map(sorted, s.blocks))))
    for a in listed:
        for b in listed:
            lhs = oracle_vertices[a] <= oracle_vertices[b]
            rhs = image[a] in target_faces[image[b]]
            if lhs != rhs:
                face_preserving = False
                break
        if not face_preserving:
            break

    return PhiReport(
        n=n,
        simplices=len(oracle),
        f_vector=chromatic_f_vector(oracle),
        bijective=bijective,
        dimension_preserving=dimension_preserving,
        face_preserving=face_preserving,
    )
