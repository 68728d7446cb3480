"""Construction of the immediate snapshot complex of a round counter.

Simplices are witness structures; facets correspond to layered schedules
and every face arises by ghosting a subset of the active processes.  The
complex is built as the ghosting closure of its facets, plus the explicit
empty simplex, and is immutable once built.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Iterator
from itertools import chain, combinations

from .counters import RoundCounter
from .errors import ComplexTooLargeError, VerificationError
from .witness import WitnessStructure, ghost

DEFAULT_SIMPLEX_CAP = 2_000_000
CAP_ENV_VAR = "SNAPCOMPLEX_MAX_SIMPLICES"


def simplex_cap(override: int | None = None) -> int:
    """Resolve the stored-simplex budget (argument, else env var, else default)."""
    if override is not None:
        return override
    env = os.environ.get(CAP_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_SIMPLEX_CAP


def _nonempty_subsets(items: frozenset[int]) -> Iterator[frozenset[int]]:
    ordered = sorted(items)
    for k in range(1, len(ordered) + 1):
        for combo in combinations(ordered, k):
            yield frozenset(combo)


def _layer_sequences(remaining: dict[int, int]) -> Iterator[tuple[frozenset[int], ...]]:
    live = frozenset(p for p, c in remaining.items() if c > 0)
    if not live:
        yield ()
        return
    for layer in _nonempty_subsets(live):
        rest = {p: c - 1 if p in layer else c for p, c in remaining.items()}
        for tail in _layer_sequences(rest):
            yield (layer,) + tail


def facet_structures(r: RoundCounter) -> Iterator[WitnessStructure]:
    """All facets of the complex: one per layered schedule of ``r``."""
    if not r.support:
        raise ValueError("facets need a nonempty support")
    supp = r.support
    for layers in _layer_sequences(dict(r)):
        rows: list[tuple[frozenset[int], frozenset[int]]] = [(supp, frozenset())]
        rows.extend((layer, frozenset()) for layer in layers)
        yield WitnessStructure(rows)


def facets(r: RoundCounter) -> frozenset[WitnessStructure]:
    return frozenset(facet_structures(r))


def membership(r: RoundCounter, sigma: WitnessStructure) -> bool:
    """True iff ``sigma`` is a simplex of the complex of ``r``:

    it is a witness structure on the full support whose active traces have
    exactly ``r(p)+1`` entries and whose ghost traces have at most that many.
    """
    if not sigma.is_witness:
        return False
    if sigma.support != r.support:
        return False
    traces = sigma.traces()
    for p in sigma.active_set:
        if len(traces[p]) != r[p] + 1:
            return False
    for p in sigma.ghost_union:
        if len(traces[p]) > r[p] + 1:
            return False
    return True


class Complex:
    """The immediate snapshot complex of a round counter.

    Stores the full simplex set (including the empty simplex) keyed by
    canonical encoding, plus the facet set.  All queries are pure.
    """

    __slots__ = ("_counter", "_simplices", "_facets", "_cofaces")

    def __init__(
        self,
        counter: RoundCounter,
        simplices: Iterable[WitnessStructure],
        facet_set: Iterable[WitnessStructure],
    ):
        self._counter = counter
        self._simplices = frozenset(simplices)
        self._facets = frozenset(facet_set)
        self._cofaces: dict[WitnessStructure, frozenset[WitnessStructure]] | None = None

    @property
    def counter(self) -> RoundCounter:
        return self._counter

    @property
    def simplices(self) -> frozenset[WitnessStructure]:
        return self._simplices

    @property
    def facets(self) -> frozenset[WitnessStructure]:
        return self._facets

    @property
    def empty_simplex(self) -> WitnessStructure:
        return WitnessStructure([((), self._counter.support)])

    @property
    def dim(self) -> int:
        return len(self._counter.support) - 1

    def __contains__(self, sigma: object) -> bool:
        return sigma in self._simplices

    def __len__(self) -> int:
        return len(self._simplices)

    def __repr__(self) -> str:
        return (
            f"<Complex of {self._counter.to_text()!r}: "
            f"{len(self._simplices)} simplices, {len(self._facets)} facets>"
        )

    def f_vector(self) -> tuple[int, ...]:
        """Simplex counts by dimension, the empty simplex excluded."""
        counts = [0] * (self.dim + 1)
        for sigma in self._simplices:
            if not sigma.is_empty:
                counts[sigma.dim] += 1
        return tuple(counts)

    def faces(self, sigma: WitnessStructure) -> frozenset[WitnessStructure]:
        """Every face of ``sigma`` (including itself and the empty simplex)."""
        if sigma not in self._simplices:
            raise ValueError("simplex is not part of this complex")
        active = sorted(sigma.active_set)
        out = set()
        for k in range(len(active) + 1):
            for hide in combinations(active, k):
                out.add(ghost(sigma, hide))
        return frozenset(out)

    def vertices(self, sigma: WitnessStructure) -> frozenset[WitnessStructure]:
        """The ``dim+1`` vertices: one per active color."""
        if sigma not in self._simplices:
            raise ValueError("simplex is not part of this complex")
        active = sigma.active_set
        return frozenset(ghost(sigma, active - {p}) for p in active)

    def proper_cofaces(self, sigma: WitnessStructure) -> frozenset[WitnessStructure]:
        """All simplices strictly containing ``sigma``."""
        if self._cofaces is None:
            table: dict[WitnessStructure, set[WitnessStructure]] = {
                s: set() for s in self._simplices
            }
            for tau in self._simplices:
                for face in self.faces(tau):
                    if face != tau:
                        table[face].add(tau)
            self._cofaces = {s: frozenset(c) for s, c in table.items()}
        return self._cofaces[sigma]

    def to_json_obj(self, *, include_simplices: bool = False) -> dict:
        obj: dict = {
            "counter": self._counter.to_json_obj(),
            "f_vector": list(self.f_vector()),
            "facets": sorted(f.encode() for f in self._facets),
        }
        if include_simplices:
            listing = []
            for sigma in sorted(self._simplices, key=WitnessStructure.encode):
                listing.append(
                    {
                        "id": sigma.encode(),
                        "dim": sigma.dim,
                        "faces": sorted(
                            tau.encode()
                            for tau in self.faces(sigma)
                            if tau.dim == sigma.dim - 1
                        ),
                    }
                )
            obj["simplices"] = listing
        return obj


def build(r: RoundCounter, *, max_simplices: int | None = None) -> Complex:
    """Construct the complex of ``r``: ghosting closure of the facets plus
    the empty simplex.  Raises :class:`ComplexTooLargeError` beyond the cap.
    """
    if not r.support:
        raise ValueError("cannot build a complex over an empty support")
    cap = simplex_cap(max_simplices)
    seen: set[WitnessStructure] = set()
    facet_list: list[WitnessStructure] = []
    stack: list[WitnessStructure] = []

    def admit(sigma: WitnessStructure) -> bool:
        if sigma in seen:
            return False
        seen.add(sigma)
        if len(seen) > cap:
            raise ComplexTooLargeError(cap)
        return True

    for facet in facet_structures(r):
        if admit(facet):
            facet_list.append(facet)
            stack.append(facet)
    while stack:
        sigma = stack.pop()
        for p in sigma.active_set:
            face = ghost(sigma, {p})
            if admit(face):
                stack.append(face)
    admit(WitnessStructure([((), r.support)]))
    return Complex(r, seen, facet_list)


def check_purity(k: Complex) -> None:
    """Verify that every facet has top dimension and that the facet faces
    exhaust the simplex set."""
    top = k.dim
    for facet in k.facets:
        if facet.dim != top:
            raise VerificationError(
                f"facet {facet.encode()} has dimension {facet.dim}, expected {top}"
            )
    covered: set[WitnessStructure] = set()
    for facet in k.facets:
        covered |= k.faces(facet)
    if covered != k.simplices:
        missing = k.simplices - covered
        raise VerificationError(
            f"{len(missing)} simplices are not faces of any facet"
        )


# -- cone splitting over a passive process ------------------------------------


class ConeSplit:
    """A certified simplicial isomorphism between the complex of ``r`` and
    the join of the complex of ``r`` minus a passive process with a point.

    Each simplex is paired with (simplex of the smaller complex, flag); the
    flag records whether the apex participates.
    """

    __slots__ = ("complex", "base", "apex", "pairing")

    def __init__(self, whole: Complex, base: Complex, apex_process: int):
        self.complex = whole
        self.base = base
        self.apex = apex_process
        pairing: dict[WitnessStructure, tuple[WitnessStructure, bool]] = {}
        for sigma in whole.simplices:
            if apex_process in sigma.active_set:
                reduced = ghost(sigma, {apex_process})
                pairing[sigma] = (_drop_unseen(reduced, apex_process), True)
            else:
                pairing[sigma] = (_drop_unseen(sigma, apex_process), False)
        self.pairing = pairing

    @property
    def apex_vertex(self) -> WitnessStructure:
        supp = self.complex.counter.support
        return WitnessStructure([({self.apex}, supp - {self.apex})])

    def certify(self) -> dict:
        """Check bijectivity and face preservation; raise on any defect."""
        images = set(self.pairing.values())
        if len(images) != len(self.pairing):
            raise VerificationError("cone pairing is not injective")
        expected = {(tau, flag) for tau in self.base.simplices for flag in (False, True)}
        if images != expected:
            raise VerificationError("cone pairing is not onto the join")
        if self.pairing[self.apex_vertex] != (self.base.empty_simplex, True):
            raise VerificationError("apex vertex does not map to the apex of the join")
        for sigma in self.complex.simplices:
            tau, flag = self.pairing[sigma]
            got = {self.pairing[f] for f in self.complex.faces(sigma)}
            base_faces = self.base.faces(tau)
            want = {(f, False) for f in base_faces}
            if flag:
                want |= {(f, True) for f in base_faces}
            if got != want:
                raise VerificationError(
                    f"faces of {sigma.encode()} do not match the join faces"
                )
        return {
            "apex_process": self.apex,
            "simplices": len(self.pairing),
            "base_simplices": len(self.base.simplices),
            "ok": True,
        }


def _drop_unseen(sigma: WitnessStructure, p: int) -> WitnessStructure:
    """Remove ``p`` from the round-0 ghost set (it must sit there)."""
    w0, g0 = sigma.rows[0]
    if p not in g0:
        raise VerificationError(
            f"process {p} is not a round-0 ghost of {sigma.encode()}"
        )
    return WitnessStructure(((w0, g0 - {p}),) + sigma.rows[1:])


def cone_split(r: RoundCounter, p: int, *, max_simplices: int | None = None) -> ConeSplit:
    """Split the complex of ``r`` as a cone over the complex of ``r`` minus
    the passive process ``p``."""
    if p not in r.passive:
        raise ValueError(f"process {p} is not passive in {r.to_text()!r}")
    whole = build(r, max_simplices=max_simplices)
    base = build(r.delete({p}), max_simplices=max_simplices)
    return ConeSplit(whole, base, p)


def verify_ghost_composition(k: Complex) -> int:
    """Check that ghosting twice equals ghosting once by the union.

    For every simplex and every pair of disjoint subsets ``S``, ``T`` of
    its active set, ``ghost(ghost(σ,S),T)`` must equal ``ghost(σ,S∪T)``.
    Returns the number of instances checked; raises
    :class:`VerificationError` at the first disagreement.
    """
    checked = 0
    for sigma in sorted(k.simplices):
        colors = sorted(sigma.active_set)
        for split in range(3 ** len(colors)):
            s_part, t_part, rest = set(), set(), split
            for p in colors:
                rest, slot = divmod(rest, 3)
                if slot == 1:
                    s_part.add(p)
                elif slot == 2:
                    t_part.add(p)
            one = ghost(ghost(sigma, frozenset(s_part)), frozenset(t_part))
            two = ghost(sigma, frozenset(s_part | t_part))
            if one != two:
                raise VerificationError(
                    f"ghosting {sorted(s_part)} then {sorted(t_part)} on "
                    f"{sigma.encode()} gives {one.encode()}, not {two.encode()}"
                )
            checked += 1
    return checked
