"""Canonical strata of a snapshot complex and the maps between them.

A *stratum reference* names a family of simplices by conditions on the
first two rows of their witness structures:

* ``Z_S``      -- every process of ``S`` is a row-1 ghost,
* ``Y_{S,A}``  -- row 1 covers exactly ``S`` and ``A`` is ghosted there,
* ``X_{S,A}``  -- the union of the two above,
* ``B_V``      -- every process of ``V`` is a row-0 ghost,
* ``X_{S,A} ∩ B_V`` -- the intersection (kind ``XBV``).

The maps ``gamma`` (peel off round one), ``rho`` (its inverse) and
``delta`` (forget row-0 ghosts) translate simplices between complexes
over related counters; they act on witness structures alone and never
need the ambient counter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .complexes import Complex, build, membership
from .counters import RoundCounter
from .errors import VerificationError
from .witness import WitnessStructure

Procs = frozenset[int]

_KINDS = ("X", "Y", "Z", "B", "XBV")


def _procs(values: Iterable[int]) -> Procs:
    out = frozenset(values)
    for p in out:
        if not isinstance(p, int) or isinstance(p, bool) or p < 0:
            raise ValueError(f"process ids must be nonnegative ints, got {p!r}")
    return out


def _fmt_procs(values: Procs) -> str:
    return "{" + ",".join(str(p) for p in sorted(values)) + "}"


@dataclass(frozen=True)
class StratumRef:
    """A symbolic name for one stratum; see the module docstring."""

    kind: str
    select: Procs = frozenset()
    absorbed: Procs = frozenset()
    dropped: Procs = frozenset()

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown stratum kind {self.kind!r}")
        object.__setattr__(self, "select", _procs(self.select))
        object.__setattr__(self, "absorbed", _procs(self.absorbed))
        object.__setattr__(self, "dropped", _procs(self.dropped))
        if self.kind in ("X", "Y", "XBV") and not self.absorbed <= self.select:
            raise ValueError("absorbed set must lie inside the selected set")
        if self.kind in ("Z", "B") and self.absorbed:
            raise ValueError(f"{self.kind}-strata carry no absorbed set")
        if self.kind in ("X", "Y", "Z") and self.dropped:
            raise ValueError(f"{self.kind}-strata carry no dropped set")
        if self.kind == "B" and self.select:
            raise ValueError("B-strata carry no selected set")

    @classmethod
    def x(cls, select: Iterable[int], absorbed: Iterable[int] = ()) -> StratumRef:
        return cls("X", frozenset(select), frozenset(absorbed))

    @classmethod
    def y(cls, select: Iterable[int], absorbed: Iterable[int] = ()) -> StratumRef:
        return cls("Y", frozenset(select), frozenset(absorbed))

    @classmethod
    def z(cls, select: Iterable[int]) -> StratumRef:
        return cls("Z", frozenset(select))

    @classmethod
    def b(cls, dropped: Iterable[int]) -> StratumRef:
        return cls("B", dropped=frozenset(dropped))

    @classmethod
    def xbv(
        cls,
        select: Iterable[int],
        absorbed: Iterable[int] = (),
        dropped: Iterable[int] = (),
    ) -> StratumRef:
        return cls("XBV", frozenset(select), frozenset(absorbed), frozenset(dropped))

    def __str__(self) -> str:
        if self.kind == "B":
            return f"B_{_fmt_procs(self.dropped)}"
        head = "X" if self.kind == "XBV" else self.kind
        body = _fmt_procs(self.select)
        if self.absorbed:
            body += "," + _fmt_procs(self.absorbed)
        if self.kind == "XBV":
            return f"{head}_{{{body}}}∩B_{_fmt_procs(self.dropped)}"
        return f"{head}_{{{body}}}"

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "select": sorted(self.select),
            "absorbed": sorted(self.absorbed),
            "dropped": sorted(self.dropped),
            "display": str(self),
        }


def in_stratum(ref: StratumRef, sigma: WitnessStructure) -> bool:
    """Literal membership: does ``sigma`` satisfy the stratum's conditions?

    Rows past the last one read as empty, so a one-row simplex sits in
    ``Z_S`` literally only for ``S = ∅``.
    """
    w1 = sigma.witness_row(1)
    g1 = sigma.ghost_row(1)
    g0 = sigma.ghost_row(0)
    if ref.kind == "Z":
        return ref.select <= g1
    if ref.kind == "Y":
        return (w1 | g1) == ref.select and ref.absorbed <= g1
    if ref.kind == "B":
        return ref.dropped <= g0
    x_part = ref.absorbed <= g1 and ((w1 | g1) == ref.select or ref.select <= g1)
    if ref.kind == "X":
        return x_part
    return x_part and ref.dropped <= g0  # XBV


def literal_members(complex_: Complex, ref: StratumRef) -> frozenset[WitnessStructure]:
    """All simplices of ``complex_`` literally inside the stratum."""
    return frozenset(s for s in complex_.simplices if in_stratum(ref, s))


def members(complex_: Complex, ref: StratumRef) -> frozenset[WitnessStructure]:
    """The member set of a stratum, by convention closed under faces.

    One-row simplices join every ``X``/``Z`` stratum (and ``XBV`` strata
    whose dropped set they already ghost); that convention is exactly
    what closes the literal member sets up under taking faces.  ``Y``
    and ``B`` strata are returned literally -- ``B`` is closed as it
    stands, ``Y`` need not be.
    """
    literal = literal_members(complex_, ref)
    if ref.kind in ("Y", "B"):
        return literal
    extra = {
        sigma
        for sigma in complex_.simplices
        if sigma.t == 0 and ref.dropped <= sigma.ghost_row(0)
    }
    return literal | extra


# ---------------------------------------------------------------------------
# The three translation maps.
# ---------------------------------------------------------------------------


def gamma(
    sigma: WitnessStructure,
    select: Iterable[int],
    absorbed: Iterable[int] = (),
) -> WitnessStructure:
    """Peel off round one for the processes of ``select``.

    ``sigma`` must lie in the closure of ``X_{select,absorbed}``.  On the
    one-row simplices the map merely removes ``absorbed`` from the ghost
    row; otherwise row 1 is consumed: ghosts of ``select`` fall back into
    row 0 and survivors merge with row 0's witnesses.  The image lives in
    the complex over the counter with ``select`` stepped once and
    ``absorbed`` deleted.
    """
    s = _procs(select)
    a = _procs(absorbed)
    if not a <= s:
        raise ValueError("absorbed set must lie inside the selected set")
    rows = sigma.rows
    w0, g0 = rows[0]
    if sigma.t == 0:
        if w0 & s:
            raise ValueError(f"{sigma.encode()} is not in the stratum X_{_fmt_procs(s)}")
        support = sigma.support
        return WitnessStructure(((w0, (support - a) - w0),))
    w1, g1 = rows[1]
    if s <= g1:
        out = ((w0 - s, g0 | s), (w1, g1 - s)) + rows[2:]
    elif (w1 | g1) == s:
        out = ((w0 - g1, g0 | g1),) + rows[2:]
    else:
        raise ValueError(f"{sigma.encode()} is not in the stratum X_{_fmt_procs(s)}")
    head_w, head_g = out[0]
    if not a <= head_g:
        raise ValueError(
            f"{sigma.encode()} is not in the stratum X_{{{_fmt_procs(s)},{_fmt_procs(a)}}}"
        )
    return WitnessStructure(((head_w, head_g - a),) + out[1:])


def rho(
    tau: WitnessStructure,
    select: Iterable[int],
    absorbed: Iterable[int] = (),
) -> WitnessStructure:
    """Reinstate round one: the two-sided inverse of :func:`gamma`.

    ``tau`` lives over the stepped counter.  Processes of ``select``
    seen in row 0 become row 1 again; processes of ``select`` ghosted in
    row 0 return as row-1 ghosts; ``absorbed`` is restored to row 0's
    ghosts first.
    """
    s = _procs(select)
    a = _procs(absorbed)
    if not a <= s:
        raise ValueError("absorbed set must lie inside the selected set")
    if a & tau.support:
        raise ValueError("absorbed processes are still present in the simplex")
    rows = tau.rows
    v0, h0 = rows[0]
    h0 = h0 | a
    if v0 & s:
        out = ((v0 | (h0 & s), h0 - s), (v0 & s, h0 & s)) + rows[1:]
    elif tau.t >= 1 and s <= h0:
        w1, g1 = rows[1]
        out = ((v0 | s, h0 - s), (w1, g1 | s)) + rows[2:]
    else:
        out = ((v0, h0),)
    return WitnessStructure(out)


def delta(sigma: WitnessStructure, dropped: Iterable[int]) -> WitnessStructure:
    """Forget the row-0 ghosts of ``dropped`` entirely.

    Requires ``dropped`` to consist of row-0 ghosts; the image lives in
    the complex over the counter with ``dropped`` deleted.
    """
    v = _procs(dropped)
    rows = sigma.rows
    w0, g0 = rows[0]
    if not v <= g0:
        raise ValueError(f"{sorted(v)} are not all row-0 ghosts of {sigma.encode()}")
    return WitnessStructure(((w0, g0 - v),) + rows[1:])


def delta_inverse(tau: WitnessStructure, dropped: Iterable[int]) -> WitnessStructure:
    """Reintroduce ``dropped`` as row-0 ghosts."""
    v = _procs(dropped)
    if v & tau.support:
        raise ValueError("dropped processes are still present in the simplex")
    rows = tau.rows
    w0, g0 = rows[0]
    return WitnessStructure(((w0, g0 | v),) + rows[1:])


# ---------------------------------------------------------------------------
# The intersection calculus.
# ---------------------------------------------------------------------------


def incidence(
    select_inner: Iterable[int],
    absorbed_inner: Iterable[int],
    select_outer: Iterable[int],
    absorbed_outer: Iterable[int],
) -> bool:
    """Is ``X_{S,A}`` contained in ``X_{T,B}``, by the symbolic criterion?

    Containment holds exactly when the selected sets agree and the
    outer absorbed set is smaller, or the outer selected set sits
    inside the inner absorbed set.
    """
    s, a = _procs(select_inner), _procs(absorbed_inner)
    t, b = _procs(select_outer), _procs(absorbed_outer)
    if not a <= s or not b <= t:
        raise ValueError("absorbed sets must lie inside their selected sets")
    return (s == t and b <= a) or t <= a


def intersect_refs(first: StratumRef, second: StratumRef) -> StratumRef | None:
    """The stratum equal to the intersection of two strata, or ``None``.

    Covers the ``X/X``, ``X/Z``, ``Z/Z``, ``Y/Z`` and ``Y/Y`` pairings;
    ``None`` means the intersection holds no simplices at all.
    """
    kinds = (first.kind, second.kind)
    if "B" in kinds or "XBV" in kinds:
        raise ValueError("intersection calculus covers X/Y/Z strata only")
    if kinds == ("Z", "Z"):
        return StratumRef.z(first.select | second.select)
    if "Z" in kinds and "Y" in kinds:
        y, z = (first, second) if first.kind == "Y" else (second, first)
        if z.select <= y.select:
            return StratumRef.y(y.select, y.absorbed | z.select)
        return None
    if kinds == ("Y", "Y"):
        if first.select == second.select:
            return StratumRef.y(first.select, first.absorbed | second.absorbed)
        return None
    if "Z" in kinds and "X" in kinds:
        x, z = (first, second) if first.kind == "X" else (second, first)
        if z.select <= x.select:
            return StratumRef.x(x.select, x.absorbed | z.select)
        return StratumRef.z(x.select | z.select)
    # X/X, the symmetric core of the calculus.
    if first.select == second.select:
        return StratumRef.x(first.select, first.absorbed | second.absorbed)
    if first.select < second.select:
        return StratumRef.x(second.select, first.select | second.absorbed)
    if second.select < first.select:
        return StratumRef.x(first.select, second.select | first.absorbed)
    return StratumRef.z(first.select | second.select)


def intersect_pair(
    select_a: Iterable[int],
    absorbed_a: Iterable[int],
    select_b: Iterable[int],
    absorbed_b: Iterable[int],
) -> StratumRef:
    """Closed form for ``X_{S,A} ∩ X_{T,B}``."""
    result = intersect_refs(
        StratumRef.x(select_a, absorbed_a), StratumRef.x(select_b, absorbed_b)
    )
    assert result is not None  # every X/X pairing has a closed form
    return result


def intersect_family(selects: Iterable[Iterable[int]]) -> StratumRef:
    """Intersect a whole family of ``X_S`` strata at once.

    If one selected set contains every other, the family collapses onto
    it with the rest absorbed; otherwise the intersection degenerates to
    the ``Z`` stratum of the union, which is also what folding the
    family pairwise produces.
    """
    distinct = {_procs(s) for s in selects}
    if not distinct:
        raise ValueError("cannot intersect an empty family")
    tops = [s for s in distinct if all(t <= s for t in distinct)]
    if tops:
        top = tops[0]
        return StratumRef.x(top, frozenset().union(*(distinct - {top})) if len(distinct) > 1 else frozenset())
    return StratumRef.z(frozenset().union(*distinct))


# ---------------------------------------------------------------------------
# The nerve of the stratum cover.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NerveReport:
    """The nerve of the cover by closed ``X_S`` strata.

    ``spanning`` holds every set of cover elements whose members share a
    simplex of dimension at least zero.  The nerve is certified to be a
    cone whose apex is the full active set.
    """

    cover: tuple[Procs, ...]
    spanning: frozenset[frozenset[Procs]]
    apex: Procs
    is_cone: bool

    def to_json_obj(self) -> dict:
        return {
            "cover": [sorted(s) for s in self.cover],
            "spanning": sorted(
                [sorted(sorted(s) for s in j) for j in self.spanning]
            ),
            "apex": sorted(self.apex),
            "is_cone": self.is_cone,
        }


def _nonempty_subsets(items: list) -> Iterator[tuple]:
    for size in range(1, len(items) + 1):
        yield from itertools.combinations(items, size)


def nerve(complex_: Complex) -> NerveReport:
    """Compute the nerve of the cover ``{closure X_S : ∅ ≠ S ⊆ active}``."""
    active = sorted(complex_.counter.active)
    cover = [frozenset(s) for s in _nonempty_subsets(active)]
    pieces = {s: members(complex_, StratumRef.x(s)) for s in cover}
    spanning: set[frozenset[Procs]] = set()
    for joint in _nonempty_subsets(cover):
        shared = frozenset.intersection(*(pieces[s] for s in joint))
        if any(sigma.dim >= 0 for sigma in shared):
            spanning.add(frozenset(joint))
    apex = frozenset(active)
    is_cone = all(
        frozenset(joint | {apex}) in spanning for joint in spanning if apex not in joint
    )
    return NerveReport(
        cover=tuple(sorted(cover, key=lambda s: (len(s), sorted(s)))),
        spanning=frozenset(spanning),
        apex=apex,
        is_cone=is_cone,
    )


# ---------------------------------------------------------------------------
# Setwise certification of the symbolic calculus.
# ---------------------------------------------------------------------------


def verify_strata_calculus(complex_: Complex) -> dict[str, int]:
    """Certify the containment/intersection calculus against brute force.

    Every closed form is recomputed by naive member-set comparison over
    all admissible parameters drawn from the active set.  The symbolic
    containment criterion has one blind spot, which is pinned down
    exactly rather than waved off: when ``S = A`` misses a single active
    process ``w``, every taller member of ``Z_A`` has round-1 row
    ``({w}, A)``, so ``Z_A ⊆ X_{A∪{w},B}`` holds setwise for every
    ``B ⊆ A`` even though the criterion says otherwise.  The mismatches
    found must be exactly those; anything else raises.
    """
    active = frozenset(complex_.counter.active)
    ordered = sorted(active)
    subsets = [
        frozenset(combo)
        for size in range(len(ordered) + 1)
        for combo in itertools.combinations(ordered, size)
    ]
    sa_pairs = [
        (sel, frozenset(absorbed))
        for sel in subsets
        for a_size in range(len(sel) + 1)
        for absorbed in itertools.combinations(sorted(sel), a_size)
    ]

    mem_x = {(s, a): members(complex_, StratumRef.x(s, a)) for s, a in sa_pairs}
    mem_z = {s: members(complex_, StratumRef.z(s)) for s in subsets}
    y_cache: dict[tuple[Procs, Procs], frozenset[WitnessStructure]] = {}

    def mem_y(s: Procs, a: Procs) -> frozenset[WitnessStructure]:
        if not a <= s:
            return frozenset()
        if (s, a) not in y_cache:
            y_cache[s, a] = members(complex_, StratumRef.y(s, a))
        return y_cache[s, a]

    def mem_ref(ref: StratumRef) -> frozenset[WitnessStructure]:
        if ref.kind == "Z":
            return mem_x[ref.select, ref.select]
        return mem_x[ref.select, ref.absorbed]

    # Containment criterion against setwise containment.
    containments = 0
    mismatches: set[tuple[Procs, Procs, Procs, Procs]] = set()
    for s, a in sa_pairs:
        for t, b in sa_pairs:
            claim = incidence(s, a, t, b)
            actual = mem_x[s, a] <= mem_x[t, b]
            if claim and not actual:
                raise VerificationError(
                    f"criterion asserts X_{_fmt_procs(s)},{_fmt_procs(a)} ⊆ "
                    f"X_{_fmt_procs(t)},{_fmt_procs(b)} but the member sets disagree"
                )
            if actual and not claim:
                mismatches.add((s, a, t, b))
            containments += 1
    predicted: set[tuple[Procs, Procs, Procs, Procs]] = set()
    for s, a in sa_pairs:
        if s == a and len(active - s) == 1:
            for b_size in range(len(s) + 1):
                for b in itertools.combinations(sorted(s), b_size):
                    predicted.add((s, a, active, frozenset(b)))
    if mismatches != predicted:
        unexpected = sorted(
            (sorted(s), sorted(a), sorted(t), sorted(b))
            for s, a, t, b in mismatches ^ predicted
        )
        raise VerificationError(
            f"containment criterion defects are not the characterized ones: "
            f"{unexpected[:4]}"
        )

    # The three Y/Z intersection identities.
    yz_identities = 0
    for s in subsets:
        for t in subsets:
            if mem_z[s] & mem_z[t] != mem_z[s | t]:
                raise VerificationError(
                    f"Z_{_fmt_procs(s)} ∩ Z_{_fmt_procs(t)} ≠ Z of the union"
                )
            yz_identities += 1
    for s, a in sa_pairs:
        if not s:
            continue
        left = mem_y(s, a)
        for t in subsets:
            if left & mem_z[t] != mem_y(s, a | t):
                raise VerificationError(
                    f"Y_{_fmt_procs(s)},{_fmt_procs(a)} ∩ Z_{_fmt_procs(t)} "
                    "is not the absorbed form"
                )
            yz_identities += 1
    for s, a in sa_pairs:
        for t, b in sa_pairs:
            expected = mem_y(s, a | b) if s == t else frozenset()
            if mem_y(s, a) & mem_y(t, b) != expected:
                raise VerificationError(
                    f"Y_{_fmt_procs(s)},{_fmt_procs(a)} ∩ "
                    f"Y_{_fmt_procs(t)},{_fmt_procs(b)} is off"
                )
            yz_identities += 1

    # Pairwise closed-form intersections.
    pair_intersections = 0
    for s, a in sa_pairs:
        for t, b in sa_pairs:
            ref = intersect_pair(s, a, t, b)
            if mem_ref(ref) != mem_x[s, a] & mem_x[t, b]:
                raise VerificationError(
                    f"X_{_fmt_procs(s)},{_fmt_procs(a)} ∩ "
                    f"X_{_fmt_procs(t)},{_fmt_procs(b)} ≠ members of {ref}"
                )
            pair_intersections += 1

    # Families of up to three distinct covering strata.
    family_intersections = 0
    nonempty = [s for s in subsets if s]
    for count in (1, 2, 3):
        for family in itertools.combinations(nonempty, count):
            ref = intersect_family(family)
            expected = mem_x[family[0], frozenset()]
            for s in family[1:]:
                expected &= mem_x[s, frozenset()]
            if mem_ref(ref) != expected:
                raise VerificationError(
                    f"family intersection over "
                    f"{[sorted(s) for s in family]} ≠ members of {ref}"
                )
            family_intersections += 1

    # Z_A as the union of the proper enlargements X_{T,A}.
    union_formulas = 0
    for a in subsets:
        if a == active:
            continue
        union: set[WitnessStructure] = set()
        for t in subsets:
            if a < t:
                union |= mem_x[t, a]
        if mem_x[a, a] != frozenset(union):
            raise VerificationError(
                f"Z_{_fmt_procs(a)} is not the union of its enlargements"
            )
        union_formulas += 1

    return {
        "containments": containments,
        "known_containment_defects": len(predicted),
        "yz_identities": yz_identities,
        "pair_intersections": pair_intersections,
        "family_intersections": family_intersections,
        "union_formulas": union_formulas,
    }


def _certify_iso(
    source: Complex,
    domain: list[WitnessStructure],
    target: Complex,
    image: dict[WitnessStructure, WitnessStructure],
    label: str,
) -> None:
    """Bijectivity, dimension and face-relation checks for one translation."""
    values = set(image.values())
    if len(values) != len(domain):
        raise VerificationError(f"{label} is not injective")
    if values != target.simplices:
        raise VerificationError(f"{label} is not onto the target complex")
    for sigma in domain:
        if image[sigma].dim != sigma.dim:
            raise VerificationError(f"{label} changes the dimension of {sigma.encode()}")
    target_faces = {tau: target.faces(tau) for tau in values}
    for tau in domain:
        allowed = source.faces(tau)
        mapped = target_faces[image[tau]]
        for sigma in domain:
            if (sigma in allowed) != (image[sigma] in mapped):
                raise VerificationError(
                    f"{label} breaks the face relation between "
                    f"{sigma.encode()} and {tau.encode()}"
                )


def verify_translation_maps(complex_: Complex) -> dict[str, int]:
    """Certify γ, ρ and δ as simplicial isomorphisms stratum by stratum.

    γ_{S,A} must carry the members of ``X_{S,A}`` bijectively onto the
    complex of the executed-and-absorbed counter, preserving dimension
    and faces; for ``A = ∅`` the peel ρ_S must invert it on both sides.
    δ_V must do the same from the members of ``B_V`` onto the complex of
    the shrunken counter, for every proper ``V ⊆ supp``.
    """
    counter = complex_.counter
    active = sorted(counter.active)
    built: dict[RoundCounter, Complex] = {counter: complex_}

    def target_for(c: RoundCounter) -> Complex:
        if c not in built:
            built[c] = build(c)
        return built[c]

    gamma_strata = 0
    rho_roundtrips = 0
    delta_strata = 0
    for size in range(len(active) + 1):
        for sel in itertools.combinations(active, size):
            s = frozenset(sel)
            for a_size in range(size + 1):
                for absorbed in itertools.combinations(sel, a_size):
                    a = frozenset(absorbed)
                    label = f"γ_{_fmt_procs(s)},{_fmt_procs(a)}"
                    domain = sorted(members(complex_, StratumRef.x(s, a)))
                    restricted = counter.restrict(s, a)
                    if not restricted.support:
                        # Absorbing every process leaves the complex over
                        # nothing, whose lone simplex is the empty structure.
                        blank = WitnessStructure(((frozenset(), frozenset()),))
                        if len(domain) != 1 or gamma(domain[0], s, a) != blank:
                            raise VerificationError(
                                f"{label} misses the empty-counter complex"
                            )
                        gamma_strata += 1
                        continue
                    target = target_for(restricted)
                    image = {sigma: gamma(sigma, s, a) for sigma in domain}
                    _certify_iso(complex_, domain, target, image, label)
                    gamma_strata += 1
                    if a:
                        continue
                    members_set = frozenset(domain)
                    for sigma in domain:
                        if rho(image[sigma], s) != sigma:
                            raise VerificationError(
                                f"ρ_{_fmt_procs(s)} does not undo {label} "
                                f"on {sigma.encode()}"
                            )
                    for tau in sorted(target.simplices):
                        back = rho(tau, s)
                        if back not in members_set or gamma(back, s) != tau:
                            raise VerificationError(
                                f"ρ_{_fmt_procs(s)} is not a right inverse "
                                f"on {tau.encode()}"
                            )
                        rho_roundtrips += 1
    support = sorted(counter.support)
    for v_size in range(len(support)):
        for dropped in itertools.combinations(support, v_size):
            v = frozenset(dropped)
            label = f"δ_{_fmt_procs(v)}"
            domain = sorted(members(complex_, StratumRef.b(v)))
            target = target_for(counter.delete(v))
            image = {sigma: delta(sigma, v) for sigma in domain}
            _certify_iso(complex_, domain, target, image, label)
            for sigma in domain:
                if delta_inverse(image[sigma], v) != sigma:
                    raise VerificationError(f"{label} round trip fails on {sigma.encode()}")
            delta_strata += 1
    return {
        "gamma_strata": gamma_strata,
        "rho_roundtrips": rho_roundtrips,
        "delta_strata": delta_strata,
    }


# ---------------------------------------------------------------------------
# Commuting-diagram certification.
# ---------------------------------------------------------------------------


@dataclass
class DiagramReport:
    """One verified parameter choice of one diagram."""

    diagram: str
    parameters: dict[str, list[int]]
    instances_checked: int
    status: str = "ok"

    def to_json_obj(self) -> dict:
        return {
            "diagram": self.diagram,
            "parameters": self.parameters,
            "instances_checked": self.instances_checked,
            "status": self.status,
        }


def _fail(diagram: str, sigma: WitnessStructure, detail: str) -> VerificationError:
    return VerificationError(f"diagram {diagram} breaks at {sigma.encode()}: {detail}")


def _check_restriction_composition(complex_: Complex) -> Iterator[DiagramReport]:
    """Peeling ``S ∪ A`` while deleting ``A`` equals peeling ``A`` then ``S``."""
    counter = complex_.counter
    active = sorted(counter.active)
    for absorbed in _nonempty_subsets(active):
        a = frozenset(absorbed)
        rest = [p for p in active if p not in a]
        deleted = counter.delete(a)
        for select in _nonempty_subsets(rest):
            s = frozenset(select)
            checked = 0
            for sigma in sorted(members(complex_, StratumRef.x(s | a, a))):
                mid = gamma(sigma, a, a)
                if not membership(deleted, mid):
                    raise _fail(
                        "restriction-composition",
                        sigma,
                        f"peeling {sorted(a)} leaves {mid.encode()}, "
                        f"not a simplex over {deleted.to_text()!r}",
                    )
                if mid.t != 0 and not in_stratum(StratumRef.x(s), mid):
                    raise _fail(
                        "restriction-composition",
                        sigma,
                        f"{mid.encode()} misses the stratum X_{_fmt_procs(s)}",
                    )
                two_step = gamma(mid, s)
                one_step = gamma(sigma, s | a, a)
                if two_step != one_step:
                    raise _fail(
                        "restriction-composition",
                        sigma,
                        f"{two_step.encode()} != {one_step.encode()}",
                    )
                checked += 1
            yield DiagramReport(
                "restriction-composition",
                {"select": sorted(s), "absorbed": sorted(a)},
                checked,
            )


def _check_restriction_absorbs_drop(complex_: Complex) -> Iterator[DiagramReport]:
    """Absorbing extra ghosts after peeling equals absorbing them during it."""
    counter = complex_.counter
    active = sorted(counter.active)
    for select in _nonempty_subsets(active):
        s = frozenset(select)
        target = counter.execute(s)
        for absorbed in itertools.chain(((),), _nonempty_subsets(sorted(s))):
            a = frozenset(absorbed)
            stratum = sorted(members(complex_, StratumRef.x(s, a)))
            for small in itertools.chain(((),), _nonempty_subsets(sorted(a))):
                b = frozenset(small)
                checked = 0
                for sigma in stratum:
                    left = delta(gamma(sigma, s, b), a - b)
                    right = gamma(sigma, s, a)
                    if left != right:
                        raise _fail(
                            "restriction-absorbs-drop",
                            sigma,
                            f"{left.encode()} != {right.encode()}",
                        )
                    if not membership(target.delete(a), left):
                        raise _fail(
                            "restriction-absorbs-drop",
                            sigma,
                            f"{left.encode()} is not a simplex over "
                            f"{target.delete(a).to_text()!r}",
                        )
                    checked += 1
                yield DiagramReport(
                    "restriction-absorbs-drop",
                    {
                        "select": sorted(s),
                        "absorbed": sorted(a),
                        "kept_absorbed": sorted(b),
                    },
                    checked,
                )


def _check_drop_restriction_commute(complex_: Complex) -> Iterator[DiagramReport]:
    """Forgetting row-0 ghosts commutes with peeling round one."""
    counter = complex_.counter
    active = sorted(counter.active)
    for select in _nonempty_subsets(active):
        s = frozenset(select)
        for absorbed in itertools.chain(((),), _nonempty_subsets(sorted(s))):
            a = frozenset(absorbed)
            checked = 0
            for sigma in sorted(members(complex_, StratumRef.x(s, a))):
                loose = sorted(sigma.ghost_row(0) - s)
                for dropped in itertools.chain(((),), _nonempty_subsets(loose)):
                    v = frozenset(dropped)
                    left = delta(gamma(sigma, s, a), v)
                    right = gamma(delta(sigma, v), s, a)
                    if left != right:
                        raise _fail(
                            "drop-restriction-commute",
                            sigma,
                            f"{left.encode()} != {right.encode()}",
                        )
                    if not membership(counter.delete(v).execute(s).delete(a), left):
                        raise _fail(
                            "drop-restriction-commute",
                            sigma,
                            f"{left.encode()} is not a simplex over the "
                            "dropped-and-stepped counter",
                        )
                    checked += 1
            yield DiagramReport(
                "drop-restriction-commute",
                {"select": sorted(s), "absorbed": sorted(a)},
                checked,
            )


def verify_diagrams(source: Complex | RoundCounter) -> list[DiagramReport]:
    """Certify the three translation diagrams pointwise.

    Accepts a built complex or a bare counter.  Raises
    :class:`VerificationError` at the first offending simplex; otherwise
    returns one report per diagram and parameter choice with the number
    of verified instances.
    """
    complex_ = source if isinstance(source, Complex) else build(source)
    reports: list[DiagramReport] = []
    reports.extend(_check_restriction_composition(complex_))
    reports.extend(_check_restriction_absorbs_drop(complex_))
    reports.extend(_check_drop_restriction_commute(complex_))
    return reports
