from __future__ import annotations

import pytest

from snapcomplex import (
    Complex,
    ComplexTooLargeError,
    RoundCounter,
    WitnessStructure,
    build,
    check_purity,
    cone_split,
    facets,
    membership,
    verify_ghost_composition,
)

from .oracles import layered_sequence_count


def ws(*rows):
    return WitnessStructure(rows)


R11 = RoundCounter.parse("1,1")


def test_facets_of_two_process_single_round():
    assert facets(R11) == {
        ws(({0, 1}, ()), ({0, 1}, ())),
        ws(({0, 1}, ()), ({0}, ()), ({1}, ())),
        ws(({0, 1}, ()), ({1}, ()), ({0}, ())),
    }


@pytest.mark.parametrize(
    "text",
    ["1,1", "2,1", "3,1", "2,2", "1,1,1", "2,1,1", "1,0,1", "1,0"],
)
def test_facet_count_matches_layered_sequence_oracle(text):
    r = RoundCounter.parse(text)
    assert len(facets(r)) == layered_sequence_count(dict(r))


def test_membership_hand_cases():
    a0 = ws(({0}, {1}), ({0}, ()))
    c0 = ws(({0, 1}, ()), ({0}, {1}))
    assert membership(R11, a0)
    assert membership(R11, c0)
    # A bare round-0 appearance of an active process is not a simplex here:
    # active traces must have exactly r(p)+1 rounds.
    assert not membership(R11, ws(({0}, {1})))
    # Too few rounds for process 0 under a two-round budget.
    assert not membership(
        RoundCounter.parse("2,1"), ws(({0, 1}, ()), ({0}, ()), ({1}, ()))
    )


def test_membership_requires_matching_support():
    assert not membership(R11, ws(({0}, ()), ({0}, ())))


def test_passive_process_contributes_a_round_zero_vertex():
    r = RoundCounter.parse("1,0,1")
    assert membership(r, ws(({1}, {0, 2})))


@pytest.mark.parametrize(
    "text, f_vector",
    [
        ("1,1", (4, 3)),
        ("2,1", (6, 5)),
        ("1,1,1", (12, 24, 13)),
        ("1,0", (2, 1)),
        ("2,0", (2, 1)),
    ],
)
def test_f_vectors(text, f_vector, get_complex):
    assert get_complex(text).f_vector() == f_vector


@pytest.mark.parametrize(
    "text, total",
    [
        ("1,1", 8),
        ("2,1", 12),
        ("1,1,1", 50),
        ("2,2", 28),
        ("3,1", 16),
        ("2,1,1", 108),
        ("1,0,1", 16),
        ("1,1,1,1", 416),
    ],
)
def test_total_simplex_counts_include_the_empty_simplex(text, total, get_complex):
    k = get_complex(text)
    assert len(k) == total
    assert k.empty_simplex in k
    assert sum(k.f_vector()) == total - 1


def test_build_rejects_empty_support():
    with pytest.raises(ValueError, match="empty support"):
        build(RoundCounter())


def test_build_respects_simplex_cap():
    with pytest.raises(ComplexTooLargeError) as info:
        build(RoundCounter.parse("1,1,1"), max_simplices=5)
    assert info.value.limit == 5


def test_simplex_cap_env_override(monkeypatch):
    monkeypatch.setenv("SNAPCOMPLEX_MAX_SIMPLICES", "6")
    with pytest.raises(ComplexTooLargeError):
        build(RoundCounter.parse("1,1,1"))


def test_complex_accessors(get_complex):
    k = get_complex("2,1")
    assert k.counter == RoundCounter.parse("2,1")
    assert k.dim == 1
    assert k.empty_simplex == ws(((), {0, 1}))
    assert all(f.dim == 1 for f in k.facets)
    check_purity(k)


def test_faces_are_closed_and_dual_to_cofaces(get_complex):
    k = get_complex("2,1")
    for sigma in k.simplices:
        for tau in k.faces(sigma):
            assert tau in k
            if tau != sigma:
                assert sigma in k.proper_cofaces(tau)
        for up in k.proper_cofaces(sigma):
            assert sigma in k.faces(up)


def test_vertices_of_a_facet(get_complex):
    k = get_complex("1,1")
    central = ws(({0, 1}, ()), ({0, 1}, ()))
    assert k.vertices(central) == {
        ws(({0, 1}, ()), ({0}, {1})),
        ws(({0, 1}, ()), ({1}, {0})),
    }


def test_ghosting_composes_over_disjoint_sets(get_complex):
    # The verifier checks every split of every active set, so it reports
    # sum over simplices of 3^(dim+1) checked identities.
    assert verify_ghost_composition(get_complex("1,1")) == 1 + 4 * 3 + 3 * 9
    assert verify_ghost_composition(get_complex("1,1,1")) == 1 + 12 * 3 + 24 * 9 + 13 * 27


def test_json_shape(get_complex):
    obj = get_complex("1,1").to_json_obj(include_simplices=True)
    assert obj["f_vector"] == [4, 3]
    assert len(obj["simplices"]) == 8
    assert obj["counter"] == {"0": 1, "1": 1}


@pytest.mark.parametrize("text, apex", [("1,0", 1), ("1,1,0", 2), ("1,0,1", 1)])
def test_cone_split_certificates(text, apex):
    split = cone_split(RoundCounter.parse(text), apex)
    cert = split.certify()
    assert cert["ok"]
    assert cert["apex_process"] == apex
    assert cert["simplices"] == 2 * cert["base_simplices"]


def test_cone_split_requires_a_passive_apex():
    with pytest.raises(ValueError):
        cone_split(RoundCounter.parse("1,1"), 1)
