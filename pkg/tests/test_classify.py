import itertools

import pytest
from hypothesis import given, settings, strategies as st

from singclass.catalog import (
    CatalogError,
    canonical_params,
    catalog_types,
    polynomial_support,
    resolve_type,
    validate_params,
)
from singclass.classify import (
    NoCatalogMatch,
    NotIsolatedCandidate,
    SupportError,
    all_skeletons,
    identify_all,
    identify_type,
    skeleton_candidates,
    skeleton_map,
)


def test_pure_powers_are_type_one():
    ident = identify_type([(2, 0, 0, 0), (0, 3, 0, 0), (0, 0, 7, 0), (0, 0, 0, 41)])
    assert ident.type_id == "Threefold-I"
    assert ident.permutation == (0, 1, 2, 3)
    assert ident.params == (2, 3, 7, 41)
    assert ident.residual == ()


def test_extra_monomials_are_residual():
    ident = identify_type([(2, 0, 0, 0), (0, 3, 0, 0), (0, 0, 7, 0), (0, 0, 0, 41), (1, 1, 1, 0)])
    assert ident.type_id == "Threefold-I"
    assert ident.residual == ((1, 1, 1, 0),)


def test_lowest_family_wins_ties():
    support = polynomial_support(validate_params("XII", (3, 3, 4, 3)))
    matches = identify_all(support)
    assert [m.type_id for m in matches] == ["Threefold-VII", "Threefold-XII"]
    assert identify_type(support).type_id == "Threefold-VII"


def test_link_found_in_support():
    support = polynomial_support(validate_params("XII", (3, 3, 4, 3)))
    xii = [m for m in identify_all(support) if m.type_id == "Threefold-XII"][0]
    assert xii.links.first == (0, 6)
    assert xii.link_status == ("found",)


def test_link_added_when_absent():
    support = [(3, 0, 0, 0), (1, 3, 0, 0), (1, 0, 4, 0), (0, 1, 0, 3)]
    ident = identify_type(support)
    assert ident.type_id == "Threefold-XII"
    assert ident.link_status == ("added",)


def test_not_isolated_candidate():
    with pytest.raises(NotIsolatedCandidate):
        identify_type([(2, 0, 0, 0), (0, 3, 0, 0), (0, 0, 4, 0)] + [(1, 1, 1, 1)])


def test_no_catalog_match():
    # x*y is the only admissible monomial for both x and y
    with pytest.raises(NoCatalogMatch):
        identify_type([(1, 1, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)])


@pytest.mark.parametrize("support", [
    [],
    [(0, 0, 0, 0)],
    [(2, 0, 0, 0), (0, 2, 0)],
    [(-1, 2, 0)],
    [(2, 0), (0, 2)],
])
def test_bad_supports(support):
    with pytest.raises(SupportError):
        identify_type(support)


def test_candidates_per_variable():
    cands = skeleton_candidates([(3, 0, 0), (1, 2, 0), (0, 0, 5), (1, 1, 1)])
    assert cands[0] == ((3, 0, 0),)
    assert cands[1] == ((1, 2, 0),)
    assert cands[2] == ((0, 0, 5),)


def test_threefold_skeleton_coverage():
    supports = all_skeletons((5, 6, 7, 8))
    assert len(supports) == 256
    image = {ident.type_id for _, ident in skeleton_map((5, 6, 7, 8))}
    assert image == {d.id for d in catalog_types() if d.arity == 4}


def test_surface_skeleton_coverage():
    pairs = skeleton_map((5, 6, 7))
    assert len(pairs) == 27
    assert {ident.type_id for _, ident in pairs} == {d.id for d in catalog_types() if d.arity == 3}


def _instances():
    out = []
    for desc in catalog_types():
        for params in itertools.product(range(1, 6), repeat=desc.arity):
            try:
                out.append(validate_params(desc, params))
            except CatalogError:
                continue
    return out


INSTANCES = _instances()


@settings(max_examples=200)
@given(st.sampled_from(INSTANCES), st.randoms(use_true_random=False))
def test_round_trip_under_coordinate_permutation(inst, rnd):
    desc = resolve_type(inst.type_id)
    perm = list(range(desc.arity))
    rnd.shuffle(perm)
    support = [tuple(v[perm[k]] for k in range(desc.arity)) for v in polynomial_support(inst)]
    rnd.shuffle(support)
    want = canonical_params(desc, inst.params)
    matches = identify_all(support)
    assert any(m.type_id == inst.type_id and canonical_params(desc, m.params) == want
               for m in matches)
    assert identify_type(support) == identify_type(sorted(support))
