import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import milnor_from_weights, pattern_weights
from singclass.catalog import (
    ArityMismatch,
    BelowSlotMinimum,
    CatalogError,
    DegenerateDenominator,
    NonIntegerMu,
    NonpositiveWeight,
    UnknownType,
    UnsolvableLink,
    alpha_at_ones,
    alpha_of,
    canonical_params,
    catalog_types,
    milnor_closed_form,
    orbit,
    permute_params,
    polynomial_support,
    render_polynomial,
    resolve_type,
    validate_params,
    weights_of,
)
from singclass.fixtures import evaluate_formula, load_formulas

TYPES = catalog_types()


def valid_instances(limit):
    for desc in TYPES:
        for params in itertools.product(range(1, limit + 1), repeat=desc.arity):
            try:
                yield validate_params(desc, params)
            except CatalogError:
                continue


def test_catalog_sizes():
    assert len(TYPES) == 26
    assert sum(d.arity == 4 for d in TYPES) == 19
    assert sum(d.arity == 3 for d in TYPES) == 7


def test_type_one_fully_symmetric():
    assert len(resolve_type("I").symmetries) == 24


def test_type_two_swaps_first_slots_only():
    desc = resolve_type("II")
    assert set(desc.symmetries) == {(0, 1, 2, 3), (1, 0, 2, 3)}
    inst = validate_params(desc, (2, 3, 4, 5))
    assert render_polynomial(inst) == "x^2 + y^3 + z^4 + z*w^5"


def test_resolve_type_names():
    assert resolve_type("XIV").id == "Threefold-XIV"
    assert resolve_type("Threefold-XIV").id == "Threefold-XIV"
    assert resolve_type("III", surface=True).id == "Surface-III"
    with pytest.raises(UnknownType):
        resolve_type("XX")


def test_weights_match_pattern_solver():
    count = 0
    for inst in valid_instances(6):
        assert weights_of(inst) == pattern_weights(inst.type_id, inst.params), inst
        count += 1
    assert count > 5000


def test_milnor_formula_file_and_product():
    formulas = load_formulas()
    assert len(formulas) == 26
    for inst in valid_instances(5):
        row = formulas[inst.type_id]
        weights = weights_of(inst)
        assert tuple(evaluate_formula(w, inst.params) for w in row.weights) == weights
        mu = milnor_closed_form(inst)
        assert evaluate_formula(row.mu, inst.params) == mu
        assert milnor_from_weights(weights) == mu


def test_type_two_example_weights():
    inst = validate_params("II", (2, 2, 2, 2))
    assert weights_of(inst) == (2, 2, 2, 4)
    assert milnor_closed_form(inst) == 3


def test_alpha_examples():
    assert alpha_at_ones(validate_params("I", (2, 3, 7, 41))) == Fraction(1723, 1722)
    assert alpha_at_ones(validate_params("I", (2, 3, 7, 42))) == 1
    inst = validate_params("I", (2, 3, 7, 42))
    assert alpha_of(inst, (1, 0, 0, 0)) == Fraction(1, 2)


@pytest.mark.parametrize("type_id, params, error", [
    ("I", (2, 3, 7), ArityMismatch),
    ("I", (2, 3, 1, 4), NonpositiveWeight),
    ("II", (1, 1, 1, 1), DegenerateDenominator),
    ("II", (2, 2, 2, 1), BelowSlotMinimum),
    ("II", (2, 2, 0, 3), BelowSlotMinimum),
    ("VIII", (2, 5, 2, 2), UnsolvableLink),
    ("XIV", (3, 1, 4, 1), NonIntegerMu),
])
def test_validation_errors(type_id, params, error):
    with pytest.raises(error):
        validate_params(type_id, params)


def test_table_mode_keeps_nonisolated_weights():
    # x^3 + x*y + x*z^4 + x*w has weights (3, 3/2, 6, 3/2); prod(w - 1) = 5/2
    inst = validate_params("XIV", (3, 1, 4, 1), require_links=False)
    assert weights_of(inst) == (3, Fraction(3, 2), 6, Fraction(3, 2))


def test_given_links_are_checked():
    inst = validate_params("XII", (3, 3, 4, 3))
    assert inst.links.first == (0, 6)
    assert validate_params("XII", (3, 3, 4, 3), [(0, 6)]) == inst
    with pytest.raises(UnsolvableLink):
        validate_params("XII", (3, 3, 4, 3), [(1, 1)])


def test_link_monomial_in_support():
    inst = validate_params("XII", (3, 3, 4, 3))
    assert polynomial_support(inst)[-1] == (0, 0, 6, 0)
    assert render_polynomial(inst) == "x^3 + x*y^3 + x*z^4 + y*w^3 + z^6"


def test_surface_instances():
    inst = validate_params(resolve_type("I", surface=True), (2, 3, 5))
    assert weights_of(inst) == (2, 3, 5)
    assert milnor_closed_form(inst) == 8
    assert render_polynomial(inst) == "x^2 + y^3 + z^5"


@given(st.sampled_from(TYPES), st.lists(st.integers(1, 12), min_size=4, max_size=4))
def test_supports_are_weighted_homogeneous(desc, raw):
    try:
        inst = validate_params(desc, tuple(raw[: desc.arity]))
    except CatalogError:
        return
    weights = weights_of(inst)
    assert all(w > 1 for w in weights)
    for v in polynomial_support(inst):
        assert sum(Fraction(e) / w for e, w in zip(v, weights)) == 1


@given(st.sampled_from(TYPES), st.lists(st.integers(1, 12), min_size=4, max_size=4))
def test_symmetry_equivariance(desc, raw):
    params = tuple(raw[: desc.arity])
    try:
        inst = validate_params(desc, params)
    except CatalogError:
        return
    weights = weights_of(inst)
    for sigma in desc.symmetries:
        image = permute_params(params, sigma)
        other = validate_params(desc, image, require_links=False)
        assert weights_of(other) == permute_params(weights, sigma)
        assert milnor_closed_form(other) == milnor_closed_form(inst)
        assert canonical_params(desc, image) == canonical_params(desc, params)
    assert canonical_params(desc, params) in orbit(desc, params)
