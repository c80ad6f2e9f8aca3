"""End-to-end checks, one test per acceptance criterion, in order."""

import itertools
import time
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from singclass.catalog import (
    CatalogError,
    alpha_at_ones,
    canonical_params,
    catalog_types,
    milnor_closed_form,
    permute_params,
    polynomial_support,
    resolve_type,
    validate_params,
    weights_of,
)
from singclass.classify import all_skeletons, skeleton_map
from singclass.enumerate import (
    FINITE,
    INFINITE,
    diff_table,
    frontier_analysis,
    regenerate_table,
    surface_classification,
)
from singclass.fixtures import Fixture, load_fixture, load_suspects, parse_fixture
from singclass.newton import genus_of

THREEFOLDS = [d for d in catalog_types() if d.arity == 4]
SURFACES = [d for d in catalog_types() if d.arity == 3]


def instances(types, limit):
    for desc in types:
        for params in itertools.product(range(1, limit + 1), repeat=desc.arity):
            try:
                yield validate_params(desc, params)
            except CatalogError:
                continue


def test_table_one_regeneration():
    start = time.perf_counter()
    fixture = load_fixture()
    entries = fixture.for_type("Threefold-I")
    assert [e.item for e in entries] == [str(i) for i in range(1, 21)]
    report = diff_table(regenerate_table(["I"]), Fixture(entries, "I"))
    assert report.empty, report.to_text()
    assert time.perf_counter() - start < 5.0
    by_item = {e.item: e for e in entries}
    for item, top in (("6", 41), ("7", 23), ("12", 19), ("18", 11)):
        entry = by_item[item]
        fixed = dict(entry.fixed)
        assert frontier_analysis("I", [fixed[k] for k in range(3)], 3).max_value == top
        assert entry.free[-1][1].values[-1] == top
    for item in ("1", "2", "3", "4", "5", "11", "17"):
        assert by_item[item].free[-1][1].unbounded
    for item in ("2", "3", "4", "5", "11", "17"):
        fixed = dict(by_item[item].fixed)
        assert frontier_analysis("I", [fixed[k] for k in range(3)], 3).kind == INFINITE


def test_boundary_sharpness():
    start = time.perf_counter()
    at = lambda *p: alpha_at_ones(validate_params("I", p))
    assert at(2, 3, 7, 41) == Fraction(1723, 1722)
    assert at(2, 3, 7, 42) == 1
    assert at(2, 4, 5, 19) > 1
    assert at(2, 4, 5, 20) <= 1
    assert frontier_analysis("I", (2, 4, 5), 3).kind == FINITE
    assert time.perf_counter() - start < 0.5


def test_genus_criterion_equivalence_sweep():
    start = time.perf_counter()
    findings = []
    checked = 0
    for inst in instances(THREEFOLDS, 8):
        report = genus_of(inst)
        criterion = alpha_at_ones(inst) > 1
        checked += 1
        if (report.p_g == 0) != criterion:
            findings.append({"instance": inst, "p_g": report.p_g,
                             "simplex_count": report.simplex_count, "criterion": criterion})
    unexplained = [f for f in findings if (f["simplex_count"] == 0) == f["criterion"]]
    assert checked > 20000
    assert unexplained == [], unexplained[:5]
    assert time.perf_counter() - start < 120.0


def test_milnor_cross_check():
    start = time.perf_counter()
    exceptions = []
    checked = 0
    for inst in instances(catalog_types(), 8):
        prod = Fraction(1)
        for w in weights_of(inst):
            prod *= w - 1
        checked += 1
        if milnor_closed_form(inst) != prod:
            exceptions.append(inst)
    assert checked > 20000
    assert exceptions == []
    assert time.perf_counter() - start < 30.0


def test_skeleton_coverage():
    start = time.perf_counter()
    assert len(all_skeletons((5, 6, 7, 8))) == 256
    assert {i.type_id for _, i in skeleton_map((5, 6, 7, 8))} == {d.id for d in THREEFOLDS}
    assert len(all_skeletons((5, 6, 7))) == 27
    assert {i.type_id for _, i in skeleton_map((5, 6, 7))} == {d.id for d in SURFACES}
    assert time.perf_counter() - start < 1.0


def _same_up_to_permutation(a, b):
    a = sorted(a)
    return any(sorted(tuple(v[p] for p in perm) for v in b) == a
               for perm in itertools.permutations(range(3)))


def test_ade_reproduction():
    start = time.perf_counter()
    result = surface_classification(30)
    assert time.perf_counter() - start < 5.0
    for m in result.matches:
        kind, n = m.label.split("_")
        assert kind in {"A", "D", "E"}
        assert m.mu == int(n)
    assert {v.kind for *_, v in result.families} == {INFINITE}
    supports = [polynomial_support(m.instance) for m in result.matches]
    forms = [("A_%d" % n, [(2, 0, 0), (0, 2, 0), (0, 0, n + 1)]) for n in range(1, 30)]
    forms += [("D_%d" % n, [(2, 0, 0), (0, 2, 1), (0, 0, n - 1)]) for n in range(4, 32)]
    forms += [("E_6", [(2, 0, 0), (0, 3, 0), (0, 0, 4)]),
              ("E_7", [(2, 0, 0), (0, 3, 0), (0, 1, 3)]),
              ("E_8", [(2, 0, 0), (0, 3, 0), (0, 0, 5)])]
    for label, form in forms:
        hits = [m for m, s in zip(result.matches, supports) if _same_up_to_permutation(form, s)]
        assert hits, label
        assert {m.label for m in hits} == {label}


def test_remaining_tables_against_suspects():
    start = time.perf_counter()
    fixture = load_fixture()
    rest = [d.numeral for d in THREEFOLDS if d.numeral != "I"]
    doc = regenerate_table(rest)
    wanted = set(doc.type_ids)
    report = diff_table(doc, Fixture(tuple(e for e in fixture.entries if e.type_id in wanted),
                                     fixture.source))
    assert time.perf_counter() - start < 120.0
    suspects = {(s.type_id, s.item, s.kind, s.generated) for s in load_suspects()}
    for e in report.entries:
        assert e.path and e.generated
        assert (e.type_id, e.path.split(".", 1)[1], e.kind, e.generated) in suspects, e.text()


@settings(max_examples=200)
@given(st.sampled_from(catalog_types()), st.lists(st.integers(1, 15), min_size=4, max_size=4),
       st.randoms(use_true_random=False))
def test_property_suites(desc, raw, rnd):
    params = tuple(raw[: desc.arity])
    try:
        inst = validate_params(desc, params)
    except CatalogError:
        return
    weights = weights_of(inst)
    for v in polynomial_support(inst):
        assert sum(Fraction(e) / w for e, w in zip(v, weights)) == 1
    sigma = rnd.choice(desc.symmetries)
    image = validate_params(desc, permute_params(params, sigma), require_links=False)
    assert weights_of(image) == permute_params(weights, sigma)
    assert canonical_params(desc, image.params) == canonical_params(desc, params)
    assert genus_of(inst) == genus_of(validate_params(desc, params))
    text = "\t".join([resolve_type(desc.id).numeral if desc.arity == 4 else desc.id, "p",
                      " ".join(f"{s}={v}" for s, v in zip("abcd", params)), "-", "ordered"])
    fixture = parse_fixture(text + "\n", validate=False)
    assert fixture.serialize() == text + "\n"
