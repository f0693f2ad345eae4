import json

import pytest

from stablepairs import hjsing, pairs
from stablepairs.birational import contract
from stablepairs.golden import table_one_row
from stablepairs.hjsing import ADE, CyclicQuotient, SimpleElliptic
from stablepairs.picard import adjunction_genus

STRATA = pairs.all_strata()


def test_stratum_counts():
    keys = [s.key for s in STRATA]
    assert len(keys) == len(set(keys)) == 21
    assert sum(isinstance(s, pairs.PlaneQuintic) for s in STRATA) == 7
    assert sum(isinstance(s, pairs.TrigonalM0) for s in STRATA) == 5
    assert sum(isinstance(s, pairs.TrigonalM2) for s in STRATA) == 7


def test_parse_round_trip_and_errors():
    for s in STRATA:
        assert pairs.parse_stratum(s.key) == s
    for bad in ("quintic-6", "quintic-1112", "trigonal-0-5", "trigonal-2-5", "trigonal-2-2-2-1", "septic"):
        with pytest.raises((pairs.StratumError, ValueError)):
            pairs.parse_stratum(bad)


def test_partition_validation():
    with pytest.raises(ValueError):
        pairs.PlaneQuintic((2, 2))
    assert pairs.TrigonalM0((1, 3)).partition == (3, 1)
    with pytest.raises(ValueError):
        pairs.TrigonalM2(0)


@pytest.mark.parametrize("spec", STRATA, ids=lambda s: s.key)
def test_builder_matches_table_formula(spec):
    _, report = pairs.build_pair(spec)
    surface, k3, label = table_one_row(spec)
    assert report.surface_sings == surface
    assert report.k3_sings == k3
    assert report.boundary.label == label
    assert report.k_squared == 5
    assert report.anticanonical_identity
    assert report.ampleness.kind == "Ample"
    assert report.avoids_sings
    assert report.genus == 6


@pytest.mark.parametrize("spec", [s for s in STRATA if not isinstance(s, pairs.Bielliptic)], ids=lambda s: s.key)
def test_marked_curve_genus_is_six(spec):
    built = pairs.build_model(spec)
    S = built.model.resolution
    assert adjunction_genus(S, S[built.marked]) == 6


@pytest.mark.parametrize("spec", STRATA, ids=lambda s: s.key)
def test_quotient_points_are_index_two(spec):
    _, report = pairs.build_pair(spec)
    for s in report.surface_sings:
        if isinstance(s, CyclicQuotient):
            v = hjsing.classify_class_t(s)
            assert isinstance(v, hjsing.ClassT) and v.params.p == 2


def test_named_examples():
    _, r = pairs.build_pair(pairs.PlaneQuintic((1, 1, 1, 1, 1)))
    assert (r.surface_sings, r.k3_sings, r.boundary.label) == ((CyclicQuotient(4, 1),), (ADE("A", 1),), "Z1")
    _, r = pairs.build_pair(pairs.TrigonalM2(4))
    assert (r.surface_sings, r.k3_sings, r.boundary.label) == ((CyclicQuotient(20, 9),), (ADE("A", 9),), "Z2")
    _, r = pairs.build_pair(pairs.PlaneQuintic((2, 1, 1, 1)))
    assert r.surface_sings == (CyclicQuotient(4, 1), ADE("A", 1))
    assert r.k3_sings == (ADE("A", 1),) * 3


def test_bielliptic_record():
    model, r = pairs.build_pair(pairs.Bielliptic())
    assert model == pairs.EllipticCone(5)
    assert r.surface_sings == (SimpleElliptic(5),)
    assert r.k3_sings == (SimpleElliptic(None),)
    assert r.documented_facts


def test_stability_check_examples():
    for spec in (pairs.PlaneQuintic((1, 1, 1, 1, 1)), pairs.TrigonalM2(4)):
        built = pairs.build_model(spec)
        check = pairs.check_stable_type12(built.model, built.marked, built.testers)
        assert check.passed


def test_wrong_class_fails_the_identity():
    S = pairs.sigma5({"W": 5})
    check = pairs.check_stable_type12(contract(S, []), "W", pairs.sigma5_lines(S))
    assert not check.anticanonical_identity
    assert not check.passed


def test_stability_check_needs_testers():
    built = pairs.build_model(pairs.PlaneQuintic((5,)))
    with pytest.raises(ValueError):
        pairs.check_stable_type12(built.model, built.marked, {})


def test_boundary_strata():
    for spec in STRATA:
        b = pairs.boundary_stratum(spec)
        if isinstance(spec, pairs.PlaneQuintic):
            assert (b.label, b.dimension, b.j_fiber_dimension) == ("Z1", 14, 2)
        elif isinstance(spec, (pairs.TrigonalM0, pairs.TrigonalM2)):
            assert (b.label, b.dimension, b.j_fiber_dimension) == ("Z2", 14, 1)
        elif isinstance(spec, pairs.Bielliptic):
            assert (b.label, b.dimension) == ("Z3", 10)


def test_reports_serialise_without_floats():
    text = json.dumps([r.to_json() for r in pairs.atlas()])

    def no_floats(x):
        if isinstance(x, float):
            raise AssertionError(x)
        if isinstance(x, dict):
            for v in x.values():
                no_floats(v)
        if isinstance(x, list):
            for v in x:
                no_floats(v)
    no_floats(json.loads(text))


def test_unstable_pairs_are_refused(monkeypatch):
    def wrong_model(spec):
        S = pairs.sigma5({"D": 5})
        return pairs.BuiltPair(spec, contract(S, []), "D", pairs.sigma5_lines(S))
    monkeypatch.setattr(pairs, "build_model", wrong_model)
    with pytest.raises(pairs.UnstablePairError):
        pairs.build_pair(pairs.PlaneQuintic((5,)))
