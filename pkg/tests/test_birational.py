from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stablepairs import hjsing, pairs
from stablepairs.birational import (AmpleVerdict, ContractionError, avoids_contracted, contract, intersect_down,
                                    is_ample, make_plan, pullback)
from stablepairs.hjsing import ADE, CyclicQuotient
from stablepairs.picard import BlowUpRecord, DivisorClass, blow_up, blow_up_points, intersect, projective_plane, quadric


def five_point_line():
    S = projective_plane({"l": 1, "D": 5})
    return blow_up_points(S, [BlowUpRecord({"l": 1, "D": 1}, f"G{i}") for i in range(1, 6)])


def minus_two_curve():
    S = quadric({"C": (1, 1)})
    S = blow_up(S, BlowUpRecord({"C": 1}, "E1"))
    return blow_up(S, BlowUpRecord({"C": 1, "E1": 1}, "E2"))  # E1 is now a (-2)-curve


def test_minus_four_curve_gives_quarter_point():
    cs = contract(five_point_line(), ["l"])
    assert cs.singularity_list == (CyclicQuotient(4, 1),)
    assert cs.discrepancy["l"] == Fraction(1, 2)


def test_chain_of_five_gives_1_20_1_9():
    cs = pairs.build_model(pairs.TrigonalM2(4)).model
    assert cs.singularity_list == (CyclicQuotient(20, 9),)
    names = cs.plan.component_names(0)
    S = cs.resolution
    assert [-intersect(S, S[n], S[n]) for n in names] == [3, 2, 2, 2, 3]


def test_minus_two_curve_is_crepant():
    S = minus_two_curve()
    assert intersect(S, S["E1"], S["E1"]) == -2
    cs = contract(S, ["E1"])
    assert cs.singularity_list == (ADE("A", 1),)
    assert cs.discrepancy["E1"] == 0


def test_minus_one_curve_is_a_smooth_blow_down():
    S = five_point_line()
    cs = contract(S, ["G1"])
    assert cs.singularity_list == ()
    assert cs.picard_rank == S.rank - 1
    assert intersect_down(cs, S.K, S.K) == intersect(S, S.K, S.K) + 1


def test_pullback_examples():
    cs = pairs.build_model(pairs.TrigonalM2(4)).model
    S = cs.resolution
    expected = S.combination({"e": 3, "f_p": 7, "G1": 9, "G2": 15, "G3": 21, "G4": 20})
    assert pullback(cs, -2 * S.K) == expected
    # a class already orthogonal to the chain pulls back to itself
    assert pullback(cs, S["D"]) == S["D"]


def test_intersect_down_examples():
    for spec in (pairs.PlaneQuintic((1, 1, 1, 1, 1)), pairs.TrigonalM2(4)):
        cs = pairs.build_model(spec).model
        assert intersect_down(cs, cs.resolution.K, cs.resolution.K) == 5
    cs = contract(five_point_line(), ["l"])
    S = cs.resolution
    assert intersect_down(cs, S["D"], S["l"]) == 0


def test_ampleness_examples():
    for spec in (pairs.PlaneQuintic((1, 1, 1, 1, 1)), pairs.TrigonalM2(4)):
        built = pairs.build_model(spec)
        S = built.model.resolution
        assert is_ample(built.model, -S.K, built.testers) == AmpleVerdict("Ample")
        assert is_ample(built.model, S.K, built.testers).kind == "NotNef"


def test_ampleness_nef_not_ample_and_errors():
    cs = contract(five_point_line(), [])
    S = cs.resolution
    testers = {n: S[n] for n in S.tracked}
    verdict = is_ample(cs, S.generator("L"), testers)  # zero on every G_i
    assert verdict.kind == "NefNotAmple" and "G1" in verdict.witnesses
    assert verdict.to_json()["relative_to"] == "tester set"
    with pytest.raises(ValueError):
        is_ample(cs, S.K, {})


def test_plan_rejections():
    S = five_point_line()
    with pytest.raises(ContractionError):
        make_plan(S, ["D"])  # positive square
    with pytest.raises(ContractionError):
        make_plan(S, ["l", "l"])
    with pytest.raises(ContractionError):
        make_plan(S, ["l", "G1"])  # (-1)-curve inside a chain
    # three (-2)-curves meeting a fourth: a D4 configuration is rejected
    T = quadric({"a": (1, 0), "b": (1, 0), "c": (1, 0), "f": (0, 1)})
    for name in ("a", "b", "c"):
        T = blow_up(T, BlowUpRecord({name: 1}, f"x{name}"))
        T = blow_up(T, BlowUpRecord({name: 1}, f"y{name}"))
    T = blow_up(T, BlowUpRecord({"f": 1}, "z1"))
    T = blow_up(T, BlowUpRecord({"f": 1}, "z2"))
    for n in ("a", "b", "c", "f"):
        assert intersect(T, T[n], T[n]) == -2
    with pytest.raises(ContractionError, match="branched"):
        make_plan(T, ["a", "b", "c", "f"])


def test_avoids_contracted():
    cs = contract(five_point_line(), ["l"])
    S = cs.resolution
    assert avoids_contracted(cs, S["D"])
    assert not avoids_contracted(cs, S["G1"])


def test_json_fields():
    cs = contract(five_point_line(), ["l"])
    data = cs.to_json()
    assert data["plan"] == [["l"]]
    assert data["discrepancy"] == {"l": "1/2"}
    assert data["k_squared"] == str(intersect_down(cs, cs.resolution.K, cs.resolution.K))
    assert set(data) >= {"resolution", "plan", "singularities", "smooth_blow_downs", "discrepancy"}


# -- property tests over all builder outputs ---------------------------------------

BUILT = [pairs.build_model(s) for s in pairs.all_strata() if not isinstance(s, pairs.Bielliptic)]


@given(st.sampled_from(BUILT), st.data())
def test_pullback_is_orthogonal_to_contracted_curves(built, data):
    cs = built.model
    S = cs.resolution
    d = DivisorClass(data.draw(st.lists(st.integers(-7, 7), min_size=S.rank, max_size=S.rank)))
    pb = pullback(cs, d)
    assert all(intersect(S, pb, c) == 0 for _, c in cs.plan.curves)
    assert pullback(cs, pb) == pb


@given(st.sampled_from(BUILT), st.data())
def test_projection_formula(built, data):
    cs = built.model
    S = cs.resolution
    d1 = DivisorClass(data.draw(st.lists(st.integers(-7, 7), min_size=S.rank, max_size=S.rank)))
    d2 = S[built.marked]  # avoids the singular points
    assert intersect_down(cs, d1, d2) == intersect(S, pullback(cs, d1), d2)


@pytest.mark.parametrize("built", BUILT, ids=lambda b: b.spec.key)
def test_discrepancies_and_chain_consistency(built):
    cs = built.model
    S = cs.resolution
    du_val = all(isinstance(s, ADE) for s, _ in cs.singularities)
    assert (set(cs.discrepancy.values()) <= {0}) == du_val
    for sing, comp in cs.singularities:
        chain = [int(-intersect(S, S[n], S[n])) for n in cs.plan.component_names(comp)]
        assert hjsing.as_singularity(hjsing.hj_contract(chain)) == sing
    # K^2 two ways: via pullback, and expanding (K + sum d_i E_i)^2
    k_x = S.K + sum((d * S[n] for n, d in cs.discrepancy.items()), DivisorClass.zero(S.rank))
    assert intersect(S, k_x, k_x) == intersect_down(cs, S.K, S.K)
    expanded = intersect(S, S.K, S.K) + sum(
        d1 * d2 * intersect(S, S[n1], S[n2]) for n1, d1 in cs.discrepancy.items() for n2, d2 in cs.discrepancy.items()
    ) + 2 * sum(d * intersect(S, S.K, S[n]) for n, d in cs.discrepancy.items())
    assert expanded == intersect_down(cs, S.K, S.K)
