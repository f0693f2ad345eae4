from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stablepairs import linalg, pairs
from stablepairs.picard import (AdjunctionError, BlowUpRecord, DivisorClass, LatticeError, RankMismatchError,
                                SurfaceModel, UnknownClassError, adjunction_genus, blow_up, blow_up_points,
                                coordinates, format_class, hirzebruch, intersect, is_linearly_equivalent,
                                projective_plane, quadric, self_intersection)


def test_hyperplane_self_intersection():
    S = projective_plane({"L1": 1})
    assert intersect(S, S["L1"], S["L1"]) == 1


def test_quadric_numbers_for_3e_plus_4f():
    S = quadric({"D": (3, 4)})
    assert intersect(S, S["D"], S["D"]) == 24
    assert intersect(S, S["D"], S.K) == -14


def test_sigma5_anticanonical_square():
    S = pairs.sigma5()
    assert self_intersection(S, -2 * S.K) == 20
    assert self_intersection(S, S.K) == 5


def test_base_k_squared():
    assert self_intersection(projective_plane(), projective_plane().K) == 9
    assert self_intersection(quadric(), quadric().K) == 8
    for n in range(5):
        S = hirzebruch(n)
        assert self_intersection(S, S.K) == 8
        S.validate()


def test_line_through_five_points_becomes_minus_four():
    S = projective_plane({"l": 1})
    S = blow_up_points(S, [BlowUpRecord({"l": 1}, f"G{i}") for i in range(5)])
    assert self_intersection(S, S["l"]) == -4


def test_double_point_strict_transform():
    S = quadric({"C": (2, 2)})
    T = blow_up(S, BlowUpRecord({"C": 2}, "E"))
    assert self_intersection(T, T["C"]) == self_intersection(S, S["C"]) - 4


def test_genus_examples():
    assert adjunction_genus(projective_plane(), DivisorClass((5,))) == 6
    assert adjunction_genus(projective_plane(), DivisorClass((1,))) == 0
    S = quadric({"D": (3, 4)})
    assert adjunction_genus(S, S["D"]) == 6


def test_genus_rejects_odd_values():
    with pytest.raises(AdjunctionError):
        adjunction_genus(projective_plane(), DivisorClass((Fraction(1, 2),)))


def test_linear_equivalence_examples():
    # -2K' - l' = 5L - sum G_i on the plane quintic example
    built = pairs.build_model(pairs.PlaneQuintic((1, 1, 1, 1, 1)))
    S = built.model.resolution
    lhs = -2 * S.K - S["l"]
    rhs = 5 * S.generator("L") - S.combination({f"G{i}": 1 for i in range(1, 6)})
    assert is_linearly_equivalent(S, lhs, rhs)
    assert is_linearly_equivalent(S, S.K, S.K)
    Q = quadric({"e0": (1, 0), "f0": (0, 1)})
    assert not is_linearly_equivalent(Q, Q["e0"], Q["f0"])


# -- blow-up sequences as hypothesis strategies --------------------------------

@st.composite
def blown_up_surfaces(draw):
    kind = draw(st.sampled_from(["P2", "P1xP1", "F1", "F2", "F3"]))
    if kind == "P2":
        S = projective_plane({"C": draw(st.integers(1, 6))})
    elif kind == "P1xP1":
        S = quadric({"C": (draw(st.integers(0, 4)), draw(st.integers(1, 4)))})
    else:
        S = hirzebruch(int(kind[1]), {"C": (draw(st.integers(1, 3)), draw(st.integers(3, 8)))})
    steps = draw(st.integers(0, 6))
    for k in range(steps):
        names = sorted(S.tracked)
        chosen = draw(st.lists(st.sampled_from(names), unique=True, max_size=2))
        center = {n: draw(st.integers(1, 2)) for n in chosen}
        S = blow_up(S, BlowUpRecord(center, f"X{k}"))
    return S


@given(blown_up_surfaces())
def test_lattice_invariants_after_blow_ups(S):
    S.validate()
    assert abs(linalg.det(S.gram)) == 1
    assert S.rank == S.base.rank + len(S.history)
    assert self_intersection(S, S.K) + len(S.history) == S.base.k_squared


@given(blown_up_surfaces(), st.data())
def test_total_transform_is_an_isometry(S, data):
    T = blow_up(S, BlowUpRecord({}, "new"))
    coeffs = st.lists(st.integers(-5, 5), min_size=S.rank, max_size=S.rank)
    d1, d2 = DivisorClass(data.draw(coeffs)), DivisorClass(data.draw(coeffs))
    assert intersect(T, T.lift(d1), T.lift(d2)) == intersect(S, d1, d2)
    assert intersect(T, T.lift(d1), T.generator("new")) == 0


@given(blown_up_surfaces())
def test_genus_unchanged_by_blowing_up_a_point_off_the_curve(S):
    T = blow_up(S, BlowUpRecord({}, "away"))
    assert adjunction_genus(T, T["C"]) == adjunction_genus(S, S["C"])


@given(blown_up_surfaces())
def test_json_round_trip(S):
    again = SurfaceModel.from_json(S.to_json())
    assert again == S


def test_rank_mismatch_is_an_error():
    S = projective_plane()
    with pytest.raises(RankMismatchError):
        DivisorClass((1,)) + DivisorClass((1, 0))
    with pytest.raises(RankMismatchError):
        intersect(S, DivisorClass((1, 0)), DivisorClass((1,)))


def test_blow_up_validation():
    S = projective_plane({"C": 2})
    with pytest.raises(UnknownClassError):
        blow_up(S, BlowUpRecord({"nope": 1}, "E"))
    with pytest.raises(ValueError):
        BlowUpRecord({"C": 0}, "E")
    with pytest.raises(ValueError):
        blow_up(S, BlowUpRecord({"C": 1}, "L"))


def test_from_json_rejects_bad_lattices():
    data = projective_plane().to_json()
    data["gram"] = [[2]]
    with pytest.raises(LatticeError):
        SurfaceModel.from_json(data)
    data = quadric().to_json()
    data["gram"] = [[0, 1], [0, 0]]
    with pytest.raises(LatticeError):
        SurfaceModel.from_json(data)


def test_coordinates_and_formatting():
    S = hirzebruch(2, {"e0": (1, 0), "f0": (0, 1)})
    assert coordinates(S, S.K, ["e0", "f0"]) == (-2, -4)
    assert format_class(S, S.K, ["e0", "f0"]) == "-2e0 - 4f0"
    assert format_class(S, DivisorClass((Fraction(1, 2), 0))) == "(1/2)e"
