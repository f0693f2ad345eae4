"""Golden identities: every published number the package can recompute.

Each check is a named, self-contained function returning ``(passed, detail)``.
``run_all`` executes the whole catalogue; the CLI's ``verify-paper`` command
prints it and exits non-zero if anything fails.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import birational, hjsing, pairs, picard, reduction
from .hjsing import ADE, CyclicQuotient, SimpleElliptic
from .picard import BlowUpRecord


@dataclass(frozen=True)
class CheckResult:
    name: str
    group: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "group": self.group, "passed": self.passed, "detail": self.detail}


Check = Callable[[], "tuple[bool, str]"]
_CHECKS: list[tuple[str, str, Check]] = []


def _check(group: str, name: str):
    def register(fn: Check) -> Check:
        _CHECKS.append((group, name, fn))
        return fn
    return register


def _eq(got, expected) -> tuple[bool, str]:
    return got == expected, f"got {got}, expected {expected}"


# -- closed-form table of strata ------------------------------------------

def table_one_row(spec: pairs.StratumSpec) -> tuple[tuple, tuple, str]:
    """``(surface sings, K3 sings, boundary label)`` from the closed formulas."""
    def a_terms(parts, copies):
        return [ADE("A", a - 1) for a in parts if a > 1 for _ in range(copies)]

    if isinstance(spec, (pairs.PlaneQuintic, pairs.TrigonalM0)):
        surface = [CyclicQuotient(4, 1)] + a_terms(spec.partition, 1)
        k3 = [ADE("A", 1)] + a_terms(spec.partition, 2)
        label = "Z1" if isinstance(spec, pairs.PlaneQuintic) else "Z2"
    elif isinstance(spec, pairs.TrigonalM2):
        a1 = spec.a1
        surface = [CyclicQuotient(4 * (a1 + 1), 2 * a1 + 1)] + a_terms(spec.rest, 1)
        k3 = [ADE("A", 2 * a1 + 1)] + a_terms(spec.rest, 2)
        label = "Z2"
    elif isinstance(spec, pairs.Bielliptic):
        surface, k3, label = [SimpleElliptic(5)], [SimpleElliptic(None)], "Z3"
    elif isinstance(spec, pairs.HyperellipticA13):
        surface, k3, label = [], [ADE("A", 13)], "Interior"
    else:
        raise TypeError(spec)
    return hjsing.canonical_list(surface), hjsing.canonical_list(k3), label


def _names(sings) -> list[str]:
    return [str(s) for s in sings]


def _table_check(spec: pairs.StratumSpec) -> Check:
    def run() -> tuple[bool, str]:
        _, report = pairs.build_pair(spec)
        surface, k3, label = table_one_row(spec)
        return _eq((_names(report.surface_sings), _names(report.k3_sings), report.boundary.label),
                   (_names(surface), _names(k3), label))
    return run


for _spec in pairs.all_strata():
    _check("table", f"table row for {_spec.key}")(_table_check(_spec))


@_check("table", "every builder has K^2 = 5, D ~ -2K, -K ample, D away from the singular points")
def _all_stable():
    bad = [r.stratum.key for r in pairs.atlas() if not r.is_stable]
    return not bad, f"failing: {bad}"


@_check("table", "every marked curve on a rational builder has genus 6")
def _all_genus():
    bad = [r.stratum.key for r in pairs.atlas() if r.genus != 6]
    return not bad, f"failing: {bad}"


@_check("table", "every non du Val quotient point is index-two class T")
def _all_index_two():
    for r in pairs.atlas():
        for s in r.surface_sings:
            if isinstance(s, CyclicQuotient):
                v = hjsing.classify_class_t(s)
                if not (isinstance(v, hjsing.ClassT) and v.params.p == 2):
                    return False, f"{r.stratum.key}: {s}"
    return True, ""


# -- the F_2 example of type (2; [4]) -------------------------------------------

def _f2_example():
    built = pairs.build_model(pairs.TrigonalM2(4))
    cs = built.model
    S = cs.resolution
    base = picard.hirzebruch(2, {"D": (3, 7), "e": (1, 0), "f_p": (0, 1)})
    return base, S, cs


def _f2_combo(S, e, f, g1, g2, g3, g4, extra=None):
    d = S.combination({"e": e, "f_p": f, "G1": g1, "G2": g2, "G3": g3, "G4": g4})
    return d if extra is None else d + extra


@_check("example F2", "canonical class pulled back from F_2 is K - G1 - 2G2 - 3G3 - 4G4")
def _f2_k_pullback():
    base, S, _ = _f2_example()
    return _eq(S.lift(base.K), S.K - _f2_combo(S, 0, 0, 1, 2, 3, 4))


@_check("example F2", "pullback of -2e - 4f_p is -2e' - 4f' - 6G1 - 10G2 - 14G3 - 14G4")
def _f2_k_as_curves():
    base, S, _ = _f2_example()
    return _eq(S.lift(-2 * base["e"] - 4 * base["f_p"]), _f2_combo(S, -2, -4, -6, -10, -14, -14))


@_check("example F2", "K of the resolution is -2e' - 4f' - 5G1 - 8G2 - 11G3 - 10G4")
def _f2_k():
    _, S, _ = _f2_example()
    coords = picard.coordinates(S, S.K, ["e", "f_p", "G1", "G2", "G3", "G4"])
    return _eq(coords, tuple(Fraction(c) for c in (-2, -4, -5, -8, -11, -10)))


@_check("example F2", "pullback of -2K_X is 3e' + 7f' + 9G1 + 15G2 + 21G3 + 20G4")
def _f2_pullback():
    _, S, cs = _f2_example()
    return _eq(birational.pullback(cs, -2 * S.K), _f2_combo(S, 3, 7, 9, 15, 21, 20))


@_check("example F2", "pullback of D is D' + G1 + 2G2 + 3G3 + 4G4")
def _f2_d_pullback():
    base, S, _ = _f2_example()
    return _eq(S.lift(base["D"]), S["D"] + _f2_combo(S, 0, 0, 1, 2, 3, 4))


@_check("example F2", "pullback of 3e + 7f_p is 3e' + 7f' + 10G1 + 17G2 + 24G3 + 24G4")
def _f2_d_as_curves():
    base, S, _ = _f2_example()
    return _eq(S.lift(3 * base["e"] + 7 * base["f_p"]), _f2_combo(S, 3, 7, 10, 17, 24, 24))


@_check("example F2", "D' equals the pullback of -2K_X")
def _f2_d_equals():
    _, S, cs = _f2_example()
    ok = (S["D"] == _f2_combo(S, 3, 7, 9, 15, 21, 20)
          and picard.is_linearly_equivalent(S, S["D"], birational.pullback(cs, -2 * S.K)))
    return ok, picard.format_class(S, S["D"], ["e", "f_p", "G1", "G2", "G3", "G4"])


@_check("example F2", "-K_X is ample against e', f', G1..G4 and K_X is not nef")
def _f2_ample():
    built = pairs.build_model(pairs.TrigonalM2(4))
    S = built.model.resolution
    pos = birational.is_ample(built.model, -S.K, built.testers).kind
    neg = birational.is_ample(built.model, S.K, built.testers).kind
    return (pos, neg) == ("Ample", "NotNef"), f"{pos}, {neg}"


@_check("example F2", "-K_X is positive on G4, the only tester off the contracted chain")
def _f2_g4():
    _, S, cs = _f2_example()
    v = picard.intersect(S, birational.pullback(cs, -S.K), S["G4"])
    return v > 0, str(v)


@_check("example F2", "K_X^2 = 5 and every discrepancy of the chain is 1/2")
def _f2_k2():
    _, S, cs = _f2_example()
    k2 = birational.intersect_down(cs, S.K, S.K)
    ok = k2 == 5 and set(cs.discrepancy.values()) == {Fraction(1, 2)}
    return ok, f"K^2 = {k2}, discrepancies {dict(cs.discrepancy)}"


# -- the plane quintic example of type (1,1,1,1,1) --------------------------------

@_check("example quintic", "-2K_X pulls back to -2K' - l' = 5L - sum G_i = D'")
def _pq_identity():
    built = pairs.build_model(pairs.PlaneQuintic((1, 1, 1, 1, 1)))
    cs, S = built.model, built.model.resolution
    gs = S.combination({f"G{i}": 1 for i in range(1, 6)})
    five_l = 5 * S.generator("L") - gs
    pb = birational.pullback(cs, -2 * S.K)
    ok = (picard.is_linearly_equivalent(S, pb, -2 * S.K - S["l"])
          and picard.is_linearly_equivalent(S, pb, five_l) and S["D"] == five_l)
    return ok, picard.format_class(S, pb)


@_check("example quintic", "l' = L - sum G_i is a (-4)-curve contracting to 1/4(1,1) with discrepancy 1/2")
def _pq_ell():
    built = pairs.build_model(pairs.PlaneQuintic((1, 1, 1, 1, 1)))
    cs, S = built.model, built.model.resolution
    ok = (S["l"] == S.generator("L") - S.combination({f"G{i}": 1 for i in range(1, 6)})
          and picard.intersect(S, S["l"], S["l"]) == -4
          and cs.singularity_list == (CyclicQuotient(4, 1),)
          and cs.discrepancy["l"] == Fraction(1, 2))
    return ok, str(cs.singularity_list)


@_check("example quintic", "-K_X is ample against l', G1..G5 and K_X is not nef")
def _pq_ample():
    built = pairs.build_model(pairs.PlaneQuintic((1, 1, 1, 1, 1)))
    S = built.model.resolution
    pos = birational.is_ample(built.model, -S.K, built.testers).kind
    neg = birational.is_ample(built.model, S.K, built.testers).kind
    return (pos, neg) == ("Ample", "NotNef"), f"{pos}, {neg}"


@_check("example quintic", "K_X^2 = 5")
def _pq_k2():
    cs = pairs.build_model(pairs.PlaneQuintic((1, 1, 1, 1, 1))).model
    return _eq(birational.intersect_down(cs, cs.resolution.K, cs.resolution.K), Fraction(5))


# -- lattice and singularity primitives -------------------------------------------

@_check("lattice", "Sigma_5 has K^2 = 5 and (-2K)^2 = 20")
def _sigma5():
    S = pairs.sigma5()
    return _eq((picard.intersect(S, S.K, S.K), picard.intersect(S, -2 * S.K, -2 * S.K)),
               (Fraction(5), Fraction(20)))


@_check("lattice", "3e + 4f on P1xP1 has square 24, meets K in -14 and has genus 6")
def _quadric():
    S = picard.quadric({"D": (3, 4)})
    D = S["D"]
    return _eq((picard.intersect(S, D, D), picard.intersect(S, D, S.K), picard.adjunction_genus(S, D)),
               (Fraction(24), Fraction(-14), 6))


@_check("lattice", "a plane quintic has genus 6")
def _quintic_genus():
    S = picard.projective_plane({"D": 5})
    return _eq(picard.adjunction_genus(S, S["D"]), 6)


@_check("lattice", "a line through five blown-up points becomes a (-4)-curve")
def _line_blowup():
    S = picard.projective_plane({"l": 1})
    S = picard.blow_up_points(S, [BlowUpRecord({"l": 1}, f"G{i}") for i in range(1, 6)])
    return _eq(picard.intersect(S, S["l"], S["l"]), Fraction(-4))


@_check("singularities", "hj expansions: 1/4(1,1) -> [4], 1/20(1,9) -> [3,2,2,2,3], 1/8(1,3) -> [3,3]")
def _hj():
    got = [hjsing.hj_expand(CyclicQuotient(r, a)) for r, a in ((4, 1), (20, 9), (8, 3))]
    return _eq(got, [[4], [3, 2, 2, 2, 3], [3, 3]])


@_check("singularities", "hj contraction of [3,2,2,2,3] is 1/20(1,9)")
def _hj_contract():
    return _eq(hjsing.hj_contract([3, 2, 2, 2, 3]), CyclicQuotient(20, 9))


@_check("singularities", "class T: 1/20(1,9) = (2,5,1), 1/4(1,1) = (2,1,1), 1/5(1,2) is not T")
def _classt():
    got = [hjsing.classify_class_t(CyclicQuotient(r, a)) for r, a in ((20, 9), (4, 1), (5, 2))]
    return _eq(got, [hjsing.ClassT(hjsing.ClassTParams(2, 5, 1)), hjsing.ClassT(hjsing.ClassTParams(2, 1, 1)),
                     hjsing.NotT()])


@_check("singularities", "the canonical cover of 1/20(1,9) is A9")
def _cover():
    return _eq(hjsing.canonical_cover(hjsing.ClassTParams(2, 5, 1)), (ADE("A", 9), (1, 1, 1)))


@_check("singularities", "lct of the ordinary 5-fold point is 2/5")
def _lct55():
    return _eq(hjsing.lct_cusp(5, 5), Fraction(2, 5))


@_check("singularities", "lct of y^3 = x^7 is below 1/2")
def _lct37():
    v = hjsing.lct_cusp(3, 7)
    return v < Fraction(1, 2), str(v)


@_check("singularities", "double cover over 1/4(1,1) + A1 has A1 three times")
def _double_cover():
    got = hjsing.double_cover_singularities([CyclicQuotient(4, 1), ADE("A", 1)])
    return _eq(got, [ADE("A", 1)] * 3)


@_check("boundary", "boundary strata: Z1 (14, 2), Z2 (14, 1), Z3 (10)")
def _boundary():
    got = [(b.label, b.dimension, b.j_fiber_dimension) for b in
           (pairs.boundary_stratum(pairs.PlaneQuintic((5,))), pairs.boundary_stratum(pairs.TrigonalM0((4,))),
            pairs.boundary_stratum(pairs.Bielliptic()))]
    return _eq(got, [("Z1", 14, 2), ("Z2", 14, 1), ("Z3", 10, None)])


@_check("stability", "the wrong class 5L on Sigma_5 fails the anticanonical identity")
def _negative_control():
    S = pairs.sigma5({"W": 5})
    cs = birational.contract(S, [])
    check = pairs.check_stable_type12(cs, "W", pairs.sigma5_lines(S))
    return not check.anticanonical_identity, str(check)


# -- stable reduction --------------------------------------------------------------

def _scenario_checks(name: str) -> Iterator[CheckResult]:
    try:
        trace = reduction.run_scenario(name)
    except Exception as exc:  # noqa: BLE001 - reported as a failed identity
        yield CheckResult(f"scenario {name} runs to completion", "reduction", False, str(exc))
        return
    for entry in trace.entries:
        for ident in entry.identities:
            yield CheckResult(f"{name}: {ident.name}", "reduction", ident.passed, ident.detail)
    yield CheckResult(f"{name}: final record equals the builder output", "reduction",
                      bool(trace.matches_builder), "")


@_check("reduction", "contracting a component with K + B ample is refused")
def _refuse_ample():
    S = picard.projective_plane({"B": 4})
    T = picard.projective_plane({"B2": 1})
    fiber = reduction.CentralFiber(
        (reduction.Component("S1", birational.contract(S, []), "B"),
         reduction.Component("S2", birational.contract(T, []), "B2")), ((0, 1),))
    outcomes = []
    for cert in ("negative", "trivial"):
        try:
            reduction.contract_component(fiber, "S1", cert)
            outcomes.append("accepted")
        except reduction.CertificateError:
            outcomes.append("refused")
    return outcomes == ["refused", "refused"], str(outcomes)


SCENARIO_NAMES = tuple(reduction.SCENARIOS)


def run_all() -> list[CheckResult]:
    results = []
    for group, name, fn in _CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # noqa: BLE001 - a crash is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, group, bool(ok), detail if not ok else ""))
    for name in SCENARIO_NAMES:
        results.extend(r if not r.passed else CheckResult(r.name, r.group, True, "")
                       for r in _scenario_checks(name))
    return results
