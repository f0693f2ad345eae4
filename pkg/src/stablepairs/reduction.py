"""Replaying stable reduction on two-component central fibres.

A central fibre ``S_1 u S_2`` is a pair of components glued along double
curves ``B_1 ~ B_2``.  Rational components are :class:`ContractedSurface`
objects (a smooth model plus the curves already contracted on it), so a
singular component such as P(7,3,1) is carried by its minimal resolution.

The moves are

* ``flip``: a (-1)-curve ``F`` on one component meeting the double curve once
  is contracted there, and the point ``F n B`` is blown up on the other
  component;
* ``contract_component``: a component whose ``K + B`` is anti-ample (or
  trivial) is contracted onto the double curve of its neighbour;
* ``contract_chains``: negative chains on a surviving component, typically
  the neighbour's double curve, are contracted.

Every step records the identities it checked; a failing identity aborts the
scenario with :class:`ScenarioError`.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from . import hjsing, pairs
from .birational import (ContractedSurface, contract, intersect_down, is_ample, pullback)
from .jsonio import format_rational
from .picard import (BlowUpRecord, DivisorClass, SurfaceModel, adjunction_genus, blow_up,
                     intersect, projective_plane, quadric, hirzebruch)


class ScenarioError(AssertionError):
    pass


class FlipError(ValueError):
    pass


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class SpecialSurface:
    """A non-rational component kept as recorded data only."""

    description: str
    double_curve_square: Fraction
    double_curve_genus: int

    def to_json(self) -> dict:
        return {"description": self.description,
                "double_curve_square": format_rational(self.double_curve_square),
                "double_curve_genus": self.double_curve_genus}


ComponentSurface = Union[ContractedSurface, SpecialSurface, pairs.EllipticCone]


@dataclass(frozen=True)
class Component:
    name: str
    surface: ComponentSurface
    double_curve: str | None
    marked: tuple[str, ...] = ()  # named pieces of the marked curve

    @property
    def rational(self) -> bool:
        return isinstance(self.surface, ContractedSurface)

    def marked_class(self) -> DivisorClass | None:
        if not self.rational or not self.marked:
            return None
        S = self.surface.resolution
        return sum((S[m] for m in self.marked[1:]), S[self.marked[0]])

    def k_squared(self) -> Fraction:
        if isinstance(self.surface, ContractedSurface):
            K = self.surface.resolution.K
            return intersect_down(self.surface, K, K)
        if isinstance(self.surface, pairs.EllipticCone):
            return self.surface.k_squared
        raise ValueError(f"{self.name}: K^2 is not recorded for {self.surface.description}")

    def double_curve_square(self) -> Fraction:
        if isinstance(self.surface, SpecialSurface):
            return self.surface.double_curve_square
        B = self.surface.resolution[self.double_curve]
        return intersect_down(self.surface, B, B)

    def double_curve_genus(self) -> int:
        if isinstance(self.surface, SpecialSurface):
            return self.surface.double_curve_genus
        S = self.surface.resolution
        return adjunction_genus(S, S[self.double_curve])

    def marked_meets_double(self) -> int | None:
        if isinstance(self.surface, SpecialSurface):
            return None
        M = self.marked_class()
        if M is None:
            return 0
        S = self.surface.resolution
        return int(intersect(S, M, S[self.double_curve]))

    def summary(self) -> dict:
        out: dict = {"name": self.name, "double_curve": self.double_curve, "marked": list(self.marked)}
        if isinstance(self.surface, ContractedSurface):
            out.update({
                "model": "rational",
                "picard_rank": self.surface.picard_rank,
                "k_squared": format_rational(self.k_squared()),
                "singularities": [str(s) for s in self.surface.singularity_list],
                "contracted": list(self.surface.plan.names),
            })
            if self.double_curve:
                out["double_curve_square"] = format_rational(self.double_curve_square())
        elif isinstance(self.surface, SpecialSurface):
            out.update({"model": "special", **self.surface.to_json()})
        else:
            out.update(self.surface.to_json())
        return out


@dataclass(frozen=True)
class CentralFiber:
    components: tuple[Component, ...]
    gluing: tuple[tuple[int, int], ...] = ()
    base_change: int = 1

    def index(self, name: str) -> int:
        for i, c in enumerate(self.components):
            if c.name == name:
                return i
        raise KeyError(f"no component named {name!r}")

    def neighbour(self, i: int) -> int:
        for a, b in self.gluing:
            if a == i:
                return b
            if b == i:
                return a
        raise ValueError(f"component {self.components[i].name} is not glued to anything")

    def replace(self, i: int, comp: Component) -> "CentralFiber":
        comps = list(self.components)
        comps[i] = comp
        return dataclasses.replace(self, components=tuple(comps))

    def summary(self) -> list[dict]:
        return [c.summary() for c in self.components]


def _recontract(cs: ContractedSurface, S: SurfaceModel | None = None,
                extra: Sequence[str] = ()) -> ContractedSurface:
    S = cs.resolution if S is None else S
    return contract(S, list(cs.plan.names) + list(extra))


def rename_tracked(S: SurfaceModel, mapping: Mapping[str, str]) -> SurfaceModel:
    return dataclasses.replace(S, tracked={mapping.get(k, k): v for k, v in S.tracked.items()})


def _drop(S: SurfaceModel, *names: str) -> SurfaceModel:
    return dataclasses.replace(S, tracked={k: v for k, v in S.tracked.items() if k not in names})


def flip_negativity(comp: Component, curve: str) -> tuple[Fraction, Fraction]:
    """``(a, b)`` with ``(K + alpha M + B).F = a + b alpha`` on the resolution."""
    S = comp.surface.resolution
    F = S[curve]
    M = comp.marked_class()
    a = intersect(S, S.K + S[comp.double_curve], F)
    b = intersect(S, M, F) if M is not None else Fraction(0)
    return a, b


def negative_for_alpha_above_half(a: Fraction, b: Fraction) -> bool:
    """``a + b alpha < 0`` for every ``alpha > 1/2``."""
    if b > 0:
        return False
    if b == 0:
        return a < 0
    return a + b / 2 <= 0


def flip(fiber: CentralFiber, comp: int | str, curve: str, new_label: str) -> CentralFiber:
    """Contract the (-1)-curve ``curve`` on ``comp`` and blow up its foot on the neighbour."""
    i = fiber.index(comp) if isinstance(comp, str) else comp
    j = fiber.neighbour(i)
    c, nb = fiber.components[i], fiber.components[j]
    if not (c.rational and nb.rational):
        raise FlipError("flips need rational components on both sides")
    cs = c.surface
    S = cs.resolution
    F = S[curve]
    if intersect(S, F, F) != -1:
        raise FlipError(f"{curve} is not a (-1)-curve (square {intersect(S, F, F)})")
    if any(intersect(S, F, E) != 0 for _, E in cs.plan.curves):
        raise FlipError(f"{curve} meets a contracted curve")
    if intersect(S, F, S[c.double_curve]) != 1:
        raise FlipError(f"{curve} does not meet the double curve transversely in one point")
    a, b = flip_negativity(c, curve)
    if not negative_for_alpha_above_half(a, b):
        raise FlipError(f"{curve} is not (K + alpha C + B)-negative for alpha > 1/2: {a} + {b} alpha")

    center = {nb.double_curve: 1}
    if curve in c.marked:
        if len(nb.marked) != 1:
            raise FlipError("ambiguous marked curve on the neighbouring component")
        center[nb.marked[0]] = 1
    nb_res = blow_up(nb.surface.resolution, BlowUpRecord(center, new_label))
    new_c = dataclasses.replace(c, surface=_recontract(cs, extra=[curve]),
                                marked=tuple(m for m in c.marked if m != curve))
    new_nb = dataclasses.replace(nb, surface=_recontract(nb.surface, nb_res))
    return fiber.replace(i, new_c).replace(j, new_nb)


def default_testers(cs: ContractedSurface, exclude: Sequence[str] = ()) -> dict[str, DivisorClass]:
    S = cs.resolution
    return {n: S[n] for n in S.tracked if n not in exclude}


def contract_component(fiber: CentralFiber, comp: int | str, certificate: str,
                       testers: Mapping[str, DivisorClass] | None = None) -> CentralFiber:
    """Divisorially contract a component onto its neighbour's double curve.

    ``certificate`` is ``"negative"`` (``-(K + B)`` ample, checked against
    ``testers``) or ``"trivial"`` (``K + B`` numerically zero).
    """
    i = fiber.index(comp) if isinstance(comp, str) else comp
    j = fiber.neighbour(i)
    c, nb = fiber.components[i], fiber.components[j]
    if not c.rational:
        raise CertificateError("only rational components carry a lattice certificate")
    cs = c.surface
    S = cs.resolution
    kb = S.K + S[c.double_curve]
    if certificate == "trivial":
        if not pullback(cs, kb).is_zero():
            raise CertificateError(f"K + B is not trivial on {c.name}")
    elif certificate == "negative":
        verdict = is_ample(cs, -kb, testers or default_testers(cs))
        if verdict.kind != "Ample":
            raise CertificateError(f"-(K + B) is not ample on {c.name}: {verdict.kind} {verdict.witnesses}")
    else:
        raise ValueError(f"unknown certificate {certificate!r}")
    if c.marked:
        raise CertificateError(f"{c.name} still carries part of the marked curve")
    if nb.double_curve_square() >= 0:
        raise CertificateError(f"double curve of {nb.name} is not contractible")

    if isinstance(nb.surface, SpecialSurface):
        if nb.double_curve_genus() != 1:
            raise CertificateError("only elliptic double curves are handled on special components")
        degree = -nb.double_curve_square()
        if degree.denominator != 1:
            raise CertificateError("non-integral elliptic cone degree")
        nb = Component(nb.name, pairs.EllipticCone(int(degree)), None, nb.marked)
    survivors = [nb if k == j else x for k, x in enumerate(fiber.components) if k != i]
    return CentralFiber(tuple(survivors), (), fiber.base_change)


def contract_chains(fiber: CentralFiber, comp: int | str, curves: Sequence[str]) -> CentralFiber:
    i = fiber.index(comp) if isinstance(comp, str) else comp
    c = fiber.components[i]
    if not c.rational:
        raise ValueError("contract_chains needs a rational component")
    cs = _recontract(c.surface, extra=curves)
    double = None if c.double_curve in curves else c.double_curve
    return fiber.replace(i, dataclasses.replace(c, surface=cs, double_curve=double))


# -- tracing -------------------------------------------------------------------

@dataclass
class Identity:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class TraceEntry:
    step: dict
    before: list[dict]
    after: list[dict]
    identities: list[Identity] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"step": self.step, "before": self.before, "after": self.after,
                "identities": [x.to_json() for x in self.identities]}


@dataclass
class Trace:
    scenario: str
    entries: list[TraceEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    final_report: pairs.PairReport | None = None
    matches_builder: bool | None = None

    def to_json(self, steps: bool = True) -> dict:
        out = {
            "scenario": self.scenario,
            "final_report": self.final_report.to_json() if self.final_report else None,
            "matches_builder": self.matches_builder,
            "notes": list(self.notes),
            "identities_checked": sum(len(e.identities) for e in self.entries),
        }
        if steps:
            out["steps"] = [e.to_json() for e in self.entries]
        return out


class _Recorder:
    def __init__(self, trace: Trace):
        self.trace = trace
        self.pending: list[Identity] = []

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        ident = Identity(name, bool(ok), detail)
        self.pending.append(ident)
        if not ok:
            self.trace.entries.append(TraceEntry({"kind": "check"}, [], [], self.pending))
            raise ScenarioError(f"{self.trace.scenario}: identity failed: {name} ({detail})")

    def equal(self, name: str, got, expected) -> None:
        self.check(name, got == expected, f"got {_show(got)}, expected {_show(expected)}")

    def step(self, step: dict, before: CentralFiber | None, after: CentralFiber) -> None:
        self.trace.entries.append(TraceEntry(step, before.summary() if before else [], after.summary(),
                                             self.pending))
        self.pending = []


def _show(x) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_show(y) for y in x) + "]"
    return str(x)


def _check_fiber(rec: _Recorder, fiber: CentralFiber) -> None:
    """Gluing consistency of a two-component fibre."""
    for a, b in fiber.gluing:
        ca, cb = fiber.components[a], fiber.components[b]
        rec.equal(f"double curves {ca.double_curve} and {cb.double_curve} have the same genus",
                  ca.double_curve_genus(), cb.double_curve_genus())
        total = ca.double_curve_square() + cb.double_curve_square()
        rec.equal(f"triple point formula {ca.double_curve}^2 + {cb.double_curve}^2 = 0", total, Fraction(0))
        ma, mb = ca.marked_meets_double(), cb.marked_meets_double()
        if ma is not None and mb is not None:
            rec.equal("marked curve meets the double curve equally from both sides", ma, mb)


def _total_k2(fiber: CentralFiber) -> Fraction:
    return sum((c.k_squared() for c in fiber.components), Fraction(0))


def _flip_all(rec: _Recorder, fiber: CentralFiber, comp: str, curves: Sequence[str],
              labels: Sequence[str]) -> CentralFiber:
    for curve, label in zip(curves, labels):
        i = fiber.index(comp)
        a, b = flip_negativity(fiber.components[i], curve)
        rec.check(f"{curve} is (K + alpha C + B)-negative for alpha > 1/2",
                  negative_for_alpha_above_half(a, b), f"{_show(a)} + ({_show(b)}) alpha")
        k2 = _total_k2(fiber)
        new = flip(fiber, comp, curve, label)
        rec.equal(f"total K^2 preserved by flipping {curve}", _total_k2(new), k2)
        j = fiber.neighbour(i)
        rec.equal(f"{comp} Picard rank drops by one", new.components[i].surface.picard_rank,
                  fiber.components[i].surface.picard_rank - 1)
        rec.equal(f"{fiber.components[j].name} Picard rank grows by one", new.components[j].surface.picard_rank,
                  fiber.components[j].surface.picard_rank + 1)
        _check_fiber(rec, new)
        rec.step({"kind": "Flip", "component": comp, "curve": curve, "new_label": label}, fiber, new)
        fiber = new
    return fiber


def _final_report(rec: _Recorder, trace: Trace, fiber: CentralFiber, spec: pairs.StratumSpec) -> None:
    comp = fiber.components[0]
    rec.equal("a single component survives", len(fiber.components), 1)
    cs = comp.surface
    report = pairs.make_report(spec, cs, comp.marked_class(), default_testers(cs, exclude=comp.marked))
    _, expected = pairs.build_pair(spec)
    trace.final_report = report
    trace.matches_builder = report == expected
    rec.check(f"final pair matches the {spec.key} builder field by field", trace.matches_builder)
    built = pairs.build_model(spec)
    rec.equal("final resolution lattice equals the builder's", (cs.resolution.gram, cs.resolution.K),
              (built.model.resolution.gram, built.model.resolution.K))
    rec.step({"kind": "Report", "stratum": spec.key}, None, fiber)


# -- scenarios -----------------------------------------------------------------

def _quintic_11111(trace: Trace) -> None:
    rec = _Recorder(trace)
    lines = {f"F{i}": 1 for i in range(1, 5)}
    mult = {f"F{i}": tuple(int(k == i) for k in range(1, 5)) for i in range(1, 5)}
    sigma = pairs.sigma5({**lines, "F5": 2, "C0": 6}, {**mult, "F5": (1, 1, 1, 1), "C0": (2, 2, 2, 2)})
    rec.check("C0 ~ -2K on Sigma_5", sigma["C0"] == -2 * sigma.K)
    rec.check("C0 is four lines and a conic through the fifth point",
              sigma["C0"] == sigma.combination({f"F{i}": 1 for i in range(1, 6)}))
    lct = hjsing.lct_cusp(5, 5)
    rec.check("lct of the ordinary 5-fold point is 2/5 < 1/2", lct == Fraction(2, 5) and lct < Fraction(1, 2))

    fiber0 = CentralFiber((), ())
    fiber0 = dataclasses.replace(fiber0, base_change=5)
    trace.entries.append(TraceEntry({"kind": "BaseChange", "k": 5}, [], [], []))

    center = {f"F{i}": 1 for i in range(1, 6)}
    center["C0"] = 5
    S1 = rename_tracked(blow_up(sigma, BlowUpRecord(center, "E5")), {"C0": "C1"})
    H = S1.generator("L")
    for i in range(1, 5):
        rec.equal(f"F{i} = H - E{i} - E5", S1[f"F{i}"], H - S1.generator(f"E{i}") - S1.generator("E5"))
    rec.equal("F5 = 2H - E1 - ... - E5", S1["F5"],
              2 * H - sum((S1.generator(f"E{k}") for k in range(1, 6)), DivisorClass.zero(S1.rank)))
    rec.equal("C1 = F1 + ... + F5", S1["C1"], S1.combination({f"F{i}": 1 for i in range(1, 6)}))
    for i in range(1, 6):
        F = S1[f"F{i}"]
        rec.equal(f"F{i} is a (-1)-curve", intersect(S1, F, F), Fraction(-1))
    # C1 is reducible, so it is carried through its parts only
    c1 = Component("S1", contract(_drop(S1, "C1"), []), "E5", tuple(f"F{i}" for i in range(1, 6)))
    c2 = Component("S2", contract(projective_plane({"B2": 1, "C2": 5}), []), "B2", ("C2",))
    fiber = CentralFiber((c1, c2), ((0, 1),), 5)
    rec.equal("S1 is a quartic del Pezzo surface: K^2", c1.k_squared(), Fraction(4))
    rec.equal("S2 is P^2: K^2", c2.k_squared(), Fraction(9))
    rec.equal("S2 marked curve has genus 6", adjunction_genus(c2.surface.resolution, c2.marked_class()), 6)
    _check_fiber(rec, fiber)
    rec.step({"kind": "WeightedBlowUp", "center": "5-fold point of C0",
              "multiplicities": {**{f"F{i}": 1 for i in range(1, 6)}, "C0": 5}}, None, fiber)

    fiber = _flip_all(rec, fiber, "S1", [f"F{i}" for i in range(1, 6)], [f"G{i}" for i in range(1, 6)])
    s1, s2 = fiber.components
    rec.equal("S1' has Picard rank 1", s1.surface.picard_rank, 1)
    rec.equal("S1' has K^2 = 9 (so it is P^2)", s1.k_squared(), Fraction(9))
    rec.equal("B1' is a conic: B1'^2", s1.double_curve_square(), Fraction(4))
    rec.equal("S1' carries no marked curve", s1.marked, ())
    rec.equal("B2' is a (-4)-curve on P^2 blown up at 5 collinear points", s2.double_curve_square(), Fraction(-4))
    res1 = s1.surface.resolution
    kb = pullback(s1.surface, res1.K + res1[s1.double_curve])
    rec.equal("K + B1' = -H' with H'^2 = 1", intersect(res1, kb, kb), Fraction(1))

    before = fiber
    fiber = contract_component(fiber, "S1", "negative")
    rec.step({"kind": "ContractComponent", "component": "S1", "certificate": "K + B = -H'"}, before, fiber)
    before = fiber
    fiber = contract_chains(fiber, "S2", ["B2"])
    rec.equal("contracting B2' gives 1/4(1,1)", fiber.components[0].surface.singularity_list,
              (hjsing.CyclicQuotient(4, 1),))
    rec.step({"kind": "ContractChains", "component": "S2", "curves": ["B2"]}, before, fiber)
    _final_report(rec, trace, fiber, pairs.PlaneQuintic((1, 1, 1, 1, 1)))


def _trigonal_2_4(trace: Trace) -> None:
    rec = _Recorder(trace)
    sigma = pairs.sigma5({"C0": 6}, {"C0": (2, 2, 2, 2)})
    rec.check("C0 ~ -2K on Sigma_5", sigma["C0"] == -2 * sigma.K)
    lct = hjsing.lct_cusp(3, 7)
    rec.check("lct of y^3 = x^7 is 10/21 < 1/2", lct == Fraction(10, 21) and lct < Fraction(1, 2))
    trace.notes.append("local stable reduction of the cusp is cited (Has00); no base change degree is recorded")

    script = [
        ({"C0": 3}, "F1"),
        ({"C0": 3, "F1": 1}, "F2"),
        ({"C0": 1, "F2": 1}, "F3"),
        ({"C0": 1, "F2": 1, "F3": 1}, "F4"),
        ({"C0": 1, "F2": 1, "F4": 1}, "F5"),
    ]
    S1 = sigma
    for center, label in script:
        S1 = blow_up(S1, BlowUpRecord(center, label))
    S1 = rename_tracked(S1, {"C0": "C1"})
    F = ["F1", "F2", "F3", "F4", "F5"]
    rec.equal("pullback of -2K: -2K_S1 + 2F1 + 4F2 + 6F3 + 12F4 + 18F5", S1.lift(-2 * sigma.K),
              -2 * S1.K + S1.combination(dict(zip(F, (2, 4, 6, 12, 18)))))
    rec.equal("pullback of C0: C1 + 3F1 + 6F2 + 7F3 + 14F4 + 21F5", S1.lift(sigma["C0"]),
              S1.combination(dict(zip(["C1"] + F, (1, 3, 6, 7, 14, 21)))))
    rec.equal("-2K_S1 = C1 + F1 + 2F2 + F3 + 2F4 + 3F5", -2 * S1.K,
              S1.combination(dict(zip(["C1"] + F, (1, 1, 2, 1, 2, 3)))))
    rec.equal("C1 is a (-1)-curve", intersect(S1, S1["C1"], S1["C1"]), Fraction(-1))
    rec.equal("self-intersections of F1..F5", [intersect(S1, S1[f], S1[f]) for f in F],
              [Fraction(v) for v in (-2, -4, -2, -2, -1)])
    cs1 = contract(S1, ["F1", "F2", "F3", "F4"])
    rec.equal("S1 has 1/7(1,4) and 1/3(1,2) = A2 along F5", cs1.singularity_list,
              hjsing.canonical_list([hjsing.CyclicQuotient(7, 4), hjsing.ADE("A", 2)]))

    # P(7,3,1) through its minimal resolution: F2 blown up three times along f_p
    R = hirzebruch(2, {"C2": (3, 7), "e": (1, 0), "f_p": (0, 1)})
    for center, label in [({"C2": 1, "e": 1, "f_p": 1}, "G1"),
                          ({"C2": 1, "f_p": 1, "G1": 1}, "G2"),
                          ({"C2": 1, "f_p": 1, "G2": 1}, "G3")]:
        R = blow_up(R, BlowUpRecord(center, label))
    cs2 = contract(R, ["e", "G1", "G2", "f_p"])
    rec.equal("S2 has 1/7(1,3) and 1/3(1,1)", cs2.singularity_list,
              hjsing.canonical_list([hjsing.CyclicQuotient(7, 3), hjsing.CyclicQuotient(3, 1)]))
    rec.equal("S2 has Picard rank 1", cs2.picard_rank, 1)
    rec.equal("K^2 of P(7,3,1) is (7+3+1)^2/(7*3*1)", intersect_down(cs2, R.K, R.K), Fraction(121, 21))

    chains1 = {hjsing.hj_contract([int(-intersect(S1, S1[n], S1[n])) for n in cs1.plan.component_names(i)])
               for i in range(len(cs1.plan.components))}
    chains2 = {hjsing.hj_contract([int(-intersect(R, R[n], R[n])) for n in cs2.plan.component_names(i)])
               for i in range(len(cs2.plan.components))}
    paired = {(s.r, s.a, t.a) for s in chains1 for t in chains2 if s.r == t.r}
    rec.check("singular points on the double curve glue as 1/r(1,a) and 1/r(1,r-a)",
              len(paired) == 2 and all(a + b == r for r, a, b in paired), str(sorted(paired)))

    c1 = Component("S1", cs1, "F5", ("C1",))
    c2 = Component("S2", cs2, "G3", ("C2",))
    fiber = CentralFiber((c1, c2), ((0, 1),))
    rec.equal("S2 marked curve is a smooth genus six curve", adjunction_genus(R, R["C2"]), 6)
    rec.check("C2 avoids the singular points of S2",
              all(intersect(R, R["C2"], E) == 0 for _, E in cs2.plan.curves))
    _check_fiber(rec, fiber)
    rec.step({"kind": "WeightedBlowUp", "center": "cusp y^3 = x^7 of C0",
              "multiplicities": [{"center_on": c, "new_label": l} for c, l in script]}, None, fiber)

    fiber = _flip_all(rec, fiber, "S1", ["C1"], ["G4"])
    s1, s2 = fiber.components
    res1 = s1.surface.resolution
    pb = pullback(s1.surface, -2 * res1.K - 2 * res1["F5"])
    expected = res1.combination({"C1": 1, "F1": Fraction(1, 7), "F2": Fraction(2, 7), "F3": Fraction(1, 3),
                                 "F4": Fraction(2, 3), "F5": 1})
    rec.equal("pullback(-2K - 2F5') = C1 + F1/7 + 2F2/7 + F3/3 + 2F4/3 + F5", pb, expected)
    rec.equal("that divisor is positive on F5", intersect(res1, pb, res1["F5"]), Fraction(20, 21))
    rec.equal("the contraction of S1' has relative Picard number 5", s1.surface.picard_rank, 5)
    trace.notes.append("the total space after contracting S1' is not Q-factorial (recorded, not computed)")

    before = fiber
    testers = {n: res1[n] for n in ["F5", "C1", "F1", "F2", "F3", "F4"]}
    fiber = contract_component(fiber, "S1", "negative", testers)
    rec.step({"kind": "ContractComponent", "component": "S1", "certificate": "-K - F5' ample"}, before, fiber)
    before = fiber
    fiber = contract_chains(fiber, "S2", ["G3"])
    rec.equal("contracting B2' gives 1/20(1,9)", fiber.components[0].surface.singularity_list,
              (hjsing.CyclicQuotient(20, 9),))
    rec.step({"kind": "ContractChains", "component": "S2", "curves": ["G3"]}, before, fiber)
    _final_report(rec, trace, fiber, pairs.TrigonalM2(4))


def _trigonal_0_1111(trace: Trace) -> None:
    rec = _Recorder(trace)
    sigma = pairs.sigma5({"Q": 2}, {"Q": (1, 1, 1, 1)})
    marked = ("E1", "E2", "E3", "E4")
    rec.check("3 Q + E1 + ... + E4 ~ -2K on Sigma_5",
              3 * sigma["Q"] + sigma.combination({e: 1 for e in marked}) == -2 * sigma.K)
    c1 = Component("S1", contract(sigma, []), "Q", marked)
    c2 = Component("S2", contract(quadric({"B2": (1, 0), "f": (0, 1), "C2": (3, 4)}), []), "B2", ("C2",))
    fiber = CentralFiber((c1, c2), ((0, 1),))
    rec.equal("S2 marked curve has genus 6", adjunction_genus(c2.surface.resolution, c2.marked_class()), 6)
    _check_fiber(rec, fiber)
    rec.step({"kind": "WeightedBlowUp", "center": "reduced conic Q"}, None, fiber)

    fiber = _flip_all(rec, fiber, "S1", list(marked), ["G1", "G2", "G3", "G4"])
    s1, s2 = fiber.components
    rec.equal("S1' has Picard rank 1", s1.surface.picard_rank, 1)
    rec.equal("S1' has K^2 = 9 (so it is P^2)", s1.k_squared(), Fraction(9))
    rec.equal("B1' is a conic", s1.double_curve_square(), Fraction(4))
    rec.equal("S2' is P1xP1 blown up at four points of a ruling: B2'^2", s2.double_curve_square(), Fraction(-4))

    before = fiber
    fiber = contract_component(fiber, "S1", "negative")
    rec.step({"kind": "ContractComponent", "component": "S1", "certificate": "K + B = -H'"}, before, fiber)
    before = fiber
    fiber = contract_chains(fiber, "S2", ["B2"])
    rec.step({"kind": "ContractChains", "component": "S2", "curves": ["B2"]}, before, fiber)
    _final_report(rec, trace, fiber, pairs.TrigonalM0((1, 1, 1, 1)))


def _bielliptic(trace: Trace) -> None:
    rec = _Recorder(trace)
    sigma = pairs.sigma5({"Q3": 3}, {"Q3": (1, 1, 1, 1)})
    rec.check("2 Q3 ~ -2K on Sigma_5", 2 * sigma["Q3"] == -2 * sigma.K)
    c1 = Component("S1", contract(sigma, []), "Q3", ())
    b1sq = c1.double_curve_square()
    S2 = SpecialSurface("minimal resolution of the elliptic cone", -b1sq, c1.double_curve_genus())
    c2 = Component("S2", S2, "B2", ("C2",))
    fiber = CentralFiber((c1, c2), ((0, 1),))
    rec.equal("B1 is an elliptic curve", c1.double_curve_genus(), 1)
    rec.equal("B1^2 = 5", b1sq, Fraction(5))
    _check_fiber(rec, fiber)
    trace.notes.append("S2 is not rational; its double curve data follow from the triple point formula")
    rec.step({"kind": "WeightedBlowUp", "center": "reduced cubic Q3"}, None, fiber)

    before = fiber
    fiber = contract_component(fiber, "S1", "trivial")
    cone = fiber.components[0].surface
    rec.equal("result is the elliptic cone of degree 5", cone, pairs.EllipticCone(5))
    rec.step({"kind": "ContractComponent", "component": "S1", "certificate": "K + B = 0"}, before, fiber)
    report = pairs.elliptic_cone_report(cone.degree)
    _, expected = pairs.build_pair(pairs.Bielliptic())
    trace.final_report = report
    trace.matches_builder = report == expected
    rec.check("final record matches the bielliptic builder", trace.matches_builder)
    rec.step({"kind": "Report", "stratum": "bielliptic"}, None, fiber)


SCENARIOS: dict[str, Callable[[Trace], None]] = {
    "quintic-11111": _quintic_11111,
    "trigonal-2-4": _trigonal_2_4,
    "trigonal-0-1111": _trigonal_0_1111,
    "bielliptic": _bielliptic,
}


def run_scenario(name: str) -> Trace:
    try:
        script = SCENARIOS[name]
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}") from None
    trace = Trace(name)
    script(trace)
    return trace
