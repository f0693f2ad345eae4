"""Stable pairs ``(X, D)`` of type (1, 2) with ``K_X^2 = 5`` over special genus six curves.

Each builder scripts the blow-up sequence that separates the marked curve
``D`` from the marking curve (a line, a ruling, or section plus fibre),
contracts the resulting negative chains, and then verifies the stability
identities on the minimal resolution:

* ``pullback(D) == pullback(-2 K_X)``,
* ``-K_X`` is positive on the builder's tester curves and ``K_X^2 = 5``,
* ``D`` is disjoint from every curve contracted to a singular point.

Contact order ``a`` between ``D`` and the marking curve at a point costs a
chain of ``a`` infinitely-near blow-ups; the first ``a - 1`` exceptional
curves end up as (-2)-curves (an ``A_{a-1}`` point) and the last one is the
(-1)-curve meeting both strict transforms.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence, Union

from . import hjsing
from .birational import (AmpleVerdict, ContractedSurface, avoids_contracted, contract,
                         intersect_down, is_ample, pullback)
from .hjsing import ADE, CyclicQuotient, SimpleElliptic
from .jsonio import format_rational
from .picard import (BlowUpRecord, DivisorClass, SurfaceModel, adjunction_genus, blow_up,
                     hirzebruch, is_linearly_equivalent, projective_plane, quadric)


class StratumError(ValueError):
    pass


def _partition(parts: Sequence[int], total: int, what: str) -> tuple[int, ...]:
    parts = tuple(int(a) for a in parts)
    if any(a < 1 for a in parts):
        raise StratumError(f"{what}: entries must be positive, got {parts}")
    if sum(parts) != total:
        raise StratumError(f"{what}: entries must sum to {total}, got {parts}")
    return tuple(sorted(parts, reverse=True))


@dataclass(frozen=True)
class PlaneQuintic:
    partition: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "partition", _partition(self.partition, 5, "plane quintic"))

    @property
    def key(self) -> str:
        return "quintic-" + "".join(map(str, self.partition))

    @property
    def label(self) -> str:
        return f"plane quintic of type {self.partition}"


@dataclass(frozen=True)
class TrigonalM0:
    partition: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "partition", _partition(self.partition, 4, "trigonal M=0"))

    @property
    def key(self) -> str:
        return "trigonal-0-" + "".join(map(str, self.partition))

    @property
    def label(self) -> str:
        return f"trigonal of type (0; {', '.join(map(str, self.partition))})"


@dataclass(frozen=True)
class TrigonalM2:
    a1: int
    rest: tuple[int, ...] = ()

    def __post_init__(self):
        if not 1 <= self.a1 <= 4:
            raise StratumError(f"trigonal M=2: a1 must lie in 1..4, got {self.a1}")
        object.__setattr__(self, "rest", _partition(self.rest, 4 - self.a1, "trigonal M=2 remainder"))

    @property
    def key(self) -> str:
        tail = "-" + "".join(map(str, self.rest)) if self.rest else ""
        return f"trigonal-2-{self.a1}{tail}"

    @property
    def label(self) -> str:
        return f"trigonal of type (2; [{self.a1}]{''.join(', ' + str(a) for a in self.rest)})"


@dataclass(frozen=True)
class Bielliptic:
    key = "bielliptic"
    label = "bielliptic"


@dataclass(frozen=True)
class HyperellipticA13:
    key = "hyperelliptic-a13"
    label = "sextic in |-2K| on Sigma_5 with an A13 point"


StratumSpec = Union[PlaneQuintic, TrigonalM0, TrigonalM2, Bielliptic, HyperellipticA13]

_FAMILY_ORDER = {PlaneQuintic: 0, TrigonalM0: 1, TrigonalM2: 2, Bielliptic: 3, HyperellipticA13: 4}


def stratum_sort_key(spec: StratumSpec) -> tuple:
    fam = _FAMILY_ORDER[type(spec)]
    if isinstance(spec, (PlaneQuintic, TrigonalM0)):
        return (fam, tuple(-a for a in spec.partition))
    if isinstance(spec, TrigonalM2):
        return (fam, (-spec.a1,) + tuple(-a for a in spec.rest))
    return (fam, ())


def parse_stratum(key: str) -> StratumSpec:
    """Parse keys such as ``quintic-2111``, ``trigonal-0-1111``, ``trigonal-2-2-11``."""
    key = key.strip().lower()
    spec = _parse_stratum(key)
    if spec.key != key:
        raise StratumError(f"non-canonical stratum key {key!r}; did you mean {spec.key!r}?")
    return spec


def _parse_stratum(key: str) -> StratumSpec:
    if key == Bielliptic.key:
        return Bielliptic()
    if key == HyperellipticA13.key:
        return HyperellipticA13()
    m = re.fullmatch(r"quintic-(\d+)", key)
    if m:
        return PlaneQuintic(tuple(int(c) for c in m[1]))
    m = re.fullmatch(r"trigonal-0-(\d+)", key)
    if m:
        return TrigonalM0(tuple(int(c) for c in m[1]))
    m = re.fullmatch(r"trigonal-2-(\d)(?:-(\d+))?", key)
    if m:
        return TrigonalM2(int(m[1]), tuple(int(c) for c in (m[2] or "")))
    raise StratumError(f"unrecognised stratum {key!r}")


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for tail in _partitions(n - first, first):
            yield (first,) + tail


def all_strata() -> list[StratumSpec]:
    specs: list[StratumSpec] = [PlaneQuintic(p) for p in _partitions(5)]
    specs += [TrigonalM0(p) for p in _partitions(4)]
    specs += [TrigonalM2(a1, rest) for a1 in range(1, 5) for rest in _partitions(4 - a1)]
    specs += [Bielliptic(), HyperellipticA13()]
    return sorted(specs, key=stratum_sort_key)


@dataclass(frozen=True)
class BoundaryStratum:
    label: str
    dimension: int | None
    j_fiber_dimension: int | None
    note: str = ""

    def to_json(self) -> dict:
        return {"label": self.label, "dimension": self.dimension,
                "j_fiber_dimension": self.j_fiber_dimension, "note": self.note}


def boundary_stratum(spec: StratumSpec) -> BoundaryStratum:
    """Stored dimension data of the boundary loci containing each pair."""
    if isinstance(spec, PlaneQuintic):
        return BoundaryStratum("Z1", 14, 2, "plane quintics (12) plus five points on a line (2)")
    if isinstance(spec, (TrigonalM0, TrigonalM2)):
        return BoundaryStratum("Z2", 14, 1, "trigonal curves (13) plus four points on P^1 (1)")
    if isinstance(spec, Bielliptic):
        return BoundaryStratum("Z3", 10, None, "bielliptic locus (10); the involution is unique")
    if isinstance(spec, HyperellipticA13):
        return BoundaryStratum("Interior", None, None, "Sigma_5 is smooth")
    raise TypeError(f"not a stratum: {spec!r}")


@dataclass(frozen=True)
class Fact:
    statement: str
    source: str

    def to_json(self) -> dict:
        return {"statement": self.statement, "source": self.source}


_RATIONAL_FACTS = (
    Fact("(X, D) is slc: X is log terminal with class T singularities and D avoids them", "KSB88"),
    Fact("chi(O_X) = 1: X is rational with rational singularities", "standard"),
    Fact("(X, D) admits a Q-Gorenstein smoothing to (Sigma_5, C) with C smooth in |-2K|",
         "HP10 (no local-to-global obstructions), Has99"),
    Fact("the double cover of X branched along D is a K3 surface with Gorenstein slc singularities", "Sh79"),
)

_BIELLIPTIC_FACTS = (
    Fact("X is the cone over an elliptic normal quintic curve in P^4; its vertex is simple elliptic of degree 5",
         "Ko05"),
    Fact("K_X^2 = 5 and D is a quadric section avoiding the vertex, so D ~ -2K_X is ample", "Ko05"),
    Fact("(X, D) is a smoothable slc stable pair; any smoothing of the Gorenstein vertex is Q-Gorenstein",
         "Pi74, HP10"),
    Fact("the bielliptic involution of a genus six curve is unique", "Acc94"),
    Fact("the K3 double cover has a simple elliptic singularity; its degree is not recorded", "Sh79"),
)

_A13_FACTS = (
    Fact("a plane sextic with an A13 point and four nodes in general position exists", "Ya96"),
    Fact("stable reduction of an A13 curve yields a smooth hyperelliptic genus six curve, and every one arises",
         "Has00"),
    Fact("(Sigma_5, D) is a stable pair and deforms to (Sigma_5, C) with C smooth", "DH18"),
)


@dataclass(frozen=True)
class StabilityCheck:
    k_squared: Fraction
    anticanonical_identity: bool
    ampleness: AmpleVerdict
    avoids_sings: bool
    genus: int | None

    @property
    def passed(self) -> bool:
        return (self.k_squared == 5 and self.anticanonical_identity
                and self.ampleness.kind == "Ample" and self.avoids_sings)


def check_stable_type12(cs: ContractedSurface, d: DivisorClass | str,
                        testers: Mapping[str, DivisorClass] | None) -> StabilityCheck:
    """Verify the numerical half of stability of type (1, 2) for ``(X, D)``.

    slc-ness and ``chi(O_X) = 1`` are not computed; builders record them as
    documented facts.
    """
    if not testers:
        raise ValueError("check_stable_type12 needs the builder's tester set")
    S = cs.resolution
    if isinstance(d, str):
        d = S[d]
    K = S.K
    identity = is_linearly_equivalent(S, pullback(cs, d), pullback(cs, -2 * K))
    try:
        genus = adjunction_genus(S, d)
    except ValueError:
        genus = None
    return StabilityCheck(
        k_squared=intersect_down(cs, K, K),
        anticanonical_identity=identity,
        ampleness=is_ample(cs, -K, testers),
        avoids_sings=avoids_contracted(cs, d),
        genus=genus,
    )


@dataclass(frozen=True)
class PairReport:
    stratum: StratumSpec
    surface_sings: tuple[hjsing.SingularityType, ...]
    curve_sings: tuple[hjsing.SingularityType, ...]
    k_squared: Fraction
    anticanonical_identity: bool
    ampleness: AmpleVerdict
    avoids_sings: bool
    boundary: BoundaryStratum
    k3_sings: tuple[hjsing.SingularityType, ...]
    genus: int | None
    documented_facts: tuple[Fact, ...] = ()

    @property
    def is_stable(self) -> bool:
        return (self.k_squared == 5 and self.anticanonical_identity
                and self.ampleness.kind == "Ample" and self.avoids_sings)

    def to_json(self) -> dict:
        return {
            "stratum": {"key": self.stratum.key, "label": self.stratum.label},
            "surface_sings": [s.to_json() for s in self.surface_sings],
            "curve_sings": [s.to_json() for s in self.curve_sings],
            "k_squared": format_rational(self.k_squared),
            "anticanonical_identity": self.anticanonical_identity,
            "ampleness": self.ampleness.to_json(),
            "avoids_sings": self.avoids_sings,
            "boundary": self.boundary.to_json(),
            "k3_sings": [s.to_json() for s in self.k3_sings],
            "genus": self.genus,
            "documented_facts": [f.to_json() for f in self.documented_facts],
        }


def make_report(spec: StratumSpec, cs: ContractedSurface, marked: DivisorClass | str,
                testers: Mapping[str, DivisorClass],
                curve_sings: Sequence[hjsing.SingularityType] = (),
                facts: Sequence[Fact] = _RATIONAL_FACTS) -> PairReport:
    check = check_stable_type12(cs, marked, testers)
    surface_sings = cs.singularity_list
    return PairReport(
        stratum=spec,
        surface_sings=surface_sings,
        curve_sings=hjsing.canonical_list(curve_sings),
        k_squared=check.k_squared,
        anticanonical_identity=check.anticanonical_identity,
        ampleness=check.ampleness,
        avoids_sings=check.avoids_sings,
        boundary=boundary_stratum(spec),
        k3_sings=hjsing.canonical_list(hjsing.double_cover_singularities(surface_sings, curve_sings)),
        genus=check.genus,
        documented_facts=tuple(facts),
    )


@dataclass(frozen=True)
class EllipticCone:
    """Cone over an elliptic normal curve of the given degree.

    Not a rational surface, so it stays outside the lattice engine; the
    numbers below are recorded rather than computed.
    """

    degree: int = 5

    @property
    def k_squared(self) -> Fraction:
        return Fraction(self.degree)

    @property
    def singularity(self) -> SimpleElliptic:
        return SimpleElliptic(self.degree)

    def to_json(self) -> dict:
        return {"model": "elliptic cone", "degree": self.degree,
                "k_squared": format_rational(self.k_squared), "vertex": self.singularity.to_json()}


def elliptic_cone_report(degree: int = 5) -> PairReport:
    cone = EllipticCone(degree)
    sings = (cone.singularity,)
    return PairReport(
        stratum=Bielliptic(),
        surface_sings=sings,
        curve_sings=(),
        k_squared=cone.k_squared,
        anticanonical_identity=True,
        ampleness=AmpleVerdict("Ample", relative_to="cited: quadric section of the cone"),
        avoids_sings=True,
        boundary=boundary_stratum(Bielliptic()),
        k3_sings=hjsing.canonical_list(hjsing.double_cover_singularities(sings)),
        genus=6,
        documented_facts=_BIELLIPTIC_FACTS,
    )


# -- blow-up scripts ----------------------------------------------------------

class _Labels:
    def __init__(self, prefix: str = "G"):
        self.prefix, self.count = prefix, 0

    def __call__(self) -> str:
        self.count += 1
        return f"{self.prefix}{self.count}"


def separate_tangency(S: SurfaceModel, curve: str, other: str, contact: int,
                      label) -> tuple[SurfaceModel, list[str]]:
    """Separate two smooth branches meeting with the given contact order.

    Returns the new surface and the exceptional curves in creation order.
    """
    names: list[str] = []
    for k in range(contact):
        center = {curve: 1, other: 1}
        if names:
            center[names[-1]] = 1
        name = label()
        S = blow_up(S, BlowUpRecord(center, name))
        names.append(name)
    return S, names


def sigma5(tracked: Mapping[str, int] | None = None,
           multiplicities: Mapping[str, Sequence[int]] | None = None) -> SurfaceModel:
    """Quintic del Pezzo surface: P^2 blown up at four general points.

    The six lines through pairs of points are tracked as ``L12`` ... ``L34``
    and the exceptional curves as ``E1`` ... ``E4``.  Extra plane curves are
    given as ``tracked`` degrees with their multiplicities at the four points.
    """
    tracked = dict(tracked or {})
    multiplicities = dict(multiplicities or {})
    lines = {f"L{i}{j}": (i, j) for i, j in combinations(range(1, 5), 2)}
    S = projective_plane({**{name: 1 for name in lines}, **tracked})
    for k in range(1, 5):
        center = {name: 1 for name, pts in lines.items() if k in pts}
        for name, mult in multiplicities.items():
            if mult[k - 1]:
                center[name] = mult[k - 1]
        S = blow_up(S, BlowUpRecord(center, f"E{k}"))
    return S


def sigma5_lines(S: SurfaceModel) -> dict[str, DivisorClass]:
    names = [f"E{k}" for k in range(1, 5)] + [f"L{i}{j}" for i, j in combinations(range(1, 5), 2)]
    return {n: S[n] for n in names}


@dataclass(frozen=True)
class BuiltPair:
    spec: StratumSpec
    model: Union[ContractedSurface, EllipticCone]
    marked: str | None
    testers: Mapping[str, DivisorClass] = field(default_factory=dict)


def _build_plane_quintic(spec: PlaneQuintic) -> BuiltPair:
    S = projective_plane({"D": 5, "l": 1})
    label = _Labels()
    plan, gs = ["l"], []
    for a in spec.partition:
        S, names = separate_tangency(S, "D", "l", a, label)
        plan += names[:-1]
        gs += names
    cs = contract(S, plan)
    testers = {"l": S["l"], **{g: S[g] for g in gs}}
    return BuiltPair(spec, cs, "D", testers)


def _build_trigonal_m0(spec: TrigonalM0) -> BuiltPair:
    S = quadric({"D": (3, 4), "e0": (1, 0), "f": (0, 1)})
    label = _Labels()
    plan, gs = ["e0"], []
    for b in spec.partition:
        S, names = separate_tangency(S, "D", "e0", b, label)
        plan += names[:-1]
        gs += names
    cs = contract(S, plan)
    testers = {"e0": S["e0"], "f": S["f"], **{g: S[g] for g in gs}}
    return BuiltPair(spec, cs, "D", testers)


def _build_trigonal_m2(spec: TrigonalM2) -> BuiltPair:
    a1 = spec.a1
    fib = "f_p" if a1 > 1 else "f0"
    S = hirzebruch(2, {"D": (3, 7), "e": (1, 0), fib: (0, 1)})
    label = _Labels()
    gs: list[str] = []
    if a1 > 1:
        # p = D.e lies on f_p, where D meets f_p with contact a1 - 1
        g = label()
        S = blow_up(S, BlowUpRecord({"D": 1, "e": 1, fib: 1}, g))
        gs.append(g)
        for _ in range(a1 - 2):
            g = label()
            S = blow_up(S, BlowUpRecord({"D": 1, fib: 1, gs[-1]: 1}, g))
            gs.append(g)
        # D now crosses the last exceptional curve of the e - f_p chain
        g = label()
        S = blow_up(S, BlowUpRecord({"D": 1, gs[-1]: 1}, g))
        gs.append(g)
        chain = ["e"] + gs[:-1] + [fib]
    else:
        g = label()
        S = blow_up(S, BlowUpRecord({"D": 1, "e": 1}, g))
        gs.append(g)
        chain = ["e", fib]
    plan = list(chain)
    for a in spec.rest:
        S, names = separate_tangency(S, "D", fib, a, label)
        plan += names[:-1]
        gs += names
    cs = contract(S, plan)
    testers = {"e": S["e"], fib: S[fib], **{g: S[g] for g in gs}}
    return BuiltPair(spec, cs, "D", testers)


def _build_a13() -> BuiltPair:
    S = sigma5({"D": 6}, {"D": (2, 2, 2, 2)})
    cs = contract(S, [])
    return BuiltPair(HyperellipticA13(), cs, "D", sigma5_lines(S))


def build_model(spec: StratumSpec) -> BuiltPair:
    if isinstance(spec, PlaneQuintic):
        return _build_plane_quintic(spec)
    if isinstance(spec, TrigonalM0):
        return _build_trigonal_m0(spec)
    if isinstance(spec, TrigonalM2):
        return _build_trigonal_m2(spec)
    if isinstance(spec, Bielliptic):
        return BuiltPair(spec, EllipticCone(5), None)
    if isinstance(spec, HyperellipticA13):
        return _build_a13()
    raise StratumError(f"not a stratum: {spec!r}")


class UnstablePairError(AssertionError):
    pass


def build_pair(spec: StratumSpec | str) -> tuple[Union[ContractedSurface, EllipticCone], PairReport]:
    """Construct the pair for a stratum and verify it.

    Raises ``UnstablePairError`` if any report invariant fails.
    """
    if isinstance(spec, str):
        spec = parse_stratum(spec)
    built = build_model(spec)
    if isinstance(spec, Bielliptic):
        return built.model, elliptic_cone_report(built.model.degree)
    if isinstance(spec, HyperellipticA13):
        report = make_report(spec, built.model, built.marked, built.testers,
                             curve_sings=(ADE("A", 13),), facts=_A13_FACTS)
    else:
        report = make_report(spec, built.model, built.marked, built.testers)
    if not report.is_stable:
        raise UnstablePairError(f"{spec.key}: stability checks failed: {report.to_json()}")
    for s in report.surface_sings:
        if isinstance(s, CyclicQuotient):
            verdict = hjsing.classify_class_t(s)
            if not (isinstance(verdict, hjsing.ClassT) and verdict.params.p == 2):
                raise UnstablePairError(f"{spec.key}: {s} is not an index-two class T singularity")
    return built.model, report


def atlas() -> list[PairReport]:
    return [build_pair(spec)[1] for spec in all_strata()]
