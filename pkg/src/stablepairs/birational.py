"""Contracting curve configurations on a smooth model.

The singular surface ``X`` is never built directly.  It is represented by its
resolution together with the list of contracted curves; divisors on ``X`` are
handled through their unique pullback orthogonal to every contracted curve
(Mumford's Q-valued pullback), so intersection numbers on ``X`` are
intersection numbers of pullbacks on the resolution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from . import hjsing, linalg
from .jsonio import format_rational
from .picard import DivisorClass, SurfaceModel, intersect


class ContractionError(ValueError):
    """The requested curves cannot be contracted as a chain configuration."""


@dataclass(frozen=True)
class ContractionPlan:
    """Curves to contract, grouped into connected chains.

    ``components`` holds, for each connected component, the indices of its
    curves in chain order.  A chain is oriented so that the endpoint listed
    first in ``curves`` comes first.
    """

    curves: tuple[tuple[str, DivisorClass], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.curves)

    def component_names(self, i: int) -> tuple[str, ...]:
        return tuple(self.curves[j][0] for j in self.components[i])


def make_plan(S: SurfaceModel, curves: Sequence[str | tuple[str, DivisorClass]]) -> ContractionPlan:
    """Group the curves into chains and check they can be contracted."""
    items: list[tuple[str, DivisorClass]] = []
    for c in curves:
        items.append((c, S[c]) if isinstance(c, str) else (c[0], c[1]))
    names = [n for n, _ in items]
    if len(set(names)) != len(names):
        raise ContractionError("a curve is listed twice")
    m = len(items)
    gram = [[intersect(S, items[i][1], items[j][1]) for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(m):
            if gram[i][j].denominator != 1:
                raise ContractionError(f"non-integral intersection {names[i]}.{names[j]} = {gram[i][j]}")
    adjacency: dict[int, list[int]] = {i: [] for i in range(m)}
    for i in range(m):
        for j in range(i + 1, m):
            v = gram[i][j]
            if v < 0:
                raise ContractionError(f"{names[i]} and {names[j]} share a component")
            if v > 1:
                raise ContractionError(f"{names[i]} and {names[j]} meet with multiplicity {v}; not a chain")
            if v == 1:
                adjacency[i].append(j)
                adjacency[j].append(i)

    seen: set[int] = set()
    components = []
    for start in range(m):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comp.sort()
        sub = [[gram[i][j] for j in comp] for i in comp]
        if not linalg.is_negative_definite(sub):
            raise ContractionError(f"intersection matrix of {[names[i] for i in comp]} is not negative definite")
        if len(comp) == 1:
            components.append((comp[0],))
            continue
        if any(len(adjacency[v]) > 2 for v in comp):
            raise ContractionError(f"branched configuration {[names[i] for i in comp]}; only chains are supported")
        ends = [v for v in comp if len(adjacency[v]) == 1]
        if len(ends) != 2:
            raise ContractionError(f"cyclic configuration {[names[i] for i in comp]}")
        for v in comp:
            if gram[v][v] > -2:
                raise ContractionError(f"{names[v]} has self-intersection {gram[v][v]} inside a chain")
        order, prev, cur = [], None, min(ends)
        while cur is not None:
            order.append(cur)
            nxt = [w for w in adjacency[cur] if w != prev]
            prev, cur = cur, (nxt[0] if nxt else None)
        components.append(tuple(order))
    return ContractionPlan(tuple(items), tuple(components))


@dataclass(frozen=True)
class ContractedSurface:
    resolution: SurfaceModel
    plan: ContractionPlan
    singularities: tuple[tuple[hjsing.SingularityType, int], ...]
    discrepancy: Mapping[str, Fraction]
    _gram_inverse: tuple[tuple[Fraction, ...], ...] = field(repr=False, compare=False, default=())

    @property
    def picard_rank(self) -> int:
        return self.resolution.rank - len(self.plan.curves)

    @property
    def singularity_list(self) -> tuple[hjsing.SingularityType, ...]:
        return hjsing.canonical_list(s for s, _ in self.singularities)

    def singular_curve_names(self) -> tuple[str, ...]:
        """Contracted curves that map to singular points."""
        comps = {c for _, c in self.singularities}
        return tuple(n for i in sorted(comps) for n in self.plan.component_names(i))

    def component_kinds(self) -> list[str]:
        out = []
        for i, comp in enumerate(self.plan.components):
            sing = next((s for s, c in self.singularities if c == i), None)
            out.append("smooth blow-down" if sing is None else str(sing))
        return out

    def to_json(self) -> dict:
        return {
            "resolution": self.resolution.to_json(),
            "plan": [list(self.plan.component_names(i)) for i in range(len(self.plan.components))],
            "singularities": [
                {"component": c, "curves": list(self.plan.component_names(c)), **s.to_json()}
                for s, c in self.singularities
            ],
            "smooth_blow_downs": [
                list(self.plan.component_names(i))
                for i in range(len(self.plan.components))
                if i not in {c for _, c in self.singularities}
            ],
            "discrepancy": {k: format_rational(v) for k, v in sorted(self.discrepancy.items())},
            "picard_rank": self.picard_rank,
            "k_squared": format_rational(intersect_down(self, self.resolution.K, self.resolution.K)),
        }


def contract(S: SurfaceModel, plan: ContractionPlan | Sequence[str]) -> ContractedSurface:
    """Contract the plan's curves; classify each chain and solve discrepancies.

    Discrepancies ``d_i`` are defined by ``pullback(K_X) = K_S + sum d_i E_i``.
    """
    if not isinstance(plan, ContractionPlan):
        plan = make_plan(S, plan)
    sings = []
    for i, comp in enumerate(plan.components):
        selfs = [intersect(S, plan.curves[j][1], plan.curves[j][1]) for j in comp]
        if len(comp) == 1 and selfs[0] == -1:
            continue  # smooth blow-down
        chain = [int(-v) for v in selfs]
        sings.append((hjsing.as_singularity(hjsing.hj_contract(chain)), i))
    m = len(plan.curves)
    if m:
        gram = [[intersect(S, plan.curves[i][1], plan.curves[j][1]) for j in range(m)] for i in range(m)]
        inv = tuple(tuple(row) for row in linalg.inverse(gram))
    else:
        inv = ()
    cs = ContractedSurface(S, plan, tuple(sings), MappingProxyType({}), inv)
    x = _orthogonal_correction(cs, S.K)
    object.__setattr__(cs, "discrepancy", MappingProxyType({plan.curves[i][0]: x[i] for i in range(m)}))
    return cs


def _orthogonal_correction(cs: ContractedSurface, d: DivisorClass) -> list[Fraction]:
    S = cs.resolution
    curves = [c for _, c in cs.plan.curves]
    rhs = [-intersect(S, d, c) for c in curves]
    inv = cs._gram_inverse
    return [sum((inv[i][j] * rhs[j] for j in range(len(rhs))), Fraction(0)) for i in range(len(rhs))]


def pullback(cs: ContractedSurface, d: DivisorClass) -> DivisorClass:
    """Pullback of the image of ``d``: the unique ``d + sum x_i E_i`` orthogonal to every ``E_i``."""
    if d.rank != cs.resolution.rank:
        raise ValueError("class does not live on the resolution")
    out = d
    for (_, c), x in zip(cs.plan.curves, _orthogonal_correction(cs, d)):
        if x:
            out = out + x * c
    return out


def intersect_down(cs: ContractedSurface, d1: DivisorClass, d2: DivisorClass) -> Fraction:
    """Intersection number on the contracted surface (projection formula)."""
    return intersect(cs.resolution, pullback(cs, d1), pullback(cs, d2))


def avoids_contracted(cs: ContractedSurface, d: DivisorClass, singular_only: bool = True) -> bool:
    """Combinatorial check that ``d`` misses the contracted locus."""
    names = set(cs.singular_curve_names()) if singular_only else set(cs.plan.names)
    return all(intersect(cs.resolution, d, c) == 0 for n, c in cs.plan.curves if n in names)


@dataclass(frozen=True)
class AmpleVerdict:
    kind: str  # "Ample", "NefNotAmple" or "NotNef"
    witnesses: tuple[str, ...] = ()
    relative_to: str = "tester set"

    def to_json(self) -> dict:
        return {"verdict": self.kind, "witnesses": list(self.witnesses), "relative_to": self.relative_to}


def is_ample(cs: ContractedSurface, d: DivisorClass,
             testers: Mapping[str, DivisorClass] | Sequence[tuple[str, DivisorClass]]) -> AmpleVerdict:
    """Nakai-Moishezon test of ``d`` against a caller-supplied set of curves.

    ``testers`` is assumed to generate the effective cone of the resolution.
    Contracted testers must pair to zero with the pullback; every other tester
    must pair positively, and the self-intersection must be positive.
    """
    items = list(testers.items()) if isinstance(testers, Mapping) else list(testers)
    if not items:
        raise ValueError("is_ample needs a non-empty tester set")
    S = cs.resolution
    contracted_classes = {c.coeffs for _, c in cs.plan.curves}
    pb = pullback(cs, d)
    negative, zero = [], []
    for name, t in items:
        value = intersect(S, pb, t)
        if name in cs.plan.names or t.coeffs in contracted_classes:
            if value != 0:
                raise AssertionError(f"pullback is not orthogonal to contracted curve {name}")
            continue
        if value < 0:
            negative.append(name)
        elif value == 0:
            zero.append(name)
    if negative:
        return AmpleVerdict("NotNef", tuple(negative))
    sq = intersect(S, pb, pb)
    if zero or sq <= 0:
        return AmpleVerdict("NefNotAmple", tuple(zero) + (() if sq > 0 else ("self-intersection",)))
    return AmpleVerdict("Ample")
