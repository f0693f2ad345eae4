"""Exact Picard lattices of rational surfaces built by point blow-ups.

A :class:`SurfaceModel` is a numerical lattice: an ordered basis, its integer
Gram matrix and the canonical class.  The basis of a blown-up surface is the
pullback of the base generators followed by the *total transforms* of the
exceptional curves, so every blow-up appends an orthogonal ``<-1>`` summand.

Named curves are carried along in ``tracked``.  Each blow-up replaces a
tracked class ``C`` passing through the centre with multiplicity ``m`` by its
strict transform ``C - m E``; the new exceptional curve is tracked under its
own label and is itself updated by later blow-ups, so after an infinitely-near
sequence ``tracked["G1"]`` is the strict transform of the first exceptional
curve while the basis label ``G1`` still denotes its total transform.

Picard, numerical and basis equality coincide on the rational surfaces in
scope, so linear equivalence is tested as exact coefficient equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import linalg
from .jsonio import format_rational, parse_rational


class RankMismatchError(ValueError):
    """Two divisor classes (or a class and a surface) have different ranks."""


class UnknownClassError(KeyError):
    pass


class LatticeError(ValueError):
    """A Gram matrix violates the unimodular hyperbolic lattice invariants."""


class AdjunctionError(ValueError):
    """``D.(D+K)`` is odd or non-integral, so ``D`` is not curve-like."""


@dataclass(frozen=True)
class DivisorClass:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, rank: int) -> "DivisorClass":
        return cls((Fraction(0),) * rank)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.rank != self.rank:
            raise RankMismatchError(f"rank {self.rank} vs rank {other.rank}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __mul__(self, scalar) -> "DivisorClass":
        if isinstance(scalar, DivisorClass):
            return NotImplemented
        s = Fraction(scalar)
        return DivisorClass(tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    def extend(self, rank: int) -> "DivisorClass":
        """Pull back to a blow-up: pad with zero exceptional coefficients."""
        if rank < self.rank:
            raise RankMismatchError(f"cannot extend rank {self.rank} to {rank}")
        return DivisorClass(self.coeffs + (Fraction(0),) * (rank - self.rank))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "DivisorClass":
        return cls(tuple(parse_rational(s) for s in data))


@dataclass(frozen=True)
class Base:
    """Minimal rational surface a model starts from."""

    kind: str  # "P2", "P1xP1" or "F"
    n: int = 0

    KINDS = ("P2", "P1xP1", "F")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown base surface {self.kind!r}")
        if self.kind == "F" and self.n < 0:
            raise ValueError("Hirzebruch index must be non-negative")
        if self.kind != "F" and self.n != 0:
            raise ValueError("only Hirzebruch surfaces carry an index")

    @property
    def rank(self) -> int:
        return 1 if self.kind == "P2" else 2

    @property
    def k_squared(self) -> int:
        return 9 if self.kind == "P2" else 8

    def __str__(self) -> str:
        return f"F{self.n}" if self.kind == "F" else self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n} if self.kind == "F" else {"kind": self.kind}

    @classmethod
    def from_json(cls, data: Mapping) -> "Base":
        return cls(data["kind"], int(data.get("n", 0)))


@dataclass(frozen=True)
class BlowUpRecord:
    center_on: Mapping[str, int]
    new_label: str

    def __post_init__(self):
        center = dict(self.center_on)
        for name, m in center.items():
            if int(m) != m or m < 1:
                raise ValueError(f"multiplicity of {name!r} must be a positive integer, got {m}")
        object.__setattr__(self, "center_on", MappingProxyType({k: int(v) for k, v in center.items()}))

    def to_json(self) -> dict:
        return {"center_on": dict(sorted(self.center_on.items())), "new_label": self.new_label}

    @classmethod
    def from_json(cls, data: Mapping) -> "BlowUpRecord":
        return cls(dict(data["center_on"]), data["new_label"])


@dataclass(frozen=True)
class SurfaceModel:
    base: Base
    basis: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    canonical: DivisorClass
    tracked: Mapping[str, DivisorClass] = field(default_factory=dict)
    history: tuple[BlowUpRecord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "gram", tuple(tuple(int(x) for x in row) for row in self.gram))
        object.__setattr__(self, "tracked", MappingProxyType(dict(self.tracked)))
        object.__setattr__(self, "history", tuple(self.history))
        n = len(self.basis)
        if len(set(self.basis)) != n:
            raise LatticeError("duplicate basis labels")
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise LatticeError("Gram matrix shape does not match the basis")
        if self.canonical.rank != n:
            raise RankMismatchError("canonical class has the wrong rank")
        for name, cls in self.tracked.items():
            if cls.rank != n:
                raise RankMismatchError(f"tracked class {name!r} has the wrong rank")

    # -- access -----------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def K(self) -> DivisorClass:
        return self.canonical

    def __getitem__(self, name: str) -> DivisorClass:
        try:
            return self.tracked[name]
        except KeyError:
            raise UnknownClassError(name) from None

    def generator(self, label: str) -> DivisorClass:
        i = self.basis.index(label)
        return DivisorClass(tuple(Fraction(int(j == i)) for j in range(self.rank)))

    def make(self, coeffs: Mapping[str, object]) -> DivisorClass:
        """Build a class from ``{basis_label: coefficient}``."""
        out = [Fraction(0)] * self.rank
        for label, c in coeffs.items():
            out[self.basis.index(label)] += Fraction(c)
        return DivisorClass(tuple(out))

    def combination(self, coeffs: Mapping[str, object]) -> DivisorClass:
        """Build ``sum c_i * tracked[name_i]``."""
        out = DivisorClass.zero(self.rank)
        for name, c in coeffs.items():
            out = out + Fraction(c) * self[name]
        return out

    def lift(self, d: DivisorClass) -> DivisorClass:
        """Total transform of a class defined on an earlier surface of this history."""
        return d.extend(self.rank)

    # -- lattice invariants -------------------------------------------------
    def validate(self) -> None:
        g = self.gram
        n = self.rank
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise LatticeError("Gram matrix is not symmetric")
        d = linalg.det(g)
        if abs(d) != 1:
            raise LatticeError(f"Gram matrix is not unimodular (det {d})")
        if linalg.inertia(g) != (1, n - 1, 0):
            raise LatticeError("Gram matrix does not have signature (1, rank-1)")
        if self.rank != self.base.rank + len(self.history):
            raise LatticeError("rank does not match base rank plus blow-ups")
        if intersect(self, self.K, self.K) != self.base.k_squared - len(self.history):
            raise LatticeError("K^2 does not match the base minus blow-ups")

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "basis": list(self.basis),
            "gram": [list(row) for row in self.gram],
            "canonical": self.canonical.to_json(),
            "tracked": {name: cls.to_json() for name, cls in sorted(self.tracked.items())},
            "history": [rec.to_json() for rec in self.history],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SurfaceModel":
        model = cls(
            base=Base.from_json(data["base"]),
            basis=tuple(data["basis"]),
            gram=tuple(tuple(int(x) for x in row) for row in data["gram"]),
            canonical=DivisorClass.from_json(data["canonical"]),
            tracked={k: DivisorClass.from_json(v) for k, v in data.get("tracked", {}).items()},
            history=tuple(BlowUpRecord.from_json(r) for r in data.get("history", [])),
        )
        model.validate()
        return model


# -- base surfaces ----------------------------------------------------------

def projective_plane(tracked: Mapping[str, int] | None = None) -> SurfaceModel:
    """P^2 with basis ``L``; ``tracked`` maps curve names to degrees."""
    tracked = tracked or {}
    return SurfaceModel(
        base=Base("P2"),
        basis=("L",),
        gram=((1,),),
        canonical=DivisorClass((-3,)),
        tracked={name: DivisorClass((deg,)) for name, deg in tracked.items()},
    )


def quadric(tracked: Mapping[str, tuple[int, int]] | None = None) -> SurfaceModel:
    """P^1 x P^1 with rulings ``e``, ``f``; tracked classes given as ``(a, b)`` for ``a e + b f``."""
    tracked = tracked or {}
    return SurfaceModel(
        base=Base("P1xP1"),
        basis=("e", "f"),
        gram=((0, 1), (1, 0)),
        canonical=DivisorClass((-2, -2)),
        tracked={name: DivisorClass(ab) for name, ab in tracked.items()},
    )


def hirzebruch(n: int, tracked: Mapping[str, tuple[int, int]] | None = None) -> SurfaceModel:
    """F_n with negative section ``e`` (e^2 = -n) and fibre ``f``."""
    tracked = tracked or {}
    return SurfaceModel(
        base=Base("F", n),
        basis=("e", "f"),
        gram=((-n, 1), (1, 0)),
        canonical=DivisorClass((-2, -(n + 2))),
        tracked={name: DivisorClass(ab) for name, ab in tracked.items()},
    )


# -- operations -------------------------------------------------------------

def intersect(S: SurfaceModel, d1: DivisorClass, d2: DivisorClass) -> Fraction:
    if d1.rank != S.rank or d2.rank != S.rank:
        raise RankMismatchError(f"classes of rank {d1.rank}, {d2.rank} on a surface of rank {S.rank}")
    total = Fraction(0)
    for a, row in zip(d1.coeffs, S.gram):
        if a:
            total += a * sum((g * b for g, b in zip(row, d2.coeffs) if g and b), Fraction(0))
    return total


def self_intersection(S: SurfaceModel, d: DivisorClass) -> Fraction:
    return intersect(S, d, d)


def blow_up(S: SurfaceModel, rec: BlowUpRecord) -> SurfaceModel:
    for name in rec.center_on:
        if name not in S.tracked:
            raise UnknownClassError(f"blow-up centre references unknown class {name!r}")
    if rec.new_label in S.basis:
        raise ValueError(f"label {rec.new_label!r} already used")
    n = S.rank
    gram = tuple(row + (0,) for row in S.gram) + ((0,) * n + (-1,),)
    exc = DivisorClass((Fraction(0),) * n + (Fraction(1),))
    tracked = {}
    for name, cls in S.tracked.items():
        lifted = cls.extend(n + 1)
        m = rec.center_on.get(name, 0)
        tracked[name] = lifted - m * exc if m else lifted
    tracked[rec.new_label] = exc
    return SurfaceModel(
        base=S.base,
        basis=S.basis + (rec.new_label,),
        gram=gram,
        canonical=S.canonical.extend(n + 1) + exc,
        tracked=tracked,
        history=S.history + (rec,),
    )


def blow_up_points(S: SurfaceModel, records: Iterable[BlowUpRecord]) -> SurfaceModel:
    for rec in records:
        S = blow_up(S, rec)
    return S


def adjunction_genus(S: SurfaceModel, d: DivisorClass) -> int:
    """Arithmetic genus from ``2g - 2 = D.(D + K)``."""
    value = intersect(S, d, d + S.K)
    if value.denominator != 1 or value.numerator % 2:
        raise AdjunctionError(f"D.(D+K) = {value} is not an even integer")
    return value.numerator // 2 + 1


def is_linearly_equivalent(S: SurfaceModel, d1: DivisorClass, d2: DivisorClass) -> bool:
    if d1.rank != S.rank or d2.rank != S.rank:
        raise RankMismatchError(f"classes of rank {d1.rank}, {d2.rank} on a surface of rank {S.rank}")
    return d1.coeffs == d2.coeffs


def coordinates(S: SurfaceModel, d: DivisorClass, names: Sequence[str]) -> tuple[Fraction, ...]:
    """Coefficients of ``d`` as a combination of the tracked classes ``names``.

    The named classes must be linearly independent and ``d`` must lie in
    their span; the solution is then unique.
    """
    cols = [S[name] for name in names]
    if d.rank != S.rank:
        raise RankMismatchError("class does not belong to this surface")
    rows = [[c.coeffs[i] for c in cols] for i in range(S.rank)]
    return tuple(linalg.solve_rectangular(rows, d.coeffs))


def format_class(S: SurfaceModel, d: DivisorClass, names: Sequence[str] | None = None) -> str:
    """Human-readable ``3e + 7f - G1`` style rendering."""
    if names is None:
        labels, coeffs = S.basis, d.coeffs
    else:
        labels, coeffs = tuple(names), coordinates(S, d, names)
    terms = []
    for label, c in zip(labels, coeffs):
        if c == 0:
            continue
        mag = abs(c)
        body = label if mag == 1 else f"{format_rational(mag)}{label}" if mag.denominator == 1 else f"({format_rational(mag)}){label}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
