"""Cyclic quotient singularities and the singularity bookkeeping around them.

Conventions
-----------
``CyclicQuotient(r, a)`` is the quotient of C^2 by the cyclic group of order
``r`` acting with weights ``(1, a)``.  Its minimal resolution is a chain of
rational curves with self-intersections ``-c_1, ..., -c_k`` where
``r/a = c_1 - 1/(c_2 - 1/(... - 1/c_k))``.  Reversing the chain replaces ``a``
by its inverse modulo ``r``; stored data keeps whatever orientation it was
built with and only :func:`display_form` normalises.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Union


@dataclass(frozen=True, order=True)
class CyclicQuotient:
    r: int
    a: int

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.a, int)):
            raise TypeError("r and a must be integers")
        if not (1 <= self.a < self.r) or gcd(self.a, self.r) != 1:
            raise ValueError(f"1/{self.r}(1,{self.a}) needs 1 <= a < r with gcd(a, r) = 1")

    def __str__(self) -> str:
        return f"1/{self.r}(1,{self.a})"

    def to_json(self) -> dict:
        return {"type": "quotient", "r": self.r, "a": self.a, "label": str(self)}


@dataclass(frozen=True, order=True)
class ADE:
    letter: str
    n: int

    def __post_init__(self):
        ok = {
            "A": self.n >= 1,
            "D": self.n >= 4,
            "E": self.n in (6, 7, 8),
        }.get(self.letter)
        if not ok:
            raise ValueError(f"invalid ADE type {self.letter}{self.n}")

    def __str__(self) -> str:
        return f"{self.letter}{self.n}"

    def to_json(self) -> dict:
        return {"type": "ADE", "letter": self.letter, "n": self.n, "label": str(self)}


@dataclass(frozen=True)
class SimpleElliptic:
    degree: int | None = None  # None: degree not determined

    def __post_init__(self):
        if self.degree is not None and self.degree < 1:
            raise ValueError("simple elliptic degree must be positive")

    def __str__(self) -> str:
        return f"SimpleElliptic({'?' if self.degree is None else self.degree})"

    def to_json(self) -> dict:
        return {"type": "simple_elliptic", "degree": self.degree, "label": str(self)}


SingularityType = Union[ADE, CyclicQuotient, SimpleElliptic]


def singularity_from_json(data: dict) -> SingularityType:
    kind = data["type"]
    if kind == "quotient":
        return CyclicQuotient(data["r"], data["a"])
    if kind == "ADE":
        return ADE(data["letter"], data["n"])
    if kind == "simple_elliptic":
        return SimpleElliptic(data["degree"])
    raise ValueError(f"unknown singularity type {kind!r}")


def sort_key(s: SingularityType) -> tuple:
    """Canonical ordering for singularity lists: quotients, elliptic, then ADE."""
    if isinstance(s, CyclicQuotient):
        return (0, -s.r, s.a)
    if isinstance(s, SimpleElliptic):
        return (1, -(s.degree or 0), 0)
    return (2, "ADE".index(s.letter), -s.n)


def canonical_list(sings) -> tuple[SingularityType, ...]:
    return tuple(sorted(sings, key=sort_key))


@dataclass(frozen=True)
class ClassTParams:
    p: int
    q: int
    d: int

    def __post_init__(self):
        if min(self.p, self.q, self.d) < 1:
            raise ValueError("p, q, d must be positive")
        if gcd(self.d, self.p) != 1:
            raise ValueError("d must be coprime to p")
        if not (1 <= self.a < self.r):
            raise ValueError(f"d p q - 1 = {self.a} is outside [1, {self.r})")

    @property
    def r(self) -> int:
        return self.p * self.p * self.q

    @property
    def a(self) -> int:
        return self.d * self.p * self.q - 1

    @property
    def singularity(self) -> CyclicQuotient:
        return CyclicQuotient(self.r, self.a)

    @property
    def index(self) -> int:
        return self.p


@dataclass(frozen=True)
class DuVal:
    ade: ADE


@dataclass(frozen=True)
class ClassT:
    params: ClassTParams


@dataclass(frozen=True)
class NotT:
    pass


Verdict = Union[DuVal, ClassT, NotT]


def hj_expand(s: CyclicQuotient) -> list[int]:
    """Hirzebruch-Jung continued fraction of ``r/a`` (all entries >= 2)."""
    num, den = s.r, s.a
    chain = []
    while den:
        c = -(-num // den)  # ceiling
        chain.append(c)
        num, den = den, c * den - num
    return chain


def hj_value(chain: Sequence[int]) -> Fraction:
    """Evaluate ``c_1 - 1/(c_2 - 1/(...))`` exactly."""
    value = Fraction(chain[-1])
    for c in reversed(chain[:-1]):
        value = c - 1 / value
    return value


def hj_contract(chain: Sequence[int]) -> CyclicQuotient:
    """Singularity obtained by contracting a chain with self-intersections ``-c_i``."""
    if not chain:
        raise ValueError("empty chain")
    bad = [c for c in chain if c < 2]
    if bad:
        raise ValueError(f"chain entries must be >= 2 (got {bad}); (-1)- and non-negative curves do not resolve a quotient singularity")
    value = hj_value(chain)
    return CyclicQuotient(value.numerator, value.denominator)


def chain_gram(chain: Sequence[int]) -> list[list[int]]:
    """Intersection matrix of a resolution chain with self-intersections ``-c_i``."""
    k = len(chain)
    return [[-chain[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(k)] for i in range(k)]


def display_form(s: CyclicQuotient) -> CyclicQuotient:
    """Orientation-independent representative: the smaller of ``a`` and ``a^{-1} mod r``."""
    return CyclicQuotient(s.r, min(s.a, pow(s.a, -1, s.r)))


def classify_class_t(s: CyclicQuotient) -> Verdict:
    """Du Val, class T ``1/p^2q(1, dpq-1)`` with ``p >= 2``, or neither.

    Exhaustive over the square divisors ``p^2`` of ``r``.
    """
    if s.a == s.r - 1:
        return DuVal(ADE("A", s.r - 1))
    p = 2
    while p * p <= s.r:
        if s.r % (p * p) == 0:
            q = s.r // (p * p)
            if (s.a + 1) % (p * q) == 0:
                d = (s.a + 1) // (p * q)
                if gcd(d, p) == 1:
                    return ClassT(ClassTParams(p, q, d))
        p += 1
    return NotT()


def as_singularity(s: CyclicQuotient) -> SingularityType:
    """Report a chain singularity as ``A_n`` when it is du Val."""
    verdict = classify_class_t(s)
    return verdict.ade if isinstance(verdict, DuVal) else s


def canonical_cover(t: ClassTParams) -> tuple[ADE, tuple[int, int, int]]:
    """Index-one cover ``xy + z^{pq} = 0`` and the weights of the ``mu_p`` action."""
    if t.p < 2:
        raise ValueError("canonical cover needs p >= 2")
    return ADE("A", t.p * t.q - 1), (1, t.p - 1, t.d % t.p)


def lct_cusp(p: int, q: int) -> Fraction:
    """Log canonical threshold of the germ ``y^p = x^q`` (``p, q >= 2``)."""
    if p < 2 or q < 2:
        raise ValueError("lct_cusp needs p, q >= 2")
    return Fraction(1, p) + Fraction(1, q)


class CoverError(ValueError):
    pass


def double_cover_singularities(surface_sings: Sequence[SingularityType],
                               curve_sings: Sequence[SingularityType] = ()) -> list[SingularityType]:
    """Singularities of the double cover branched along ``D ~ -2K``.

    * an ADE point of ``X`` off the branch curve splits into two copies;
    * an index-two class T point has its canonical cover ``A_{2q-1}`` upstairs;
    * a simple elliptic point stays simple elliptic (degree left undetermined);
    * an ADE point of the branch curve (at a smooth point of ``X``) gives the
      same ADE type on the cover.
    """
    out: list[SingularityType] = []
    for s in surface_sings:
        if isinstance(s, ADE):
            out += [s, s]
        elif isinstance(s, SimpleElliptic):
            out.append(SimpleElliptic(None))
        elif isinstance(s, CyclicQuotient):
            verdict = classify_class_t(s)
            if isinstance(verdict, DuVal):
                out += [verdict.ade, verdict.ade]
            elif isinstance(verdict, ClassT) and verdict.params.p == 2:
                out.append(canonical_cover(verdict.params)[0])
            else:
                raise CoverError(f"{s} is not du Val or index-two class T")
        else:
            raise TypeError(f"not a singularity: {s!r}")
    for s in curve_sings:
        if not isinstance(s, ADE):
            raise CoverError(f"branch curve singularity {s} is not ADE")
        out.append(s)
    return out
