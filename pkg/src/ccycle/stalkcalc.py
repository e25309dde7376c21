"""Stalks and local Euler indices of exponential and quasi-normal-form modules.

Conventions: a normal crossing chart has branches D_1..D_l (numbered from 1).
Coordinate strata are indexed by the frozenset S of branches a point lies on;
S = {} is the open stratum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Sequence

from .constructible import ConstructibleFunction, Stratification, Stratum
from .errors import IntegralityViolation, InvalidInput


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and "p/q" strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInput("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational: {x!r}") from exc
    raise InvalidInput(f"not a rational: {x!r}")


@dataclass(frozen=True)
class PoleVector:
    orders: tuple[Fraction, ...]

    def __post_init__(self):
        orders = tuple(as_fraction(x) for x in self.orders)
        if any(x < 0 for x in orders):
            raise InvalidInput(f"pole orders must be >= 0, got {orders}")
        object.__setattr__(self, "orders", orders)

    def __len__(self):
        return len(self.orders)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.orders)


@dataclass(frozen=True)
class QuasiNormalData:
    """Local model of a module with quasi-normal form on a normal crossing chart."""

    l: int
    factors: tuple[tuple[PoleVector, int], ...]
    rank: int
    ramification: tuple[int, ...] | None = None
    ambient_dim: int | None = None

    def __post_init__(self):
        if self.l < 1:
            raise InvalidInput("need at least one branch")
        ambient = self.l if self.ambient_dim is None else self.ambient_dim
        if ambient < self.l:
            raise InvalidInput(f"ambient dimension {ambient} < number of branches {self.l}")
        object.__setattr__(self, "ambient_dim", ambient)
        ram = tuple(self.ramification) if self.ramification is not None else (1,) * self.l
        if len(ram) != self.l or any(int(d) != d or d < 1 for d in ram):
            raise InvalidInput(f"ramification must be {self.l} positive integers, got {ram}")
        object.__setattr__(self, "ramification", tuple(int(d) for d in ram))
        factors = []
        for pv, mult in self.factors:
            pv = pv if isinstance(pv, PoleVector) else PoleVector(tuple(pv))
            if len(pv) != self.l:
                raise InvalidInput(f"pole vector {pv.orders} does not have {self.l} entries")
            if int(mult) != mult or mult < 1:
                raise InvalidInput(f"multiplicities must be positive integers, got {mult}")
            for x, d in zip(pv.orders, ram):
                if d % x.denominator:
                    raise InvalidInput(
                        f"pole order {x} is not cleared by ramification degree {d}"
                    )
            factors.append((pv, int(mult)))
        object.__setattr__(self, "factors", tuple(factors))
        if self.rank < 0:
            raise InvalidInput("rank must be >= 0")
        total = sum(m for _, m in factors)
        if total != self.rank:
            raise InvalidInput(f"factor multiplicities sum to {total}, rank is {self.rank}")

    @classmethod
    def from_irregularities(cls, irr: Sequence[int], rank: int) -> "QuasiNormalData":
        """Some module with the given rank and per-branch irregularities.

        One factor carries all the poles, the other rank-1 factors are
        regular.
        """
        irr = [int(x) for x in irr]
        if rank == 0:
            if any(irr):
                raise InvalidInput("a rank-0 module has no irregularity")
            return cls(len(irr), (), 0)
        factors = [(PoleVector(tuple(irr)), 1)]
        if rank > 1:
            factors.append((PoleVector((0,) * len(irr)), rank - 1))
        return cls(len(irr), tuple(factors), rank)


@dataclass(frozen=True)
class StalkTable:
    dims: dict[int, int]

    @property
    def euler(self) -> int:
        return sum((-1) ** j * v for j, v in self.dims.items())


def exponential_stalk_dims(k: Sequence[int], l: int | None = None) -> StalkTable:
    """Stalk at the origin of the solution complex of e^phi, phi with pole orders k."""
    k = list(k)
    l = len(k) if l is None else l
    if l < 1 or len(k) != l:
        raise InvalidInput(f"expected {l} pole orders, got {k}")
    k = [as_fraction(x) for x in k]
    if any(x.denominator != 1 for x in k):
        raise InvalidInput(f"exponential stalks need integer pole orders (ramify first): {k}")
    k = [int(x) for x in k]
    if any(x < 0 for x in k):
        raise InvalidInput("pole orders must be >= 0")
    if l == 1:
        return StalkTable({1: k[0]})
    d = gcd(*k) if all(k) else 0
    return StalkTable({j: d * comb(l - 1, j - 1) for j in range(1, l + 1)})


def irregularity(q: QuasiNormalData, i: int) -> int:
    """sum_f N(f) * ord_{D_i}(f); must be an integer."""
    if not 1 <= i <= q.l:
        raise InvalidInput(f"branch {i} out of range 1..{q.l}")
    total = sum(m * pv.orders[i - 1] for pv, m in q.factors)
    if total.denominator != 1:
        raise IntegralityViolation(f"irregularity along D_{i} is {total}, not an integer")
    return int(total)


def irregularities(q: QuasiNormalData) -> tuple[int, ...]:
    return tuple(irregularity(q, i) for i in range(1, q.l + 1))


def local_euler_index(q: QuasiNormalData, stratum: Iterable[int]) -> int:
    S = frozenset(stratum)
    bad = [i for i in S if not 1 <= i <= q.l]
    if bad:
        raise InvalidInput(f"branch indices {bad} out of range 1..{q.l}")
    if not S:
        return q.rank
    if len(S) == 1:
        (i,) = S
        return -irregularity(q, i)
    return 0


def coordinate_strata(l: int) -> list[frozenset]:
    return [frozenset(c) for r in range(l + 1) for c in combinations(range(1, l + 1), r)]


def chart_stratification(l: int) -> Stratification:
    """Coordinate strata of a small polydisc around the deepest point.

    A stratum lying on |S| < l branches is a product with a punctured disc,
    so its Euler characteristic is 0; the deepest stratum is contractible.
    """
    strata = [Stratum(S, len(S), int(len(S) == l)) for S in coordinate_strata(l)]
    closure = {S: frozenset(T for T in coordinate_strata(l) if S <= T) for S in coordinate_strata(l)}
    return Stratification(tuple(strata), closure)


def signed_expansion_value(irr: Sequence[int], rank: int, S: frozenset) -> int:
    """Value on stratum S of sum_T (-1)^|T| (sum_{i in T} irr_i + r) 1_{D_T}."""
    total = 0
    members = sorted(S)
    for r in range(len(members) + 1):
        for T in combinations(members, r):
            total += (-1) ** r * (sum(irr[i - 1] for i in T) + rank)
    return total


def chi_sol_function(q: QuasiNormalData) -> ConstructibleFunction:
    base = chart_stratification(q.l)
    values = {S: local_euler_index(q, S) for S in base.ids}
    irr = irregularities(q)
    for S, v in values.items():
        if signed_expansion_value(irr, q.rank, S) != v:
            raise AssertionError(f"signed expansion disagrees on stratum {sorted(S)}")
    return ConstructibleFunction(base, values)
