"""Constructible functions on finite stratifications.

A stratification is a finite list of strata with their complex codimension,
their (compactly supported) Euler characteristic, and the closure relation.
Euler characteristics are always supplied by the caller.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Hashable, Iterable, Mapping

from .errors import InvalidInput

StratumId = Hashable


@dataclass(frozen=True)
class Stratum:
    id: StratumId
    codim: int
    chi: int


@dataclass(frozen=True)
class Stratification:
    """Strata plus closure relation.

    ``closure[z]`` lists the strata contained in the closure of ``z``
    (including ``z`` itself); strata missing from ``closure`` are closed.
    """

    strata: tuple[Stratum, ...]
    closure: Mapping[StratumId, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        ids = [s.id for s in self.strata]
        if len(set(ids)) != len(ids):
            raise InvalidInput("duplicate stratum ids")
        known = set(ids)
        closure = {s.id: frozenset(self.closure.get(s.id, ())) | {s.id} for s in self.strata}
        for z, members in closure.items():
            if not members <= known:
                raise InvalidInput(f"closure of {z!r} mentions unknown strata {members - known}")
        codim = {s.id: s.codim for s in self.strata}
        for z, members in closure.items():
            for w in members - {z}:
                if codim[w] <= codim[z]:
                    raise InvalidInput(
                        f"stratum {w!r} in the closure of {z!r} must have larger codimension"
                    )
        try:
            tuple(TopologicalSorter({z: m - {z} for z, m in closure.items()}).static_order())
        except CycleError as exc:
            raise InvalidInput("closure relation is not acyclic") from exc
        object.__setattr__(self, "closure", closure)

    @classmethod
    def build(cls, strata: Iterable, closure: Mapping | None = None) -> "Stratification":
        """Accept ``Stratum`` objects or ``(id, codim, chi)`` triples."""
        items = tuple(s if isinstance(s, Stratum) else Stratum(*s) for s in strata)
        return cls(items, dict(closure or {}))

    @property
    def ids(self) -> list[StratumId]:
        return [s.id for s in self.strata]

    def __getitem__(self, z: StratumId) -> Stratum:
        for s in self.strata:
            if s.id == z:
                return s
        raise KeyError(z)

    def __contains__(self, z) -> bool:
        return any(s.id == z for s in self.strata)

    def order_by_codim(self) -> list[StratumId]:
        """Ids sorted so every stratum precedes the strata in its closure."""
        return [s.id for s in sorted(self.strata, key=lambda s: s.codim)]


@dataclass(frozen=True)
class ConstructibleFunction:
    base: Stratification
    values: Mapping[StratumId, int]

    def __post_init__(self):
        missing = [z for z in self.base.ids if z not in self.values]
        if missing:
            raise InvalidInput(f"no value given on strata {missing}")
        extra = set(self.values) - set(self.base.ids)
        if extra:
            raise InvalidInput(f"values given on unknown strata {extra}")
        object.__setattr__(self, "values", {z: int(self.values[z]) for z in self.base.ids})

    def __getitem__(self, z: StratumId) -> int:
        return self.values[z]

    def __add__(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        return ConstructibleFunction(self.base, {z: self[z] + other[z] for z in self.base.ids})

    def scale(self, c: int) -> "ConstructibleFunction":
        return ConstructibleFunction(self.base, {z: c * v for z, v in self.values.items()})

    @classmethod
    def zero(cls, base: Stratification) -> "ConstructibleFunction":
        return cls(base, {z: 0 for z in base.ids})

    @classmethod
    def indicator_of_closure(cls, base: Stratification, z: StratumId) -> "ConstructibleFunction":
        return cls(base, {w: int(w in base.closure[z]) for w in base.ids})


@dataclass(frozen=True)
class LagrangianCycle:
    """Integer combination of conormal cycles, keyed by stratum id."""

    coefficients: Mapping[StratumId, int]

    def __post_init__(self):
        clean = {z: int(c) for z, c in self.coefficients.items() if c}
        object.__setattr__(self, "coefficients", clean)
        negative = {z: c for z, c in clean.items() if c < 0}
        if negative:
            warnings.warn(f"negative multiplicities {negative} in a Lagrangian cycle", stacklevel=3)

    def __getitem__(self, z: StratumId) -> int:
        return self.coefficients.get(z, 0)

    def __add__(self, other: "LagrangianCycle") -> "LagrangianCycle":
        out = dict(self.coefficients)
        for z, c in other.coefficients.items():
            out[z] = out.get(z, 0) + c
        return LagrangianCycle(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            other = LagrangianCycle(other)
        if not isinstance(other, LagrangianCycle):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))


EuTable = Mapping[StratumId, ConstructibleFunction]


def smooth_eu_table(base: Stratification) -> dict[StratumId, ConstructibleFunction]:
    """Euler obstructions when every stratum closure is smooth: Eu_Z = 1 on the closure."""
    return {z: ConstructibleFunction.indicator_of_closure(base, z) for z in base.ids}


def eu_table_from_values(base: Stratification, table: Mapping) -> dict[StratumId, ConstructibleFunction]:
    """Fill a partial table: unspecified entries default to 1 on the closure and 0 outside."""
    out = {}
    for z in base.ids:
        given = table.get(z, {})
        out[z] = ConstructibleFunction(
            base, {w: int(given.get(w, int(w in base.closure[z]))) for w in base.ids}
        )
    return out


def check_eu_table(base: Stratification, eu: EuTable) -> None:
    for z in base.ids:
        if z not in eu:
            continue
        f = eu[z]
        if f[z] != 1:
            raise InvalidInput(f"Eu_{z} must equal 1 on its own stratum")
        outside = [w for w in base.ids if w not in base.closure[z] and f[w] != 0]
        if outside:
            raise InvalidInput(f"Eu_{z} must vanish off the closure, nonzero on {outside}")


def euler_integral(phi: ConstructibleFunction) -> int:
    return sum(s.chi * phi[s.id] for s in phi.base.strata)


def pushforward(
    phi: ConstructibleFunction,
    target: Stratification,
    fibers: Mapping[StratumId, Mapping[StratumId, int]],
) -> ConstructibleFunction:
    """Proper push-forward of constructible functions.

    ``fibers[w]`` maps source strata to the Euler characteristic of their
    intersection with the fibre over a point of target stratum ``w``; the
    value at ``w`` is the Euler integral of ``phi`` over that fibre.
    """
    missing = [w for w in target.ids if w not in fibers]
    if missing:
        raise InvalidInput(f"no fibre data for target strata {missing}")
    values = {}
    for w in target.ids:
        unknown = set(fibers[w]) - set(phi.base.ids)
        if unknown:
            raise InvalidInput(f"fibre over {w!r} mentions unknown source strata {unknown}")
        values[w] = sum(chi * phi[a] for a, chi in fibers[w].items())
    return ConstructibleFunction(target, values)


def fiber_integral(fiber: ConstructibleFunction) -> int:
    """Push-forward value at one point, given the fibre as its own stratified space."""
    return euler_integral(fiber)


def chi_from_cc(c: LagrangianCycle, eu: EuTable) -> ConstructibleFunction:
    """Index theorem: chi = sum_Z (-1)^codim(Z) * m_Z * Eu_Z."""
    if not eu:
        raise InvalidInput("empty Euler obstruction table")
    base = next(iter(eu.values())).base
    out = ConstructibleFunction.zero(base)
    for z, m in c.coefficients.items():
        if z not in eu:
            raise InvalidInput(f"no Euler obstruction for stratum {z!r}")
        out = out + eu[z].scale((-1) ** base[z].codim * m)
    return out


def cc_from_chi(phi: ConstructibleFunction, eu: EuTable) -> LagrangianCycle:
    """Invert the index theorem by back substitution along the closure order."""
    base = phi.base
    check_eu_table(base, eu)
    missing = [z for z in base.ids if z not in eu]
    if missing:
        raise InvalidInput(f"no Euler obstruction for strata {missing}")
    coeffs: dict[StratumId, int] = {}
    for s in sorted(base.strata, key=lambda s: s.codim):
        rest = sum(
            (-1) ** base[z].codim * m * eu[z][s.id]
            for z, m in coeffs.items()
            if z != s.id
        )
        coeffs[s.id] = (-1) ** s.codim * (phi[s.id] - rest)
    return LagrangianCycle(coeffs)


def eu_plane_curve_point(multiplicity: int) -> int:
    """Euler obstruction of a plane curve at a point: the multiplicity."""
    if multiplicity < 1:
        raise InvalidInput("multiplicity must be >= 1")
    return int(multiplicity)


# Euler obstruction of the quadric cone x^2 + y^2 + z^2 = 0 at its vertex.
QUADRIC_CONE_EU_AT_VERTEX = 1 + (-1) ** 3 * 1
