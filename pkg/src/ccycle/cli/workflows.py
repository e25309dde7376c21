"""Payload-level operations shared by the command handlers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from ..charcycle import IrregularCCData
from ..constructible import (
    ConstructibleFunction,
    LagrangianCycle,
    Stratification,
    Stratum,
    cc_from_chi,
    eu_table_from_values,
    pushforward,
)
from ..errors import InvalidInput
from ..stalkcalc import PoleVector, QuasiNormalData, as_fraction, local_euler_index


# -- stratum keys on a normal crossing chart ---------------------------------

def nc_key(S) -> str:
    return "&".join(f"D{i}" for i in sorted(S)) or "X"


def parse_nc_key(key: str) -> frozenset:
    if key == "X":
        return frozenset()
    out = set()
    for part in key.split("&"):
        if not (part.startswith("D") and part[1:].isdigit()):
            raise InvalidInput(f"bad stratum key {key!r}; expected X, D1, D1&D2, ...")
        out.add(int(part[1:]))
    return frozenset(out)


def nc_cycle_json(c: LagrangianCycle) -> dict[str, int]:
    return {nc_key(S): m for S, m in c.coefficients.items()}


def fraction_json(x: Fraction):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- index formula -------------------------------------------------------------

@dataclass(frozen=True)
class IndexInput:
    rank: int
    chi_U: int
    boundary: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.rank < 0:
            raise InvalidInput("rank must be >= 0")
        boundary = tuple((int(i), int(c)) for i, c in self.boundary)
        if any(i < 0 for i, _ in boundary):
            raise InvalidInput("irregularities must be >= 0")
        object.__setattr__(self, "boundary", boundary)


def index_formula(inp: IndexInput) -> int:
    """Global Euler characteristic of algebraic de Rham cohomology.

    rank * chi(U) minus the irregularity-weighted Euler characteristics of
    the open boundary pieces.
    """
    return inp.rank * inp.chi_U - sum(irr * chi for irr, chi in inp.boundary)


# -- builders from payloads ----------------------------------------------------

def quasinormal_from_payload(p: Mapping) -> QuasiNormalData:
    factors = tuple(
        (PoleVector(tuple(as_fraction(x) for x in f["orders"])), f["multiplicity"])
        for f in p["factors"]
    )
    ram = p.get("ramification")
    return QuasiNormalData(
        p["l"], factors, p["rank"], tuple(ram) if ram is not None else None, p.get("ambient_dim")
    )


def ginsburg_from_payload(p: Mapping) -> IrregularCCData:
    factors = []
    for f in p["factors"]:
        orders = f["orders"]
        if isinstance(orders, Mapping):
            orders = {int(j): as_fraction(x) for j, x in orders.items()}
        factors.append((orders, f["multiplicity"]))
    reg = p.get("regular_cycle")
    regular_cycle = None
    if reg is not None:
        regular_cycle = {parse_nc_key(k): v for k, v in reg["coeffs"].items()}
    return IrregularCCData.build(
        pole_branches=p["pole_branches"],
        regular_branches=p.get("regular_branches", ()),
        factors=factors,
        regular_cycle=regular_cycle,
        ramification={int(j): d for j, d in p.get("ramification", {}).items()},
        g_orders={int(j): m for j, m in p.get("g_orders", {}).items()},
    )


def stratification_from_payload(strata: Sequence[Mapping], closure: Mapping | None) -> Stratification:
    return Stratification.build(
        [Stratum(s["id"], s["codim"], s["chi"]) for s in strata],
        {z: frozenset(ws) for z, ws in (closure or {}).items()},
    )


def eu_from_payload(base: Stratification, table: Mapping | None):
    table = table or {}
    unknown = [z for z in table if z not in base] + [
        w for row in table.values() for w in row if w not in base
    ]
    if unknown:
        raise InvalidInput(f"Euler obstruction table mentions unknown strata {sorted(set(unknown))}")
    return eu_table_from_values(base, table)


def _fiber_value(piece: Mapping, components: Mapping[str, Fraction], rank: int) -> int:
    if "value" in piece:
        return piece["value"]
    on = list(piece["on"])
    if not on:
        return rank
    missing = [c for c in on if c not in components]
    if missing:
        raise InvalidInput(f"no pole order given for components {missing}")
    if len(set(on)) != len(on):
        raise InvalidInput(f"repeated component in {on}")
    orders = [components[c] for c in on]
    ram = [lcm(1, x.denominator) for x in orders]
    factors = ((PoleVector(tuple(orders)), rank),) if rank else ()
    q = QuasiNormalData(len(on), factors, rank, tuple(ram))
    return local_euler_index(q, range(1, len(on) + 1))


def resolve_workflow(p: Mapping) -> dict:
    """Push the stalk Euler characteristics on a resolution down to the target.

    Every fibre piece gets a value, either given or computed from the pole
    orders of the components it lies on; the target function is the fibre
    Euler integral, signed by (-1)^support_codim for a module living on a
    subvariety, and the cycle follows from the index theorem.
    """
    target = stratification_from_payload(p["target_strata"], p.get("closure"))
    components = {c: as_fraction(x) for c, x in p.get("components", {}).items()}
    if any(x < 0 for x in components.values()):
        raise InvalidInput("component pole orders must be >= 0")
    rank = p.get("rank", 1)
    missing = [w for w in target.ids if w not in p["fibers"]]
    extra = [w for w in p["fibers"] if w not in target]
    if missing or extra:
        raise InvalidInput(f"fibres missing for {missing}, given for unknown strata {extra}")

    source, values, fibers = [], {}, {}
    for w in target.ids:
        fibers[w] = {}
        for piece in p["fibers"][w]["strata"]:
            sid = f"{w}/{piece['id']}"
            source.append(Stratum(sid, piece.get("codim", 0), piece["chi"]))
            values[sid] = _fiber_value(piece, components, rank)
            fibers[w][sid] = piece["chi"]
    upstairs = ConstructibleFunction(Stratification.build(source), values)
    down = pushforward(upstairs, target, fibers)
    chi = down.scale((-1) ** p.get("support_codim", 0))
    eu = eu_from_payload(target, p.get("eu_table"))
    return {"chi": chi, "cc": cc_from_chi(chi, eu)}
