"""Characteristic cycles of quasi-normal forms and limits of twisted cycles.

Conormal cycles on a normal crossing chart are keyed by the frozenset of
branches whose intersection they sit over; the empty set is the zero
section.  Limits of the scaled cycles t*(CCirr + dlog g) are evaluated by
closed-form coefficient arithmetic, with a determinant-based covering
count kept alongside as an independent route.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Iterable, Mapping, Sequence

from .constructible import (
    ConstructibleFunction,
    LagrangianCycle,
    QUADRIC_CONE_EU_AT_VERTEX,
    Stratification,
    Stratum,
    chi_from_cc,
    eu_table_from_values,
)
from .errors import IntegralityViolation, InvalidInput, WitnessFailure
from .exactla import IntMatrix, SnfResult, check_snf, smith_normal_form
from .puiseux import count_quadric
from .stalkcalc import PoleVector, QuasiNormalData, as_fraction, irregularities


def _subsets(items: Iterable[int]):
    items = sorted(items)
    for r in range(len(items) + 1):
        for c in combinations(items, r):
            yield frozenset(c)


def cc_quasinormal(q: QuasiNormalData) -> LagrangianCycle:
    """Coefficient of T*_{D_S} is sum_{i in S} irr_i + rank, for every S."""
    irr = irregularities(q)
    if q.rank == 0:
        return LagrangianCycle({})
    return LagrangianCycle({
        S: sum(irr[i - 1] for i in S) + q.rank for S in _subsets(range(1, q.l + 1))
    })


@dataclass(frozen=True)
class IrregularCCData:
    """Exponential factors along the pole branches I_A on top of a regular cycle on I_B.

    ``factors`` pair a mapping {branch in I_A: pole order} with a
    multiplicity.  ``regular_cycle`` is keyed by subsets of I_B.  Use
    :meth:`build` rather than the constructor; it normalises overlaps
    between I_A and I_B.
    """

    pole_branches: frozenset
    regular_branches: frozenset
    factors: tuple[tuple[Mapping[int, Fraction], int], ...]
    regular_cycle: LagrangianCycle
    ramification: Mapping[int, int] = field(default_factory=dict)
    g_orders: Mapping[int, int] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        pole_branches: Iterable[int],
        regular_branches: Iterable[int] = (),
        factors: Iterable = (),
        regular_cycle: Mapping | LagrangianCycle | None = None,
        ramification: Mapping[int, int] | None = None,
        g_orders: Mapping[int, int] | None = None,
    ) -> "IrregularCCData":
        I_A = frozenset(int(i) for i in pole_branches)
        I_B = frozenset(int(i) for i in regular_branches)
        if regular_cycle is None:
            # CC(O(*D_B)): every conormal over the I_B crossings, weight one
            regular_cycle = {S: 1 for S in _subsets(I_B)}
        if not isinstance(regular_cycle, LagrangianCycle):
            regular_cycle = LagrangianCycle({frozenset(k): v for k, v in regular_cycle.items()})
        for key in regular_cycle.coefficients:
            if not frozenset(key) <= I_B:
                raise InvalidInput(f"regular cycle term {sorted(key)} is not supported on I_B")
        ram = {j: 1 for j in I_A | I_B}
        ram.update({int(j): int(d) for j, d in (ramification or {}).items()})
        if any(d < 1 for d in ram.values()):
            raise InvalidInput("ramification degrees must be positive")
        g = {j: 1 for j in I_A | I_B}
        g.update({int(j): int(m) for j, m in (g_orders or {}).items()})
        if any(g[j] < 1 for j in I_A | I_B):
            raise InvalidInput("orders of g must be positive on every divisor branch")

        norm_factors = []
        for orders, mult in factors:
            if not isinstance(orders, Mapping):
                orders = dict(zip(sorted(I_A), orders))
            orders = {int(j): as_fraction(x) for j, x in orders.items()}
            if set(orders) - I_A:
                raise InvalidInput(f"factor has poles off I_A: {sorted(set(orders) - I_A)}")
            if any(x < 0 for x in orders.values()):
                raise InvalidInput("pole orders must be >= 0")
            for j, x in orders.items():
                if ram[j] % x.denominator:
                    raise InvalidInput(f"order {x} on branch {j} not cleared by ramification {ram[j]}")
            if int(mult) != mult or mult < 1:
                raise InvalidInput("factor multiplicities must be positive integers")
            norm_factors.append(({j: orders.get(j, Fraction(0)) for j in I_A}, int(mult)))

        # t dlog g1 + t dlog g2 = t dlog(g1 g2): branches shared by I_A and I_B
        # move to I_A, and regular-cycle terms on them vanish off Y1.
        overlap = I_A & I_B
        if overlap:
            regular_cycle = LagrangianCycle({
                S: c for S, c in regular_cycle.coefficients.items() if not (S & overlap)
            })
            I_B = I_B - overlap
        return cls(I_A, I_B, tuple(norm_factors), regular_cycle, ram, g)

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.factors)

    @property
    def branches(self) -> frozenset:
        return self.pole_branches | self.regular_branches


def limit_multiplicity(data: IrregularCCData, S: Iterable[int]) -> int:
    """Exponential part of the coefficient of T*_{D_S} in lim t{CCirr + dlog g}.

    sum_f N(f) * (sum_{j in S, j in I_A} ord_j(f) + 1), evaluated on the
    ramified cover (multiply by d_1...d_l) and divided back down.
    """
    S = frozenset(S)
    if not S:
        raise InvalidInput("limit_multiplicity needs a nonempty branch set")
    if not S <= data.branches:
        raise InvalidInput(f"branches {sorted(S - data.branches)} are not divisor branches")
    degree = prod(data.ramification[j] for j in data.pole_branches) or 1
    on_cover = Fraction(0)
    for orders, mult in data.factors:
        on_cover += mult * degree * (sum(orders[j] for j in S & data.pole_branches) + 1)
    if on_cover.denominator != 1:
        raise IntegralityViolation(f"cover multiplicity {on_cover} is not an integer")
    value = on_cover / degree
    if value.denominator != 1:
        raise IntegralityViolation(
            f"limit multiplicity {value} is fractional; the factor list is probably "
            "missing conjugates"
        )
    return int(value)


def limit_multiplicity_via_cover(data: IrregularCCData, S: Iterable[int]) -> int:
    """Same quantity, counted as the degree of the monomial map on the ramified cover.

    On the cover w_j^{d_j} = u_j the dominant part of t(dh + dlog g) = alpha
    is a monomial system whose exponent matrix has entries
    -d_i (k_i + delta_ij); its solution count is |det| (product of Smith
    invariants), and every downstairs solution has prod d_j preimages.
    """
    S = sorted(frozenset(S))
    if not S:
        raise InvalidInput("need a nonempty branch set")
    degree = prod(data.ramification[j] for j in S)
    total = 0
    for orders, mult in data.factors:
        k = [orders.get(j, Fraction(0)) for j in S]
        d = [data.ramification[j] for j in S]
        rows = []
        for i in range(len(S)):
            entry = [-(d[i] * (k[i] + (i == j))) for j in range(len(S))]
            if any(e.denominator != 1 for e in entry):
                raise IntegralityViolation("ramification does not clear the pole orders")
            rows.append([int(e) for e in entry])
        snf = smith_normal_form(IntMatrix.from_rows(rows))
        total += mult * prod(snf.diag)
    if total % degree:
        raise IntegralityViolation(f"{total} solutions on the cover is not divisible by {degree}")
    return total // degree


def ginsburg_limit(data: IrregularCCData) -> LagrangianCycle:
    """lim_{t->0} of t{CCirr + dlog g} as a combination of conormals.

    Each regular term c [T*_{D_I'}] with I' in I_B spreads over every
    P in I_A, landing on D_{I' u P} with weight c times the exponential
    multiplicity along P (P empty gives the rank).
    """
    out: dict[frozenset, int] = {}
    for I_prime, c in data.regular_cycle.coefficients.items():
        for P in _subsets(data.pole_branches):
            weight = limit_multiplicity(data, P) if P else data.rank
            key = frozenset(I_prime) | P
            out[key] = out.get(key, 0) + c * weight
    return LagrangianCycle(out)


def classical_ginsburg(regular_cycle: LagrangianCycle, rank: int, extra_branches: Iterable[int]) -> LagrangianCycle:
    """Ginsburg limit with no exponential twist: every P contributes weight rank."""
    out: dict[frozenset, int] = {}
    for I_prime, c in regular_cycle.coefficients.items():
        for P in _subsets(extra_branches):
            key = frozenset(I_prime) | P
            out[key] = out.get(key, 0) + c * rank
    return LagrangianCycle(out)


@dataclass(frozen=True)
class ToricDegreeWitness:
    A: IntMatrix
    C: IntMatrix
    snf: SnfResult

    @property
    def degree(self) -> int:
        return self.snf.diag[-1]


def toric_matrices(k: Sequence[int]) -> tuple[IntMatrix, IntMatrix]:
    """A_{ij} = -k_i - delta_ij and its adjugate-like partner C with A C = (sum k + 1) I."""
    l = len(k)
    s = sum(k)
    A = IntMatrix.from_rows([[-k[i] - (i == j) for j in range(l)] for i in range(l)])
    C = IntMatrix.from_rows(
        [[(-(s - k[i]) - 1) if i == j else k[i] for j in range(l)] for i in range(l)]
    )
    return A, C


def toric_degree_witness(k: Sequence[int]) -> ToricDegreeWitness:
    """Certify that u -> u^A is an unramified covering of degree sum(k) + 1.

    All-zero k is accepted (A = -identity, degree 1).
    """
    k = [int(x) for x in k]
    if not k or any(x < 0 for x in k):
        raise InvalidInput(f"pole orders must be a nonempty list of integers >= 0, got {k}")
    l, deg = len(k), sum(k) + 1
    A, C = toric_matrices(k)
    target = IntMatrix.identity(l).scale(deg)
    if A @ C != target or C @ A != target:
        raise WitnessFailure("A C != (sum k + 1) I")
    snf = smith_normal_form(A)
    check_snf(A, snf)
    if snf.diag != (1,) * (l - 1) + (deg,):
        raise WitnessFailure(f"unexpected invariant factors {snf.diag}")
    return ToricDegreeWitness(A, C, snf)


# -- the twisted quadric cone in C^3 ----------------------------------------

QUADRIC_STRATA = ("X", "Z", "K+", "K-", "L+", "L-", "0")


def quadric_stratification() -> Stratification:
    """C^3 stratified by the cone Z = {x^2+y^2+z^2 = 0}, the lines K+-, L+- on it, and the vertex."""
    strata = [
        Stratum("X", 0, 0),   # C^3 minus a contractible cone
        Stratum("Z", 1, 0),   # cone minus four lines through the vertex
        Stratum("K+", 2, 0),
        Stratum("K-", 2, 0),
        Stratum("L+", 2, 0),
        Stratum("L-", 2, 0),
        Stratum("0", 3, 1),
    ]
    closure = {
        "X": frozenset(QUADRIC_STRATA),
        "Z": frozenset({"Z", "K+", "K-", "L+", "L-", "0"}),
        "K+": frozenset({"K+", "0"}),
        "K-": frozenset({"K-", "0"}),
        "L+": frozenset({"L+", "0"}),
        "L-": frozenset({"L-", "0"}),
    }
    return Stratification(tuple(strata), closure)


def quadric_eu_table():
    base = quadric_stratification()
    return eu_table_from_values(base, {"Z": {"0": QUADRIC_CONE_EU_AT_VERTEX}})


def quadric_limit_cycle() -> LagrangianCycle:
    """Assemble CC(e^{1/x} (x) N) for N of rank one on the quadric cone.

    Local pieces: near the lines L+- (where N acquires no twist but x has a
    simple zero on the line) and near K+- = Z n {x = 0} the limit is a
    one-branch Ginsburg limit with pole order 1.  The remaining vertex
    contribution of the Z-piece counts the solutions tending to 0: two roots
    of the quadratic in x for each of the two square-root branches of
    lambda * x.
    """
    out: dict[str, int] = {}
    one_branch = IrregularCCData.build(pole_branches=[1], factors=[({1: 1}, 1)])
    line_limit = ginsburg_limit(one_branch)
    for line in ("L+", "L-"):
        # conormal of the line itself, and of the vertex it passes through
        out[line] = out.get(line, 0) + line_limit[frozenset()]
        out["0"] = out.get("0", 0) + line_limit[frozenset({1})]
    z_coeff = set()
    for curve in ("K+", "K-"):
        z_coeff.add(line_limit[frozenset()])
        out[curve] = out.get(curve, 0) + line_limit[frozenset({1})]
    if len(z_coeff) != 1:
        raise WitnessFailure("local charts disagree on the multiplicity of Z")
    out["Z"] = z_coeff.pop()
    sign_branches = 2
    out["0"] += sign_branches * count_quadric()
    return LagrangianCycle(out)


def quadric_chi() -> ConstructibleFunction:
    return chi_from_cc(quadric_limit_cycle(), quadric_eu_table())
