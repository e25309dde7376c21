"""Newton polygon branch counting for polynomials in (y, t).

The number of Puiseux roots y(t) -> 0 as t -> 0 (counted with
multiplicity) equals the total horizontal length of the lower Newton hull
edges of positive slope valuation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import GenericityError, InvalidInput
from .stalkcalc import as_fraction

Exponent = tuple[int, int]


@dataclass(frozen=True)
class BivariatePolynomial:
    """Map (y-exponent, t-exponent) -> nonzero rational coefficient."""

    terms: Mapping[Exponent, Fraction]

    def __post_init__(self):
        clean = {}
        for (a, b), c in self.terms.items():
            if int(a) != a or int(b) != b or a < 0 or b < 0:
                raise InvalidInput(f"exponents must be nonnegative integers, got {(a, b)}")
            c = as_fraction(c)
            if c:
                clean[(int(a), int(b))] = c
        if not clean:
            raise InvalidInput("the zero polynomial has no Newton polygon")
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, object]]) -> "BivariatePolynomial":
        """Sum a list of (a, b, coeff) triples, merging repeated exponents."""
        acc: dict[Exponent, Fraction] = {}
        for a, b, c in terms:
            acc[(a, b)] = acc.get((a, b), Fraction(0)) + as_fraction(c)
        return cls(acc)

    @property
    def support(self) -> list[Exponent]:
        return sorted(self.terms)

    def deg_y(self) -> int:
        return max(a for a, _ in self.terms)

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        acc: dict[Exponent, Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return BivariatePolynomial(acc)


@dataclass(frozen=True)
class NewtonEdge:
    start: Exponent
    end: Exponent

    @property
    def length(self) -> int:
        return self.end[0] - self.start[0]

    @property
    def valuation(self) -> Fraction:
        """mu with y ~ t^mu along this edge."""
        return Fraction(self.start[1] - self.end[1], self.end[0] - self.start[0])


def _cross(o: Exponent, a: Exponent, b: Exponent) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _lower_hull_points(points: Iterable[Exponent]) -> list[Exponent]:
    # keep only the lowest t-exponent in each column
    lowest: dict[int, int] = {}
    for a, b in points:
        lowest[a] = min(b, lowest.get(a, b))
    pts = sorted(lowest.items())
    hull: list[Exponent] = []
    for p in pts:
        # pop while not a strict left turn: collinear points are merged away
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def lower_hull(p: BivariatePolynomial) -> list[NewtonEdge]:
    """Edges of the lower convex hull of the support, left to right."""
    hull = _lower_hull_points(p.terms)
    return [NewtonEdge(a, b) for a, b in zip(hull, hull[1:])]


def count_vanishing_branches(p: BivariatePolynomial) -> int:
    return sum(e.length for e in lower_hull(p) if e.valuation > 0)


def count_generic(
    raw_terms: Callable[[Mapping[str, Fraction]], Sequence[tuple[int, int, Fraction]]],
    params: Sequence[str],
    stand_ins: Sequence[Mapping[str, Fraction]] | None = None,
    draws: int = 2,
    seed: int = 0,
) -> int:
    """Branch count for a polynomial with symbolic coefficients.

    ``raw_terms(values)`` lists (a, b, coeff) before like terms are merged.
    Every listed exponent is assumed to carry a generically nonzero
    coefficient; the count is taken with the parameters replaced by each
    set of stand-ins, after checking that the coefficients at the hull
    vertices of the generic support did not vanish.  All draws must agree.
    """
    if stand_ins is None:
        rng = random.Random(seed)
        stand_ins = [
            {name: Fraction(rng.randint(1, 97), rng.randint(1, 13)) for name in params}
            for _ in range(draws)
        ]
    counts = []
    for values in stand_ins:
        values = {k: as_fraction(v) for k, v in values.items()}
        raw = list(raw_terms(values))
        formal = {(a, b) for a, b, _ in raw}
        acc: dict[Exponent, Fraction] = {}
        for a, b, c in raw:
            acc[(a, b)] = acc.get((a, b), Fraction(0)) + as_fraction(c)
        for vertex in _lower_hull_points(formal):
            if acc.get(vertex, 0) == 0:
                raise GenericityError(
                    f"coefficient at Newton vertex {vertex} vanishes for stand-ins {values}"
                )
        counts.append(count_vanishing_branches(BivariatePolynomial(acc)))
    if len(set(counts)) != 1:
        raise GenericityError(f"stand-in draws disagree: {counts}")
    return counts[0]


def example_one_terms(k: int):
    """beta^2 y - k beta t + k^2 alpha y^(k-1) t  (solutions through the origin, y^k/x)."""

    def terms(v):
        a, b = v["alpha"], v["beta"]
        return [(1, 0, b * b), (0, 1, -k * b), (k - 1, 1, k * k * a)]

    return terms


def example_two_terms(k: int):
    """beta x^k - t (the x-equation for y/x^k)."""

    def terms(v):
        return [(k, 0, v["beta"]), (0, 1, Fraction(-1))]

    return terms


def example_three_terms(v):
    """(alpha^2 y - beta^2)^2 y^4 - t (beta^3 - alpha^2 beta y^4 + beta^3 y^3), cusp case."""
    a, b = v["alpha"], v["beta"]
    return [
        (6, 0, a ** 4),
        (5, 0, -2 * a * a * b * b),
        (4, 0, b ** 4),
        (0, 1, -b ** 3),
        (4, 1, a * a * b),
        (3, 1, b ** 3),
    ]


def quadric_terms(v):
    """c x^2 - t x + t with c = alpha -+ sqrt(-(beta^2 + gamma^2)) generic."""
    return [(2, 0, v["c"]), (1, 1, Fraction(-1)), (0, 1, Fraction(1))]


def count_example_i(k: int, stand_ins=None) -> int:
    return count_generic(example_one_terms(k), ("alpha", "beta"), stand_ins)


def count_example_ii(k: int, stand_ins=None) -> int:
    return count_generic(example_two_terms(k), ("beta",), stand_ins)


def count_example_iii(alpha=None, beta=None) -> int:
    if alpha is None and beta is None:
        return count_generic(example_three_terms, ("alpha", "beta"))
    return count_generic(example_three_terms, ("alpha", "beta"), [{"alpha": alpha, "beta": beta}])


def count_quadric(stand_ins=None) -> int:
    return count_generic(quadric_terms, ("c",), stand_ins)
