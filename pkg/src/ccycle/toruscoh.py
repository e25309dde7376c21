"""Cohomology of the complement of a codimension-one subtorus family.

For positive integers k_1..k_l let T be the set of angles with
k_1*theta_1 + ... + k_l*theta_l in 2*pi*Z inside (S^1)^l, and W its
complement.  ``closed_form_dims`` returns dim H^j((S^1)^l; C_W) from the
binomial formula; ``oracle_dims`` re-derives the same numbers by
straightening T with a unimodular change of angles and applying Kuenneth
to the pieces of W.  ``count_components_on_grid`` is a third, purely
combinatorial check of how many pieces W has.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InvalidInput, WitnessFailure
from .exactla import (
    IntMatrix,
    bezout_chain,
    exterior_rank,
    is_saturated,
    kernel_lattice_basis,
    smith_normal_form,
)


@dataclass(frozen=True)
class TorusProblem:
    l: int
    k: tuple[int, ...]

    def __post_init__(self):
        if self.l < 2:
            raise InvalidInput(f"torus dimension must be >= 2, got {self.l}")
        if len(self.k) != self.l:
            raise InvalidInput(f"expected {self.l} weights, got {len(self.k)}")
        if any(int(x) != x or x < 1 for x in self.k):
            raise InvalidInput(f"weights must be positive integers, got {self.k}")

    @classmethod
    def of(cls, k) -> "TorusProblem":
        k = tuple(int(x) for x in k)
        return cls(len(k), k)

    @property
    def d(self) -> int:
        return gcd(*self.k)


@dataclass(frozen=True)
class CohomologyTable:
    dims: dict[int, int]

    def __getitem__(self, j: int) -> int:
        return self.dims.get(j, 0)

    @property
    def euler(self) -> int:
        return sum((-1) ** j * v for j, v in self.dims.items())

    def nonzero(self) -> dict[int, int]:
        return {j: v for j, v in sorted(self.dims.items()) if v}


def closed_form_dims(p: TorusProblem) -> CohomologyTable:
    return CohomologyTable({j: p.d * comb(p.l - 1, j - 1) for j in range(1, p.l + 1)})


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def straighten(p: TorusProblem) -> tuple[int, IntMatrix]:
    """Unimodular V with k @ V = (+-d, 0, ..., 0).

    In the angle coordinates V^{-1} theta the set T is cut out by
    d * theta'_1 in 2*pi*Z alone, i.e. it is d parallel coordinate subtori.
    """
    res = smith_normal_form(IntMatrix.from_rows([list(p.k)]))
    V = res.right
    image = (IntMatrix.from_rows([list(p.k)]) @ V).to_rows()[0]
    if abs(image[0]) != res.diag[0] or any(image[1:]):
        raise WitnessFailure(f"straightening failed: k @ V = {image}")
    return res.diag[0], V


def oracle_dims(p: TorusProblem) -> CohomologyTable:
    """Compactly supported Kuenneth count over the straightened components.

    After straightening, W = (circle minus d points) x T^{l-1}: d copies of
    (open interval) x T^{l-1}.  H_c of an open interval is one-dimensional
    in degree 1; H of T^{l-1} has Poincare polynomial (1 + x)^{l-1}.
    """
    components, _ = straighten(p)
    poincare = [1]
    for _ in range(p.l - 1):
        poincare = _poly_mul(poincare, [1, 1])
    per_component = _poly_mul([0, 1], poincare)
    return CohomologyTable({j: components * c for j, c in enumerate(per_component) if j >= 1})


def subtorus_dims(p: TorusProblem) -> CohomologyTable:
    """dim H^j(T): T is d disjoint copies of an (l-1)-torus."""
    return CohomologyTable({j: p.d * comb(p.l - 1, j) for j in range(0, p.l)})


def ambient_dims(p: TorusProblem) -> CohomologyTable:
    return CohomologyTable({j: comb(p.l, j) for j in range(0, p.l + 1)})


def phi_parametrization(p: TorusProblem) -> IntMatrix:
    """Coefficient matrix (l x (l-1)) of the linear parametrisation of T.

    Requires gcd(k) == 1.  Column 1 is (k_2', -k_1', 0, ...); column m
    (m >= 2) carries k'_{m+1} * N^{(m)} in rows 1..m and -d_m/d_{m+1} in
    row m+1, where d_m = gcd(k_1..k_m), k'_m = k_m/d_m and N^{(m)} is a
    Bezout certificate with sum_i k_i N_i^{(m)} = d_m.
    """
    k, l = p.k, p.l
    if p.d != 1:
        raise InvalidInput(f"phi_parametrization needs gcd(k) = 1, got {p.d}")
    dm = [0] + [gcd(*k[:m]) for m in range(1, l + 1)]  # dm[m] = d_m (1-indexed)
    cols = []
    first = [0] * l
    first[0], first[1] = k[1] // dm[2], -(k[0] // dm[2])
    cols.append(first)
    for m in range(2, l):
        cert = bezout_chain(k, m).coefficients
        scale = k[m] // dm[m + 1]  # k'_{m+1}
        col = [scale * n for n in cert] + [-(dm[m] // dm[m + 1])] + [0] * (l - m - 1)
        cols.append(col)
    P = IntMatrix.from_rows([list(r) for r in zip(*cols)])
    for col in P.columns():
        if sum(a * b for a, b in zip(k, col)):
            raise WitnessFailure(f"parametrisation column {col} leaves T (k.col != 0)")
    return P


def restriction_rank(p: TorusProblem, j: int) -> int:
    """Rank of H^j((S^1)^l) -> H^j(T).

    H^1 of the inclusion of each component of T is the transpose of a
    kernel-lattice basis; H^j is its j-th exterior power, stacked once per
    component (the components differ by a translation).
    """
    if j < 0:
        return 0
    B = kernel_lattice_basis(p.k).transpose()
    stacked = B
    for _ in range(p.d - 1):
        stacked = stacked.vstack(B)
    if j == 0:
        return 1
    return exterior_rank(stacked, j)


def long_exact_dims(p: TorusProblem) -> CohomologyTable:
    """dim H^j(C_W) read off the long exact sequence of 0 -> C_W -> C -> C_T -> 0."""
    amb, sub = ambient_dims(p), subtorus_dims(p)
    return CohomologyTable({
        j: amb[j] - restriction_rank(p, j) + sub[j - 1] - restriction_rank(p, j - 1)
        for j in range(0, p.l + 1)
    })


def count_components_on_grid(p: TorusProblem, samples: int | None = None) -> int:
    """Number of connected components of W, by flood fill on a sample grid.

    Grid points sit at half-integer offsets; two neighbours are joined when
    the straight segment between them does not meet T.  Default resolution
    is 8*max(k) samples per circle.
    """
    n = samples or 8 * max(p.k)
    l = p.l
    if n ** l > 5_000_000:
        raise InvalidInput("grid too large for the component counter")
    idx = np.indices((n,) * l).reshape(l, -1)
    k = np.array(p.k, dtype=np.int64).reshape(l, 1)
    # s = k.theta / (2 pi), scaled by 2n so it is an integer
    s = (k * (2 * idx + 1)).sum(axis=0)
    on_t = s % (2 * n) == 0
    node = np.arange(idx.shape[1])
    src, dst = [], []
    for axis in range(l):
        step = 2 * int(p.k[axis])
        shifted = idx.copy()
        shifted[axis] = (shifted[axis] + 1) % n
        nbr = np.ravel_multi_index(tuple(shifted), (n,) * l)
        crosses = np.floor_divide(s, 2 * n) != np.floor_divide(s + step, 2 * n)
        # landing exactly on T also counts as a crossing
        crosses |= (s + step) % (2 * n) == 0
        keep = ~crosses & ~on_t & ~on_t[nbr]
        src.append(node[keep])
        dst.append(nbr[keep])
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(len(node),) * 2)
    _, labels = connected_components(graph, directed=False)
    return len(set(labels[~on_t].tolist()))


def phi_is_diffeomorphism_onto_component(p: TorusProblem) -> bool:
    """Lattice-level check: phi's columns span the saturated kernel of k."""
    q = TorusProblem.of([x // p.d for x in p.k])
    P = phi_parametrization(q)
    return is_saturated(P) and P.cols == p.l - 1
