"""Resolution data for the worked plane-curve and quadric-cone examples.

Each builder returns a JSON-ready payload for the ``cc-resolve`` command.
Target strata of the plane examples are the complement X of the curve Y,
the smooth part Y of the curve, and the origin "0".  Fibre strata carry
the Euler characteristic of the piece and the exceptional or strict
transform components they lie on; pole orders are listed per component.
"""
from __future__ import annotations

from .charcycle import QUADRIC_STRATA

PLANE_TARGET = [
    {"id": "X", "codim": 0, "chi": 0},
    {"id": "Y", "codim": 1, "chi": 0},
    {"id": "0", "codim": 2, "chi": 1},
]
PLANE_CLOSURE = {"X": ["Y", "0"], "Y": ["0"]}


def _pt(name, chi, on):
    return {"id": name, "chi": chi, "on": list(on)}


def _plane(components, zero_fiber, eu_table=None):
    return {
        "target_strata": PLANE_TARGET,
        "closure": PLANE_CLOSURE,
        "components": components,
        "fibers": {
            "X": {"strata": [_pt("p", 1, [])]},
            "Y": {"strata": [_pt("p", 1, ["Yt"])]},
            "0": {"strata": zero_fiber},
        },
        "eu_table": eu_table or {},
    }


def example_i():
    """y/x, one blow-up: strict transform of Y has pole order 1, E has none."""
    return _plane(
        {"Yt": "1", "E": "0"},
        [_pt("E", 1, ["E"]), _pt("E&Yt", 1, ["E", "Yt"])],
    )


def _chain(names, ends_at):
    """Open pieces of a chain of P^1's plus their crossing points.

    ``ends_at`` is the extra component glued to the last curve of the chain.
    """
    strata = []
    for i, name in enumerate(names):
        neighbours = (i > 0) + 1
        strata.append(_pt(name, 2 - neighbours, [name]))
    links = list(zip(names, names[1:])) + [(names[-1], ends_at)]
    strata += [_pt(f"{a}&{b}", 1, [a, b]) for a, b in links]
    return strata


def example_ii(k: int):
    """y^k/x: chain E1 - ... - Ek - Yt, phi is regular (order 0) along every E_i."""
    names = [f"E{i}" for i in range(1, k + 1)]
    components = {name: "0" for name in names}
    components["Yt"] = "1"
    return _plane(components, _chain(names, "Yt"))


def example_iii(k: int):
    """y/x^k: chain Yt - E1 - ... - Ek, pole order k - i along E_i and k along Yt."""
    names = [f"E{i}" for i in range(k, 0, -1)]
    components = {f"E{i}": str(k - i) for i in range(1, k + 1)}
    components["Yt"] = str(k)
    return _plane(components, _chain(names, "Yt"))


def example_iv():
    """Cusp y^2 = x^3: three blow-ups, the last exceptional curve meets the other two and Yt."""
    components = {"Yt": "1", "E1": "2", "E2": "3", "E3": "6"}
    zero_fiber = [
        _pt("E1", 1, ["E1"]),
        _pt("E2", 1, ["E2"]),
        _pt("E3", -1, ["E3"]),
        _pt("E1&E3", 1, ["E1", "E3"]),
        _pt("E2&E3", 1, ["E2", "E3"]),
        _pt("Yt&E3", 1, ["Yt", "E3"]),
    ]
    return _plane(components, zero_fiber, {"Y": {"0": 2}})


def quadric_resolution():
    """e^{1/x} on the quadric cone, via the blow-up of the vertex.

    The module lives on the cone (codimension 1).  The exceptional conic E
    meets the strict transforms of K+- and L+- in four points.
    """
    target = [
        {"id": "X", "codim": 0, "chi": 0},
        {"id": "Z", "codim": 1, "chi": 0},
        {"id": "K+", "codim": 2, "chi": 0},
        {"id": "K-", "codim": 2, "chi": 0},
        {"id": "L+", "codim": 2, "chi": 0},
        {"id": "L-", "codim": 2, "chi": 0},
        {"id": "0", "codim": 3, "chi": 1},
    ]
    closure = {
        "X": [s for s in QUADRIC_STRATA if s != "X"],
        "Z": ["K+", "K-", "L+", "L-", "0"],
        "K+": ["0"], "K-": ["0"], "L+": ["0"], "L-": ["0"],
    }
    zero_fiber = [_pt("E", -2, ["E"])] + [
        _pt(f"E&{c}", 1, ["E", c]) for c in ("K+", "K-", "L+", "L-")
    ]
    fibers = {"X": {"strata": []}, "Z": {"strata": [_pt("p", 1, [])]}, "0": {"strata": zero_fiber}}
    for c in ("K+", "K-", "L+", "L-"):
        fibers[c] = {"strata": [_pt("p", 1, [c])]}
    return {
        "target_strata": target,
        "closure": closure,
        "components": {"E": "1", "K+": "1", "K-": "1", "L+": "0", "L-": "0"},
        "fibers": fibers,
        "eu_table": {"Z": {"0": 0}},
        "support_codim": 1,
    }


def all_examples() -> dict[str, dict]:
    out = {"ex_i": example_i(), "ex_iv": example_iv(), "quadric": quadric_resolution()}
    for k in range(1, 6):
        out[f"ex_ii_k{k}"] = example_ii(k)
        out[f"ex_iii_k{k}"] = example_iii(k)
    return out
