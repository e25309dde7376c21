"""Argument parsing, dispatch and JSON output."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

import jsonschema

from .. import puiseux
from ..charcycle import cc_quasinormal, ginsburg_limit
from ..constructible import (
    ConstructibleFunction,
    LagrangianCycle,
    Stratification,
    Stratum,
    cc_from_chi,
    chi_from_cc,
    euler_integral,
    pushforward,
)
from ..errors import DOMAIN_ERRORS
from ..stalkcalc import exponential_stalk_dims, irregularities
from ..toruscoh import TorusProblem, closed_form_dims
from . import schemas
from .workflows import (
    IndexInput,
    eu_from_payload,
    fraction_json,
    ginsburg_from_payload,
    index_formula,
    nc_cycle_json,
    quasinormal_from_payload,
    resolve_workflow,
    stratification_from_payload,
)

EXIT_OK, EXIT_SCHEMA, EXIT_DOMAIN = 0, 2, 3

# subcommand -> payload kind
KINDS = {
    "torus": "torus",
    "stalk": "stalk",
    "cc-quasinormal": "quasinormal",
    "cc-limit": "ginsburg",
    "cc-resolve": "resolve",
    "integrate": "integrate",
    "pushforward": "pushforward",
    "cc-convert": "convert",
    "index": "index",
    "branch-count": "branch-count",
}


class SchemaError(Exception):
    pass


def _validator(schema):
    return jsonschema.Draft202012Validator(schema)


def validate(instance, schema, what: str) -> None:
    errors = sorted(_validator(schema).iter_errors(instance), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = "/".join(str(x) for x in e.path) or "<root>"
        raise SchemaError(f"{what}: {where}: {e.message}")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise SchemaError(f"expected comma separated integers, got {text!r}") from exc


# -- handlers: payload dict -> result dict ------------------------------------

def do_torus(p):
    k = p["k"]
    if "l" in p and p["l"] != len(k):
        raise SchemaError(f"l = {p['l']} but {len(k)} weights were given")
    table = closed_form_dims(TorusProblem.of(k))
    return {"dims": {str(j): v for j, v in sorted(table.dims.items())}}


def do_stalk(p):
    table = exponential_stalk_dims(p["k"], p.get("l"))
    return {"dims": {str(j): v for j, v in sorted(table.dims.items())}, "euler": table.euler}


def do_quasinormal(p):
    q = quasinormal_from_payload(p)
    return {"cycle": nc_cycle_json(cc_quasinormal(q)), "irregularities": list(irregularities(q))}


def do_ginsburg(p):
    return {"cycle": nc_cycle_json(ginsburg_limit(ginsburg_from_payload(p)))}


def do_resolve(p):
    out = resolve_workflow(p)
    return {"chi": dict(out["chi"].values), "cc": dict(out["cc"].coefficients)}


def _valued(strata):
    base = Stratification.build([Stratum(s["id"], s["codim"], s["chi"]) for s in strata])
    return ConstructibleFunction(base, {s["id"]: s["value"] for s in strata})


def do_integrate(p):
    return {"integral": euler_integral(_valued(p["strata"]))}


def do_pushforward(p):
    phi = _valued(p["source_strata"])
    target = stratification_from_payload(p["target_strata"], None)
    down = pushforward(phi, target, p["fibers"])
    return {"values": dict(down.values), "integral": euler_integral(down)}


def do_convert(p):
    base = stratification_from_payload(p["strata"], p.get("closure"))
    eu = eu_from_payload(base, p.get("eu_table"))
    if "chi" in p:
        chi = ConstructibleFunction(base, p["chi"])
        cc = cc_from_chi(chi, eu)
    else:
        cc = LagrangianCycle(p["cc"])
        chi = chi_from_cc(cc, eu)
    return {"chi": dict(chi.values), "cc": dict(cc.coefficients)}


def do_index(p):
    return {"index": index_formula(IndexInput(p["rank"], p["chi_U"], tuple(map(tuple, p["boundary"]))))}


def do_branch_count(p):
    if "example" in p:
        name, k = p["example"], p.get("k", 1)
        raw = {
            "i": lambda: puiseux.example_one_terms(k),
            "ii": lambda: puiseux.example_two_terms(k),
            "iii": lambda: puiseux.example_three_terms,
            "quadric": lambda: puiseux.quadric_terms,
        }[name]()
        params = {"i": ("alpha", "beta"), "ii": ("beta",), "iii": ("alpha", "beta"), "quadric": ("c",)}[name]
        count = puiseux.count_generic(raw, params)
        # report the hull of one generic draw
        values = {name_: Fraction(3 + i, 2) for i, name_ in enumerate(params)}
        poly = puiseux.BivariatePolynomial.from_terms(raw(values))
    else:
        poly = puiseux.BivariatePolynomial.from_terms((t["a"], t["b"], t["coeff"]) for t in p["terms"])
        count = puiseux.count_vanishing_branches(poly)
    edges = [
        {"start": list(e.start), "end": list(e.end), "length": e.length, "valuation": fraction_json(e.valuation)}
        for e in puiseux.lower_hull(poly)
    ]
    return {"count": count, "edges": edges}


HANDLERS: dict[str, Callable[[dict], dict]] = {
    "torus": do_torus,
    "stalk": do_stalk,
    "quasinormal": do_quasinormal,
    "ginsburg": do_ginsburg,
    "resolve": do_resolve,
    "integrate": do_integrate,
    "pushforward": do_pushforward,
    "convert": do_convert,
    "index": do_index,
    "branch-count": do_branch_count,
}


# -- inline flags -> payload ----------------------------------------------------

def inline_payload(cmd: str, ns: argparse.Namespace) -> dict | None:
    if cmd == "torus" and ns.k is not None:
        p = {"k": _ints(ns.k)}
        if ns.l is not None:
            p["l"] = ns.l
        return p
    if cmd == "stalk" and ns.k is not None:
        p = {"k": _ints(ns.k)}
        if ns.l is not None:
            p["l"] = ns.l
        return p
    if cmd == "cc-quasinormal" and ns.irr is not None:
        irr = _ints(ns.irr)
        rank = ns.rank if ns.rank is not None else 1
        factors = [{"orders": irr, "multiplicity": 1}] if rank else []
        if rank > 1:
            factors.append({"orders": [0] * len(irr), "multiplicity": rank - 1})
        return {"l": len(irr), "rank": rank, "factors": factors}
    if cmd == "cc-limit" and ns.pole_orders is not None:
        orders = [x.strip() for x in ns.pole_orders.split(",")]
        branches = list(range(1, len(orders) + 1))
        regular = [len(orders) + i for i in range(1, ns.regular_branches + 1)]
        return {
            "pole_branches": branches,
            "regular_branches": regular,
            "factors": [{"orders": orders, "multiplicity": 1}],
        }
    if cmd == "index" and ns.rank is not None:
        boundary = []
        for item in (ns.boundary or "").split(","):
            if item.strip():
                try:
                    irr, chi = item.split(":")
                    boundary.append([int(irr), int(chi)])
                except ValueError as exc:
                    raise SchemaError(f"boundary entries look like irr:chi, got {item!r}") from exc
        return {"rank": ns.rank, "chi_U": ns.chi_u if ns.chi_u is not None else 0, "boundary": boundary}
    if cmd == "branch-count":
        if ns.example is not None:
            p = {"example": ns.example}
            if ns.k is not None:
                p["k"] = int(ns.k)
            return p
        if ns.terms is not None:
            terms = []
            for item in ns.terms.split(","):
                try:
                    a, b, c = item.split(":")
                    terms.append({"a": int(a), "b": int(b), "coeff": c.strip()})
                except ValueError as exc:
                    raise SchemaError(f"terms look like a:b:coeff, got {item!r}") from exc
            return {"terms": terms}
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccycle",
        description="Exact characteristic-cycle and constructible-function computations.",
    )
    parser.add_argument("--pretty", action="store_true", help="print a table instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--input", "-i", metavar="FILE", help="JSON payload or {kind, payload} file; '-' for stdin")
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        return sp

    sp = add("torus", "cohomology of the complement of k.theta in 2 pi Z")
    sp.add_argument("--l", type=int)
    sp.add_argument("--k", help="comma separated weights")
    sp = add("stalk", "stalk dimensions of an exponential module at the origin")
    sp.add_argument("--l", type=int)
    sp.add_argument("--k", help="comma separated pole orders")
    sp = add("cc-quasinormal", "characteristic cycle of a quasi-normal form")
    sp.add_argument("--irr", help="comma separated irregularities")
    sp.add_argument("--rank", type=int)
    sp = add("cc-limit", "limit of t(CCirr + dlog g)")
    sp.add_argument("--pole-orders", help="pole orders of a single factor along branches 1..n")
    sp.add_argument("--regular-branches", type=int, default=0, help="number of extra regular branches")
    add("cc-resolve", "chi and CC from resolution data")
    add("integrate", "Euler integral of a constructible function")
    add("pushforward", "proper push-forward of a constructible function")
    add("cc-convert", "convert between chi and CC with an Euler obstruction table")
    sp = add("index", "Euler characteristic of de Rham cohomology from irregularities")
    sp.add_argument("--rank", type=int)
    sp.add_argument("--chi-u", type=int)
    sp.add_argument("--boundary", help="comma separated irr:chi pairs")
    sp = add("branch-count", "number of Puiseux roots tending to zero")
    sp.add_argument("--example", choices=["i", "ii", "iii", "quadric"])
    sp.add_argument("--k", type=int)
    sp.add_argument("--terms", help="comma separated a:b:coeff triples (y^a t^b)")
    return parser


def _read_input(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from exc


def load_payload(cmd: str, ns: argparse.Namespace) -> dict:
    kind = KINDS[cmd]
    if ns.input is not None:
        data = _read_input(ns.input)
        if isinstance(data, dict) and "kind" in data:
            validate(data, schemas.PROBLEM_FILE, "problem file")
            if data["kind"] != kind:
                raise SchemaError(f"problem file is of kind {data['kind']!r}, command expects {kind!r}")
            data = data["payload"]
    else:
        data = inline_payload(cmd, ns)
        if data is None:
            raise SchemaError(f"{cmd}: give --input FILE or the inline flags")
    validate(data, schemas.PAYLOADS[kind], f"{kind} payload")
    return data


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _pretty(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for key in sorted(obj, key=str):
            value = obj[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_pretty(value, indent + 1))
            else:
                lines.append(f"{pad}{str(key).ljust(width)}  {value}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(pad + "  ".join(f"{k}={item[k]}" for k in sorted(item)))
            else:
                lines.append(f"{pad}{item}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _error(kind: str, message: str) -> dict:
    return {"error": {"type": kind, "message": message}}


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    """Run one command; returns the exit code and writes JSON to ``stdout``."""
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_SCHEMA
    kind = KINDS[ns.command]
    try:
        payload = load_payload(ns.command, ns)
        result = HANDLERS[kind](payload)
    except SchemaError as exc:
        out.write(dumps(_error("SchemaError", str(exc))) + "\n")
        return EXIT_SCHEMA
    except DOMAIN_ERRORS as exc:
        out.write(dumps(_error(type(exc).__name__, str(exc))) + "\n")
        return EXIT_DOMAIN
    validate(result, schemas.RESULTS[kind], f"{kind} result")
    if ns.pretty:
        out.write("\n".join(_pretty(result)) + "\n")
    else:
        out.write(dumps(result) + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())
