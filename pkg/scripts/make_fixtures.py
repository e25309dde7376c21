"""Write the example problem files and their expected CLI output.

Run from the repository root: python3 scripts/make_fixtures.py
"""
import io
import json
from pathlib import Path

from ccycle.cli import run
from ccycle.fixtures import all_examples

ROOT = Path(__file__).resolve().parents[1] / "fixtures"

EXTRA = {
    "torus_2_3": ("torus", {"l": 2, "k": [2, 3]}),
    "torus_2_4_6": ("torus", {"l": 3, "k": [2, 4, 6]}),
    "stalk_3": ("stalk", {"k": [3]}),
    "stalk_2_4_6": ("stalk", {"k": [2, 4, 6]}),
    "index_exp_inverse_x": ("index", {"rank": 1, "chi_U": 0, "boundary": [[1, 1], [0, 1]]}),
    "index_exp_x": ("index", {"rank": 1, "chi_U": 1, "boundary": [[1, 1]]}),
    "quasinormal_2_5": ("quasinormal", {"l": 2, "rank": 1, "factors": [{"orders": [2, 5], "multiplicity": 1}]}),
    "quasinormal_ramified": (
        "quasinormal",
        {"l": 1, "rank": 2, "ramification": [2], "factors": [{"orders": ["3/2"], "multiplicity": 2}]},
    ),
    "ginsburg_twist_k3": (
        "ginsburg",
        {"pole_branches": [1], "regular_branches": [2], "factors": [{"orders": [3], "multiplicity": 1}]},
    ),
    "branch_count_quadric": ("branch-count", {"example": "quadric"}),
    "branch_count_iii": ("branch-count", {"example": "iii"}),
}
COMMAND = {"quasinormal": "cc-quasinormal", "ginsburg": "cc-limit", "resolve": "cc-resolve"}


def main():
    (ROOT / "inputs").mkdir(parents=True, exist_ok=True)
    (ROOT / "golden").mkdir(parents=True, exist_ok=True)
    problems = {name: ("resolve", p) for name, p in all_examples().items()}
    problems.update(EXTRA)
    for name, (kind, payload) in sorted(problems.items()):
        path = ROOT / "inputs" / f"{name}.json"
        path.write_text(json.dumps({"kind": kind, "payload": payload}, indent=1, sort_keys=True) + "\n")
        buf = io.StringIO()
        code = run([COMMAND.get(kind, kind), "--input", str(path)], stdout=buf)
        if code:
            raise SystemExit(f"{name}: exit {code}: {buf.getvalue()}")
        (ROOT / "golden" / f"{name}.json").write_text(buf.getvalue())


if __name__ == "__main__":
    main()
