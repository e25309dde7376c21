"""JSON schemas for command payloads and results."""
from __future__ import annotations

RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"},
    ]
}
NONNEG = {"type": "integer", "minimum": 0}
INT_MAP = {"type": "object", "additionalProperties": {"type": "integer"}}
STRATUM_ID = {"type": "string", "minLength": 1}

TARGET_STRATUM = {
    "type": "object",
    "required": ["id", "codim", "chi"],
    "properties": {"id": STRATUM_ID, "codim": NONNEG, "chi": {"type": "integer"}},
    "additionalProperties": False,
}
VALUED_STRATUM = {
    "type": "object",
    "required": ["id", "codim", "chi", "value"],
    "properties": {
        "id": STRATUM_ID, "codim": NONNEG, "chi": {"type": "integer"}, "value": {"type": "integer"},
    },
    "additionalProperties": False,
}
CLOSURE = {"type": "object", "additionalProperties": {"type": "array", "items": STRATUM_ID}}
EU_TABLE = {"type": "object", "additionalProperties": INT_MAP}

FACTOR = {
    "type": "object",
    "required": ["orders", "multiplicity"],
    "properties": {
        "orders": {"type": "array", "items": RATIONAL},
        "multiplicity": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}
BRANCH_FACTOR = {
    "type": "object",
    "required": ["orders", "multiplicity"],
    "properties": {
        "orders": {
            "oneOf": [
                {"type": "array", "items": RATIONAL},
                {"type": "object", "additionalProperties": RATIONAL},
            ]
        },
        "multiplicity": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}

PAYLOADS = {
    "torus": {
        "type": "object",
        "required": ["k"],
        "properties": {
            "l": {"type": "integer", "minimum": 2},
            "k": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2},
        },
        "additionalProperties": False,
    },
    "stalk": {
        "type": "object",
        "required": ["k"],
        "properties": {
            "l": {"type": "integer", "minimum": 1},
            "k": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        },
        "additionalProperties": False,
    },
    "quasinormal": {
        "type": "object",
        "required": ["l", "rank", "factors"],
        "properties": {
            "l": {"type": "integer", "minimum": 1},
            "ambient_dim": {"type": "integer", "minimum": 1},
            "rank": NONNEG,
            "ramification": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "factors": {"type": "array", "items": FACTOR},
        },
        "additionalProperties": False,
    },
    "ginsburg": {
        "type": "object",
        "required": ["pole_branches", "factors"],
        "properties": {
            "pole_branches": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "regular_branches": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "factors": {"type": "array", "items": BRANCH_FACTOR},
            "regular_cycle": {
                "type": "object",
                "required": ["coeffs"],
                "properties": {"coeffs": INT_MAP},
                "additionalProperties": False,
            },
            "ramification": INT_MAP,
            "g_orders": INT_MAP,
        },
        "additionalProperties": False,
    },
    "resolve": {
        "type": "object",
        "required": ["target_strata", "fibers"],
        "properties": {
            "target_strata": {"type": "array", "items": TARGET_STRATUM, "minItems": 1},
            "closure": CLOSURE,
            "components": {"type": "object", "additionalProperties": RATIONAL},
            "rank": NONNEG,
            "support_codim": NONNEG,
            "fibers": {
                "type": "object",
                "additionalProperties": {
                    "type": "object",
                    "required": ["strata"],
                    "properties": {
                        "strata": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": ["id", "chi"],
                                "properties": {
                                    "id": STRATUM_ID,
                                    "codim": NONNEG,
                                    "chi": {"type": "integer"},
                                    "value": {"type": "integer"},
                                    "on": {"type": "array", "items": STRATUM_ID},
                                },
                                "oneOf": [{"required": ["value"]}, {"required": ["on"]}],
                                "additionalProperties": False,
                            },
                        }
                    },
                    "additionalProperties": False,
                },
            },
            "eu_table": EU_TABLE,
        },
        "additionalProperties": False,
    },
    "integrate": {
        "type": "object",
        "required": ["strata"],
        "properties": {"strata": {"type": "array", "items": VALUED_STRATUM}},
        "additionalProperties": False,
    },
    "pushforward": {
        "type": "object",
        "required": ["source_strata", "target_strata", "fibers"],
        "properties": {
            "source_strata": {"type": "array", "items": VALUED_STRATUM},
            "target_strata": {"type": "array", "items": TARGET_STRATUM},
            "fibers": {"type": "object", "additionalProperties": INT_MAP},
        },
        "additionalProperties": False,
    },
    "convert": {
        "type": "object",
        "required": ["strata"],
        "properties": {
            "strata": {"type": "array", "items": TARGET_STRATUM, "minItems": 1},
            "closure": CLOSURE,
            "eu_table": EU_TABLE,
            "chi": INT_MAP,
            "cc": INT_MAP,
        },
        "oneOf": [{"required": ["chi"]}, {"required": ["cc"]}],
        "additionalProperties": False,
    },
    "index": {
        "type": "object",
        "required": ["rank", "chi_U", "boundary"],
        "properties": {
            "rank": NONNEG,
            "chi_U": {"type": "integer"},
            "boundary": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [NONNEG, {"type": "integer"}],
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
        "additionalProperties": False,
    },
    "branch-count": {
        "type": "object",
        "properties": {
            "terms": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "object",
                    "required": ["a", "b", "coeff"],
                    "properties": {"a": NONNEG, "b": NONNEG, "coeff": RATIONAL},
                    "additionalProperties": False,
                },
            },
            "example": {"enum": ["i", "ii", "iii", "quadric"]},
            "k": {"type": "integer", "minimum": 1},
        },
        "oneOf": [{"required": ["terms"]}, {"required": ["example"]}],
        "additionalProperties": False,
    },
}

PROBLEM_FILE = {
    "type": "object",
    "required": ["kind", "payload"],
    "properties": {"kind": {"enum": sorted(PAYLOADS)}, "payload": {"type": "object"}},
    "additionalProperties": False,
}

DIMS = {"type": "object", "patternProperties": {r"^\d+$": NONNEG}, "additionalProperties": False}
CYCLE = INT_MAP

RESULTS = {
    "torus": {
        "type": "object", "required": ["dims"], "properties": {"dims": DIMS},
        "additionalProperties": False,
    },
    "stalk": {
        "type": "object", "required": ["dims", "euler"],
        "properties": {"dims": DIMS, "euler": {"type": "integer"}},
        "additionalProperties": False,
    },
    "quasinormal": {
        "type": "object", "required": ["cycle", "irregularities"],
        "properties": {"cycle": CYCLE, "irregularities": {"type": "array", "items": NONNEG}},
        "additionalProperties": False,
    },
    "ginsburg": {
        "type": "object", "required": ["cycle"], "properties": {"cycle": CYCLE},
        "additionalProperties": False,
    },
    "resolve": {
        "type": "object", "required": ["chi", "cc"],
        "properties": {"chi": INT_MAP, "cc": CYCLE},
        "additionalProperties": False,
    },
    "integrate": {
        "type": "object", "required": ["integral"], "properties": {"integral": {"type": "integer"}},
        "additionalProperties": False,
    },
    "pushforward": {
        "type": "object", "required": ["values", "integral"],
        "properties": {"values": INT_MAP, "integral": {"type": "integer"}},
        "additionalProperties": False,
    },
    "convert": {
        "type": "object", "required": ["chi", "cc"],
        "properties": {"chi": INT_MAP, "cc": CYCLE},
        "additionalProperties": False,
    },
    "index": {
        "type": "object", "required": ["index"], "properties": {"index": {"type": "integer"}},
        "additionalProperties": False,
    },
    "branch-count": {
        "type": "object", "required": ["count", "edges"],
        "properties": {
            "count": NONNEG,
            "edges": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["start", "end", "length", "valuation"],
                    "properties": {
                        "start": {"type": "array", "items": NONNEG},
                        "end": {"type": "array", "items": NONNEG},
                        "length": NONNEG,
                        "valuation": RATIONAL,
                    },
                    "additionalProperties": False,
                },
            },
        },
        "additionalProperties": False,
    },
}

ERROR = {
    "type": "object",
    "required": ["error"],
    "properties": {
        "error": {
            "type": "object",
            "required": ["type", "message"],
            "properties": {"type": {"type": "string"}, "message": {"type": "string"}},
        }
    },
}
