"""JSON schemas for every CLI subcommand's machine output.

These are the stable contract for scripts consuming the tool; the test suite
checks every subcommand's output against its schema.
"""

from __future__ import annotations

from typing import Any

_IDS = {"type": "array", "items": {"type": "integer", "minimum": 0}}

DIGRAPH = {
    "type": "object",
    "required": ["n", "arcs"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "arcs": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}

COMPOSITION = {
    "type": "object",
    "required": ["t", "outer", "factors"],
    "additionalProperties": False,
    "properties": {
        "t": {"type": "integer", "minimum": 2},
        "outer": DIGRAPH,
        "factors": {"type": "array", "items": DIGRAPH, "minItems": 2},
    },
}

_CLASSIFICATION = {
    "type": "object",
    "required": ["semicomplete", "tournament", "strong", "sources", "sinks"],
    "additionalProperties": False,
    "properties": {
        "semicomplete": {"type": "boolean"},
        "tournament": {"type": "boolean"},
        "strong": {"type": "boolean"},
        "sources": _IDS,
        "sinks": _IDS,
    },
}

KINGS = {
    "type": "object",
    "required": ["k", "kings", "strict", "ecc"],
    "additionalProperties": False,
    "properties": {
        "k": {"type": "integer", "minimum": 2},
        "kings": _IDS,
        "strict": _IDS,
        "ecc": {
            "type": "array",
            "items": {"type": ["integer", "null"], "minimum": 0},
        },
    },
}

CLASSIFY_DIGRAPH = {
    "type": "object",
    "required": ["type", "n", "classification"],
    "additionalProperties": False,
    "properties": {
        "type": {"const": "digraph"},
        "n": {"type": "integer", "minimum": 0},
        "classification": _CLASSIFICATION,
    },
}

CLASSIFY_COMPOSITION = {
    "type": "object",
    "required": ["type", "t", "outer", "factors", "three_kings"],
    "additionalProperties": False,
    "properties": {
        "type": {"const": "composition"},
        "t": {"type": "integer", "minimum": 2},
        "outer": _CLASSIFICATION,
        "factors": {
            "type": "object",
            "patternProperties": {r"^[1-9][0-9]*$": {"enum": ["ALL", "NONE"]}},
            "additionalProperties": False,
        },
        "three_kings": _IDS,
    },
}

CERTIFICATE = {
    "type": "object",
    "required": ["kind", "k", "vertices", "validated"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["QUASI_KERNEL", "K_KERNEL"]},
        "k": {"type": ["integer", "null"], "minimum": 2},
        "vertices": _IDS,
        "validated": {"type": "boolean"},
    },
}

QUASIKERNEL = CERTIFICATE

DISJOINT_QK = {
    "type": "object",
    "required": ["first", "second"],
    "additionalProperties": False,
    "properties": {"first": CERTIFICATE, "second": CERTIFICATE},
}

KKERNEL = {
    "type": "object",
    "required": ["k", "exists", "certificate"],
    "additionalProperties": False,
    "properties": {
        "k": {"type": "integer", "minimum": 2},
        "exists": {"type": "boolean"},
        "certificate": {"oneOf": [CERTIFICATE, {"type": "null"}]},
    },
}

ESTABLISH = {
    "type": "object",
    "required": ["can_establish", "composition"],
    "additionalProperties": False,
    "properties": {
        "can_establish": {
            "type": "object",
            "required": [
                "ok",
                "strict_three_kings",
                "two_kings",
                "blocking_two_kings",
            ],
            "additionalProperties": False,
            "properties": {
                "ok": {"type": "boolean"},
                "strict_three_kings": _IDS,
                "two_kings": _IDS,
                "blocking_two_kings": _IDS,
            },
        },
        "composition": {"oneOf": [COMPOSITION, {"type": "null"}]},
    },
}

REDUCE = {
    "type": "object",
    "required": ["composition", "check"],
    "additionalProperties": False,
    "properties": {
        "composition": COMPOSITION,
        "check": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": [
                        "digraph_has_3kernel",
                        "gadget_has_3kernel",
                        "agree",
                    ],
                    "additionalProperties": False,
                    "properties": {
                        "digraph_has_3kernel": {"type": "boolean"},
                        "gadget_has_3kernel": {"type": "boolean"},
                        "agree": {"type": "boolean"},
                    },
                },
            ]
        },
    },
}

GENSPEC = {
    "type": "object",
    "required": ["seed", "kind", "n", "t", "size_min", "size_max", "p", "p2", "constraints"],
    "additionalProperties": False,
    "properties": {
        "seed": {"type": "integer"},
        "kind": {
            "enum": ["TOURNAMENT", "SEMICOMPLETE", "ERDOS_RENYI", "COMPOSITION"]
        },
        "n": {"type": ["integer", "null"]},
        "t": {"type": ["integer", "null"]},
        "size_min": {"type": ["integer", "null"]},
        "size_max": {"type": ["integer", "null"]},
        "p": {"type": "number"},
        "p2": {"type": "number"},
        "constraints": {
            "type": "array",
            "items": {
                "enum": ["STRONG_OUTER", "NO_SINK_OUTER", "NO_SOURCE_OUTER"]
            },
        },
    },
}

GEN = {
    "type": "object",
    "required": ["spec"],
    "additionalProperties": False,
    "properties": {
        "spec": GENSPEC,
        "digraph": DIGRAPH,
        "composition": COMPOSITION,
    },
    "oneOf": [{"required": ["digraph"]}, {"required": ["composition"]}],
}

EXPERIMENT = {
    "type": "object",
    "required": ["name", "instances", "checks", "violations", "failures", "info", "elapsed_s"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "instances": {"type": "integer", "minimum": 0},
        "checks": {"type": "integer", "minimum": 0},
        "violations": {"type": "integer", "minimum": 0},
        "failures": {"type": "array", "items": {"type": "object"}},
        "info": {"type": "object"},
        "elapsed_s": {"type": "number"},
    },
}

VALIDATE_DIGRAPH = {
    "type": "object",
    "required": ["type", "n", "arc_count", "classification"],
    "additionalProperties": False,
    "properties": {
        "type": {"const": "digraph"},
        "n": {"type": "integer", "minimum": 0},
        "arc_count": {"type": "integer", "minimum": 0},
        "classification": _CLASSIFICATION,
    },
}

VALIDATE_COMPOSITION = {
    "type": "object",
    "required": [
        "type",
        "t",
        "sizes",
        "total_vertices",
        "outer",
        "semicomplete_composition",
        "strong_semicomplete_composition",
        "flat_arc_count",
        "arc_formula_ok",
    ],
    "additionalProperties": False,
    "properties": {
        "type": {"const": "composition"},
        "t": {"type": "integer", "minimum": 2},
        "sizes": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "total_vertices": {"type": "integer", "minimum": 2},
        "outer": _CLASSIFICATION,
        "semicomplete_composition": {"type": "boolean"},
        "strong_semicomplete_composition": {"type": "boolean"},
        "flat_arc_count": {"type": "integer", "minimum": 0},
        "arc_formula_ok": {"type": "boolean"},
    },
}

BY_SUBCOMMAND: dict[str, Any] = {
    "kings": KINGS,
    "classify-digraph": CLASSIFY_DIGRAPH,
    "classify-composition": CLASSIFY_COMPOSITION,
    "quasikernel": QUASIKERNEL,
    "disjoint-qk": DISJOINT_QK,
    "kkernel": KKERNEL,
    "oracle": KKERNEL,
    "establish": ESTABLISH,
    "reduce": REDUCE,
    "gen": GEN,
    "experiment": EXPERIMENT,
    "validate-digraph": VALIDATE_DIGRAPH,
    "validate-composition": VALIDATE_COMPOSITION,
}
