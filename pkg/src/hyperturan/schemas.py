"""JSON Schemas for every document the CLI writes (draft 2020-12)."""

_num = {"type": ["number", "null"]}
_int = {"type": "integer", "minimum": 0}
_edge = {"type": "array", "items": _int}

HYPERGRAPH = {
    "type": "object",
    "required": ["n", "k", "edges"],
    "properties": {"n": _int, "k": {"type": "integer", "minimum": 1},
                   "edges": {"type": "array", "items": _edge}},
    "additionalProperties": False,
}

PATTERN = {
    "type": "object",
    "required": ["l", "k", "edges"],
    "properties": {"l": _int, "k": _int, "edges": {"type": "array", "items": _edge}},
    "additionalProperties": False,
}

SPECTRAL = {
    "type": "object",
    "required": ["lambda", "alpha", "vector", "residual", "iterations", "converged", "solver_version"],
    "properties": {
        "lambda": _num, "alpha": {"type": "number"}, "vector": {"type": "array", "items": _num},
        "residual": _num, "iterations": _int, "starts_used": _int, "converged": {"type": "boolean"},
        "edges": _int, "components": _int, "solver_version": {"type": "string"}, "n": _int, "k": _int,
    },
}

FREE = {
    "type": "object",
    "required": ["free", "contained"],
    "properties": {
        "free": {"type": "boolean"},
        "contained": {"type": "array", "items": {
            "type": "object", "required": ["forbidden", "embedding"],
            "properties": {"forbidden": _int, "name": {"type": "string"},
                           "embedding": {"type": "array", "items": _int}}}},
    },
}

CANCELLATIVE = {
    "type": "object",
    "required": ["cancellative", "violation"],
    "properties": {"cancellative": {"type": "boolean"},
                   "violation": {"oneOf": [{"type": "null"},
                                           {"type": "array", "items": _edge, "minItems": 3, "maxItems": 3}]}},
}

COLOR = {
    "type": "object",
    "required": ["colorable", "coloring", "pattern"],
    "properties": {"colorable": {"type": "boolean"},
                   "coloring": {"oneOf": [{"type": "null"}, {"type": "array", "items": _int}]},
                   "pattern": PATTERN},
}

SEARCH = {
    "type": "object",
    "required": ["objective", "optimum", "witnesses", "nodes_explored", "complete"],
    "properties": {
        "objective": {"enum": ["edges", "lambda"]}, "optimum": {"type": "number"},
        "witnesses": {"type": "array", "items": HYPERGRAPH}, "nodes_explored": _int,
        "complete": {"type": "boolean"}, "classes_evaluated": _int, "nonconverged": _int,
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

TREND = {
    "type": "object",
    "required": ["k", "rows"],
    "properties": {"k": _int, "rows": {"type": "array", "items": {
        "type": "object", "required": ["n", "ex", "density"],
        "properties": {"n": _int, "ex": _int, "density": {"type": "number"}}}}},
}

_STEP = {
    "type": "object",
    "required": ["n_before", "removed_vertex", "lambda_before", "lambda_after", "x_min_alpha",
                 "identity_lhs", "identity_rhs", "identity_error"],
    "properties": {"n_before": _int, "removed_vertex": _int, "min_degree_before": _int,
                   "ratio_bound_ok": {"type": "boolean"}},
    "additionalProperties": _num,
}

PEEL = {
    "type": "object",
    "required": ["steps", "terminated_reason", "final_n", "final_lambda"],
    "properties": {
        "steps": {"type": "array", "items": _STEP},
        "terminated_reason": {"enum": ["degree-threshold-met", "floor-size-reached", "solver-failure"]},
        "final_n": _int, "final_lambda": _num,
    },
}

VERIFY = {
    "type": "object",
    "required": ["suite", "passed", "failed", "checks"],
    "properties": {
        "suite": {"type": "string"}, "passed": {"type": "boolean"},
        "failed": {"type": "array", "items": {"type": "string"}},
        "checks": {"type": "array", "items": {
            "type": "object", "required": ["name", "passed"],
            "properties": {"name": {"type": "string"}, "passed": {"type": "boolean"}}}},
    },
}

BY_COMMAND = {
    "construct": HYPERGRAPH, "lambda": SPECTRAL, "free": FREE, "cancellative": CANCELLATIVE,
    "color": COLOR, "ex": SEARCH, "spex": SEARCH, "trend": TREND, "peel": PEEL, "verify": VERIFY,
}
