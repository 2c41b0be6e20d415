"""Run records, their JSON schemas, and byte-stable JSON/CSV emission."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .errors import InvalidParameter

FORMATS = ("json", "csv")

COMPARE_COLUMNS = ["kind", "n", "strategy", "median_queries", "success_rate"]

CSV_COLUMNS = {
    "gen": ["x", "f"],
    "run-simon": ["trial", "seed", "kind", "n", "p", "q", "status", "found_p", "found_q",
                  "correct", "samples_used", "rank", "classical_queries", "quantum_runs"],
    "run-shor": ["trial", "seed", "n", "p", "q", "status", "found_p", "found_q", "correct",
                 "pairs_used", "resonant_fraction", "classical_queries", "quantum_runs"],
    "run-selfsim": ["trial", "seed", "n", "p", "q", "status", "alpha", "beta", "correct",
                    "pairs_used", "classical_queries", "quantum_runs"],
    "baseline": ["trial", "seed", "kind", "n", "p", "q", "strategy", "found", "found_p",
                 "found_q", "correct", "classical_queries"],
    "compare": COMPARE_COLUMNS,
    "selftest": ["check", "passed", "detail"],
}

_int_or_null = {"type": ["integer", "null"]}

INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["kind", "n", "p", "q", "seed"],
    "properties": {
        "kind": {"enum": ["simon", "linear", "shor", "multixor"]},
        "n": {"type": "integer", "minimum": 1, "maximum": 24},
        "p": _int_or_null,
        "q": _int_or_null,
        "seed": _int_or_null,
        "table": {"type": "array"},
    },
}

COUNTERS_SCHEMA = {
    "type": "object",
    "required": ["classical_queries", "quantum_runs"],
    "properties": {"classical_queries": {"type": "integer", "minimum": 0},
                   "quantum_runs": {"type": "integer", "minimum": 0}},
}

SIMON_REPORT_SCHEMA = {
    "type": "object",
    "required": ["status", "p", "q", "candidates", "samples_used", "rank", "nullspace_dim"],
    "properties": {
        "status": {"enum": ["unique", "ambiguous", "exhausted"]},
        "p": _int_or_null, "q": _int_or_null,
        "candidates": {"type": "array", "items": {
            "type": "object", "required": ["p", "q", "verified"],
            "properties": {"p": {"type": "integer"}, "q": {"type": "integer"},
                           "verified": {"type": "boolean"}}}},
        "samples_used": {"type": "integer", "minimum": 0},
        "rank": {"type": "integer", "minimum": 0},
        "nullspace_dim": {"type": "integer", "minimum": 0},
    },
}

SHOR_REPORT_SCHEMA = {
    "type": "object",
    "required": ["status", "p", "q", "pairs_used", "resonant_fraction", "candidate_log", "pairs"],
    "properties": {
        "status": {"enum": ["found", "not_found"]},
        "p": _int_or_null, "q": _int_or_null,
        "pairs_used": {"type": "integer", "minimum": 0},
        "resonant_fraction": {"type": ["number", "null"], "minimum": 0, "maximum": 1},
        "candidate_log": {"type": "array"},
        "pairs": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}},
    },
}

SELFSIM_REPORT_SCHEMA = {
    "type": "object",
    "required": ["status", "alpha", "beta", "quantization_residual", "shor"],
    "properties": {
        "status": {"enum": ["found", "not_found"]},
        "alpha": {"type": ["number", "null"]},
        "beta": {"type": ["number", "null"]},
        "quantization_residual": {"type": "number", "minimum": 0},
        "shor": SHOR_REPORT_SCHEMA,
    },
}

BASELINE_REPORT_SCHEMA = {
    "type": "object",
    "required": ["strategy", "found", "p", "q", "classical_queries", "ambiguous"],
    "properties": {
        "strategy": {"enum": ["scan", "birthday"]},
        "found": {"type": "boolean"},
        "p": _int_or_null, "q": _int_or_null,
        "classical_queries": {"type": "integer", "minimum": 0},
        "ambiguous": {"type": "boolean"},
    },
}

REPORT_SCHEMAS = {
    "run-simon": SIMON_REPORT_SCHEMA,
    "run-shor": SHOR_REPORT_SCHEMA,
    "run-selfsim": SELFSIM_REPORT_SCHEMA,
    "baseline": BASELINE_REPORT_SCHEMA,
}

RUN_RECORD_SCHEMA = {
    "type": "object",
    "required": ["config", "report", "counters", "version"],
    "properties": {
        "config": {"type": "object", "required": ["command"]},
        "report": {"type": "object"},
        "counters": COUNTERS_SCHEMA,
        "version": {"type": "string"},
        "wall_time": {"type": "number", "minimum": 0},
    },
}


@dataclass
class RunRecord:
    config: Dict[str, Any]
    report: Dict[str, Any]
    counters: Dict[str, int]
    version: str
    wall_time: Optional[float] = None
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def as_dict(self) -> dict:
        d = {"config": self.config, "report": self.report,
             "counters": self.counters, "version": self.version}
        if self.wall_time is not None:
            d["wall_time"] = self.wall_time
        return d


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return v


def emit_report(record: RunRecord, fmt: str = "json") -> bytes:
    """Serialize a record; JSON keys are sorted, CSV columns fixed per command."""
    if fmt == "json":
        return (json.dumps(record.as_dict(), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "csv":
        header: Sequence[str] = CSV_COLUMNS[record.config["command"]]
        if record.config["command"] == "gen" and record.rows and len(record.rows[0]) > 2:
            header = list(record.rows[0])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in record.rows:
            w.writerow([_cell(row.get(c)) for c in header])
        return buf.getvalue().encode()
    raise InvalidParameter(f"unsupported format {fmt!r}; choose from {FORMATS}")
