"""Report documents emitted by the CLI, with a JSON schema."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import jsonschema

from . import __version__

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "command", "inputs", "results", "checks", "passed", "version", "seed"],
    "properties": {
        "schema": {"const": "bruhatcells.report/1"},
        "command": {"enum": ["roots", "cell", "verify", "cfunction"]},
        "inputs": {"type": "object"},
        "results": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "deviation", "tolerance", "passed"],
                "properties": {
                    "name": {"type": "string"},
                    "deviation": {"type": "number"},
                    "tolerance": {"type": "number"},
                    "passed": {"type": "boolean"},
                },
            },
        },
        "passed": {"type": "boolean"},
        "version": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
    },
}


@dataclass
class ReportDocument:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> dict:
        doc = {
            "schema": "bruhatcells.report/1",
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": self.checks,
            "passed": self.passed,
            "version": __version__,
            "seed": self.seed,
        }
        jsonschema.validate(doc, SCHEMA)
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, doc: dict) -> "ReportDocument":
        jsonschema.validate(doc, SCHEMA)
        return cls(doc["command"], doc["inputs"], doc["results"], doc["checks"], doc["seed"])

    def render(self) -> str:
        lines = [f"{self.command}: " + ", ".join(f"{k}={v}" for k, v in self.inputs.items())]
        for key, value in self.results.items():
            lines.append(_render_value(key, value))
        if self.checks:
            width = max(len(c["name"]) for c in self.checks)
            lines.append("")
            for c in self.checks:
                mark = "PASS" if c["passed"] else "FAIL"
                lines.append(f"  {mark}  {c['name']:<{width}}  dev={c['deviation']:.3e}  tol={c['tolerance']:.0e}")
            lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _render_value(key, value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        inner = "\n".join(_render_value(k, v, indent + 1) for k, v in value.items())
        return f"{pad}{key}:\n{inner}"
    if isinstance(value, list) and value and isinstance(value[0], dict):
        rows = "\n".join(f"{pad}  - " + ", ".join(f"{k}={v}" for k, v in item.items()) for item in value)
        return f"{pad}{key}:\n{rows}"
    return f"{pad}{key}: {value}"
