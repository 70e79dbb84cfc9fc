"""Deterministic report rendering for command output.

Reports are plain dicts with a fixed key order: command, input, result,
version, exact.  Values are limited to strings, integers, booleans,
lists and nested dicts so both renderers stay trivial and stable.
"""

import json

VERSION = "0.1.0"


def build_report(command, inputs, result):
    return {
        "command": command,
        "input": inputs,
        "result": result,
        "version": VERSION,
        "exact": True,
    }


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            out.append((prefix, "[" + ", ".join(_scalar(v) for v in value) + "]"))
        else:
            for i, v in enumerate(value):
                _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, _scalar(value)))


def _scalar(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def to_text(report):
    """Render as `dotted.key = value` lines in insertion order."""
    lines = []
    _flatten("", report, lines)
    return "\n".join(f"{k} = {v}" for k, v in lines) + "\n"


def to_json(report):
    return json.dumps(report, indent=2) + "\n"


def render_report(report, fmt):
    if fmt == "json":
        return to_json(report)
    return to_text(report)
