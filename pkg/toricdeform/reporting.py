"""JSON and TSV report output in the status envelope"""

import json
import logging
import sys
from fractions import Fraction

logger = logging.getLogger(__name__)


def _default(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def success_envelope(command, fan_hash=None, **data):
    envelope = {"status": "success", "command": command}
    if fan_hash is not None:
        envelope["fan_sha256"] = fan_hash
    envelope.update(data)
    return envelope


def error_envelope(message, line=None, column=None):
    envelope = {"status": "error", "message": message}
    if line is not None:
        envelope["line"] = line
        envelope["column"] = column
    return envelope


def to_json(document):
    return json.dumps(document, sort_keys=True, indent=2, default=_default)


def emit_json(document, stream=None):
    stream = stream or sys.stdout
    stream.write(to_json(document) + "\n")


def format_vector(u):
    return ",".join(str(x) for x in u)


def to_tsv(header, rows):
    lines = ["\t".join(header)]
    lines += ["\t".join(str(cell) for cell in row) for row in rows]
    return "\n".join(lines) + "\n"


def emit_tsv(header, rows, stream=None):
    stream = stream or sys.stdout
    stream.write(to_tsv(header, rows))
