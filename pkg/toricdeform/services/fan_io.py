"""Fan files: {"rank": n, "rays": [...], "max_cones": [...]}, 0-based"""

import hashlib
import json
import logging

from toricdeform.errors import FanFormatError, InvalidFanError
from toricdeform.services.fan_core import make_fan

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("rank", "rays", "max_cones")


def content_hash(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _require_list(value, path):
    if not isinstance(value, list):
        raise FanFormatError(f"{path} must be a list")
    return value


def parse_fan(text):
    """Parse fan JSON text into an (unvalidated) Fan"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FanFormatError(f"malformed JSON: {e.msg}", line=e.lineno, column=e.colno) from e
    if not isinstance(data, dict):
        raise FanFormatError("top level must be a JSON object")
    missing = [key for key in REQUIRED_KEYS if key not in data]
    if missing:
        raise FanFormatError(f"Missing required fields: {', '.join(missing)}")
    rays = _require_list(data["rays"], "rays")
    cones = _require_list(data["max_cones"], "max_cones")
    for i, ray in enumerate(rays):
        _require_list(ray, f"rays[{i}]")
    for i, cone in enumerate(cones):
        _require_list(cone, f"max_cones[{i}]")
    try:
        return make_fan(data["rank"], rays, cones)
    except InvalidFanError as e:
        logger.error(f"Invalid fan structure: {str(e)}")
        raise


def load_fan(path):
    """Returns (fan, content hash of the file text)"""
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    fan = parse_fan(text)
    logger.info(f"Loaded fan from {path}: {len(fan.rays)} rays, {len(fan.max_cones)} cones")
    return fan, content_hash(text)


def _row(values):
    return "[" + ", ".join(str(v) for v in values) + "]"


def _block(rows):
    if not rows:
        return "[]"
    body = ",\n".join(f"    {_row(r)}" for r in rows)
    return "[\n" + body + "\n  ]"


def dump_fan(fan):
    """Canonical text of a fan (flags are not stored)"""
    return (
        "{\n"
        f'  "rank": {fan.rank},\n'
        f'  "rays": {_block(fan.rays)},\n'
        f'  "max_cones": {_block([c.ray_indices for c in fan.max_cones])}\n'
        "}\n"
    )
