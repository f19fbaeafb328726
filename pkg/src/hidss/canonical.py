"""Canonical document rendering.

Every document the system exchanges (business models, catalogs, events,
reports, serialized trees) is rendered through `dumps` so that equal values
always produce byte-identical text: keys sorted, no insignificant whitespace,
floats in shortest-roundtrip form. Stable bytes make snapshot replay and
model-equality checks exact.
"""

from __future__ import annotations

import json
from typing import Any


def dumps(obj: Any) -> str:
    """Render ``obj`` as the one canonical JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False, allow_nan=False)


def dumpb(obj: Any) -> bytes:
    return dumps(obj).encode("utf-8")


def loads(text: str | bytes) -> Any:
    return json.loads(text)
