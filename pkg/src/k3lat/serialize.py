"""JSON conventions shared by the CLI and the claim report.

Integers stay numbers while they fit exactly in a double (below 2^53 in
absolute value) and become decimal strings beyond that. Rationals that are
not integers are written ``"p/q"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

_SAFE = 2 ** 53


def _int(n: int):
    return n if -_SAFE < n < _SAFE else str(n)


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return _int(x)
    if isinstance(x, Fraction):
        return _int(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(x: Any) -> str:
    return json.dumps(jsonable(x), sort_keys=True)
