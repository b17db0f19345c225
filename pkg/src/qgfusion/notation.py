"""Parsing and printing of weights in the fundamental-weight basis."""
from __future__ import annotations

import re

from .rootsystem import RootSystem, Weight

_TERM = re.compile(r"^(\d*)\s*\*?\s*(?:L|Λ|λ|w|omega|Lambda|lambda)_?(\d+)$")


def parse_weight(text: str, rs: RootSystem) -> Weight:
    """Accepts ``"1,0,0,0"``, ``"0"``, ``"L1"``, ``"Λ1"``, ``"λ8"`` and sums such as ``"2L1+L4"``."""
    s = text.strip()
    r = rs.rank
    if s in ("", "0"):
        return (0,) * r
    if re.fullmatch(r"-?\d+(\s*,\s*-?\d+)*", s):
        vals = tuple(int(v) for v in s.split(","))
        if len(vals) != r:
            raise ValueError(f"expected {r} coordinates for {rs.cartan_type}, got {len(vals)}")
        return vals
    out = [0] * r
    for term in s.replace(" ", "").split("+"):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse weight term {term!r} in {text!r}")
        c = int(m.group(1) or 1)
        i = int(m.group(2))
        if not 1 <= i <= r:
            raise ValueError(f"fundamental weight index {i} out of range 1..{r}")
        out[i - 1] += c
    return tuple(out)


def format_weight(lam, symbol: str = "L") -> str:
    """``(2, 0, 0, 1) -> "2L1+L4"``; zero prints as ``"0"``."""
    if isinstance(lam, tuple) and lam and isinstance(lam[0], tuple):
        return "(" + ", ".join(format_weight(x, symbol) for x in lam) + ")"
    parts = []
    for i, c in enumerate(lam, 1):
        if c:
            parts.append(f"{'' if c == 1 else c}{symbol}{i}")
    return "+".join(parts) or "0"
