"""Schema-versioned check reports with deterministic serialization."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable

SCHEMA_VERSION = "qgfusion.report/1"

# verdicts that count as executed checks
PASS, FAIL = "pass", "fail"
SKIP, CONTEXT, EQUALITY = "skip", "context", "equality"


def jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):  # numpy scalar
        return jsonable(x.item())
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


@dataclass
class Record:
    case: str
    params: dict
    lhs: Any = None
    rhs: Any = None
    margin: float | None = None
    verdict: str = PASS
    tolerance: float | None = None
    reason: str = ""
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {"case": self.case, "params": self.params, "lhs": self.lhs, "rhs": self.rhs,
             "margin": self.margin, "verdict": self.verdict, "tolerance": self.tolerance}
        if self.reason:
            d["reason"] = self.reason
        d.update(self.extra)
        return jsonable(d)


@dataclass
class Report:
    command: list
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, rec: Record) -> Record:
        self.records.append(rec)
        return rec

    def extend(self, recs: Iterable[Record]):
        self.records.extend(recs)

    @property
    def executed(self) -> list:
        return [r for r in self.records if r.verdict in (PASS, FAIL, EQUALITY)]

    @property
    def ok(self) -> bool:
        return all(r.verdict != FAIL for r in self.records)

    def summary(self) -> dict:
        counts: dict = {}
        for r in self.records:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        margins = [r.margin for r in self.executed if isinstance(r.margin, (int, float))]
        return jsonable({
            "all_pass": self.ok,
            "counts": dict(sorted(counts.items())),
            "executed": len(self.executed),
            "min_margin": min(margins) if margins else None,
            "max_margin": max(margins) if margins else None,
        })

    def as_dict(self) -> dict:
        return {"format_version": SCHEMA_VERSION, "command": list(self.command),
                "records": [r.as_dict() for r in self.records], "notes": list(self.notes),
                "summary": self.summary()}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=1, ensure_ascii=False) + "\n"

    def to_jsonl(self) -> str:
        head = {"format_version": SCHEMA_VERSION, "command": list(self.command), "kind": "header"}
        lines = [json.dumps(head, sort_keys=True, ensure_ascii=False)]
        for r in self.records:
            lines.append(json.dumps(dict(r.as_dict(), kind="record"), sort_keys=True, ensure_ascii=False))
        tail = dict(self.summary(), kind="summary", notes=list(self.notes))
        lines.append(json.dumps(tail, sort_keys=True, ensure_ascii=False))
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        rows = [("case", "params", "lhs", "rhs", "margin", "verdict")]
        for r in self.records:
            params = " ".join(f"{k}={_short(v)}" for k, v in r.params.items())
            rows.append((r.case, params, _short(r.lhs), _short(r.rhs), _short(r.margin),
                         r.verdict + (f" ({r.reason})" if r.reason else "")))
        widths = [max(len(row[c]) for row in rows) for c in range(5)]
        out = ["  ".join(row[c].ljust(widths[c]) for c in range(5)) + "  " + row[5] for row in rows]
        s = self.summary()
        out.append("")
        out.append(f"{s['executed']} checks, counts {s['counts']}, min margin {_short(s['min_margin'])}: "
                   + ("ALL PASS" if s["all_pass"] else "FAILURES"))
        out.extend(f"note: {n}" for n in self.notes)
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "jsonl": self.to_jsonl, "table": self.to_table}[fmt]()


def _short(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, tuple)) and all(isinstance(x, int) for x in v):
        return " ".join(str(x) for x in v) if len(v) <= 40 else f"[{len(v)} integers]"
    if isinstance(v, (list, tuple)) and len(v) > 8:
        return f"[{len(v)} items]"
    return str(v)
