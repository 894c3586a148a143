"""Identity registry: a declarative list of checks and a runner producing reports.

A record is either an equation between two expressions, evaluated with the
expression language, or a reference to a named operation in :mod:`.ops`.
"""

from __future__ import annotations

import fnmatch
import json
import re
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .dsl import DSLError, evaluate_text, format_value
from .ops import OPERATIONS, Context, jsonable

__all__ = [
    "IdentityRecord", "RegistryError", "UnknownIdentity", "load_registry", "select",
    "run_record", "run_suite", "report_schema",
]

_NAME_RE = re.compile(r"^[a-z0-9]+(-[a-z0-9]+)*$")


class RegistryError(ValueError):
    pass


class UnknownIdentity(RegistryError):
    pass


@dataclass(frozen=True)
class IdentityRecord:
    name: str
    paper_ref: str
    lhs: str | None = None
    rhs: str | None = None
    op: str | None = None
    args: dict = field(default_factory=dict, hash=False, compare=False)
    expect: str = "pass"

    @classmethod
    def from_dict(cls, d: dict) -> "IdentityRecord":
        unknown = set(d) - {"name", "paper_ref", "lhs", "rhs", "op", "args", "expect"}
        if unknown:
            raise RegistryError(f"record {d.get('name')!r}: unknown fields {sorted(unknown)}")
        rec = cls(d["name"], d["paper_ref"], d.get("lhs"), d.get("rhs"), d.get("op"),
                  dict(d.get("args", {})), d.get("expect", "pass"))
        rec.validate()
        return rec

    def validate(self):
        if not _NAME_RE.match(self.name):
            raise RegistryError(f"identity name {self.name!r} is not kebab-case")
        if self.expect not in ("pass", "fail"):
            raise RegistryError(f"{self.name}: expect must be 'pass' or 'fail'")
        is_eq = self.lhs is not None and self.rhs is not None
        if is_eq == (self.op is not None):
            raise RegistryError(f"{self.name}: give either lhs and rhs, or op")
        if self.op is not None and self.op not in OPERATIONS:
            raise RegistryError(f"{self.name}: unknown operation {self.op!r}")


def _builtin_text() -> str:
    return resources.files("fano_calculus").joinpath("data/identities.json").read_text(encoding="utf-8")


def report_schema() -> dict:
    text = resources.files("fano_calculus").joinpath("data/report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def load_registry(extra: str | Path | None = None, builtin: bool = True) -> list[IdentityRecord]:
    """Built-in records plus an optional user file, sorted by name."""
    raw = []
    if builtin:
        raw += json.loads(_builtin_text())["identities"]
    if extra is not None:
        data = json.loads(Path(extra).read_text(encoding="utf-8"))
        raw += data["identities"] if isinstance(data, dict) else data
    records = [IdentityRecord.from_dict(d) for d in raw]
    seen = set()
    for r in records:
        if r.name in seen:
            raise RegistryError(f"duplicate identity name {r.name!r}")
        seen.add(r.name)
    return sorted(records, key=lambda r: r.name)


def select(records: list[IdentityRecord], pattern: str | None) -> list[IdentityRecord]:
    if pattern is None:
        return list(records)
    chosen = [r for r in records if fnmatch.fnmatchcase(r.name, pattern)]
    if not chosen:
        raise UnknownIdentity(f"no identity matches {pattern!r}")
    return chosen


def _check_equation(rec: IdentityRecord):
    lhs, rhs = evaluate_text(rec.lhs), evaluate_text(rec.rhs)
    ok = lhs == rhs
    return ok, {"lhs": rec.lhs, "rhs": rec.rhs, "lhs value": format_value(lhs),
                "rhs value": format_value(rhs)}


def run_record(rec: IdentityRecord, ctx: Context) -> dict:
    start = time.perf_counter()
    try:
        if rec.op is not None:
            ok, witness = OPERATIONS[rec.op](ctx, **rec.args)
        else:
            ok, witness = _check_equation(rec)
    except (DSLError, ArithmeticError, ValueError, RuntimeError) as exc:
        ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
    millis = (time.perf_counter() - start) * 1000
    passed = bool(ok) == (rec.expect == "pass")
    return {
        "name": rec.name,
        "paper_ref": rec.paper_ref,
        "status": "pass" if passed else "fail",
        "witness": jsonable(witness),
        "millis": round(millis, 3),
    }


def run_suite(pattern: str | None = None, seed: int = 0, extra: str | Path | None = None,
              records: list[IdentityRecord] | None = None) -> tuple[int, dict]:
    """Run every matching record; exit code 0 iff all pass."""
    if records is None:
        records = load_registry(extra)
    chosen = select(records, pattern)
    ctx = Context(seed)
    results = [run_record(r, ctx) for r in chosen]
    report = {"version": __version__, "seed": seed, "results": results}
    code = 0 if all(r["status"] == "pass" for r in results) else 1
    return code, report
