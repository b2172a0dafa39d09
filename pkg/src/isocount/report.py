"""JSON report documents, subgroup records and the on-disk count cache."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Optional

from . import __version__
from .closed_forms import CountValue
from .labels import classify
from .symplectic import Subgroup, abelian_invariants, factorize

SCHEMA_VERSION = "1"
CACHE_ENV = "ISOCOUNT_CACHE_DIR"


@dataclass
class ReportDocument:
    command: list[str]
    inputs: dict[str, Any]
    results: list[dict[str, Any]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)
    tool_version: str = __version__
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self, timing: bool = True) -> str:
        d = self.to_dict()
        if not timing:
            d.pop("timing")
        return json.dumps(d, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls(**json.loads(text))

    def write(self, path: str | os.PathLike) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")


def report_schema() -> dict[str, Any]:
    text = resources.files("isocount").joinpath("schema/report.v1.json").read_text("utf-8")
    return json.loads(text)


def count_to_dict(c: CountValue) -> dict[str, Any]:
    return {
        "value": c.value,
        "method": c.method,
        "components": [
            {
                "prime": part.prime,
                "exponents": list(part.exponents),
                "value": part.value,
                "method": part.method,
                "rule": part.rule,
            }
            for part in c.parts
        ],
    }


# subgroup records ------------------------------------------------------------

RECORD_FIELDS = ("basis", "order", "invariants", "type")


def subgroup_record(H: Subgroup) -> dict[str, Any]:
    """One enumeration record; ``type`` is filled only inside K(p^n, p^n)."""
    inv = abelian_invariants(H)
    label = None
    d = H.module.ptype.divisors
    if len(d) == 2 and d[0] == d[1] and d[0] > 1:
        f = factorize(d[0])
        if len(f) == 1:
            (p, n), = f.items()
            label = classify(p, n, inv).name
    return {
        "basis": [list(r) for r in H.basis],
        "order": H.order,
        "invariants": list(inv),
        "type": label,
    }


def write_jsonl(records: Iterable[dict[str, Any]], fh: io.TextIOBase) -> int:
    n = 0
    for rec in records:
        fh.write(json.dumps(rec, sort_keys=True) + "\n")
        n += 1
    return n


def write_csv(records: Iterable[dict[str, Any]], fh: io.TextIOBase) -> int:
    """CSV columns: basis rows joined by ';' (entries by ' '), order, invariants by ' ', type."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(RECORD_FIELDS)
    n = 0
    for rec in records:
        w.writerow([
            ";".join(" ".join(map(str, r)) for r in rec["basis"]),
            rec["order"],
            " ".join(map(str, rec["invariants"])),
            rec["type"] or "",
        ])
        n += 1
    return n


# cache -------------------------------------------------------------------------


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "isocount"


def _checksum(payload: dict[str, Any]) -> str:
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    ptype: tuple[int, ...]
    count: int
    method: str
    version: str = __version__

    def payload(self) -> dict[str, Any]:
        return {
            "ptype": list(self.ptype),
            "count": self.count,
            "method": self.method,
            "version": self.version,
        }

    def to_line(self) -> str:
        d = self.payload()
        d["checksum"] = _checksum(self.payload())
        return json.dumps(d, sort_keys=True) + "\n"


class CountCache:
    """Append-only JSONL cache of counts keyed by (type, tool version).

    Lines with a bad checksum or another tool version are ignored, so a
    damaged entry simply gets recomputed.
    """

    FILENAME = "counts.jsonl"

    def __init__(self, directory: Optional[Path] = None):
        self.directory = Path(directory) if directory else cache_dir()
        self.path = self.directory / self.FILENAME
        self.entries: dict[tuple[int, ...], CacheEntry] = {}
        self.rejected = 0
        self._pending: list[CacheEntry] = []
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        for line in self.path.read_text(encoding="utf-8").splitlines():
            try:
                d = json.loads(line)
                entry = CacheEntry(tuple(d["ptype"]), int(d["count"]), d["method"], d["version"])
                ok = d.get("checksum") == _checksum(entry.payload())
            except (ValueError, KeyError, TypeError):
                ok = False
            if not ok:
                self.rejected += 1
                continue
            if entry.version == __version__:
                self.entries[entry.ptype] = entry

    def get(self, ptype: tuple[int, ...]) -> Optional[CacheEntry]:
        return self.entries.get(tuple(ptype))

    def put(self, ptype: tuple[int, ...], count: int, method: str) -> None:
        entry = CacheEntry(tuple(ptype), count, method)
        if self.entries.get(entry.ptype) != entry:
            self.entries[entry.ptype] = entry
            self._pending.append(entry)

    def flush(self) -> None:
        if not self._pending:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            for entry in self._pending:
                fh.write(entry.to_line())
        self._pending.clear()
