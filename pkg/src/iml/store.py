"""Append-only JSONL memo of solved f-values.

One record per line: ``{"v": engine_version, "n": n, "mc": m mod lcm(1..n), "f": f}``.
Records under other engine versions are kept on disk but never served.
Opening a store compacts exact duplicates; two records disagreeing on f for
the same key are an integrity error.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Iterator, Optional, Union

from .model import canonical_m
from .solver import ENGINE_VERSION, f_value

ENV_VAR = "IML_CACHE"

Key = tuple[str, int, int]


class StoreError(Exception):
    """The store file could not be read or written."""


class IntegrityError(StoreError):
    """Two records disagree on f for the same (version, n, residue)."""


def _read_records(path: Path) -> Iterator[dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    yield {"v": str(rec["v"]), "n": int(rec["n"]), "mc": int(rec["mc"]), "f": int(rec["f"])}
                except (ValueError, KeyError, TypeError) as exc:
                    raise StoreError(f"{path}:{lineno}: malformed record: {exc}") from exc
    except FileNotFoundError:
        return
    except OSError as exc:
        raise StoreError(f"cannot read {path}: {exc}") from exc


def _line(rec: dict) -> str:
    return json.dumps({"v": rec["v"], "n": rec["n"], "mc": rec["mc"], "f": rec["f"]}) + "\n"


def _index(records, where: str) -> dict[Key, int]:
    index: dict[Key, int] = {}
    for rec in records:
        key = (rec["v"], rec["n"], rec["mc"])
        old = index.get(key)
        if old is not None and old != rec["f"]:
            raise IntegrityError(f"{where}: conflicting f for {key}: {old} vs {rec['f']}")
        index[key] = rec["f"]
    return index


class ResultStore:
    def __init__(self, path: Union[str, os.PathLike], engine_version: str = ENGINE_VERSION):
        self.path = Path(path)
        self.engine_version = engine_version
        records = list(_read_records(self.path))
        self._index = _index(records, str(self.path))
        if len(self._index) != len(records):
            self._rewrite()

    def _rewrite(self):
        tmp = self.path.with_name(self.path.name + ".tmp")
        try:
            with open(tmp, "w", encoding="utf-8") as fh:
                for (v, n, mc), f in self._index.items():
                    fh.write(_line({"v": v, "n": n, "mc": mc, "f": f}))
            os.replace(tmp, self.path)
        except OSError as exc:
            raise StoreError(f"cannot compact {self.path}: {exc}") from exc

    def __len__(self):
        return sum(1 for key in self._index if key[0] == self.engine_version)

    def __contains__(self, nm: tuple[int, int]) -> bool:
        return self.get(*nm) is not None

    def get(self, n: int, m: int) -> Optional[int]:
        return self._index.get((self.engine_version, n, canonical_m(n, m)))

    def put(self, n: int, m: int, f: int) -> None:
        if not n <= f <= n * n:
            raise ValueError(f"f = {f} outside [n, n^2] for n = {n}")
        key = (self.engine_version, n, canonical_m(n, m))
        old = self._index.get(key)
        if old is not None:
            if old != f:
                raise IntegrityError(f"conflicting f for {key}: stored {old}, new {f}")
            return
        try:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(_line({"v": key[0], "n": n, "mc": key[2], "f": f}))
        except OSError as exc:
            raise StoreError(f"cannot append to {self.path}: {exc}") from exc
        self._index[key] = f

    def f(self, n: int, m: int) -> int:
        """Cached f(n, m), solving and recording on a miss."""
        hit = self.get(n, m)
        if hit is not None:
            return hit
        value = f_value(n, m)
        self.put(n, m, value)
        return value

    def records(self) -> list[dict]:
        return [{"v": v, "n": n, "mc": mc, "f": f} for (v, n, mc), f in self._index.items()]


def merge_stores(sources: list[Union[str, os.PathLike]], out: Union[str, os.PathLike]) -> int:
    """Union the records of ``sources`` into ``out``; returns the record count."""
    records = []
    for src in sources:
        if not Path(src).exists():
            raise StoreError(f"no such store: {src}")
        records.extend(_read_records(Path(src)))
    index = _index(records, "merge")
    out = Path(out)
    try:
        with open(out, "w", encoding="utf-8") as fh:
            for (v, n, mc), f in sorted(index.items()):
                fh.write(_line({"v": v, "n": n, "mc": mc, "f": f}))
    except OSError as exc:
        raise StoreError(f"cannot write {out}: {exc}") from exc
    return len(index)
