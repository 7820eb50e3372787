"""On-disk cache of census results keyed by an order-normalized content hash."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Optional

from .census import DEFAULT_BUDGET, NO_FILTER, CensusFilter, census_scan, class_k, count_class
from .errors import CacheCorrupt
from .geom import PointSet

log = logging.getLogger(__name__)

ENGINE_VERSION = "vinglab-census-1"
CACHE_ENV = "VINGLAB_CACHE"


def cache_key(S: PointSet, cls: str, filt: CensusFilter, version: str = ENGINE_VERSION) -> str:
    payload = {
        "points": sorted(S.coords()),
        "class": cls,
        "filter": [filt.min_degree, filt.max_edges],
        "engine": version,
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class CensusCache:
    def __init__(self, directory, version: str = ENGINE_VERSION):
        self.directory = Path(directory)
        self.version = version
        self.directory.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls) -> Optional["CensusCache"]:
        d = os.environ.get(CACHE_ENV)
        return cls(d) if d else None

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def load(self, key: str) -> Optional[dict]:
        """Entry for ``key``; raises CacheCorrupt if the file is unreadable."""
        path = self._path(key)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text())
            if entry.get("engine") != self.version or "count" not in entry:
                raise ValueError("bad entry")
            entry["count"] = int(entry["count"])
        except (ValueError, TypeError, AttributeError) as exc:
            raise CacheCorrupt(f"{path}: {exc}") from exc
        return entry

    def store(self, key: str, entry: dict) -> None:
        data = dict(entry, engine=self.version, count=str(entry["count"]))
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps(data, sort_keys=True))
        tmp.replace(self._path(key))

    def get(self, key: str) -> Optional[dict]:
        try:
            return self.load(key)
        except CacheCorrupt as exc:
            log.warning("ignoring corrupt cache entry: %s", exc)
            return None


def compute_entry(S: PointSet, cls: str, filt: CensusFilter, budget: int = DEFAULT_BUDGET,
                  workers: int = 1) -> dict:
    if cls == "tri":
        return {"count": count_class(S, "tri", filt, budget, workers)}
    s = census_scan(S, class_k(cls), filt, budget, workers)
    return {"count": s.count, "v_sum": s.hist, "vx_sum": s.vx, "edge_sum": s.edge_sum,
            "max_m": s.max_m}


def cached_entry(S: PointSet, cls: str, filt: CensusFilter = NO_FILTER,
                 cache: Optional[CensusCache] = None, budget: int = DEFAULT_BUDGET,
                 workers: int = 1) -> tuple[dict, bool]:
    """(entry, hit) for the census of S; computes and stores on a miss."""
    if cache is None:
        return compute_entry(S, cls, filt, budget, workers), False
    key = cache_key(S, cls, filt, cache.version)
    entry = cache.get(key)
    if entry is not None:
        return entry, True
    entry = compute_entry(S, cls, filt, budget, workers)
    cache.store(key, entry)
    return entry, False


def cache_roundtrip(S: PointSet, cls: str, filt: CensusFilter = NO_FILTER,
                    cache: Optional[CensusCache] = None, budget: int = DEFAULT_BUDGET) -> int:
    if cache is None:
        cache = CensusCache.from_env()
    entry, _ = cached_entry(S, cls, filt, cache, budget)
    return entry["count"]
