"""Content-addressed on-disk cache of computed series.

One file per job: ``<slug>-<sha256 prefix>.json`` holding a header (the job
description and its hash) and the series in the exchange format.  Writes go
through a temporary file and ``os.replace``, so concurrent processes never see
a partial file.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from pathlib import Path

from .io import series_from_json, series_to_json
from .series import BiSeries

__all__ = ["ENV_VAR", "DEFAULT_DIR", "SeriesCache", "job_hash"]

ENV_VAR = "JACFORM_CACHE_DIR"
DEFAULT_DIR = ".jacform-cache"


def job_hash(job: dict) -> str:
    canon = json.dumps(job, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _slug(job: dict) -> str:
    name = str(job.get("name", "series"))
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)[:40] or "series"


class SeriesCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        directory = directory or os.environ.get(ENV_VAR) or DEFAULT_DIR
        self.dir = Path(directory)

    def path(self, job: dict) -> Path:
        return self.dir / f"{_slug(job)}-{job_hash(job)[:24]}.json"

    def get(self, job: dict) -> BiSeries | None:
        p = self.path(job)
        try:
            obj = json.loads(p.read_text())
        except (OSError, ValueError):
            return None
        if obj.get("header", {}).get("hash") != job_hash(job):
            return None
        return series_from_json(obj["series"])

    def put(self, job: dict, series: BiSeries) -> Path:
        self.dir.mkdir(parents=True, exist_ok=True)
        p = self.path(job)
        body = {"header": {"job": job, "hash": job_hash(job)}, "series": series_to_json(series)}
        fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(body, fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
        return p

    def get_or_compute(self, job: dict, compute) -> tuple:
        """Return ``(series, hit)``."""
        hit = self.get(job)
        if hit is not None:
            return hit, True
        value = compute()
        self.put(job, value)
        return value, False
