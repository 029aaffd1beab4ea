"""Content-addressed file cache for invariant vectors.

Entries live in ``vec_<sha256>.json`` files keyed by the decomposition and the
normalized generator word. Each file stores a checksum of its payload; an
entry whose checksum does not match is treated as a miss.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from typing import Optional

from homotopy.scheme import ComponentId, IndexSequence
from homotopy.stringlink import ColoredStringLink, InvariantVector

from handlers.metrics import cache_events
from utils.config import get_settings

logger = logging.getLogger(__name__)


def cache_key(link: ColoredStringLink) -> str:
    return hashlib.sha256(f"{link.ambient}|{link}".encode("utf-8")).hexdigest()


def _checksum(payload: str) -> str:
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class VectorCache:
    def __init__(self, directory: str) -> None:
        self.directory = directory
        self.enabled = True
        try:
            os.makedirs(directory, exist_ok=True)
        except OSError as exc:
            logger.warning("Cache directory %s is unusable (%s); continuing uncached", directory, exc)
            self.enabled = False

    def _path(self, key: str) -> str:
        safe = "".join(c for c in key if c.isalnum())
        return os.path.join(self.directory, f"vec_{safe}.json")

    def load(self, link: ColoredStringLink) -> Optional[InvariantVector]:
        if not self.enabled:
            return None
        p = self._path(cache_key(link))
        if not os.path.exists(p):
            cache_events.labels(event="miss").inc()
            return None
        try:
            with open(p, "r", encoding="utf-8") as f:
                entry = json.load(f)
            payload = entry["payload"]
            if _checksum(payload) != entry["checksum"]:
                raise ValueError("checksum mismatch")
            data = json.loads(payload)
            if tuple(data["colors"]) != link.ambient.counts:
                raise ValueError("entry belongs to another decomposition")
            values = {
                IndexSequence(tuple(ComponentId(*e) for e in seq)): int(v) for seq, v in data["mu"]
            }
            vector = InvariantVector(link.ambient, values)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            logger.warning("Ignoring corrupt cache entry %s: %s", p, exc)
            cache_events.labels(event="corrupt").inc()
            return None
        cache_events.labels(event="hit").inc()
        return vector

    def store(self, link: ColoredStringLink, vector: InvariantVector) -> None:
        if not self.enabled:
            return
        payload = json.dumps(
            {"colors": list(vector.ambient.counts), "mu": [[J.flattened(), v] for J, v in vector.items()]},
            sort_keys=True,
        )
        entry = json.dumps({"checksum": _checksum(payload), "payload": payload})
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".vec_", suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as f:
                    f.write(entry)
                os.replace(tmp, self._path(cache_key(link)))
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            logger.warning("Cache write to %s failed (%s); continuing uncached", self.directory, exc)
            self.enabled = False
            return
        cache_events.labels(event="store").inc()


def default_cache() -> Optional[VectorCache]:
    directory = get_settings().cache_dir
    return VectorCache(directory) if directory else None


def cached_vector(link: ColoredStringLink, cache: Optional[VectorCache] = None) -> InvariantVector:
    """The invariant vector of ``link``, served from ``cache`` when possible."""
    if cache is None:
        return link.invariant_vector()
    vector = cache.load(link)
    if vector is None:
        vector = link.invariant_vector()
        cache.store(link, vector)
    else:
        link._cache["vector"] = vector
    return vector
