"""On-disk cache of epimorphism searches (one JSON file per search)."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

CACHE_VERSION = 1


def group_fingerprint(G) -> str:
    return hashlib.sha256(G.table.tobytes()).hexdigest()[:16]


class EpiCache:
    def __init__(self, directory: str | Path):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    def _path(self, G, sig, constraint_key: str) -> Path:
        key = f"{group_fingerprint(G)}|{sig}|{constraint_key}"
        return self.dir / (hashlib.sha256(key.encode()).hexdigest()[:24] + ".json")

    def get(self, G, sig, constraint_key: str) -> list[tuple[int, ...]] | None:
        p = self._path(G, sig, constraint_key)
        if not p.exists():
            return None
        try:
            obj = json.loads(p.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if obj.get("version") != CACHE_VERSION or obj.get("signature") != str(sig):
            return None
        return [tuple(t) for t in obj["images"]]

    def put(self, G, sig, constraint_key: str, images) -> None:
        obj = {"version": CACHE_VERSION, "group": group_fingerprint(G), "group_name": G.name,
               "signature": str(sig), "constraint": constraint_key.split(":")[0],
               "images": [list(t) for t in images]}
        self._path(G, sig, constraint_key).write_text(json.dumps(obj))
