import hashlib
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional, Sequence

import click
import yaml
from tqdm import tqdm

from app.exceptions import CacheCorruptionError
from config.settings import CACHE_FORMAT, VERBOSE

_verbose = VERBOSE


def set_verbose(flag: bool) -> None:
    global _verbose
    _verbose = flag


def status(message: str) -> None:
    """Progress line on stderr; stdout carries only command payloads."""
    if _verbose:
        click.echo(message, err=True)


def progress(iterable: Iterable, desc: str, total: Optional[int] = None) -> Iterable:
    return tqdm(iterable, desc=desc, total=total, disable=not _verbose, file=sys.stderr, leave=False)


class Stopwatch:
    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        self.elapsed_ms = 0.0
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed_ms = round((time.perf_counter() - self._start) * 1000.0, 3)


def payload_checksum(payload: Any) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def cache_path(cache_dir: str, kind: str, key: str) -> str:
    return os.path.join(cache_dir, f"{kind}-{key}.json")


def cleanup_cache_file(file_path: str) -> None:
    try:
        if os.path.exists(file_path):
            os.remove(file_path)
    except Exception:
        pass


def read_cache_entry(cache_dir: str, kind: str, key: str) -> Optional[Any]:
    """Payload stored under (kind, key), or None when missing or unusable.

    A damaged entry is deleted so that the caller rebuilds it.
    """
    path = cache_path(cache_dir, kind, key)
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
        if document.get("format") != CACHE_FORMAT:
            raise CacheCorruptionError(f"unknown format {document.get('format')!r}")
        if document.get("kind") != kind or document.get("key") != key:
            raise CacheCorruptionError("entry does not match its file name")
        if payload_checksum(document["payload"]) != document["sha256"]:
            raise CacheCorruptionError("checksum mismatch")
        return document["payload"]
    except (OSError, ValueError, KeyError, TypeError, AttributeError, CacheCorruptionError) as e:
        status(f"⚠️ Cache entry {path} unusable ({e}), rebuilding")
        cleanup_cache_file(path)
        return None


def write_cache_entry(cache_dir: str, kind: str, key: str, payload: Any) -> None:
    path = cache_path(cache_dir, kind, key)
    document = {
        "format": CACHE_FORMAT,
        "kind": kind,
        "key": key,
        "sha256": payload_checksum(payload),
        "payload": payload,
    }
    temp_path = None
    try:
        os.makedirs(cache_dir, exist_ok=True)
        fd, temp_path = tempfile.mkstemp(dir=cache_dir, prefix=f".{kind}-", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(document, f)
        os.replace(temp_path, path)
    except (OSError, TypeError, ValueError) as e:
        status(f"⚠️ Could not write cache entry {path}: {e}")
        if temp_path is not None:
            cleanup_cache_file(temp_path)


def parallel_map(
    func: Callable,
    items: Sequence,
    threads: int,
    initializer: Optional[Callable] = None,
    initargs: tuple = (),
) -> List:
    """Order-preserving map over a process pool; runs inline for one worker."""
    if threads <= 1 or len(items) < 2:
        if initializer is not None:
            initializer(*initargs)
        return [func(item) for item in items]
    chunksize = max(1, len(items) // (threads * 4))
    with ProcessPoolExecutor(max_workers=threads, initializer=initializer, initargs=initargs) as pool:
        return list(pool.map(func, items, chunksize=chunksize))


def render_payload(payload: Any, as_json: bool) -> str:
    """JSON for machines, YAML of the very same payload for humans."""
    if as_json:
        return json.dumps(payload)
    return yaml.safe_dump(payload, sort_keys=False, allow_unicode=True).rstrip("\n")
