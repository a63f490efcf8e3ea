"""On-disk caches: relation quotients keyed by level, eigensymbols by curve.

Everything is JSON with exact integers/rationals as decimal strings, guarded
by a sha256 checksum over the canonical payload; a corrupted or stale file is
detected and silently rebuilt.
"""
from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path

from .hecke import eigensymbol
from .modsym import ManinSymbolSpace, ModularSymbol, P1List, build_space

ENV_CACHE_DIR = "MT_CACHE_DIR"


def default_cache_dir() -> Path | None:
    env = os.environ.get(ENV_CACHE_DIR)
    return Path(env) if env else None


def _checksum(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _write(path: Path, payload: dict):
    payload = dict(payload)
    payload["checksum"] = _checksum({k: v for k, v in payload.items() if k != "checksum"})
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, sort_keys=True))
    tmp.replace(path)


def _read(path: Path) -> dict | None:
    """Payload if present and checksum-clean, else None."""
    try:
        payload = json.loads(path.read_text())
        stated = payload.pop("checksum")
    except (OSError, ValueError, KeyError):
        return None
    if _checksum(payload) != stated:
        return None
    return payload


def space_payload(space: ManinSymbolSpace) -> dict:
    return {
        "kind": "manin_space",
        "N": space.N,
        "basis": list(space.basis),
        "expressions": [[str(x) for x in e] for e in space.expressions],
        "sigma": list(space.sigma),
        "tau": list(space.tau),
    }


def space_from_payload(payload: dict) -> ManinSymbolSpace:
    N = payload["N"]
    p1 = P1List(N)
    expressions = [tuple(Fraction(x) for x in row) for row in payload["expressions"]]
    return ManinSymbolSpace(N, p1, list(payload["basis"]), expressions, list(payload["sigma"]), list(payload["tau"]))


def load_space(N: int, cache_dir: Path | None = None) -> ManinSymbolSpace:
    """Cached space when a directory is configured; rebuild on any mismatch."""
    cache_dir = cache_dir or default_cache_dir()
    if cache_dir is None:
        return build_space(N)
    path = Path(cache_dir) / f"space_N{N}.json"
    payload = _read(path)
    if payload is not None and payload.get("N") == N and payload.get("kind") == "manin_space":
        return space_from_payload(payload)
    space = build_space(N)
    _write(path, space_payload(space))
    return space


def load_eigensymbol(space: ManinSymbolSpace, curve, cache_dir: Path | None = None) -> ModularSymbol:
    cache_dir = cache_dir or default_cache_dir()
    key = curve.label or f"a{curve.a1}.{curve.a2}.{curve.a3}.{curve.a4}.{curve.a6}"
    if cache_dir is None:
        return eigensymbol(space, curve)
    path = Path(cache_dir) / f"eigsym_N{space.N}_{key}_plus.json"
    payload = _read(path)
    if payload is not None and payload.get("N") == space.N and payload.get("label") == key:
        coords = [Fraction(x) for x in payload["coords"]]
        return ModularSymbol(space, coords, sign="+")
    sym = eigensymbol(space, curve)
    _write(path, {"kind": "eigensymbol", "N": space.N, "label": key, "sign": "+",
                  "coords": [str(c) for c in sym.coords]})
    return sym


def verify_cache_dir(cache_dir: Path) -> dict:
    """Integrity sweep: counts clean and corrupted entries, dropping the latter."""
    clean, corrupted = 0, 0
    cache_dir = Path(cache_dir)
    if not cache_dir.is_dir():
        return {"clean": 0, "corrupted": 0}
    for path in sorted(cache_dir.glob("*.json")):
        if _read(path) is None:
            corrupted += 1
            path.unlink()
        else:
            clean += 1
    return {"clean": clean, "corrupted": corrupted}
