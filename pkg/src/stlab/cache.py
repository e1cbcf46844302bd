"""Versioned disk caches for subspace tables, splittings and flag indexes.

Cache files are JSON keyed by their parameters and a format-version
constant that is bumped on any representation change; a loaded value must
be bit-identical to fresh enumeration (tests enforce this).  Mismatched
parameters or versions are treated as a miss.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from . import building, ffspace, symplectic

FORMAT_VERSION = 1


def default_cache_dir() -> Path:
    return Path(os.environ.get("STLAB_CACHE_DIR", Path.home() / ".cache" / "stlab"))


def cache_path(cache_dir, kind: str, **params) -> Path:
    tag = "_".join(f"{k}{v}" for k, v in sorted(params.items()))
    return Path(cache_dir) / f"{kind}_{tag}_v{FORMAT_VERSION}.json"


def _write(path: Path, kind: str, params: dict, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = {"format_version": FORMAT_VERSION, "kind": kind, "params": params, "data": data}
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        json.dump(blob, fh, sort_keys=True, separators=(",", ":"))
    os.replace(tmp, path)


def _read(path: Path, kind: str, params: dict):
    if not path.exists():
        return None
    try:
        with open(path) as fh:
            blob = json.load(fh)
    except (json.JSONDecodeError, OSError):
        return None
    if blob.get("format_version") != FORMAT_VERSION or blob.get("kind") != kind:
        return None
    if blob.get("params") != params:
        return None
    return blob["data"]


def save_subspace_table(cache_dir, n: int, p: int, k: int, subspaces) -> Path:
    path = cache_path(cache_dir, "subspaces", n=n, p=p, k=k)
    data = [[list(row) for row in s.basis] for s in subspaces]
    _write(path, "subspaces", {"n": n, "p": p, "k": k}, data)
    return path


def load_subspace_table(cache_dir, n: int, p: int, k: int):
    data = _read(cache_path(cache_dir, "subspaces", n=n, p=p, k=k), "subspaces", {"n": n, "p": p, "k": k})
    if data is None:
        return None
    mod = ffspace.PrimeModulus(p)
    return [
        ffspace.Subspace(mod, n, tuple(tuple(int(x) for x in row) for row in mat))
        for mat in data
    ]


def save_splittings(cache_dir, g: int, p: int, splittings) -> Path:
    path = cache_path(cache_dir, "splittings", g=g, p=p)
    data = [[[list(row) for row in part.basis] for part in s.parts] for s in splittings]
    _write(path, "splittings", {"g": g, "p": p}, data)
    return path


def load_splittings(cache_dir, g: int, p: int):
    data = _read(cache_path(cache_dir, "splittings", g=g, p=p), "splittings", {"g": g, "p": p})
    if data is None:
        return None
    sp = symplectic.space(g, p)
    out = []
    for parts in data:
        subs = tuple(
            ffspace.Subspace(sp.modulus, sp.dim, tuple(tuple(int(x) for x in row) for row in mat))
            for mat in parts
        )
        out.append(symplectic.SymplecticSplitting(sp, subs))
    return out


def save_flag_index(cache_dir, ctx: building.BuildingContext) -> Path:
    path = cache_path(cache_dir, "flags", n=ctx.n, p=ctx.p)
    data = {
        "tables": [[[list(row) for row in key] for key in tbl] for tbl in ctx.tables],
        "flags": [list(f) for f in ctx.flags],
    }
    _write(path, "flags", {"n": ctx.n, "p": ctx.p}, data)
    return path


def load_flag_index(cache_dir, n: int, p: int):
    data = _read(cache_path(cache_dir, "flags", n=n, p=p), "flags", {"n": n, "p": p})
    if data is None:
        return None
    mod = ffspace.PrimeModulus(p)
    tables = tuple(
        tuple(tuple(tuple(int(x) for x in row) for row in key) for key in tbl)
        for tbl in data["tables"]
    )
    flags = tuple(tuple(int(i) for i in f) for f in data["flags"])
    key_index = tuple({key: i for i, key in enumerate(tbl)} for tbl in tables)
    flag_index = {f: i for i, f in enumerate(flags)}
    return building.BuildingContext(
        n=n,
        modulus=mod,
        tables=tables,
        flags=flags,
        _key_index=key_index,
        _flag_index=flag_index,
    )


def cached_context(n: int, p: int, cache_dir=None, flag_budget=building.DEFAULT_FLAG_BUDGET):
    """Build (or reload, byte-identically) the flag context for (n, p)."""
    if cache_dir is None:
        return building.build_context(n, p, flag_budget=flag_budget)
    ctx = load_flag_index(cache_dir, n, p)
    if ctx is None:
        ctx = building.build_context(n, p, flag_budget=flag_budget)
        save_flag_index(cache_dir, ctx)
    return ctx


def cached_splittings(g: int, p: int, cache_dir=None, extended: bool = False):
    if cache_dir is None:
        return symplectic.enumerate_splittings(g, p, extended=extended)
    cached = load_splittings(cache_dir, g, p)
    if cached is None:
        cached = symplectic.enumerate_splittings(g, p, extended=extended)
        save_splittings(cache_dir, g, p, cached)
    return cached


def warm(cache_dir, n: int, p: int, g: int | None = None, extended: bool = False) -> list[Path]:
    """Populate the cache for one (n, p) context (and splittings, given g)."""
    written = []
    ctx = building.build_context(n, p)
    for k in range(1, n):
        written.append(save_subspace_table(cache_dir, n, p, k, ffspace.enumerate_subspaces(n, p, k)))
    written.append(save_flag_index(cache_dir, ctx))
    if g is not None:
        written.append(
            save_splittings(cache_dir, g, p, symplectic.enumerate_splittings(g, p, extended=extended))
        )
    return written


def clear(cache_dir) -> int:
    """Remove stlab cache files from the directory; returns the count."""
    cache_dir = Path(cache_dir)
    if not cache_dir.exists():
        return 0
    removed = 0
    for path in cache_dir.iterdir():
        if path.suffix == ".json" and path.name.rsplit("_", 1)[-1].startswith("v"):
            path.unlink()
            removed += 1
    return removed
