"""Persistence: corpus files, JSON reports, and the lattice cache.

All three formats are JSON with an explicit schema version. Reports are
dumped with sorted keys and no timestamps (unless timing was requested), so
identical runs produce byte-identical files. Cache writes go through a
temp-file-then-rename so concurrent readers never observe a partial file.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .dsl import parse_group_spec
from .errors import CacheVersionMismatch, CorpusParseError, FormationsError
from .groups import FiniteGroup, Subgroup
from .lattice import SubgroupLattice

CORPUS_SCHEMA = "formations-corpus/1"
REPORT_SCHEMA = "formations-report/1"
CACHE_SCHEMA = "formations-lattice-cache/1"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: str
    tags: tuple[str, ...] = ()

    def has_tag(self, tag: str) -> bool:
        return tag in self.tags


def load_corpus(path) -> list[CorpusEntry]:
    """Read a corpus file: either a bare JSON array of {name, spec, tags}
    or an object {"schema": ..., "groups": [...]}."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CorpusParseError(f"cannot read corpus {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CorpusParseError(f"corpus {path} is not valid JSON: {exc}") from exc
    if isinstance(doc, dict):
        schema = doc.get("schema", CORPUS_SCHEMA)
        if schema != CORPUS_SCHEMA:
            raise CorpusParseError(f"corpus {path}: unsupported schema {schema!r}")
        items = doc.get("groups")
        if not isinstance(items, list):
            raise CorpusParseError(f"corpus {path}: missing 'groups' array")
    elif isinstance(doc, list):
        items = doc
    else:
        raise CorpusParseError(f"corpus {path}: expected an array or object")
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise CorpusParseError(f"corpus entry {i}: expected an object")
        if "name" not in item:
            raise CorpusParseError(f"corpus entry {i}: missing 'name'")
        if "spec" not in item:
            raise CorpusParseError(f"corpus entry {i} ({item.get('name')}): missing 'spec'")
        tags = item.get("tags", [])
        if not isinstance(tags, list):
            raise CorpusParseError(f"corpus entry {i} ({item['name']}): 'tags' must be a list")
        spec = str(item["spec"])
        try:
            parse_group_spec(spec)
        except FormationsError as exc:
            raise CorpusParseError(
                f"corpus entry {i} ({item['name']}): unparseable spec: {exc}") from exc
        out.append(CorpusEntry(name=str(item["name"]), spec=spec,
                               tags=tuple(str(t) for t in tags)))
    return out


def builtin_corpus_path() -> Path:
    return Path(str(resources.files("formations").joinpath("data/corpus.json")))


def write_corpus(entries, path) -> None:
    doc = {
        "schema": CORPUS_SCHEMA,
        "groups": [{"name": e.name, "spec": e.spec, "tags": list(e.tags)} for e in entries],
    }
    _atomic_write_json(doc, path)


def report_dumps(report: dict) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    doc = {"schema": REPORT_SCHEMA, **report}
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def write_report(report: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report_dumps(report))


# ---------------------------------------------------------------------------
# lattice cache


def _cache_file(g: FiniteGroup, directory) -> Path:
    return Path(directory) / f"{g.fingerprint}.json"


def cache_lattice(g: FiniteGroup, lat: SubgroupLattice, directory) -> Path:
    """Persist a lattice keyed by the group's table fingerprint (atomic)."""
    doc = {
        "schema": CACHE_SCHEMA,
        "fingerprint": g.fingerprint,
        "order": g.order,
        "subgroups": [[int(m) for m in s.members] for s in lat.subgroups],
        "gens": [list(s.gens) for s in lat.subgroups],
        "maximals": lat.maximals_of,
    }
    path = _cache_file(g, directory)
    _atomic_write_json(doc, path)
    return path


def load_cached_lattice(g: FiniteGroup, directory) -> Optional[SubgroupLattice]:
    """Load a cached lattice; None when absent or keyed to a different table.

    Raises CacheVersionMismatch for files written under another schema.
    """
    path = _cache_file(g, directory)
    if not path.exists():
        return None
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("schema") != CACHE_SCHEMA:
        raise CacheVersionMismatch(f"{path}: schema {doc.get('schema')!r} != {CACHE_SCHEMA}")
    if doc.get("fingerprint") != g.fingerprint or doc.get("order") != g.order:
        return None
    from .groups import bits_of
    subs = [Subgroup(g, bits_of(mem), gens=tuple(gens))
            for mem, gens in zip(doc["subgroups"], doc["gens"])]
    index_of = {s.bits: i for i, s in enumerate(subs)}
    maximals_of = [list(map(int, row)) for row in doc["maximals"]]
    overgroups_of: list[list[int]] = [[] for _ in subs]
    for i, children in enumerate(maximals_of):
        for j in children:
            overgroups_of[j].append(i)
    lat = SubgroupLattice(group=g, subgroups=subs, index_of=index_of,
                          maximals_of=maximals_of, overgroups_of=overgroups_of)
    g._lattice = lat
    return lat


def _atomic_write_json(doc, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
