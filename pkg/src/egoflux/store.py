"""Durable store for curated paper collections.

Collections persist in a single journal file: one JSON record per line,
every mutation appending a full snapshot with a bumped version number.
The newest snapshot per id wins on replay, so the journal is append-only
data even though each write lands via temp-file + atomic rename (a crash
can never leave a torn file behind). Mutations carry the caller's
expected version and fail on mismatch, which gives lost-update
protection to concurrent editors.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, replace

from egoflux.corpus import YEAR_MAX, YEAR_MIN
from egoflux.errors import ConflictError, DataError, InvalidArgument, NotFound


def _utc_now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


def _ordered_unique(paper_ids) -> tuple[str, ...]:
    seen = []
    for pid in paper_ids:
        if not isinstance(pid, str) or not pid:
            raise InvalidArgument(f"paper id must be a nonempty string, got {pid!r}")
        if pid not in seen:
            seen.append(pid)
    return tuple(seen)


def _check_funding(funding: tuple[int, int] | None) -> tuple[int, int] | None:
    if funding is None:
        return None
    start, end = funding
    if not (YEAR_MIN <= start <= YEAR_MAX and YEAR_MIN <= end <= YEAR_MAX):
        raise InvalidArgument(
            f"funding years must lie in [{YEAR_MIN}, {YEAR_MAX}], got {start}:{end}"
        )
    if start > end:
        raise InvalidArgument(f"funding start {start} is after end {end}")
    return (int(start), int(end))


@dataclass(frozen=True)
class Collection:
    id: str
    label: str
    paper_ids: tuple[str, ...]  # insertion order, unique
    funding: tuple[int, int] | None
    version: int
    created: str
    modified: str

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "label": self.label,
            "paper_ids": list(self.paper_ids),
            "funding": list(self.funding) if self.funding else None,
            "version": self.version,
            "created": self.created,
            "modified": self.modified,
        }


def _collection_from_record(record: dict, line_no: int, path: str) -> Collection:
    try:
        funding = record.get("funding")
        return Collection(
            id=str(record["id"]),
            label=str(record["label"]),
            paper_ids=tuple(str(p) for p in record["paper_ids"]),
            funding=None if funding is None else (int(funding[0]), int(funding[1])),
            version=int(record["version"]),
            created=str(record["created"]),
            modified=str(record["modified"]),
        )
    except (KeyError, TypeError, ValueError, IndexError):
        raise DataError("malformed collection record", path=path, line=line_no) from None


class CollectionStore:
    """Journal-backed collection registry, safe for threaded access."""

    def __init__(self, path: str):
        self._path = path
        self._lock = threading.Lock()
        self._lines: list[str] = []
        self._collections: dict[str, Collection] = {}
        self._load()

    def _load(self) -> None:
        if not os.path.exists(self._path):
            return
        with open(self._path, encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError:
                    raise DataError(
                        "journal line is not valid JSON", path=self._path, line=line_no
                    ) from None
                snap = _collection_from_record(record, line_no, self._path)
                self._collections[snap.id] = snap
                self._lines.append(line)

    def _commit(self, snap: Collection) -> None:
        # Caller holds the lock. Rewrite the whole journal through a temp
        # file so readers never observe a partial append.
        self._lines.append(json.dumps(snap.as_dict(), sort_keys=True))
        tmp = self._path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write("\n".join(self._lines) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self._path)
        self._collections[snap.id] = snap

    def get(self, collection_id: str) -> Collection:
        with self._lock:
            snap = self._collections.get(collection_id)
        if snap is None:
            raise NotFound(f"collection {collection_id!r} not found")
        return snap

    def create(
        self,
        label: str,
        paper_ids=(),
        funding: tuple[int, int] | None = None,
        collection_id: str | None = None,
    ) -> Collection:
        if not label or not label.strip():
            raise InvalidArgument("collection label must be nonempty")
        if collection_id is None:
            collection_id = uuid.uuid4().hex[:12]
        elif not collection_id or collection_id != collection_id.strip():
            raise InvalidArgument(f"invalid collection id {collection_id!r}")
        now = _utc_now()
        snap = Collection(
            id=collection_id,
            label=label,
            paper_ids=_ordered_unique(paper_ids),
            funding=_check_funding(funding),
            version=1,
            created=now,
            modified=now,
        )
        with self._lock:
            if collection_id in self._collections:
                raise ConflictError(
                    f"collection {collection_id!r} already exists",
                    expected=None,
                    actual=self._collections[collection_id].version,
                )
            self._commit(snap)
        return snap

    def _mutate(self, collection_id: str, expected_version: int, **changes) -> Collection:
        with self._lock:
            snap = self._collections.get(collection_id)
            if snap is None:
                raise NotFound(f"collection {collection_id!r} not found")
            if snap.version != expected_version:
                raise ConflictError(
                    f"collection {collection_id!r} is at version {snap.version}, "
                    f"not {expected_version}",
                    expected=expected_version,
                    actual=snap.version,
                )
            new = replace(
                snap, version=snap.version + 1, modified=_utc_now(), **changes
            )
            self._commit(new)
        return new

    def add_papers(
        self, collection_id: str, expected_version: int, paper_ids
    ) -> Collection:
        additions = _ordered_unique(paper_ids)
        if not additions:
            raise InvalidArgument("no paper ids given")
        current = self.get(collection_id).paper_ids
        merged = _ordered_unique(current + additions)
        return self._mutate(collection_id, expected_version, paper_ids=merged)

    def remove_paper(
        self, collection_id: str, expected_version: int, paper_id: str
    ) -> Collection:
        current = self.get(collection_id)
        if paper_id not in current.paper_ids:
            raise NotFound(
                f"paper {paper_id!r} is not in collection {collection_id!r}"
            )
        remaining = tuple(p for p in current.paper_ids if p != paper_id)
        return self._mutate(collection_id, expected_version, paper_ids=remaining)

    def set_funding(
        self,
        collection_id: str,
        expected_version: int,
        funding: tuple[int, int] | None,
    ) -> Collection:
        return self._mutate(
            collection_id, expected_version, funding=_check_funding(funding)
        )

    def relabel(self, collection_id: str, expected_version: int, label: str) -> Collection:
        if not label or not label.strip():
            raise InvalidArgument("collection label must be nonempty")
        return self._mutate(collection_id, expected_version, label=label)
