"""Cell-by-cell backtracking over partial Cayley tables.

A search assigns ``cells[0], cells[1], ...`` in order, each from a fixed
domain, and asks :meth:`CellSearch.accept` whether the partial table can
still be extended. Traversal is preorder DFS, so the next node to visit is
fully described by the value path leading to it; that path is the
checkpoint cursor.
"""

from __future__ import annotations

import json
import os
import tempfile
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Iterator

from .errors import CheckpointVersionMismatch

CHECKPOINT_FORMAT = "finsemi-checkpoint"
CHECKPOINT_VERSION = 1

UNKNOWN = -1


class CellSearch:
    """Subclasses set ``n``, ``cells``, ``domains``, ``table`` and implement
    :meth:`accept` and :meth:`leaf`.
    """

    n: int
    cells: list[tuple[int, int]]
    domains: list[list[int]]
    table: list[list[int]]

    def __init__(self):
        self.counters: Counter = Counter()
        self.cursor: list[int] | None = None

    # subclass hooks -------------------------------------------------------

    def accept(self, depth: int) -> str | None:
        """Return ``None`` to accept the node at ``depth``, else the rule name."""
        raise NotImplementedError

    def leaf(self) -> Any:
        """Item to emit for a complete accepted assignment (``None`` = emit nothing)."""
        raise NotImplementedError

    def params(self) -> dict:
        """Constructor keyword arguments; used to rebuild the search in workers."""
        raise NotImplementedError

    # traversal ------------------------------------------------------------

    def _assign(self, depth: int, value: int):
        i, j = self.cells[depth]
        self.table[i][j] = value

    def _clear(self, depth: int):
        i, j = self.cells[depth]
        self.table[i][j] = UNKNOWN

    def _replay(self, path: list[int]):
        """Re-establish ancestor state along ``path`` without counting nodes."""
        for d, v in enumerate(path):
            self._assign(d, v)
            rule = self.accept(d)
            if rule is not None:
                raise ValueError(f"cursor passes through a rejected node at depth {d} ({rule})")

    def run(
        self,
        start: list[int] | None = None,
        root: list[int] | None = None,
        max_nodes: int | None = None,
        frontier_depth: int | None = None,
    ) -> Iterator[Any]:
        """Yield leaf items in DFS order.

        ``start``: resume at this node (the cursor of an earlier run).
        ``root``: restrict to the subtree strictly below this accepted node.
        ``max_nodes``: stop before visiting more nodes; :attr:`cursor` then
        holds the next node, otherwise it is ``None`` after exhaustion.
        ``frontier_depth``: instead of descending past that many cells, yield
        ``("frontier", path)`` for each accepted node at that depth.
        """
        root = list(root or [])
        last = len(self.cells) - 1
        if last < 0:
            self.cursor = None
            if not root and start is None:
                self.counters["nodes"] += 1
                self.counters["leaves"] += 1
                item = self.leaf()
                if item is not None:
                    yield item
            return
        if start is None:
            if len(root) > last:
                self.cursor = None
                return
            path = root + [self.domains[len(root)][0]]
        else:
            path = list(start)
            if path[: len(root)] != root or len(path) <= len(root):
                raise ValueError("resume cursor is outside the requested subtree")
        self._replay(path[:-1])
        stop = frontier_depth - 1 if frontier_depth is not None else last
        visited = 0
        floor = len(root)
        while len(path) > floor:
            if max_nodes is not None and visited >= max_nodes:
                self.cursor = path
                for d in range(len(path) - 1, -1, -1):
                    self._clear(d)
                return
            d = len(path) - 1
            self._assign(d, path[-1])
            visited += 1
            self.counters["nodes"] += 1
            rule = self.accept(d)
            if rule is None:
                if d == stop and stop < last:
                    yield ("frontier", list(path))
                elif d == last:
                    self.counters["leaves"] += 1
                    item = self.leaf()
                    if item is not None:
                        yield item
                else:
                    path.append(self.domains[d + 1][0])
                    continue
            else:
                self.counters["pruned:" + rule] += 1
            # advance to the next sibling, popping exhausted levels
            while len(path) > floor:
                d = len(path) - 1
                self._clear(d)
                dom = self.domains[d]
                k = dom.index(path[-1]) + 1
                if k < len(dom):
                    path[-1] = dom[k]
                    break
                path.pop()
        for d in range(floor - 1, -1, -1):
            self._clear(d)
        self.cursor = None

    def run_parallel(self, threads: int, split_depth: int) -> Iterator[Any]:
        """Same items and counters as :meth:`run`, with subtrees below
        ``split_depth`` cells farmed out to worker processes and merged in
        DFS (partition index) order.
        """
        if threads <= 1 or split_depth >= len(self.cells):
            yield from self.run()
            return
        frontier = [item[1] for item in self.run(frontier_depth=split_depth)]
        cls = type(self)
        params = self.params()
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_subtree, cls, params, root) for root in frontier]
            for fut in futures:
                items, counters = fut.result()
                self.counters.update(counters)
                yield from items
        self.cursor = None


def _run_subtree(cls, params, root):
    search = cls(**params)
    items = list(search.run(root=root))
    return items, search.counters


# checkpoints -------------------------------------------------------------


def write_checkpoint(path: str | os.PathLike, kind: str, params: dict, state: dict) -> None:
    """Atomically write a versioned checkpoint (temp file then rename)."""
    payload = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "kind": kind,
        "params": params,
        **state,
    }
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ckpt-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_checkpoint(path: str | os.PathLike, kind: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != CHECKPOINT_FORMAT or payload.get("version") != CHECKPOINT_VERSION:
        raise CheckpointVersionMismatch(
            f"{path}: expected {CHECKPOINT_FORMAT} v{CHECKPOINT_VERSION}, "
            f"got {payload.get('format')} v{payload.get('version')}"
        )
    if payload.get("kind") != kind:
        raise CheckpointVersionMismatch(f"{path}: checkpoint is for {payload.get('kind')!r}, not {kind!r}")
    return payload
