"""Canonical forms, isomorphism, exhaustive enumeration and the T2R-shaped search."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator

from .errors import SizeLimitExceeded
from .search import UNKNOWN, CellSearch
from .structure import recognize_t2
from .table import CayleyTable, first_associativity_failure, relabel
from .verdict import Verdict

log = logging.getLogger(__name__)

ENUMERATION_CAP = 6
T2R_SEARCH_CAP = 7
T2R_RULES = ("p6", "p7")


@dataclass(frozen=True)
class CanonicalTable:
    table: CayleyTable
    automorphism_count: int
    relabeling: tuple[int, ...]  # input element -> canonical element


def canonical_form(table: CayleyTable) -> CanonicalTable:
    """Row-major lexicographically least relabelling.

    Labels are assigned cell by cell: whenever the product in the current
    cell is still unlabelled, the least possible value is the next fresh
    label, so only the choice of which element receives a row/column label
    branches. Candidates that are not minimal at a cell are dropped.
    """
    n = table.order
    rows = table.rows
    cands: list[tuple[list[int], dict[int, int]]] = [([], {})]
    out = []
    for i in range(n):
        for j in range(n):
            need = max(i, j)
            expanded = []
            for sigma, lab in cands:
                if need < len(sigma):
                    expanded.append((sigma, lab))
                    continue
                for x in range(n):
                    if x not in lab:
                        expanded.append((sigma + [x], {**lab, x: len(sigma)}))
            scored = []
            for sigma, lab in expanded:
                w = rows[sigma[i]][sigma[j]]
                scored.append((lab.get(w, len(sigma)), sigma, lab, w))
            best = min(s[0] for s in scored)
            cands = []
            for val, sigma, lab, w in scored:
                if val != best:
                    continue
                if w not in lab:
                    lab = {**lab, w: len(sigma)}
                    sigma = sigma + [w]
                cands.append((sigma, lab))
            out.append(best)
    canon = CayleyTable(tuple(tuple(out[i * n:(i + 1) * n]) for i in range(n)))
    lab = cands[0][1]
    return CanonicalTable(canon, len(cands), tuple(lab[x] for x in range(n)))


def are_isomorphic(t1: CayleyTable, t2: CayleyTable) -> Verdict:
    """Witness: ``perm`` with ``relabel(t1, perm) == t2``."""
    if t1.order != t2.order:
        return Verdict(False)
    c1, c2 = canonical_form(t1), canonical_form(t2)
    if c1.table != c2.table:
        return Verdict(False)
    back = {c: x for x, c in enumerate(c2.relabeling)}
    return Verdict(True, tuple(back[c] for c in c1.relabeling))


def _assoc_ok(T: list[list[int]], n: int, a: int, b: int) -> bool:
    """Check every fully known triple in which cell (a, b) takes part."""
    c = T[a][b]
    ra, rb, rc = T[a], T[b], T[c]
    for z in range(n):  # (ab)z = a(bz)
        left, w = rc[z], rb[z]
        if left >= 0 and w >= 0:
            right = ra[w]
            if right >= 0 and right != left:
                return False
    for x in range(n):  # (xa)b = x(ab)
        rx = T[x]
        w = rx[a]
        if w >= 0:
            left, right = T[w][b], rx[c]
            if left >= 0 and right >= 0 and left != right:
                return False
    for x in range(n):  # (xy)b with xy = a
        rx = T[x]
        for y in range(n):
            if rx[y] == a:
                w = T[y][b]
                if w >= 0:
                    right = rx[w]
                    if right >= 0 and right != c:
                        return False
    for y in range(n):  # a(yz) with yz = b
        w = ra[y]
        if w < 0:
            continue
        rw, ry = T[w], T[y]
        for z in range(n):
            if ry[z] == b:
                left = rw[z]
                if left >= 0 and left != c:
                    return False
    return True


def _canon_step(T, size, alive):
    """Advance relabelling comparisons on the leading ``size`` x ``size`` block.

    ``alive`` holds ``(pi, inverse, position)`` for relabellings whose image
    ties with the block up to ``position``. Returns the survivors, or
    ``None`` when some relabelling already beats the current block.
    """
    total = size * size
    survivors = []
    for pi, inv, pos in alive:
        k = pos
        dead = False
        while k < total:
            i, j = divmod(k, size)
            t = T[i][j]
            if t < 0:
                break
            s = T[inv[i]][inv[j]]
            if s < 0:
                break
            val = pi[s]
            if val < t:
                return None
            if val > t:
                dead = True
                break
            k += 1
        if not dead:
            survivors.append((pi, inv, k))
    return survivors


def _relabellings(size: int, fix_zero: bool = False):
    out = []
    for perm in itertools.permutations(range(1, size) if fix_zero else range(size)):
        pi = (0,) + perm if fix_zero else perm
        if pi == tuple(range(size)):
            continue
        inv = [0] * size
        for x, y in enumerate(pi):
            inv[y] = x
        out.append((pi, tuple(inv), 0))
    return out


class SemigroupSearch(CellSearch):
    """All associative tables of one order, optionally only lex-least ones."""

    def __init__(self, order: int, up_to_iso: bool = True):
        super().__init__()
        self.n = order
        self.up_to_iso = up_to_iso
        self.cells = [(i, j) for i in range(order) for j in range(order)]
        self.domains = [list(range(order))] * len(self.cells)
        self.table = [[UNKNOWN] * order for _ in range(order)]
        self._alive = [None] * len(self.cells)
        self._initial = _relabellings(order) if up_to_iso else []

    def params(self) -> dict:
        return {"order": self.n, "up_to_iso": self.up_to_iso}

    def accept(self, depth):
        a, b = self.cells[depth]
        if not _assoc_ok(self.table, self.n, a, b):
            return "assoc"
        if self.up_to_iso:
            prev = self._alive[depth - 1] if depth else self._initial
            alive = _canon_step(self.table, self.n, prev)
            if alive is None:
                return "canon"
            self._alive[depth] = alive
        return None

    def leaf(self):
        return CayleyTable(tuple(tuple(r) for r in self.table))


def _check_cap(order: int, cap: int, allow: bool, what: str):
    if order > cap:
        if not allow:
            raise SizeLimitExceeded(order, cap, what)
        log.warning("%s above the default cap %d (order %d); expect a long run", what, cap, order)


def enumerate_semigroups(
    n: int,
    up_to_iso: bool = True,
    threads: int = 1,
    cap: int = ENUMERATION_CAP,
    allow_above_cap: bool = False,
) -> Iterator[CayleyTable]:
    """Every semigroup on ``0..n-1`` (or one lex-least table per isomorphism
    class), in a deterministic order independent of ``threads``.
    """
    if n < 1:
        raise ValueError("order must be positive")
    _check_cap(n, cap, allow_above_cap, "enumeration")
    search = SemigroupSearch(n, up_to_iso)
    yield from search.run_parallel(threads, split_depth=n)


class T2RShapeSearch(CellSearch):
    """Tables shaped like a T2R semigroup of the given order.

    Elements ``0..k-1`` form S0 with zero 0 and ``u = k``, ``v = k+1`` form
    the right-zero pair S1. S0 is generated up to isomorphism (relabellings
    fixing 0); the products between S0 and S1 are all enumerated, each
    restricted to S0 so that S0 is an ideal.

    Rules ``p6`` and ``p7`` prune with necessary conditions of T2R
    semigroups: some b in S0 has ``ub != b`` and ``vb != b``; ``S0^2 = S0``.
    ``mode="witness"`` emits tables recognized as T2R, ``mode="all"`` emits
    every shaped table.
    """

    def __init__(self, order: int, rules=T2R_RULES, mode: str = "witness", canonical: bool = True):
        super().__init__()
        if order < 4:
            raise ValueError("T2R-shaped tables need at least 4 elements")
        self.order = order
        self.rules = tuple(sorted(rules))
        self.mode = mode
        self.canonical = canonical
        k = order - 2
        self.k = k
        self.n = order
        u, v = k, k + 1
        T = [[UNKNOWN] * order for _ in range(order)]
        for i in range(k):
            T[0][i] = T[i][0] = 0
        T[u][u], T[u][v], T[v][u], T[v][v] = u, v, u, v
        self.table = T
        s0_cells = [(i, j) for i in range(1, k) for j in range(1, k)]
        left = [(e, s) for s in range(k) for e in (u, v)]
        right = [(s, e) for s in range(k) for e in (u, v)]
        self.cells = s0_cells + left + right
        self.domains = [list(range(k))] * len(self.cells)
        self.s0_end = len(s0_cells) - 1
        self.left_end = self.s0_end + len(left)
        self._alive = [None] * len(self.cells)
        self._initial = _relabellings(k, fix_zero=True) if canonical else []

    def params(self) -> dict:
        return {"order": self.order, "rules": self.rules, "mode": self.mode, "canonical": self.canonical}

    def _s0_is_nil(self) -> bool:
        T, k = self.table, self.k
        for a in range(1, k):
            x, seen = a, set()
            while x != 0:
                if x in seen:
                    return False
                seen.add(x)
                x = T[x][a]
        return True

    def accept(self, depth):
        a, b = self.cells[depth]
        T = self.table
        if not _assoc_ok(T, self.n, a, b):
            return "assoc"
        if depth <= self.s0_end and self.canonical:
            prev = self._alive[depth - 1] if depth else self._initial
            alive = _canon_step(T, self.k, prev)
            if alive is None:
                return "canon"
            self._alive[depth] = alive
        if depth == self.s0_end:
            if not self._s0_is_nil():
                return "nil"
            if "p7" in self.rules:
                k = self.k
                square = {T[x][y] for x in range(k) for y in range(k)}
                if len(square) < k:
                    return "p7"
        if depth == self.left_end and "p6" in self.rules:
            u, v = self.k, self.k + 1
            if not any(T[u][b] != b and T[v][b] != b for b in range(self.k)):
                return "p6"
        return None

    def leaf(self):
        table = CayleyTable(tuple(tuple(r) for r in self.table))
        if first_associativity_failure(table.rows) is not None:  # pragma: no cover
            raise AssertionError("local associativity checks missed a triple")
        self.counters["shaped"] += 1
        if self.mode == "all":
            return table
        d = recognize_t2(table, "T2R")
        if d is None:
            self.counters["rejected:not_t2r"] += 1
            return None
        return table


@dataclass
class T2RSearchOutcome:
    witness: CayleyTable | None
    complete: bool
    counters: dict[int, dict] = field(default_factory=dict)
    state: dict | None = None

    @property
    def totals(self) -> dict:
        tot: dict = {}
        for c in self.counters.values():
            for key, val in c.items():
                tot[key] = tot.get(key, 0) + val
        return tot


def search_t2r(
    max_order: int,
    rules=T2R_RULES,
    threads: int = 1,
    resume: dict | None = None,
    max_nodes: int | None = None,
    cap: int = T2R_SEARCH_CAP,
    allow_above_cap: bool = False,
) -> T2RSearchOutcome:
    """Look for a T2R semigroup among tables of order ``4..max_order``.

    With ``max_nodes`` the run stops early and ``state`` holds what
    :func:`search_t2r` needs (``resume=state``) to visit exactly the rest.
    Parallel runs (``threads > 1``) cannot be interrupted.
    """
    _check_cap(max_order, cap, allow_above_cap, "T2R search")
    rules = tuple(sorted(rules))
    unknown = set(rules) - set(T2R_RULES)
    if unknown:
        raise ValueError(f"unknown pruning rules {sorted(unknown)}")
    if threads > 1 and (max_nodes is not None or resume is not None):
        raise ValueError("interruptible runs are single-process")
    counters: dict[int, dict] = {}
    start_order, cursor = 4, None
    if resume is not None:
        counters = {int(k): dict(v) for k, v in resume["counters"].items()}
        start_order, cursor = resume["order"], resume["cursor"]
    budget = max_nodes
    for order in range(start_order, max_order + 1):
        search = T2RShapeSearch(order, rules)
        search.counters.update(counters.get(order, {}))
        before = search.counters["nodes"]
        if threads > 1:
            found = next(iter(search.run_parallel(threads, split_depth=len(search.cells) // 2)), None)
        else:
            found = next(iter(search.run(start=cursor, max_nodes=budget)), None)
        cursor = None
        counters[order] = dict(search.counters)
        if found is not None:
            return T2RSearchOutcome(found, True, counters)
        if search.cursor is not None:
            state = {"order": order, "cursor": search.cursor, "counters": counters}
            return T2RSearchOutcome(None, False, counters, state)
        if budget is not None:
            budget -= search.counters["nodes"] - before
    return T2RSearchOutcome(None, True, counters)
