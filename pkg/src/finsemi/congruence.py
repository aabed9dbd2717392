"""Congruences: principal closure, the full lattice, and the chain (Delta) test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotACongruence, OrderMismatch, SizeLimitExceeded
from .table import CayleyTable
from .verdict import Verdict

ALL_CONGRUENCES_CAP = 8


@dataclass(frozen=True)
class Partition:
    """Equivalence on ``0..n-1``; ``class_of[x]`` is the least member of x's class."""

    class_of: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.class_of)

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def universal(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "Partition":
        rep = list(range(n))
        for c in classes:
            c = list(c)
            m = min(c)
            for x in c:
                rep[x] = m
        return cls(tuple(rep))

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        first: dict = {}
        return cls(tuple(first.setdefault(lab, i) for i, lab in enumerate(labels)))

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.class_of):
            out.setdefault(r, []).append(x)
        return [out[r] for r in sorted(out)]

    def num_classes(self) -> int:
        return len(set(self.class_of))

    def same(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    def pairs(self) -> list[tuple[int, int]]:
        """Generating pairs ``(rep, x)`` for every non-representative x."""
        return [(r, x) for x, r in enumerate(self.class_of) if r != x]

    def to_json(self) -> list[list[int]]:
        return self.classes()

    def __repr__(self) -> str:
        return f"Partition({self.classes()})"


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # smaller root wins so representatives stay minimal
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def partition(self) -> Partition:
        return Partition(tuple(self.find(x) for x in range(len(self.parent))))


def congruence_generated_by(table: CayleyTable, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Smallest congruence containing ``pairs`` (union-find with a worklist)."""
    rows = table.rows
    n = table.order
    cols = list(zip(*rows))
    uf = _UnionFind(n)
    work = list(pairs)
    while work:
        x, y = work.pop()
        if uf.union(x, y):
            rx, ry = rows[x], rows[y]
            cx, cy = cols[x], cols[y]
            for s in range(n):
                if rx[s] != ry[s]:
                    work.append((rx[s], ry[s]))
                if cx[s] != cy[s]:
                    work.append((cx[s], cy[s]))
    return uf.partition()


def principal_congruence(table: CayleyTable, a: int, b: int) -> Partition:
    return congruence_generated_by(table, [(a, b)])


def join(table: CayleyTable, p: Partition, q: Partition) -> Partition:
    return congruence_generated_by(table, p.pairs() + q.pairs())


def congruence_violation(table: CayleyTable, p: Partition):
    """First ``(x, y, s)`` with ``x ~ y`` but ``sx !~ sy`` or ``xs !~ ys``."""
    rows = table.rows
    rep = p.class_of
    n = table.order
    for x in range(n):
        y = rep[x]
        if y == x:
            continue
        for s in range(n):
            if rep[rows[s][x]] != rep[rows[s][y]] or rep[rows[x][s]] != rep[rows[y][s]]:
                return (y, x, s)
    return None


def is_congruence(table: CayleyTable, p: Partition) -> bool:
    return congruence_violation(table, p) is None


def _sort_key(p: Partition):
    return (-p.num_classes(), p.class_of)


def all_congruences(table: CayleyTable, max_order: int = ALL_CONGRUENCES_CAP) -> list[Partition]:
    """Every congruence, finest first (ties broken by ``class_of``)."""
    n = table.order
    if n > max_order:
        raise SizeLimitExceeded(n, max_order, "all_congruences")
    generators = []
    seen = {Partition.identity(n)}
    for a in range(n):
        for b in range(a + 1, n):
            c = principal_congruence(table, a, b)
            if c not in seen:
                seen.add(c)
                generators.append(c)
    frontier = list(generators)
    while frontier:
        new = []
        for p in frontier:
            for g in generators:
                j = join(table, p, g)
                if j not in seen:
                    seen.add(j)
                    new.append(j)
        frontier = new
    return sorted(seen, key=_sort_key)


def compare_partitions(p: Partition, q: Partition) -> str:
    """``equal``, ``finer`` (p strictly inside q), ``coarser`` or ``incomparable``."""
    if p.order != q.order:
        raise OrderMismatch(f"partitions of {p.order} and {q.order} elements")
    p_in_q = all(q.class_of[x] == q.class_of[r] for x, r in enumerate(p.class_of))
    q_in_p = all(p.class_of[x] == p.class_of[r] for x, r in enumerate(q.class_of))
    if p_in_q and q_in_p:
        return "equal"
    if p_in_q:
        return "finer"
    if q_in_p:
        return "coarser"
    return "incomparable"


def is_delta(table: CayleyTable) -> Verdict:
    """Whether the congruence lattice is a chain.

    Only principal congruences are compared: every congruence of a finite
    semigroup is a join of principal ones, and a join over a chain is its top.
    On failure the witness is ``((a, b), (c, d), P, Q)`` with ``P``, ``Q`` the
    incomparable principal congruences generated by those pairs.
    """
    n = table.order
    gens: list[tuple[tuple[int, int], Partition]] = []
    seen = set()
    for a in range(n):
        for b in range(a + 1, n):
            c = principal_congruence(table, a, b)
            if c not in seen:
                seen.add(c)
                gens.append(((a, b), c))
    for i, (ga, p) in enumerate(gens):
        for gb, q in gens[i + 1:]:
            if compare_partitions(p, q) == "incomparable":
                return Verdict(False, (ga, gb, p, q))
    return Verdict(True)


def is_delta_full(table: CayleyTable) -> bool:
    """Chain test over the whole lattice from :func:`all_congruences`."""
    cs = all_congruences(table, max_order=max(ALL_CONGRUENCES_CAP, table.order))
    for i, p in enumerate(cs):
        for q in cs[i + 1:]:
            if compare_partitions(p, q) == "incomparable":
                return False
    return True


def left_kernel_congruence(table: CayleyTable) -> Partition:
    """``a ~ b`` iff ``s*a = s*b`` for every s, i.e. equal columns."""
    cols = list(zip(*table.rows))
    p = Partition.from_labels(cols)
    bad = congruence_violation(table, p)
    if bad is not None:  # cannot happen for an associative table
        raise NotACongruence(*bad)
    return p


def quotient_by_congruence(table: CayleyTable, c: Partition) -> tuple[CayleyTable, list[int]]:
    """Quotient on class representatives; returns the table and ``old -> new`` map."""
    if c.order != table.order:
        raise OrderMismatch(f"partition of {c.order} elements for a table of order {table.order}")
    bad = congruence_violation(table, c)
    if bad is not None:
        raise NotACongruence(*bad)
    reps = sorted(set(c.class_of))
    index = {r: i for i, r in enumerate(reps)}
    mapping = [index[c.class_of[x]] for x in range(table.order)]
    rows = table.rows
    q = [[mapping[rows[a][b]] for b in reps] for a in reps]
    return CayleyTable.from_rows(q), mapping
