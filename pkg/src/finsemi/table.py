"""Finite semigroups as Cayley tables and the basic constructions on them.

Elements are the dense indices ``0..n-1``; ``rows[a][b]`` is the product ``a*b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    AssociativityViolation,
    ClosureViolation,
    NotAnIdeal,
    TableShapeError,
)


@dataclass(frozen=True)
class CayleyTable:
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "CayleyTable":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def order(self) -> int:
        return len(self.rows)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def product(self, word: Sequence[int]) -> int:
        """Left-to-right product of a nonempty word of elements."""
        rows = self.rows
        acc = word[0]
        for x in word[1:]:
            acc = rows[acc][x]
        return acc

    def transpose(self) -> "CayleyTable":
        """The dual semigroup: ``a*'b = b*a``."""
        return CayleyTable(tuple(zip(*self.rows)))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        return f"CayleyTable({self.to_lists()})"


@dataclass(frozen=True)
class PowerProfile:
    element: int
    index: int
    period: int


@dataclass(frozen=True)
class MonoidView:
    """S^1 over a base table.

    ``identity`` is the synthetic index ``n`` when one had to be adjoined and
    ``None`` when the base already has a two-sided identity (then ``unit`` is it).
    """

    base: CayleyTable
    identity: int | None
    unit: int
    table: CayleyTable

    @property
    def elements(self) -> range:
        return range(self.table.order)


def first_associativity_failure(rows: Sequence[Sequence[int]]):
    n = len(rows)
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            rab = rows[ra[b]]
            rb = rows[b]
            for c in range(n):
                left = rab[c]
                right = ra[rb[c]]
                if left != right:
                    return (a, b, c, left, right)
    return None


def validate_table(order: int, entries: Sequence[Sequence[int]]) -> CayleyTable:
    """Check shape, closure and associativity; return the table."""
    if order < 1:
        raise TableShapeError(f"order must be positive, got {order}")
    if len(entries) != order or any(len(r) != order for r in entries):
        raise TableShapeError(f"entries must be a {order}x{order} array")
    for i, r in enumerate(entries):
        for j, x in enumerate(r):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < order:
                raise ClosureViolation(i, j, x)
    table = CayleyTable.from_rows(entries)
    failure = first_associativity_failure(table.rows)
    if failure is not None:
        raise AssociativityViolation(*failure)
    return table


def power_sequence(table: CayleyTable, a: int) -> list[int]:
    """``[a, a^2, ..., a^(i+p-1)]`` -- every distinct power, in order."""
    rows = table.rows
    seen: dict[int, int] = {}
    seq = []
    x = a
    while x not in seen:
        seen[x] = len(seq)
        seq.append(x)
        x = rows[x][a]
    return seq


def power_profile(table: CayleyTable, a: int) -> PowerProfile:
    seq = power_sequence(table, a)
    x = table.rows[seq[-1]][a]
    index = seq.index(x) + 1
    return PowerProfile(a, index, len(seq) + 1 - index)


def power(table: CayleyTable, a: int, k: int, profile: PowerProfile | None = None) -> int:
    """``a^k`` for ``k >= 1`` using the index/period of ``a``."""
    if k < 1:
        raise ValueError("exponent must be positive")
    seq = power_sequence(table, a)
    if profile is None:
        profile = power_profile(table, a)
    if k > len(seq):
        k = profile.index + (k - profile.index) % profile.period
    return seq[k - 1]


def identity_element(table: CayleyTable) -> int | None:
    rows = table.rows
    n = table.order
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            return e
    return None


def find_zero(table: CayleyTable) -> int | None:
    rows = table.rows
    n = table.order
    for z in range(n):
        if all(rows[z][x] == z and rows[x][z] == z for x in range(n)):
            return z
    return None


def idempotents(table: CayleyTable) -> list[int]:
    return [e for e in range(table.order) if table.rows[e][e] == e]


def is_commutative(table: CayleyTable) -> bool:
    rows = table.rows
    n = table.order
    return all(rows[a][b] == rows[b][a] for a in range(n) for b in range(a + 1, n))


def adjoin_identity(table: CayleyTable) -> MonoidView:
    e = identity_element(table)
    if e is not None:
        return MonoidView(table, None, e, table)
    n = table.order
    rows = [list(r) + [i] for i, r in enumerate(table.rows)]
    rows.append(list(range(n + 1)))
    return MonoidView(table, n, n, CayleyTable.from_rows(rows))


def adjoin_zero(table: CayleyTable) -> CayleyTable:
    n = table.order
    rows = [list(r) + [n] for r in table.rows]
    rows.append([n] * (n + 1))
    return CayleyTable.from_rows(rows)


def subsemigroup_closure(table: CayleyTable, seed: Iterable[int]) -> set[int]:
    rows = table.rows
    closed = set(seed)
    frontier = list(closed)
    while frontier:
        new = []
        for x in frontier:
            for y in list(closed):
                for p in (rows[x][y], rows[y][x]):
                    if p not in closed:
                        closed.add(p)
                        new.append(p)
        frontier = new
    return closed


def ideal_violation(table: CayleyTable, candidate: Iterable[int]):
    """First ``(s, x, product)`` leaving ``candidate``, or ``None``."""
    cand = set(candidate)
    rows = table.rows
    for x in sorted(cand):
        for s in range(table.order):
            if rows[s][x] not in cand:
                return (s, x, rows[s][x])
            if rows[x][s] not in cand:
                return (x, s, rows[x][s])
    return None


def is_ideal(table: CayleyTable, candidate: Iterable[int]) -> bool:
    cand = set(candidate)
    return bool(cand) and ideal_violation(table, cand) is None


def restrict(table: CayleyTable, subset: Iterable[int]) -> tuple[CayleyTable, list[int]]:
    """Subtable on a product-closed subset, relabelled in increasing order.

    Returns the table and ``new_to_old``.
    """
    new_to_old = sorted(subset)
    old_to_new = {x: i for i, x in enumerate(new_to_old)}
    rows = table.rows
    try:
        sub = [[old_to_new[rows[a][b]] for b in new_to_old] for a in new_to_old]
    except KeyError:
        raise ValueError("subset is not closed under the product") from None
    return CayleyTable.from_rows(sub), new_to_old


def rees_quotient(table: CayleyTable, ideal: Iterable[int]) -> tuple[CayleyTable, list[int]]:
    """Collapse a two-sided ideal to a zero placed at index 0.

    Returns the quotient and the map ``old index -> new index``.
    """
    ideal = set(ideal)
    if not ideal:
        raise NotAnIdeal((-1, -1, -1))
    bad = ideal_violation(table, ideal)
    if bad is not None:
        raise NotAnIdeal(bad)
    n = table.order
    mapping = [0] * n
    nxt = 1
    for x in range(n):
        if x not in ideal:
            mapping[x] = nxt
            nxt += 1
    new_to_old = [None] * nxt
    for x in range(n):
        if x not in ideal:
            new_to_old[mapping[x]] = x
    rows = table.rows
    out = [[0] * nxt]
    for i in range(1, nxt):
        a = new_to_old[i]
        out.append([0] + [mapping[rows[a][new_to_old[j]]] for j in range(1, nxt)])
    return CayleyTable.from_rows(out), mapping


def relabel(table: CayleyTable, perm: Sequence[int]) -> CayleyTable:
    """Image of the table under the bijection ``x -> perm[x]``."""
    n = table.order
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    rows = table.rows
    return CayleyTable(
        tuple(tuple(perm[rows[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
    )
