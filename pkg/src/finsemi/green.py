"""Principal two-sided ideals, J-classes and the sets I(a)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .table import CayleyTable, adjoin_identity
from .verdict import Verdict


@dataclass(frozen=True)
class JStructure:
    j_class_of: tuple[int, ...]
    principal_ideal_of: tuple[frozenset, ...]
    chain_ordered: bool

    def j_class(self, a: int) -> frozenset:
        k = self.j_class_of[a]
        return frozenset(x for x, c in enumerate(self.j_class_of) if c == k)

    def i_set(self, a: int) -> frozenset:
        return self.principal_ideal_of[a] - self.j_class(a)

    def classes(self) -> list[list[int]]:
        """J-classes ordered by inclusion of their ideals (smallest ideal first)."""
        reps: dict[int, list[int]] = {}
        for x, c in enumerate(self.j_class_of):
            reps.setdefault(c, []).append(x)
        return sorted(reps.values(), key=lambda c: (len(self.principal_ideal_of[c[0]]), c[0]))

    def to_json(self) -> list[dict]:
        return [
            {"elements": c, "ideal": sorted(self.principal_ideal_of[c[0]])}
            for c in self.classes()
        ]


def _ideals(table: CayleyTable) -> tuple[frozenset, ...]:
    mv = adjoin_identity(table).table
    rows = mv.rows
    m = mv.order
    n = table.order
    out = []
    for a in range(n):
        left = {rows[x][a] for x in range(m)}
        out.append(frozenset(rows[z][y] for z in left for y in range(m)))
    return tuple(out)


@lru_cache(maxsize=4096)
def j_structure(table: CayleyTable) -> JStructure:
    ideals = _ideals(table)
    ids: dict[frozenset, int] = {}
    j_class_of = tuple(ids.setdefault(ideal, len(ids)) for ideal in ideals)
    return JStructure(j_class_of, ideals, _chain_witness(ideals) is None)


def principal_ideal(table: CayleyTable, a: int) -> frozenset:
    """``J(a) = S^1 a S^1``."""
    return j_structure(table).principal_ideal_of[a]


def j_class(table: CayleyTable, a: int) -> frozenset:
    return j_structure(table).j_class(a)


def i_set(table: CayleyTable, a: int) -> frozenset:
    """``I(a) = J(a) - J_a``; empty when a's J-class is minimal."""
    return j_structure(table).i_set(a)


def _chain_witness(ideals):
    n = len(ideals)
    for a in range(n):
        for b in range(a + 1, n):
            p, q = ideals[a], ideals[b]
            if not (p <= q or q <= p):
                return (a, b)
    return None


def ideals_form_chain(table: CayleyTable) -> Verdict:
    """Whether the two-sided ideals are totally ordered by inclusion.

    Every ideal of a finite semigroup is a union of principal ideals, so
    comparing principal ideals decides it. The witness is
    ``(a, b, J(a), J(b))`` for the first incomparable pair.
    """
    ideals = j_structure(table).principal_ideal_of
    w = _chain_witness(ideals)
    if w is None:
        return Verdict(True)
    a, b = w
    return Verdict(False, (a, b, sorted(ideals[a]), sorted(ideals[b])))
