"""Identity-based predicates and recognizers for special semigroups."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InputError
from .table import (
    CayleyTable,
    adjoin_identity,
    find_zero,
    identity_element,
    is_commutative,
    power_profile,
    power_sequence,
    restrict,
)
from .verdict import Verdict

DEFAULT_MAX_DEGREE = 4


@dataclass(frozen=True)
class IdentitySpec:
    """``left = right`` over variables ``0..k-1``."""

    variable_count: int
    left: tuple[int, ...]
    right: tuple[int, ...]
    text: str = ""

    def __post_init__(self):
        if not self.left or not self.right:
            raise InputError("both sides of an identity must be nonempty")
        for v in self.left + self.right:
            if not 0 <= v < self.variable_count:
                raise InputError(f"variable {v} out of range")

    @classmethod
    def parse(cls, text: str) -> "IdentitySpec":
        """Parse ``axyb=ayxb``: single-letter variables, numbered by first use."""
        if text in PRESETS:
            text = PRESETS[text]
        lhs, sep, rhs = text.replace(" ", "").partition("=")
        if not sep or "=" in rhs:
            raise InputError(f"identity must contain exactly one '=': {text!r}")
        names: dict[str, int] = {}
        for ch in lhs + rhs:
            if not ch.isalpha():
                raise InputError(f"variables must be single letters, got {ch!r}")
            names.setdefault(ch, len(names))
        return cls(
            len(names),
            tuple(names[c] for c in lhs),
            tuple(names[c] for c in rhs),
            f"{lhs}={rhs}",
        )


PRESETS = {
    "commutative": "xy=yx",
    "medial": "axyb=ayxb",
    "left-commutative": "xya=yxa",
    "right-commutative": "axy=ayx",
}


def satisfies_identity(table: CayleyTable, spec: IdentitySpec) -> Verdict:
    """Witness on failure: the first assignment (tuple indexed by variable)."""
    rows = table.rows
    for assignment in itertools.product(range(table.order), repeat=spec.variable_count):
        acc = assignment[spec.left[0]]
        for v in spec.left[1:]:
            acc = rows[acc][assignment[v]]
        other = assignment[spec.right[0]]
        for v in spec.right[1:]:
            other = rows[other][assignment[v]]
        if acc != other:
            return Verdict(False, assignment)
    return Verdict(True)


def is_nil(table: CayleyTable) -> bool:
    z = find_zero(table)
    if z is None:
        return False
    return all(power_sequence(table, a)[-1] == z for a in range(table.order))


def _powers_upto(table: CayleyTable, a: int, k: int) -> list[int]:
    """``[None, a, a^2, ..., a^k]`` extended through the power cycle."""
    seq = power_sequence(table, a)
    prof = power_profile(table, a)
    out = [None]
    for e in range(1, k + 1):
        if e > len(seq):
            e = prof.index + (e - prof.index) % prof.period
        out.append(seq[e - 1])
    return out


def is_weakly_exponential(table: CayleyTable) -> Verdict:
    """For all a, b and n >= 1 some m >= 0 gives
    ``(ab)^(n+m) = a^n b^n (ab)^m = (ab)^m a^n b^n``.

    The exponent ranges are finite because all powers are eventually
    periodic: n runs to ``max index + lcm of periods`` and m to
    ``index(ab) + period(ab)``. Witness: the first failing ``(a, b, n)``.
    """
    rows = table.rows
    n_el = table.order
    profiles = [power_profile(table, x) for x in range(n_el)]
    for a in range(n_el):
        pa = profiles[a]
        for b in range(n_el):
            c = rows[a][b]
            pb, pc = profiles[b], profiles[c]
            n_max = max(pa.index, pb.index, pc.index) + math.lcm(pa.period, pb.period, pc.period)
            m_max = pc.index + pc.period
            apow = _powers_upto(table, a, n_max)
            bpow = _powers_upto(table, b, n_max)
            cpow = _powers_upto(table, c, n_max + m_max)
            for n in range(1, n_max + 1):
                prod = rows[apow[n]][bpow[n]]
                if cpow[n] == prod:
                    continue
                if not any(
                    cpow[n + m] == rows[prod][cpow[m]] == rows[cpow[m]][prod]
                    for m in range(1, m_max + 1)
                ):
                    return Verdict(False, (a, b, n))
    return Verdict(True)


def is_r_commutative(table: CayleyTable) -> Verdict:
    """For all s, t some r in S^1 gives ``st = tsr``. Witness: ``(s, t)``."""
    mv = adjoin_identity(table).table.rows
    rows = table.rows
    n = table.order
    m = len(mv)
    for s in range(n):
        for t in range(n):
            target = rows[s][t]
            ts = mv[t][s]
            if not any(mv[ts][r] == target for r in range(m)):
                return Verdict(False, (s, t))
    return Verdict(True)


def _all_products(table: CayleyTable, k: int) -> list[int]:
    """Products of every k-tuple, indexed in base n (first variable most significant)."""
    rows = table.rows
    prods = list(range(table.order))
    for _ in range(k - 1):
        prods = [rows[p][x] for p in prods for x in range(table.order)]
    return prods


def is_permutative(table: CayleyTable, max_degree: int = DEFAULT_MAX_DEGREE) -> Verdict:
    """Some non-identity permutation identity of degree <= max_degree holds.

    Witness: ``(k, sigma)`` meaning ``x_1...x_k = x_sigma(1)...x_sigma(k)``
    (0-based ``sigma``), first in (degree, lexicographic) order. Permutativity
    itself has no degree bound, so a false result only rules out degrees up
    to ``max_degree``.
    """
    if max_degree < 2:
        raise InputError("max_degree must be at least 2")
    n = table.order
    for k in range(2, max_degree + 1):
        prods = _all_products(table, k)
        weights = [n ** (k - 1 - i) for i in range(k)]
        tuples = list(itertools.product(range(n), repeat=k))
        for sigma in itertools.permutations(range(k)):
            if sigma == tuple(range(k)):
                continue
            if all(
                prods[idx] == prods[sum(t[sigma[i]] * weights[i] for i in range(k))]
                for idx, t in enumerate(tuples)
            ):
                return Verdict(True, (k, sigma))
    return Verdict(False)


def is_medial(table: CayleyTable) -> Verdict:
    return satisfies_identity(table, IdentitySpec.parse("medial"))


def is_left_commutative(table: CayleyTable) -> Verdict:
    return satisfies_identity(table, IdentitySpec.parse("left-commutative"))


def _is_prime_power(m: int):
    """``(p, k)`` with ``m = p^k`` (k >= 1), else ``None``."""
    if m < 2:
        return None
    p = next(d for d in range(2, m + 1) if m % d == 0)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def is_group(table: CayleyTable) -> bool:
    e = identity_element(table)
    if e is None:
        return False
    # finite: a monoid is a group iff every row is a permutation
    n = table.order
    return all(len(set(r)) == n for r in table.rows)


def cyclic_p_group_parameters(table: CayleyTable):
    """``(p, k)`` when the table is a cyclic group of order ``p^k``.

    The trivial group gives ``(None, 0)``. ``None`` when not a cyclic p-group.
    """
    if not is_group(table):
        return None
    n = table.order
    if n == 1:
        return (None, 0)
    if not any(len(power_sequence(table, g)) == n for g in range(n)):
        return None
    return _is_prime_power(n)


def _nonzero_part(table: CayleyTable):
    z = find_zero(table)
    if z is None or table.order < 2:
        return None
    rest = [x for x in range(table.order) if x != z]
    try:
        sub, _ = restrict(table, rest)
    except ValueError:
        return None
    return sub


def is_rectangular_band(table: CayleyTable) -> bool:
    rows = table.rows
    n = table.order
    return all(rows[x][x] == x for x in range(n)) and all(
        rows[rows[x][y]][x] == x for x in range(n) for y in range(n)
    )


def recognize_special(table: CayleyTable) -> set[str]:
    rows = table.rows
    n = table.order
    flags = set()
    if all(rows[x][y] == x for x in range(n) for y in range(n)):
        flags.add("left_zero")
    if all(rows[x][y] == y for x in range(n) for y in range(n)):
        flags.add("right_zero")
    if is_rectangular_band(table):
        flags.add("rectangular_band")
    if is_group(table):
        flags.add("group")
        if cyclic_p_group_parameters(table) is not None:
            flags.add("cyclic_p_group")
    sub = _nonzero_part(table)
    if sub is not None and is_group(sub):
        flags.add("group_with_zero")
    if is_commutative(table):
        flags.add("commutative")
    return flags
