"""Small named semigroups used as fixtures, CLI presets and templates."""

from __future__ import annotations

from .table import CayleyTable, adjoin_identity, adjoin_zero


def cyclic_group(n: int) -> CayleyTable:
    return CayleyTable.from_rows([[(a + b) % n for b in range(n)] for a in range(n)])


def klein_four() -> CayleyTable:
    return CayleyTable.from_rows([[a ^ b for b in range(4)] for a in range(4)])


def right_zero(n: int = 2) -> CayleyTable:
    return CayleyTable.from_rows([list(range(n)) for _ in range(n)])


def left_zero(n: int = 2) -> CayleyTable:
    return CayleyTable.from_rows([[a] * n for a in range(n)])


def trivial() -> CayleyTable:
    return CayleyTable.from_rows([[0]])


def null_semigroup(n: int) -> CayleyTable:
    """All products equal the zero 0."""
    return CayleyTable.from_rows([[0] * n for _ in range(n)])


def nil_chain(n: int) -> CayleyTable:
    """Monogenic nil semigroup ``{0, a, a^2, ..., a^(n-1)}`` with ``a^n = 0``.

    Index 0 is the zero and index ``k`` is ``a^k``.
    """
    return CayleyTable.from_rows(
        [[0 if a == 0 or b == 0 or a + b >= n else a + b for b in range(n)] for a in range(n)]
    )


def n3() -> CayleyTable:
    """``{0, a, b}`` with ``a*a = b`` and every other product 0."""
    return nil_chain(3)


def semilattice_chain(n: int) -> CayleyTable:
    """Chain semilattice under ``min``."""
    return CayleyTable.from_rows([[min(a, b) for b in range(n)] for a in range(n)])


def square_semilattice() -> CayleyTable:
    """``{0,1}^2`` under componentwise min; index ``2*x + y``."""
    def meet(p, q):
        return 2 * (min(p >> 1, q >> 1)) + min(p & 1, q & 1)
    return CayleyTable.from_rows([[meet(p, q) for q in range(4)] for p in range(4)])


def b0() -> CayleyTable:
    return adjoin_zero(right_zero(2))


def b1() -> CayleyTable:
    return adjoin_identity(right_zero(2)).table


PRESETS = {
    "trivial": trivial,
    "z2": lambda: cyclic_group(2),
    "z4": lambda: cyclic_group(4),
    "z6": lambda: cyclic_group(6),
    "klein4": klein_four,
    "rz2": right_zero,
    "lz2": left_zero,
    "n3": n3,
    "b0": b0,
    "b1": b1,
}
