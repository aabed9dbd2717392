"""T1/T2R/T2L decompositions, the T2R characterization conditions, the
necessary-condition battery for T2R candidates, and the classifier for
weakly exponential Delta-semigroups.

A T-type semigroup is a Delta-semigroup S split into a non-trivial nil ideal
S0 and a subsemigroup S1 that is a single idempotent (T1), a two-element
right-zero semigroup (T2R) or a two-element left-zero semigroup (T2L).
Everything about T2L is computed on the transposed table.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

from .congruence import is_delta
from .errors import ClassificationGap, NotT2RShaped, PartitionMismatch
from .green import ideals_form_chain, j_structure
from .properties import (
    cyclic_p_group_parameters,
    is_nil,
    is_rectangular_band,
    is_weakly_exponential,
)
from .table import (
    CayleyTable,
    adjoin_identity,
    find_zero,
    identity_element,
    ideal_violation,
    restrict,
)

KINDS = ("T1", "T2R", "T2L")
TEMPLATES = ("G", "G0", "B", "B0", "B1", "NIL_CHAIN", "T1", "T2R", "T2L")


@dataclass(frozen=True)
class T2Decomposition:
    s0: frozenset
    s1: tuple[int, ...]
    kind: str
    s0_nil: bool
    s0_nontrivial: bool
    s1_law_ok: bool
    products_into_s0: bool
    is_delta: bool

    @property
    def valid(self) -> bool:
        return (self.s0_nil and self.s0_nontrivial and self.s1_law_ok
                and self.products_into_s0 and self.is_delta)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "s0": sorted(self.s0),
            "s1": list(self.s1),
            "flags": {
                "s0_nil": self.s0_nil,
                "s0_nontrivial": self.s0_nontrivial,
                "s1_law_ok": self.s1_law_ok,
                "products_into_s0": self.products_into_s0,
                "is_delta": self.is_delta,
            },
        }


def _s1_law(table: CayleyTable, s1: tuple[int, ...], kind: str) -> bool:
    rows = table.rows
    if kind == "T1":
        return len(s1) == 1 and rows[s1[0]][s1[0]] == s1[0]
    if len(s1) != 2 or s1[0] == s1[1]:
        return False
    u, v = s1
    if kind == "T2R":
        return rows[u][u] == u and rows[v][v] == v and rows[u][v] == v and rows[v][u] == u
    return rows[u][u] == u and rows[v][v] == v and rows[u][v] == u and rows[v][u] == v


def _nil_zero(table: CayleyTable, s0: Iterable[int]):
    """Zero of S0 when S0 is a nil subsemigroup, else ``None``."""
    s0 = sorted(s0)
    if not s0:
        return None
    try:
        sub, new_to_old = restrict(table, s0)
    except ValueError:
        return None
    if not is_nil(sub):
        return None
    return new_to_old[find_zero(sub)]


def _decomposition(table, s1, kind, delta) -> T2Decomposition:
    s0 = frozenset(range(table.order)) - set(s1)
    return T2Decomposition(
        s0=s0,
        s1=tuple(s1),
        kind=kind,
        s0_nil=_nil_zero(table, s0) is not None,
        s0_nontrivial=len(s0) >= 2,
        s1_law_ok=_s1_law(table, tuple(s1), kind),
        products_into_s0=bool(s0) and ideal_violation(table, s0) is None,
        is_delta=delta,
    )


def _right_zero_pairs(table: CayleyTable) -> list[tuple[int, int]]:
    n = table.order
    return [(u, v) for u in range(n) for v in range(u + 1, n) if _s1_law(table, (u, v), "T2R")]


def find_t2_decompositions(table: CayleyTable) -> list[T2Decomposition]:
    """All T2R-, T2L- and T1-shaped splits with their flags (in that order)."""
    delta = bool(is_delta(table))
    out = [_decomposition(table, p, "T2R", delta) for p in _right_zero_pairs(table)]
    dual = table.transpose()
    for p in _right_zero_pairs(dual):
        out.append(replace(_decomposition(dual, p, "T2R", delta), kind="T2L"))
    rows = table.rows
    for e in range(table.order):
        if rows[e][e] == e:
            out.append(_decomposition(table, (e,), "T1", delta))
    return out


def recognize_t2(table: CayleyTable, kind: str) -> T2Decomposition | None:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if kind != "T1" and table.order < 4:
        return None
    for d in find_t2_decompositions(table):
        if d.kind == kind and d.valid:
            return d
    return None


@dataclass
class ConditionReport:
    kind: str
    guard: str
    conditions: dict[int, bool] = field(default_factory=dict)
    witnesses: dict[int, object] = field(default_factory=dict)
    vacuous: set[int] = field(default_factory=set)
    cond5_checked: list[int] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(self.conditions.values())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "guard": self.guard,
            "conditions": {str(k): v for k, v in sorted(self.conditions.items())},
            "witnesses": {str(k): v for k, v in sorted(self.witnesses.items())},
            "vacuous": sorted(self.vacuous),
            "cond5_checked": self.cond5_checked,
            "holds": self.holds,
        }


def _check_partition(table: CayleyTable, d: T2Decomposition):
    s1 = set(d.s1)
    if len(s1) != len(d.s1) or s1 & d.s0 or (s1 | d.s0) != set(range(table.order)):
        raise PartitionMismatch(
            f"S0={sorted(d.s0)} and S1={list(d.s1)} do not partition 0..{table.order - 1}"
        )


def theorem1_conditions(table: CayleyTable, d: T2Decomposition, corrected: bool = True) -> ConditionReport:
    """Evaluate the five T2R conditions literally on a finite table.

    Condition (5) fires for b with ``|J_b| = 2`` and ``I(b) != {0}`` when
    ``corrected`` (the original, weaker guard is ``|J_b| = 2`` alone).
    T2L decompositions are evaluated on the transposed table.
    """
    _check_partition(table, d)
    if d.kind == "T2L":
        table = table.transpose()
        law_kind = "T2R"
    else:
        law_kind = d.kind
    rep = ConditionReport(kind=d.kind, guard="corrected" if corrected else "uncorrected")
    rows = table.rows
    n = table.order
    s0 = sorted(d.s0)
    s1 = list(d.s1)
    mv = adjoin_identity(table).table.rows
    s_one = range(len(mv))

    # (1) semilattice of a non-trivial nil ideal and S1
    zero = _nil_zero(table, s0)
    failures = {}
    if not _s1_law(table, tuple(s1), law_kind):
        failures["s1_law"] = s1
    if zero is None:
        failures["s0_nil"] = s0
    if len(s0) < 2:
        failures["s0_nontrivial"] = s0
    bad = ideal_violation(table, s0) if s0 else (None, None, None)
    if bad is not None:
        failures["s0_ideal"] = [x for x in bad if x is not None]
    rep.conditions[1] = not failures
    if failures:
        rep.witnesses[1] = failures

    # (2) ideals form a chain
    chain = ideals_form_chain(table)
    rep.conditions[2] = chain.holds
    if not chain.holds:
        rep.witnesses[2] = list(chain.witness[:2])

    if not s0:
        rep.vacuous.update((3, 4))

    # (3) b in bS1 or bS1 within S^1 b S0
    rep.conditions[3] = True
    for b in s0:
        b_s1 = {rows[b][e] for e in s1}
        if b in b_s1:
            continue
        s1_b_s0 = {mv[mv[x][b]][y] for x in s_one for y in s0}
        if not b_s1 <= s1_b_s0:
            rep.conditions[3] = False
            rep.witnesses[3] = [b]
            break

    # (4) {b} = S1 b or S1 b meets S0 b S^1 u S^1 b S0
    rep.conditions[4] = True
    for b in s0:
        s1_b = {rows[e][b] for e in s1}
        if s1_b == {b}:
            continue
        around = {mv[mv[x][b]][y] for x in s0 for y in s_one}
        around |= {mv[mv[x][b]][y] for x in s_one for y in s0}
        if not s1_b & around:
            rep.conditions[4] = False
            rep.witnesses[4] = [b]
            break

    # (5) xJ_b y meets J_a without lying inside it
    js = j_structure(table)
    if zero is None:
        zero = find_zero(table)
    for b in range(n):
        jb = sorted(js.j_class(b))
        if len(jb) != 2 or b != jb[0]:
            continue  # J_b and I(b) depend only on the class
        if corrected and zero is not None and js.i_set(b) == {zero}:
            continue
        rep.cond5_checked.append(b)
    rep.conditions[5] = True
    for b in rep.cond5_checked:
        jb = sorted(js.j_class(b))
        for a in sorted(js.i_set(b)):
            ja = js.j_class(a)
            found = False
            for x in s_one:
                for y in s_one:
                    img = {mv[mv[x][j]][y] for j in jb}
                    if img & ja and not img <= ja:
                        found = True
                        break
                if found:
                    break
            if not found:
                rep.conditions[5] = False
                rep.witnesses[5] = [b, a]
                break
        if not rep.conditions[5]:
            break
    if not any(js.i_set(b) for b in rep.cond5_checked):
        rep.vacuous.add(5)
    return rep


@dataclass
class PropositionReport:
    preconditions: dict[str, bool]
    results: dict[str, dict] = field(default_factory=dict)

    def status(self, name: str) -> str:
        return self.results[name]["status"]

    def to_json(self) -> dict:
        return {"preconditions": self.preconditions, "results": self.results}


def _verdict(ok: bool, witness=None, vacuous: bool = False) -> dict:
    if vacuous:
        return {"status": "vacuous", "witness": witness}
    return {"status": "holds" if ok else "fails", "witness": witness}


def t2r_necessary_propositions(table: CayleyTable, d: T2Decomposition) -> PropositionReport:
    """Check the conclusions every T2R semigroup must satisfy.

    Keys: ``P2`` (elements with two-element J-class and ``I(b) = {0}``),
    ``C3`` (the Rees-quotient form of P2 for every two-element J-class in
    S0), ``P4`` (some b in S0 with ``|J_b| = 2``), ``P6`` (some b in S0
    with ``ub != b`` and ``vb != b``), ``P7`` (``S0^2 = S0``).
    """
    _check_partition(table, d)
    if d.kind != "T2R" or not _s1_law(table, d.s1, "T2R"):
        raise NotT2RShaped(f"S1={list(d.s1)} is not a right-zero pair of a T2R split")
    rows = table.rows
    u, v = d.s1
    s0 = sorted(d.s0)
    s1 = [u, v]
    zero = _nil_zero(table, s0)
    rep = PropositionReport(preconditions={
        "s0_nil": zero is not None,
        "s0_nontrivial": len(s0) >= 2,
        "s0_ideal": bool(s0) and ideal_violation(table, s0) is None,
    })
    if zero is None:
        zero = find_zero(table)
    js = j_structure(table)
    mv = adjoin_identity(table).table.rows
    s_one = range(len(mv))
    zero_set = {zero} if zero is not None else None

    def prod(xs, ys):
        return {rows[x][y] for x in xs for y in ys}

    # P2
    fired, failure = [], None
    for b in s0:
        jb = sorted(js.j_class(b))
        if len(jb) != 2 or b != jb[0] or js.i_set(b) != zero_set:
            continue
        fired.append(b)
        for x in s_one:
            for y in s_one:
                img = {mv[mv[x][j]][y] for j in jb}
                if zero in img and img != zero_set:
                    failure = {"b": b, "rule": "0 in xJ_by implies xJ_by = {0}", "x": x, "y": y}
                    break
            if failure:
                break
        if failure:
            break
        if prod(jb, s0) != zero_set or prod(s0, jb) != zero_set:
            failure = {"b": b, "rule": "J_b S0 = S0 J_b = {0}",
                       "J_b S0": sorted(prod(jb, s0)), "S0 J_b": sorted(prod(s0, jb))}
            break
        s1jb = prod(s1, jb)
        if s1jb != zero_set and s1jb != set(jb):
            failure = {"b": b, "rule": "S1 J_b in {{0}, J_b}", "S1 J_b": sorted(s1jb)}
            break
    rep.results["P2"] = _verdict(failure is None, failure or fired, vacuous=not fired)

    # C3
    fired, failure = [], None
    for b in s0:
        jb = sorted(js.j_class(b))
        if len(jb) != 2 or b != jb[0]:
            continue
        fired.append(b)
        ib = js.i_set(b)
        s1jb = prod(s1, jb)
        if not prod(s0, jb) <= ib:
            failure = {"b": b, "rule": "S0 J_b within I(b)", "S0 J_b": sorted(prod(s0, jb))}
        elif not prod(jb, s0) <= ib:
            failure = {"b": b, "rule": "J_b S0 within I(b)", "J_b S0": sorted(prod(jb, s0))}
        elif not (s1jb <= ib or s1jb == set(jb)):
            failure = {"b": b, "rule": "S1 J_b within I(b) or equal to J_b", "S1 J_b": sorted(s1jb)}
        if failure:
            break
    rep.results["C3"] = _verdict(failure is None, failure or fired, vacuous=not fired)

    # P4
    hits = [b for b in s0 if len(js.j_class(b)) == 2]
    rep.results["P4"] = _verdict(bool(hits), hits[:1] if hits else s0)

    # P6
    hits = [b for b in s0 if rows[u][b] != b and rows[v][b] != b]
    rep.results["P6"] = _verdict(bool(hits), hits[:1] if hits else s0)

    # P7
    sq = prod(s0, s0)
    missing = sorted(set(s0) - sq)
    rep.results["P7"] = _verdict(not missing, {"S0^2": sorted(sq), "missing": missing})
    return rep


@dataclass(frozen=True)
class ClassificationResult:
    template: str
    witness: dict
    matches: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"template": self.template, "witness": self.witness, "matches": list(self.matches)}


def _without(table: CayleyTable, x: int):
    rest = [y for y in range(table.order) if y != x]
    try:
        return restrict(table, rest)[0]
    except ValueError:
        return None


def _band_side(table: CayleyTable) -> str:
    return "right" if table.rows[0][1] == 1 else "left"


def _match_templates(table: CayleyTable) -> dict[str, dict]:
    found: dict[str, dict] = {}
    n = table.order
    params = cyclic_p_group_parameters(table)
    if params is not None:
        found["G"] = {"p": params[0], "k": params[1]}
    z = find_zero(table)
    if z is not None and n >= 2:
        rest = _without(table, z)
        if rest is not None:
            params = cyclic_p_group_parameters(rest)
            if params is not None:
                found["G0"] = {"p": params[0], "k": params[1], "zero": z}
            if n == 3 and is_rectangular_band(rest):
                found["B0"] = {"zero": z, "side": _band_side(rest)}
    if n == 2 and is_rectangular_band(table):
        found["B"] = {"side": _band_side(table)}
    e = identity_element(table)
    if n == 3 and e is not None:
        rest = _without(table, e)
        if rest is not None and is_rectangular_band(rest):
            found["B1"] = {"identity": e, "side": _band_side(rest)}
    if n >= 2 and is_nil(table) and ideals_form_chain(table):
        found["NIL_CHAIN"] = {"zero": z, "j_classes": j_structure(table).classes()}
    for kind in KINDS:
        d = recognize_t2(table, kind)
        if d is not None:
            found[kind] = d.to_json()
    return found


def classify_we_delta(table: CayleyTable) -> ClassificationResult:
    """Match a weakly exponential Delta-semigroup against the known list.

    Raises :class:`ClassificationGap` if such a semigroup matches nothing.
    The trivial semigroup is the trivial group (template G with k = 0);
    NIL_CHAIN requires at least two elements.
    """
    we = is_weakly_exponential(table)
    delta = is_delta(table)
    if not (we and delta):
        witness = {"weakly_exponential": we.holds, "delta": delta.holds}
        if not we:
            witness["we_witness"] = list(we.witness)
        if not delta:
            witness["delta_witness"] = [list(delta.witness[0]), list(delta.witness[1])]
        return ClassificationResult("NOT_WE_DELTA", witness)
    found = _match_templates(table)
    if not found:
        raise ClassificationGap(table, {
            "weakly_exponential": True,
            "delta": True,
            "decompositions": [d.to_json() for d in find_t2_decompositions(table)],
        })
    names = tuple(t for t in TEMPLATES if t in found)
    return ClassificationResult(names[0], found[names[0]], names)
