"""Declarative case tables: enumerate candidate count vectors, recompute T, solve over primes."""
from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .errors import DivisorNotDividing, InfeasibleScenario, MalformedSpec, UnknownTableId
from .symbolic import (
    DEFAULT_SCAN_BOUND, CellParseError, PrimeDomain, SolveResult, SymbolicDivisor, TPolynomial,
    parse_polynomial, solve_primes, t_polynomial,
)

SCENARIO_ENV = "CYCLIC_CENSUS_SCENARIOS"

ANOMALY_KINDS = (
    "negated", "scaled", "divergent", "unparseable", "wrong_variable", "row_sum", "duplicate",
)

Key = tuple[tuple[tuple[str, int], ...], tuple[int, ...]]


@dataclass(frozen=True)
class Case:
    """One block of a table: an optional binding of a prime variable plus count rules."""

    bind: dict[str, int]
    fixed: dict[str, int]
    free: tuple[str, ...]
    allowed: dict[str, tuple[int, ...]]
    max_raised: tuple[tuple[tuple[str, ...], int], ...]
    domain: PrimeDomain


@dataclass(frozen=True)
class TableScenario:
    id: str
    label: str
    section: int
    total: int
    order: SymbolicDivisor
    columns: tuple[str, ...]
    divisors: tuple[SymbolicDivisor, ...]
    cases: tuple[Case, ...]
    expected_rows: tuple[dict, ...]
    omitted_rows: tuple[dict, ...]
    claim: dict
    note: str = ""

    @property
    def bind_var(self) -> str | None:
        names = {v for c in self.cases for v in c.bind}
        return names.pop() if len(names) == 1 else None


@dataclass(frozen=True)
class CandidateRow:
    case: int
    bind: dict[str, int]
    counts: tuple[int, ...]
    t_poly: TPolynomial

    @property
    def key(self) -> Key:
        return (tuple(sorted(self.bind.items())), self.counts)


# --------------------------------------------------------------- loading

def _prime_conditions(items: list[dict]) -> tuple[dict, dict, list]:
    exclude: dict[str, set[int]] = {}
    minimum: dict[str, int] = {}
    less: list[tuple[str, str]] = []
    for c in items:
        t = c.get("type")
        if t == "prime_exclude":
            exclude.setdefault(c["var"], set()).update(c["values"])
        elif t == "prime_min":
            minimum[c["var"]] = max(minimum.get(c["var"], 2), int(c["value"]))
        elif t == "prime_less":
            less.append((c["smaller"], c["larger"]))
    return exclude, minimum, less


def _build_case(raw: Mapping, shared: list[dict], columns: tuple[str, ...], total: int) -> Case:
    bind = {k: int(v) for k, v in raw.get("bind", {}).items()}
    fixed = {k: int(v) for k, v in raw.get("fixed", {}).items()}
    free = tuple(raw.get("free", []))
    unknown = (set(fixed) | set(free)) - set(columns)
    if unknown:
        raise MalformedSpec(f"constraint names unknown divisors {sorted(unknown)}")
    if set(fixed) & set(free):
        raise MalformedSpec(f"divisors both fixed and free: {sorted(set(fixed) & set(free))}")
    cons = list(shared) + list(raw.get("constraints", []))
    allowed: dict[str, set[int]] = {}
    for col in columns:
        if col in fixed:
            allowed[col] = {fixed[col]}
        elif col in free:
            allowed[col] = set(range(total + 1))
        else:
            allowed[col] = {0}
    raised = []
    for c in cons:
        t = c.get("type")
        col = c.get("divisor")
        if t in ("allowed", "range", "congruence") and col not in free:
            raise MalformedSpec(f"{t} constraint on non-free divisor {col!r}")
        if t == "allowed":
            allowed[col] &= set(int(v) for v in c["values"])
        elif t == "range":
            allowed[col] &= set(range(int(c["min"]), int(c["max"]) + 1))
        elif t == "congruence":
            mod = c["modulus"]
            mod = bind[mod] if isinstance(mod, str) else int(mod)
            allowed[col] = {v for v in allowed[col] if v % mod == int(c["residue"]) % mod}
        elif t == "max_raised":
            raised.append((tuple(c["divisors"]), int(c["limit"])))
        elif t in ("prime_exclude", "prime_min", "prime_less"):
            pass
        else:
            raise MalformedSpec(f"unknown constraint type {t!r}")
    exclude, minimum, less = _prime_conditions(cons)
    domain = PrimeDomain(
        exclude={k: frozenset(v) for k, v in exclude.items()}, minimum=minimum,
        less_than=tuple(less), bound=bind,
    )
    return Case(bind, fixed, free, {k: tuple(sorted(v)) for k, v in allowed.items()}, tuple(raised), domain)


def scenario_from_dict(d: Mapping[str, Any]) -> TableScenario:
    total = int(d["total"])
    order = SymbolicDivisor.from_json(d["order"])
    cols, divs = [], []
    for item in d["divisors"]:
        dv = SymbolicDivisor.from_json(item)
        label = item.get("label", str(dv))
        if not dv.divides(order):
            raise DivisorNotDividing(f"{label} does not divide {order} in scenario {d.get('id')}")
        cols.append(label)
        divs.append(dv)
    cols_t = tuple(cols)
    shared = list(d.get("constraints", []))
    if "cases" in d:
        base_fixed, base_free = d.get("fixed", {}), d.get("free", [])
        cases = tuple(
            _build_case({"fixed": {**base_fixed, **c.get("fixed", {})},
                         "free": c.get("free", base_free), **{k: c[k] for k in ("bind", "constraints") if k in c}},
                        shared, cols_t, total)
            for c in d["cases"]
        )
    else:
        cases = (_build_case({"fixed": d.get("fixed", {}), "free": d.get("free", [])}, shared, cols_t, total),)
    return TableScenario(
        id=d["id"], label=d.get("label", d["id"]), section=int(d.get("section", 0)), total=total,
        order=order, columns=cols_t, divisors=tuple(divs), cases=cases,
        expected_rows=tuple(d.get("expected_rows", [])), omitted_rows=tuple(d.get("omitted_rows", [])),
        claim=dict(d.get("claim", {})), note=d.get("note", ""),
    )


def scenario_dir(override: str | os.PathLike | None = None):
    if override:
        return Path(override)
    env = os.environ.get(SCENARIO_ENV)
    if env:
        return Path(env)
    return resources.files("cyclic_census") / "scenarios"


def _sort_key(name: str) -> tuple[int, str]:
    stem = name.rsplit(".json", 1)[0]
    return (int(stem[1:]), stem) if stem[1:].isdigit() else (10**6, stem)


def load_scenarios(directory=None) -> list[TableScenario]:
    base = scenario_dir(directory)
    names = sorted((p.name for p in base.iterdir() if p.name.endswith(".json")), key=_sort_key)
    return [scenario_from_dict(json.loads((base / n).read_text(encoding="utf-8"))) for n in names]


def _normalise_label(s: str) -> str:
    s = s.strip()
    return s[4:] if s.startswith("tab:") else s


def load_scenario(table_id: str, directory=None) -> TableScenario:
    """Resolve ``T<n>`` (case-insensitive) or a table label such as ``p^4q5.`` / ``tab:pqr1``."""
    wanted = table_id.strip()
    for sc in load_scenarios(directory):
        if sc.id.lower() == wanted.lower() or _normalise_label(sc.label) == _normalise_label(wanted):
            return sc
    raise UnknownTableId(f"no scenario with id or label {table_id!r}")


# ------------------------------------------------------------ enumeration

def _row_t(sc: TableScenario, bind: Mapping[str, int], counts) -> TPolynomial:
    order = sc.order.bind(bind)
    return t_polynomial(order, [(d.bind(bind), c) for d, c in zip(sc.divisors, counts)])


def enumerate_rows(sc: TableScenario) -> list[CandidateRow]:
    """All count vectors obeying each case's rules and summing to the target total.

    Within a case rows come out in lexicographic order over the divisor list.
    """
    rows: list[CandidateRow] = []
    cols = sc.columns
    for ci, case in enumerate(sc.cases):
        if sum(case.fixed.values()) > sc.total:
            raise InfeasibleScenario(f"{sc.id}: fixed counts exceed the total {sc.total}")
        domains = [case.allowed[c] for c in cols]
        floor = [min(dom) if dom else 0 for dom in domains]
        if any(not dom for dom in domains):
            continue
        scopes = [(frozenset(cols.index(c) for c in names), limit) for names, limit in case.max_raised]
        suffix_min = [0] * (len(cols) + 1)
        for i in range(len(cols) - 1, -1, -1):
            suffix_min[i] = suffix_min[i + 1] + floor[i]
        if suffix_min[0] > sc.total:
            raise InfeasibleScenario(f"{sc.id}: minimum counts exceed the total {sc.total}")

        def rec(i: int, acc: list[int], s: int, raised: list[int]):
            if i == len(cols):
                if s == sc.total:
                    counts = tuple(acc)
                    rows.append(CandidateRow(ci, dict(case.bind), counts, _row_t(sc, case.bind, counts)))
                return
            for v in domains[i]:
                if s + v + suffix_min[i + 1] > sc.total:
                    break
                bumped = [r + (1 if (i in scope and v > floor[i]) else 0) for (scope, _), r in zip(scopes, raised)]
                if any(b > limit for b, (_, limit) in zip(bumped, scopes)):
                    continue
                acc.append(v)
                rec(i + 1, acc, s + v, bumped)
                acc.pop()

        rec(0, [], 0, [0] * len(scopes))
    return rows


# ---------------------------------------------------------- classification

def classify_cell(printed: str, recomputed: TPolynomial) -> str:
    """Relation of a printed T cell to the recomputed polynomial."""
    try:
        P = parse_polynomial(printed)
    except CellParseError:
        return "unparseable"
    kind = _relation(P, recomputed)
    if kind:
        return kind
    pv, tv = P.variables(), recomputed.variables()
    if len(pv) == 1 and len(tv) == 1 and pv != tv:
        if _relation(P.rename({pv[0]: tv[0]}), recomputed):
            return "wrong_variable"
    return "divergent"


def _relation(P: TPolynomial, T: TPolynomial) -> str | None:
    if P == T:
        return "exact"
    if P == -T:
        return "negated"
    if P.ratio_to(T) is not None:
        return "scaled"
    return None


# ---------------------------------------------------------------- report

def _bind_key(bind: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    return tuple(sorted((k, int(v)) for k, v in bind.items()))


@dataclass
class RowReport:
    bind: dict[str, int]
    counts: tuple[int, ...]
    recomputed: str
    printed: str | None
    kinds: list[str]
    ledgered: list[str]
    status: str  # match | anomaly | omitted | unexplained
    solutions: list[dict[str, int]] = field(default_factory=list)
    solve_status: str = ""

    def to_dict(self) -> dict:
        return {
            "bind": self.bind, "counts": list(self.counts), "printed_t": self.printed,
            "recomputed_t": self.recomputed, "kinds": self.kinds, "ledgered": self.ledgered,
            "status": self.status, "solutions": self.solutions, "solve_status": self.solve_status,
        }


@dataclass
class TableReport:
    scenario: TableScenario
    rows: list[RowReport]
    solutions: list[dict[str, int]]
    unconstrained: list[RowReport]
    solve_status: str
    claim: dict
    unexplained: list[str]

    @property
    def ok(self) -> bool:
        return not self.unexplained

    def anomalies(self) -> list[RowReport]:
        return [r for r in self.rows if r.status in ("anomaly", "omitted")]

    def generated_count(self) -> int:
        return sum(1 for r in self.rows if "not_generated" not in r.kinds and "duplicate" not in r.kinds)

    def to_dict(self) -> dict:
        sc = self.scenario
        return {
            "id": sc.id, "label": sc.label, "section": sc.section, "total": sc.total,
            "order": str(sc.order), "columns": list(sc.columns), "ok": self.ok,
            "rows": [r.to_dict() for r in self.rows],
            "solutions": self.solutions, "solve_status": self.solve_status,
            "unconstrained_rows": [{"bind": r.bind, "counts": list(r.counts)} for r in self.unconstrained],
            "claim": self.claim, "unexplained": self.unexplained,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_csv(self) -> str:
        sc = self.scenario
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = ([sc.bind_var] if sc.bind_var else []) + [f"c({c})" for c in sc.columns]
        w.writerow(head + ["T(G) printed", "T(G) recomputed", "status", "kinds"])
        for r in self.rows:
            lead = [r.bind.get(sc.bind_var, "")] if sc.bind_var else []
            w.writerow(lead + list(r.counts) + [r.printed or "", r.recomputed, r.status, ";".join(r.kinds)])
        return buf.getvalue()

    def to_text(self) -> str:
        sc = self.scenario
        tally = Counter(k for r in self.rows for k in r.kinds)
        sols = ", ".join("{" + ", ".join(f"{k}={v}" for k, v in s.items()) + "}" for s in self.solutions) or "none"
        lines = [
            f"{sc.id} [{sc.label}] order {sc.order}, total {sc.total}: "
            f"{len(self.rows)} rows, {'OK' if self.ok else 'UNEXPLAINED MISMATCH'}",
            f"  solutions: {sols} ({self.solve_status}); unconstrained rows: {len(self.unconstrained)}",
            f"  claim: {self.claim.get('status')}",
            "  anomalies: " + (", ".join(f"{k}={v}" for k, v in sorted(tally.items())) or "none"),
        ]
        lines += [f"  ! {u}" for u in self.unexplained]
        return "\n".join(lines)


_STATUS_RANK = {"certified": 0, "unconstrained": 0, "scan-limited": 1}


def _claim_check(sc: TableScenario, finite: list[dict], unconstrained: list[CandidateRow]) -> dict:
    claimed = [dict(c) for c in sc.claim.get("solutions", [])]
    found = {tuple(sorted(s.items())) for s in finite}
    want = {tuple(sorted(c.items())) for c in claimed}

    def covered(c: dict) -> bool:
        for row in unconstrained:
            case = sc.cases[row.case]
            if all(c.get(k) == v for k, v in row.bind.items()):
                free = {k: v for k, v in c.items() if k not in row.bind}
                if case.domain.admits(free):
                    return True
        return False

    matches = found <= want and all(w in found or covered(dict(w)) for w in want)
    ledgered = bool(sc.claim.get("mismatch_ledgered"))
    if matches:
        status = "matches" if not ledgered else "stale-ledger"
    else:
        status = "ledgered-mismatch" if ledgered else "mismatch"
    return {"claimed": claimed, "found": [dict(f) for f in sorted(found)], "matches": matches,
            "ledgered": ledgered, "status": status}


def reproduce_table(table_id: str | TableScenario, scan_bound: int = DEFAULT_SCAN_BOUND,
                    directory=None) -> TableReport:
    """Enumerate, recompute and solve one table, diffing against its transcription."""
    sc = table_id if isinstance(table_id, TableScenario) else load_scenario(table_id, directory)
    generated = enumerate_rows(sc)
    by_key: dict[Key, CandidateRow] = {r.key: r for r in generated}
    unexplained: list[str] = []
    reports: list[RowReport] = []
    seen: Counter = Counter()
    solved: dict[Key, SolveResult] = {}

    def solve(row: CandidateRow) -> SolveResult:
        if row.key not in solved:
            solved[row.key] = solve_primes(row.t_poly, sc.cases[row.case].domain, scan_bound)
        return solved[row.key]

    for e in sc.expected_rows:
        bind = {k: int(v) for k, v in e.get("bind", {}).items()}
        counts = tuple(int(c) for c in e["counts"])
        key = (_bind_key(bind), counts)
        seen[key] += 1
        kinds: list[str] = []
        row = by_key.get(key)
        if sum(counts) != sc.total:
            kinds.append("row_sum")
        if seen[key] > 1:
            kinds.append("duplicate")
        if row is None and sum(counts) == sc.total:
            kinds.append("not_generated")
        T = row.t_poly if row is not None else _row_t(sc, bind, counts)
        rel = classify_cell(e["printed_t"], T)
        if rel != "exact":
            kinds.append(rel)
        ledger = list(e.get("anomaly", []))
        if sorted(kinds) == sorted(ledger):
            status = "anomaly" if kinds else "match"
        else:
            status = "unexplained"
            unexplained.append(f"row {bind or ''}{list(counts)}: engine {kinds or ['exact']} vs ledger {ledger or ['exact']}")
        rr = RowReport(bind, counts, T.to_text(), e["printed_t"], kinds, ledger, status)
        if row is not None and seen[key] == 1:
            res = solve(row)
            rr.solutions, rr.solve_status = _with_bind(res, bind), res.status
        reports.append(rr)

    ledger_omitted = Counter((_bind_key(o.get("bind", {})), tuple(o["counts"])) for o in sc.omitted_rows)
    for row in generated:
        if row.key in seen:
            continue
        res = solve(row)
        ok = ledger_omitted[row.key] > 0
        if ok:
            ledger_omitted[row.key] -= 1
        else:
            unexplained.append(f"row {row.bind or ''}{list(row.counts)} generated but absent from the table")
        reports.append(RowReport(dict(row.bind), row.counts, row.t_poly.to_text(), None, ["omitted"],
                                 ["omitted"] if ok else [], "omitted" if ok else "unexplained",
                                 _with_bind(res, row.bind), res.status))
    for key, left in ledger_omitted.items():
        if left > 0:
            unexplained.append(f"ledgered omitted row {key} is not generated")

    finite: list[dict] = []
    unconstrained_rows: list[CandidateRow] = []
    worst = "certified"
    for row in generated:
        res = solve(row)
        if res.status == "unconstrained":
            unconstrained_rows.append(row)
        for s in _with_bind(res, row.bind):
            if s not in finite:
                finite.append(s)
        if _STATUS_RANK.get(res.status, 0) > _STATUS_RANK[worst]:
            worst = res.status
    finite.sort(key=lambda s: sorted(s.items()))
    claim = _claim_check(sc, finite, unconstrained_rows)
    if claim["status"] in ("mismatch", "stale-ledger"):
        unexplained.append(f"claim check: {claim['status']} (claimed {claim['claimed']}, found {claim['found']})")
    unc_reports = [r for r in reports if r.solve_status == "unconstrained"]
    return TableReport(sc, reports, finite, unc_reports, worst, claim, unexplained)


def _with_bind(res: SolveResult, bind: Mapping[str, int]) -> list[dict[str, int]]:
    return [dict(sorted({**bind, **dict(s)}.items())) for s in res.solutions]
