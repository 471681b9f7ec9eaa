"""Registries of classified groups and end-to-end verification runs."""
from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .analysis import count_cyclic
from .arith import divisor_count, multiplicative_order, primes_up_to
from .closed_forms import admissible_shapes, p2q_menu, shape_classes
from .dsl import (
    DEFAULT_ORDER_CAP, Cyclic, Dicyclic, Dihedral, DirectProduct, ElementaryAbelian,
    GeneralizedQuaternion, GroupSpec, ModularPGroup, Named, Semidihedral, SemidirectCyclic,
    parse_spec, render, spec_order,
)
from .errors import NoValidAction
from .groups import FiniteGroup, build_group, semidirect_by_automorphism
from .symbolic import DEFAULT_SCAN_BOUND
from .tables import load_scenarios, reproduce_table


def C(n: int) -> Cyclic:
    return Cyclic(n)


def X(*factors: GroupSpec) -> GroupSpec:
    node = factors[0]
    for f in factors[1:]:
        node = DirectProduct(node, f)
    return node


@dataclass(frozen=True)
class ActionSlot:
    """A Z_m x| Z_k whose multiplier is pinned (or left open when ``pinned`` is None)."""

    m: int
    k: int
    pinned: int | None = None

    def legal(self) -> list[int]:
        return [r for r in range(2, self.m) if gcd(r, self.m) == 1 and pow(r, self.k, self.m) == 1]


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    expected_c: int
    template: Callable[..., GroupSpec] | None = None
    params: tuple[str, ...] = ()
    exclude: Mapping[str, frozenset[int]] = field(default_factory=dict)
    action: ActionSlot | None = None

    def build_spec(self, values: Mapping[str, int], r: int | None = None) -> GroupSpec:
        if self.action is not None:
            return SemidirectCyclic(self.action.m, self.action.k, r)
        return self.template(**values)


FIRST_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def default_samples(fi: FamilyInstance, order_cap: int = DEFAULT_ORDER_CAP,
                    per_var: int = 5) -> list[dict[str, int]]:
    """First ``per_var`` admissible primes per parameter, distinct, order within the cap."""
    if not fi.params:
        return [{}]
    pools = []
    for v in fi.params:
        bad = fi.exclude.get(v, frozenset())
        pools.append([p for p in FIRST_PRIMES if p not in bad][:per_var])
    out = []
    for combo in itertools.product(*pools):
        if len(set(combo)) != len(combo):
            continue
        values = dict(zip(fi.params, combo))
        if spec_order(fi.build_spec(values)) <= order_cap:
            out.append(values)
    return out


def all_samples(fi: FamilyInstance, order_cap: int = DEFAULT_ORDER_CAP) -> list[dict[str, int]]:
    """Every admissible assignment of distinct primes with order within the cap.

    Family orders grow with each prime, so filling unassigned slots with 2 gives a lower
    bound that lets the ascending scan stop early.
    """
    if not fi.params:
        return [{}]
    primes = primes_up_to(order_cap)
    out: list[dict[str, int]] = []

    def floor_order(partial: dict[str, int]) -> int:
        return spec_order(fi.build_spec({v: partial.get(v, 2) for v in fi.params}))

    def rec(i: int, partial: dict[str, int]) -> None:
        if i == len(fi.params):
            if len(set(partial.values())) == len(partial) and floor_order(partial) <= order_cap:
                out.append(dict(partial))
            return
        v = fi.params[i]
        for p in primes:
            if p in fi.exclude.get(v, frozenset()):
                continue
            partial[v] = p
            if floor_order(partial) > order_cap:
                break
            rec(i + 1, partial)
        partial.pop(v, None)

    rec(0, {})
    return out


@dataclass
class InstanceResult:
    name: str
    params: dict[str, int]
    spec: str
    order: int
    computed: int | None
    expected: int
    passed: bool
    action: int | None = None
    note: str = ""
    excluded: bool = False  # outside the claim's parameter domain; reported, not judged


@dataclass
class VerificationReport:
    title: str
    results: list[InstanceResult] = field(default_factory=list)
    tables: list[dict] = field(default_factory=list)
    checks: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return (all(r.passed or r.excluded for r in self.results) and all(t["ok"] for t in self.tables)
                and all(c["ok"] for c in self.checks))

    def failures(self) -> list[str]:
        out = [f"{r.name} {r.params or ''} c={r.computed} expected {r.expected}"
               for r in self.results if not (r.passed or r.excluded)]
        out += [f"table {t['id']}: {'; '.join(t['unexplained'])}" for t in self.tables if not t["ok"]]
        out += [f"check {c['name']}: {c.get('detail', '')}" for c in self.checks if not c["ok"]]
        return out

    def merge(self, other: "VerificationReport") -> None:
        self.results += other.results
        self.tables += other.tables
        self.checks += other.checks

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "title": self.title,
            "status": "PASS" if self.passed else "FAIL",
            "results": [asdict(r) for r in self.results],
            "tables": self.tables,
            "checks": self.checks,
            "failures": self.failures(),
        }
        if timing:
            d["elapsed_s"] = round(self.elapsed, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=1)

    def to_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            params = ",".join(f"{k}={v}" for k, v in r.params.items())
            act = f" r={r.action}" if r.action is not None else ""
            mark = "ok" if r.passed else ("excluded" if r.excluded else "FAIL")
            lines.append(f"  [{mark}] {r.name}{'(' + params + ')' if params else ''}"
                         f" {r.spec}{act}: c={r.computed} expected {r.expected}"
                         + (f" ({r.note})" if r.note else ""))
        for t in self.tables:
            sols = ", ".join(json.dumps(s, sort_keys=True) for s in t["solutions"]) or "none"
            lines.append(f"  [{'ok' if t['ok'] else 'FAIL'}] {t['id']} {t['label']}: solutions {sols}; "
                         f"claim {t['claim']}; anomalies {t['anomalies']}")
        for c in self.checks:
            lines.append(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}: {c.get('detail', '')}")
        return "\n".join(lines)


# ------------------------------------------------------------- registries

def _q8() -> GroupSpec:
    return GeneralizedQuaternion(3)


CLASSIFIED_11: tuple[FamilyInstance, ...] = (
    FamilyInstance("Z_{p^10}", 11, lambda p: C(p**10), ("p",)),
    FamilyInstance("Z27 x Z3", 11, lambda: X(C(27), C(3))),
    FamilyInstance("Z27 x| Z3", 11, lambda: ModularPGroup(3, 4)),
    FamilyInstance("Dic7", 11, lambda: Dicyclic(7)),
    FamilyInstance("Z7 x| Z9", 11, action=ActionSlot(7, 9, 2)),
    FamilyInstance("Z3 x S3", 11, lambda: X(C(3), Dihedral(3))),
    # the faithful order-4 action gives 14 cyclic subgroups; inversion gives 11
    FamilyInstance("Z5 x| Z8", 11, action=ActionSlot(5, 8, 4)),
    FamilyInstance("Z3 x| Z16", 11, action=ActionSlot(3, 16, 2)),
)

CLASSIFIED_12: tuple[FamilyInstance, ...] = (
    FamilyInstance("Z_{p^11}", 12, lambda p: C(p**11), ("p",)),
    FamilyInstance("Z_{p^5 q}", 12, lambda p, q: C(p**5 * q), ("p", "q")),
    FamilyInstance("Z_{p^3 q^2}", 12, lambda p, q: C(p**3 * q**2), ("p", "q")),
    FamilyInstance("Z_{p^2 q r}", 12, lambda p, q, r: C(p**2 * q * r), ("p", "q", "r")),
    FamilyInstance("Z5 x Z25", 12, lambda: X(C(5), C(25))),
    FamilyInstance("Z2 x Z32", 12, lambda: X(C(2), C(32))),
    FamilyInstance("Z25 x| Z5", 12, lambda: ModularPGroup(5, 3)),
    FamilyInstance("D16", 12, lambda: Dihedral(8)),
    FamilyInstance("D18", 12, lambda: Dihedral(9)),
    FamilyInstance("F5", 12, lambda: Named("F5")),
    FamilyInstance("Z3.A4", 12, lambda: Named("Z3A4")),
    # q = 2 would collide with the 2-group entries; q is a prime other than 2 here
    FamilyInstance("Z2 x Z_{2q^2}", 12, lambda q: X(C(2), C(2 * q * q)), ("q",), {"q": frozenset({2})}),
    FamilyInstance("Z_{4q} x Z2", 12, lambda q: X(C(4 * q), C(2)), ("q",), {"q": frozenset({2})}),
    FamilyInstance("Dic6", 12, lambda: Dicyclic(6)),
)

REGISTRIES = {11: CLASSIFIED_11, 12: CLASSIFIED_12}


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    spec: GroupSpec
    expected_c: int


# The non-cyclic groups with at most 10 cyclic subgroups. Expected values come from the
# closed forms (abelian census, 2-group formulas, modular p-groups); the test suite
# re-derives each one with an independent permutation-group oracle.
KNOWN_SMALL: tuple[RegistryEntry, ...] = (
    RegistryEntry("Z2 x Z2", X(C(2), C(2)), 4),
    RegistryEntry("Z3 x Z3", X(C(3), C(3)), 5),
    RegistryEntry("Z2 x Z4", X(C(2), C(4)), 6),
    RegistryEntry("Z5 x Z5", X(C(5), C(5)), 7),
    RegistryEntry("Z3 x Z9", X(C(3), C(9)), 8),
    RegistryEntry("Z2 x Z8", X(C(2), C(8)), 8),
    RegistryEntry("Z2 x Z2 x Z2", ElementaryAbelian(2, 3), 8),
    RegistryEntry("Z7 x Z7", X(C(7), C(7)), 9),
    RegistryEntry("Z2 x Z16", X(C(2), C(16)), 10),
    RegistryEntry("Z4 x Z4", X(C(4), C(4)), 10),
    RegistryEntry("Z2 x Q8", X(C(2), _q8()), 10),
    RegistryEntry("SD16", Semidihedral(4), 10),
    RegistryEntry("Z16 x| Z2", ModularPGroup(2, 5), 10),
    RegistryEntry("Z4 x| Z4", SemidirectCyclic(4, 4, 3), 10),
    RegistryEntry("Z9 x| Z3", ModularPGroup(3, 3), 8),
    RegistryEntry("Z8 x| Z2", ModularPGroup(2, 4), 8),
    RegistryEntry("Q16", GeneralizedQuaternion(4), 8),
    RegistryEntry("D8", Dihedral(4), 7),
    RegistryEntry("Q8", _q8(), 5),
)

INLINE_Q = (3, 5, 7)


def inline_claims() -> list[tuple[RegistryEntry, str]]:
    """Auxiliary counts asserted along the classification, as (entry, note).

    A non-empty note marks a parameter outside the domain where the count is claimed.
    """
    out = [
        (RegistryEntry("SL(2,3)", Named("SL23"), 13), ""),
        (RegistryEntry("D14", Dihedral(7), 9), ""),
    ]
    for q in INLINE_Q:
        out.append((RegistryEntry(f"Z2 x Z_2q (q={q})", X(C(2), C(2 * q)), 8), ""))
    for q in INLINE_Q:
        # the claim assumes q != 3; at q = 3 the group is Z3 x Z9
        note = "outside claim domain (q must differ from 3)" if q == 3 else ""
        out.append((RegistryEntry(f"Z3 x Z_3q (q={q})", X(C(3), C(3 * q)), 10), note))
    for q in INLINE_Q:
        out.append((RegistryEntry(f"Z_q x Q8 (q={q})", X(C(q), _q8()), 10), ""))
    return out


QUOTED_SHAPES = {
    11: {"p^k (k<=10)", "pq", "p^2q", "pqr", "p^3q", "p^2q^2", "p^4q"},
    12: {"p^k (k<=11)", "pq", "p^2q", "pqr", "p^3q", "p^4q", "p^5q", "p^2q^2", "p^3q^2", "p^2qr"},
}


# ----------------------------------------------------------- verification

def _count(spec: GroupSpec, order_cap: int) -> tuple[int, int]:
    G = build_group(spec, order_cap)
    return G.order, count_cyclic(G)


def verify_family(fi: FamilyInstance, samples: Iterable[Mapping[str, int]] | None = None,
                  order_cap: int = DEFAULT_ORDER_CAP) -> VerificationReport:
    """Build each sampled instance and compare its cyclic subgroup count with the registry."""
    t0 = time.perf_counter()
    rep = VerificationReport(fi.name)
    samples = default_samples(fi, order_cap) if samples is None else list(samples)
    for values in samples:
        values = dict(values)
        if fi.action is None:
            spec = fi.build_spec(values)
            order, c = _count(spec, order_cap)
            rep.results.append(InstanceResult(fi.name, values, render(spec), order, c, fi.expected_c,
                                              c == fi.expected_c))
            continue
        rep.results.append(_resolve_action(fi, order_cap))
    rep.elapsed = time.perf_counter() - t0
    return rep


def _resolve_action(fi: FamilyInstance, order_cap: int) -> InstanceResult:
    slot = fi.action
    tried = {}
    order = slot.m * slot.k
    if slot.pinned is not None:
        spec = fi.build_spec({}, slot.pinned)
        _, c = _count(spec, order_cap)
        if c == fi.expected_c:
            return InstanceResult(fi.name, {}, render(spec), order, c, fi.expected_c, True, slot.pinned,
                                  f"action of order {multiplicative_order(slot.pinned, slot.m)}")
        tried[slot.pinned] = c
    for r in slot.legal():
        if r in tried:
            continue
        _, c = _count(fi.build_spec({}, r), order_cap)
        tried[r] = c
        if c == fi.expected_c:
            if slot.pinned is None:
                return InstanceResult(fi.name, {}, render(fi.build_spec({}, r)), order, c, fi.expected_c,
                                      True, r, f"resolved action of order {multiplicative_order(r, slot.m)}")
            return InstanceResult(fi.name, {}, render(fi.build_spec({}, slot.pinned)), order,
                                  tried[slot.pinned], fi.expected_c, False, slot.pinned,
                                  f"pinned multiplier is wrong; r={r} gives the expected count")
    raise NoValidAction(f"{fi.name}: no multiplier in {slot.legal()} gives c={fi.expected_c} (got {tried})")


def _fan_out(jobs: list[Callable[[], VerificationReport]], workers: int | None) -> list[VerificationReport]:
    if workers == 1 or len(jobs) < 2:
        return [j() for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(lambda j: j(), jobs))


def check_shapes(n: int) -> dict:
    got = shape_classes(admissible_shapes(n))
    ok = set(got) == QUOTED_SHAPES[n] and len(got) == len(QUOTED_SHAPES[n])
    return {"name": f"admissible shapes for n={n}", "ok": ok, "detail": ", ".join(got)}


def _units_of_order_dividing(k: int, m: int) -> list[int]:
    """One multiplier r != 1 per multiplicative order, with r^k = 1 mod m."""
    seen, out = set(), []
    for r in range(2, m):
        if gcd(r, m) == 1 and pow(r, k, m) == 1:
            o = multiplicative_order(r, m)
            if o not in seen:
                seen.add(o)
                out.append(r)
    return out


def _matrix_classes(p: int, q: int) -> list[tuple[int, int, int, int]]:
    """Representatives of the non-identity 2x2 matrices over F_p with M^q = I, one per (trace, det).

    For q != p such matrices are semisimple, so the characteristic polynomial fixes the class.
    """
    reps: dict[tuple[int, int], tuple[int, int, int, int]] = {}
    for a, b, c, d in itertools.product(range(p), repeat=4):
        if (a * d - b * c) % p == 0 or (a, b, c, d) == (1, 0, 0, 1):
            continue
        key = ((a + d) % p, (a * d - b * c) % p)
        if key in reps:
            continue
        x = (1, 0, 0, 1)
        for _ in range(q):
            x = ((x[0] * a + x[1] * c) % p, (x[0] * b + x[1] * d) % p,
                 (x[2] * a + x[3] * c) % p, (x[2] * b + x[3] * d) % p)
        if x == (1, 0, 0, 1):
            reps[key] = (a, b, c, d)
    return [reps[k] for k in sorted(reps)]


def p2q_examples(order_bound: int = 600) -> list[tuple[str, int, int, FiniteGroup]]:
    """Nonabelian groups of order p^2 q reachable with the cyclic and matrix-action builders."""
    out = []
    primes = primes_up_to(order_bound)
    for p in primes:
        for q in primes:
            if p == q or p * p * q > order_bound:
                continue
            cands: list[tuple[str, FiniteGroup]] = []
            for r in _units_of_order_dividing(p * p, q):
                cands.append((f"Z{q} x| Z{p * p} (r={r})", build_group(SemidirectCyclic(q, p * p, r))))
            for r in _units_of_order_dividing(q, p * p):
                cands.append((f"Z{p * p} x| Z{q} (r={r})", build_group(SemidirectCyclic(p * p, q, r))))
            if (p * p - 1) % q == 0:
                K = build_group(ElementaryAbelian(p, 2))
                for a, b, c, d in _matrix_classes(p, q):
                    perm = [((a * x + b * y) % p) * p + (c * x + d * y) % p for x in range(p) for y in range(p)]
                    cands.append((f"Z{p}^2 x| Z{q} [[{a},{b}],[{c},{d}]]", semidirect_by_automorphism(K, perm, q)))
            if (q - 1) % p == 0:
                for r in _units_of_order_dividing(p, q):
                    cands.append((f"Z{p} x (Z{q} x| Z{p})",
                                  build_group(DirectProduct(Cyclic(p), SemidirectCyclic(q, p, r)))))
            for name, G in cands:
                if not G.is_abelian():
                    out.append((name, p, q, G))
    return out


def check_p2q_menu(order_bound: int = 600) -> dict:
    """Every built nonabelian p^2 q group lands on the quoted menu (a necessary condition only)."""
    off = []
    examples = p2q_examples(order_bound)
    for name, p, q, G in examples:
        c = count_cyclic(G)
        if c not in p2q_menu(p, q):
            off.append(f"{name}: c={c}")
    detail = f"{len(examples)} groups of order p^2 q <= {order_bound}" + (f"; off menu {off}" if off else "")
    return {"name": "p^2 q menu", "ok": not off, "detail": detail}


def verify_theorem(n: int, order_cap: int = DEFAULT_ORDER_CAP, workers: int | None = None,
                   registry: Iterable[FamilyInstance] | None = None,
                   exhaustive: bool = False) -> VerificationReport:
    """Every family of the classification for ``n``, plus the shape list.

    The default sampling takes the first few primes per parameter; ``exhaustive`` takes every
    admissible prime assignment within the order cap.
    """
    if n not in REGISTRIES:
        raise ValueError(f"no classification registry for n={n}")
    t0 = time.perf_counter()
    families = list(REGISTRIES[n] if registry is None else registry)
    rep = VerificationReport(f"theorem n={n}")
    sampler = all_samples if exhaustive else default_samples
    jobs = [lambda fi=fi: verify_family(fi, sampler(fi, order_cap), order_cap) for fi in families]
    for sub in _fan_out(jobs, workers):
        rep.merge(sub)
    rep.checks.append(check_shapes(n))
    rep.elapsed = time.perf_counter() - t0
    return rep


def load_registry_fixture(path: str | Path) -> list[RegistryEntry]:
    """JSON list of {"name", "spec", "expected"} objects; spec uses the text syntax."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return [RegistryEntry(d["name"], parse_spec(d["spec"]), int(d["expected"])) for d in data]


def verify_registry(entries: Iterable[RegistryEntry] | None = None, include_inline: bool = True,
                    order_cap: int = DEFAULT_ORDER_CAP) -> VerificationReport:
    """The small non-cyclic registry (or a supplied fixture) plus the auxiliary counts."""
    t0 = time.perf_counter()
    rep = VerificationReport("registry")
    rows: list[tuple[RegistryEntry, str]] = [(e, "") for e in (KNOWN_SMALL if entries is None else entries)]
    if include_inline:
        rows += inline_claims()
    for e, note in rows:
        order, c = _count(e.spec, order_cap)
        rep.results.append(InstanceResult(e.name, {}, render(e.spec), order, c, e.expected_c,
                                          c == e.expected_c, note=note, excluded=bool(note)))
    rep.elapsed = time.perf_counter() - t0
    return rep


def audit_tables(scan_bound: int = DEFAULT_SCAN_BOUND, directory=None,
                 workers: int | None = None) -> VerificationReport:
    """Reproduce every shipped table; ledgered anomalies are listed, not failed."""
    t0 = time.perf_counter()
    scenarios = load_scenarios(directory)
    if workers == 1:
        reports = [reproduce_table(sc, scan_bound) for sc in scenarios]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(lambda sc: reproduce_table(sc, scan_bound), scenarios))
    rep = VerificationReport("tables")
    for r in reports:
        tally: dict[str, int] = {}
        for row in r.rows:
            for k in row.kinds:
                tally[k] = tally.get(k, 0) + 1
        rep.tables.append({
            "id": r.scenario.id, "label": r.scenario.label, "ok": r.ok,
            "rows": len(r.rows), "solutions": r.solutions, "solve_status": r.solve_status,
            "claim": r.claim["status"], "anomalies": dict(sorted(tally.items())),
            "unexplained": r.unexplained,
        })
    rep.elapsed = time.perf_counter() - t0
    return rep


def verify_full(order_cap: int = DEFAULT_ORDER_CAP, scan_bound: int = DEFAULT_SCAN_BOUND,
                directory=None, workers: int | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    jobs = [
        lambda: verify_theorem(11, order_cap, workers),
        lambda: verify_theorem(12, order_cap, workers),
        lambda: verify_registry(order_cap=order_cap),
        lambda: audit_tables(scan_bound, directory, workers),
    ]
    rep = VerificationReport("full")
    for sub in _fan_out(jobs, workers):
        rep.merge(sub)
    rep.checks.append(check_p2q_menu())
    rep.elapsed = time.perf_counter() - t0
    return rep


# ------------------------------------------------------------------ catalog

def catalog(order_cap: int = DEFAULT_ORDER_CAP) -> list[tuple[str, GroupSpec]]:
    """Every concrete group the verifier touches, plus a few structural reference groups."""
    out: list[tuple[str, GroupSpec]] = []
    for n, fams in REGISTRIES.items():
        for fi in fams:
            if fi.action is not None:
                out.append((fi.name, SemidirectCyclic(fi.action.m, fi.action.k, fi.action.pinned)))
                continue
            for values in default_samples(fi, order_cap):
                tag = ",".join(f"{k}={v}" for k, v in values.items())
                out.append((f"{fi.name}({tag})" if tag else fi.name, fi.build_spec(values)))
    out += [(e.name, e.spec) for e in KNOWN_SMALL]
    out += [(e.name, e.spec) for e, _ in inline_claims()]
    out += [(f"EA(2,{k})", ElementaryAbelian(2, k)) for k in range(1, 7)]
    out += [
        ("trivial", C(1)), ("A4", Named("A4")), ("EA(3,3)", ElementaryAbelian(3, 3)),
        ("Dic3", Dicyclic(3)), ("D12", Dihedral(6)), ("Z7 x| Z3", SemidirectCyclic(7, 3, 2)),
        ("D10", Dihedral(5)), ("S3", Dihedral(3)),
    ]
    seen, uniq = set(), []
    for name, spec in out:
        if spec not in seen:
            seen.add(spec)
            uniq.append((name, spec))
    return uniq


def richards_ok(order: int, c: int) -> bool:
    return c >= divisor_count(order)


__all__ = [
    "ActionSlot", "FamilyInstance", "InstanceResult", "VerificationReport", "RegistryEntry",
    "CLASSIFIED_11", "CLASSIFIED_12", "REGISTRIES", "KNOWN_SMALL", "QUOTED_SHAPES", "inline_claims",
    "default_samples", "all_samples", "p2q_examples", "check_p2q_menu", "verify_family", "verify_theorem", "verify_registry", "audit_tables",
    "verify_full", "load_registry_fixture", "check_shapes", "catalog", "richards_ok",
]
