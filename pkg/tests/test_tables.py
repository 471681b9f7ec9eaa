import copy
import csv
import io
import itertools
import json
import math
import shutil

import pytest

from cyclic_census.errors import DivisorNotDividing, InfeasibleScenario, MalformedSpec, UnknownTableId
from cyclic_census.symbolic import parse_polynomial
from cyclic_census.tables import (
    SCENARIO_ENV, classify_cell, enumerate_rows, load_scenario, load_scenarios, reproduce_table,
    scenario_dir, scenario_from_dict,
)

ALL = load_scenarios()
IDS = [sc.id for sc in ALL]


def _raw(table_id: str) -> dict:
    return json.loads((scenario_dir() / f"{table_id}.json").read_text())


def _brute_rows(sc):
    """Product over every column's allowed values; no pruning, no ordering tricks."""
    out = set()
    for case in sc.cases:
        doms = [case.allowed[c] for c in sc.columns]
        floor = [min(d) for d in doms]
        for counts in itertools.product(*doms):
            if sum(counts) != sc.total:
                continue
            ok = all(
                sum(1 for i, c in enumerate(sc.columns) if c in names and counts[i] > floor[i]) <= limit
                for names, limit in case.max_raised
            )
            if ok:
                out.add((tuple(sorted(case.bind.items())), counts))
    return out


def test_thirty_three_scenarios():
    assert len(ALL) == 33 and IDS == [f"T{i}" for i in range(1, 34)]


@pytest.mark.parametrize("table_id, n", [("T1", 3), ("T2", 3), ("T12", 7), ("T13", 7)])
def test_row_counts(table_id, n):
    assert len(enumerate_rows(load_scenario(table_id))) == n


def test_t1_rows_and_polynomials():
    rows = enumerate_rows(load_scenario("T1"))
    by_counts = {r.counts[4:]: r.t_poly for r in rows}
    assert by_counts == {(1, 0, 0): parse_polynomial("14p-14"), (0, 1, 0): parse_polynomial("18p-18"),
                         (0, 0, 1): parse_polynomial("20p-32")}
    assert [r.counts for r in rows] == sorted(r.counts for r in rows)


def _search_size(sc) -> int:
    return sum(math.prod(len(c.allowed[col]) for col in sc.columns) for c in sc.cases)


@pytest.mark.parametrize("sc", [s for s in ALL if _search_size(s) < 300_000], ids=lambda s: s.id)
def test_enumeration_is_complete(sc):
    assert {r.key for r in enumerate_rows(sc)} == _brute_rows(sc)


@pytest.mark.parametrize("table_id", IDS)
def test_every_table_is_explained(table_id):
    rep = reproduce_table(table_id)
    assert rep.ok, rep.unexplained
    assert rep.solve_status == "certified"


@pytest.mark.parametrize("table_id, sols", [
    ("T1", []), ("T2", []), ("T3", [{"p": 7}]), ("T4", []), ("T12", []), ("T13", []),
    ("T14", [{"p": 5}, {"p": 7}]), ("T21", [{"q": 3}, {"q": 5}]), ("T28", []),
])
def test_solutions(table_id, sols):
    rep = reproduce_table(table_id)
    assert rep.solutions == sols
    assert rep.claim["status"] == "matches"


@pytest.mark.parametrize("table_id", ["T7", "T20", "T26"])
def test_ledgered_claim_mismatches(table_id):
    rep = reproduce_table(table_id)
    assert rep.claim["status"] == "ledgered-mismatch" and rep.ok


def test_t8_unparseable_cell():
    rep = reproduce_table("T8")
    bad = [r for r in rep.rows if r.printed == "q=9"]
    assert len(bad) == 1 and bad[0].kinds == ["unparseable"] and bad[0].status == "anomaly"


def test_classify_cell():
    T = parse_polynomial("14p-14")
    assert classify_cell("14p-14", T) == "exact"
    assert classify_cell("14-14p", T) == "negated"
    assert classify_cell("7p-7", T) == "scaled"
    assert classify_cell("14q-14", T) == "wrong_variable"
    assert classify_cell("14p-15", T) == "divergent"
    assert classify_cell("q=9", T) == "unparseable"


def test_unknown_ids_and_aliases():
    with pytest.raises(UnknownTableId):
        load_scenario("T99")
    assert load_scenario("t14").id == "T14"
    assert load_scenario("tab:pqr3.").id == "T14"
    assert load_scenario("pqr3.").id == "T14"
    assert load_scenario("p^4q5.").id == "T28"


def test_csv_layout():
    rep = reproduce_table("T1")
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["c(1)", "c(7)", "c(3)", "c(p)", "c(7p)", "c(3p)", "c(21)",
                       "T(G) printed", "T(G) recomputed", "status", "kinds"]
    assert rows[1][:7] == ["1", "1", "7", "1", "1", "0", "0"] and rows[1][7] == "14p-14"
    bound = list(csv.reader(io.StringIO(reproduce_table("T8").to_csv())))
    assert bound[0][0] == "p" and bound[1][0] in ("2", "3")


def test_json_and_text_are_stable():
    a, b = reproduce_table("T3"), reproduce_table("T3")
    assert a.to_json() == b.to_json()
    assert json.loads(a.to_json())["solutions"] == [{"p": 7}]
    assert a.to_text().startswith("T3 [tab:pqr3]")


def test_directory_override(tmp_path, monkeypatch):
    shutil.copy(scenario_dir() / "T1.json", tmp_path / "T1.json")
    assert [s.id for s in load_scenarios(tmp_path)] == ["T1"]
    monkeypatch.setenv(SCENARIO_ENV, str(tmp_path))
    assert [s.id for s in load_scenarios()] == ["T1"]
    with pytest.raises(UnknownTableId):
        load_scenario("T2")


def test_trivial_and_infeasible_scenarios():
    trivial = {"id": "X1", "total": 1, "order": {"const": 1}, "divisors": [{"label": "1", "const": 1}],
               "fixed": {"1": 1}, "expected_rows": [{"counts": [1], "printed_t": "0"}]}
    rep = reproduce_table(scenario_from_dict(trivial))
    assert rep.ok and rep.rows[0].status == "match"
    assert len(rep.unconstrained) == 1 and rep.solutions == []
    infeasible = dict(trivial, fixed={"1": 2})
    with pytest.raises(InfeasibleScenario):
        enumerate_rows(scenario_from_dict(infeasible))


def test_unledgered_anomaly_is_reported():
    raw = _raw("T1")
    raw["expected_rows"][0]["printed_t"] = "14p-15"
    rep = reproduce_table(scenario_from_dict(raw))
    assert not rep.ok and "divergent" in rep.unexplained[0]
    raw = _raw("T1")
    del raw["expected_rows"][2]
    rep = reproduce_table(scenario_from_dict(raw))
    assert not rep.ok and "absent" in rep.unexplained[0]


@pytest.mark.parametrize("mutate, exc", [
    (lambda d: d["divisors"].append({"label": "q", "const": 1, "q": 1}), DivisorNotDividing),
    (lambda d: d["constraints"].append({"type": "bogus"}), MalformedSpec),
    (lambda d: d["free"].append("zz"), MalformedSpec),
    (lambda d: d["free"].append("1"), MalformedSpec),
    (lambda d: d["constraints"].append({"type": "range", "divisor": "1", "min": 0, "max": 1}), MalformedSpec),
])
def test_malformed_scenarios(mutate, exc):
    raw = copy.deepcopy(_raw("T1"))
    mutate(raw)
    with pytest.raises(exc):
        scenario_from_dict(raw)
