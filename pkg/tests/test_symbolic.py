import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.parsing.sympy_parser import (
    implicit_multiplication_application, parse_expr, standard_transformations,
)

from cyclic_census.arith import euler_phi
from cyclic_census.errors import DivisorNotDividing, MalformedSpec, UnboundedSearch
from cyclic_census.symbolic import (
    VARS, CellParseError, PrimeDomain, SymbolicDivisor, TPolynomial, parse_polynomial, phi_symbolic,
    solve_primes, t_polynomial,
)

P, Q, R = sympy.symbols("p q r")
SYMS = dict(zip(VARS, (P, Q, R)))
TRANSFORMS = standard_transformations + (implicit_multiplication_application,)


def to_sympy(poly: TPolynomial):
    return sympy.expand(sum(c * P**a * Q**b * R**e for (a, b, e), c in poly.terms.items()))


def from_text(text: str):
    return sympy.expand(parse_expr(text.replace("^", "**"), local_dict=SYMS, transformations=TRANSFORMS))


monomials = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
polys = st.dictionaries(monomials, st.integers(-20, 20), max_size=5).map(TPolynomial)


@given(polys, polys)
def test_ring_ops_match_sympy(a, b):
    assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))
    assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    assert (a + b) - b == a
    assert all(c != 0 for c in (a * b).terms.values())


@given(polys)
def test_text_round_trip(a):
    assert parse_polynomial(a.to_text()) == a
    assert from_text(a.to_text()) == to_sympy(a)


@given(polys, st.sampled_from([2, 3, 5, 7]), st.sampled_from([11, 13]), st.sampled_from([17, 19]))
def test_evaluate_and_substitute(a, p, q, r):
    values = {"p": p, "q": q, "r": r}
    assert a.evaluate(values) == to_sympy(a).subs({P: p, Q: q, R: r})
    assert a.substitute({"p": p}).evaluate(values) == a.evaluate(values)


@pytest.mark.parametrize("text", [
    "14p-14", "18p-18", "20p-32", "-11p+3", "p^3-3p^2+2p-p", "2q-1.", "3(p-1)", "p^2q-pq", "0", "-2",
    "4 q - 16", "(p-1)(q-1)",
])
def test_cell_parsing_matches_sympy(text):
    expected = from_text(text.rstrip("."))
    assert to_sympy(parse_polynomial(text)) == expected


@pytest.mark.parametrize("text", ["q=9", "", "p+", "x-1", "p^"])
def test_cell_parse_errors(text):
    with pytest.raises(CellParseError):
        parse_polynomial(text)


def test_divisor_parse_and_print():
    for text in ("7p", "p^2q", "21", "pqr", "2p^4", "1"):
        assert str(SymbolicDivisor.parse(text)) == text
    assert SymbolicDivisor.parse("2^3").const == 8
    with pytest.raises(MalformedSpec):
        SymbolicDivisor.parse("7x")
    d = SymbolicDivisor.parse("7p")
    assert SymbolicDivisor.from_json(d.to_json()) == d
    assert d.bind({"p": 5}) == SymbolicDivisor(35)
    assert d.divides(SymbolicDivisor.parse("21p")) and not d.divides(SymbolicDivisor.parse("21"))


def test_phi_examples():
    assert phi_symbolic(SymbolicDivisor.parse("7p")) == parse_polynomial("6p-6")
    assert phi_symbolic(SymbolicDivisor.parse("p^2")) == parse_polynomial("p^2-p")
    assert phi_symbolic(SymbolicDivisor.parse("21")) == TPolynomial.const(12)


divisor_strategy = st.builds(
    lambda c, a, b, e: SymbolicDivisor(c, (a, b, e)),
    st.sampled_from([1, 2, 3, 4, 6, 8, 9, 12]), st.integers(0, 3), st.integers(0, 2), st.integers(0, 1),
)


@given(divisor_strategy, st.sampled_from([(5, 7, 11), (7, 5, 13), (11, 13, 17)]))
def test_phi_numeric(dv, primes):
    values = dict(zip(VARS, primes))
    assert phi_symbolic(dv).evaluate(values) == euler_phi(dv.evaluate(values))
    assert phi_symbolic(dv).evaluate(values) == sympy.totient(dv.evaluate(values))


def test_t_polynomial_examples():
    order = SymbolicDivisor.parse("21p")
    row = {SymbolicDivisor.parse(k): v for k, v in [("1", 1), ("7", 1), ("3", 7), ("p", 1), ("7p", 1)]}
    assert t_polynomial(order, row) == parse_polynomial("14p-14")
    order = SymbolicDivisor.parse("6p")
    row = [(SymbolicDivisor.parse(k), v) for k, v in [("1", 1), ("2", 3), ("3", 1), ("p", 1), ("2p", 5)]]
    assert t_polynomial(order, row).is_zero()
    assert t_polynomial(SymbolicDivisor(1), {SymbolicDivisor(1): 1}).is_zero()
    with pytest.raises(DivisorNotDividing):
        t_polynomial(SymbolicDivisor.parse("6p"), {SymbolicDivisor.parse("q"): 1})


def test_solver_examples():
    assert solve_primes(parse_polynomial("14p-14"), PrimeDomain(exclude={"p": frozenset({2, 3, 7})})).solutions == ()
    res = solve_primes(parse_polynomial("p-7"), PrimeDomain(minimum={"p": 5}))
    assert res.as_dicts() == [{"p": 7}] and res.status == "certified"
    assert solve_primes(parse_polynomial("q-3"), PrimeDomain(minimum={"q": 3})).as_dicts() == [{"q": 3}]
    assert solve_primes(parse_polynomial("p-7"), PrimeDomain(minimum={"p": 11})).solutions == ()
    assert solve_primes(parse_polynomial("q^2-8q+15")).as_dicts() == [{"q": 3}, {"q": 5}]
    assert solve_primes(TPolynomial()).status == "unconstrained"
    assert solve_primes(parse_polynomial("p^2+q+1")).status == "certified"


def test_solver_domain_rules():
    poly = parse_polynomial("p-q")
    res = solve_primes(poly)
    assert res.status == "scan-limited" and res.solutions == ()  # p = q violates distinctness
    with pytest.raises(UnboundedSearch):
        solve_primes(poly, strict=True)
    res = solve_primes(parse_polynomial("pq-6"), PrimeDomain(less_than=(("p", "q"),)))
    assert res.as_dicts() == [{"p": 2, "q": 3}]
    # bound variables are substituted first and must stay distinct from free ones
    res = solve_primes(parse_polynomial("q-p"), PrimeDomain(bound={"p": 3}))
    assert res.solutions == ()
    res = solve_primes(parse_polynomial("q-2p+1"), PrimeDomain(bound={"p": 2}))
    assert res.as_dicts() == [{"q": 3}]


def test_solver_scan_bound_honesty():
    big = parse_polynomial("p-10007")
    assert solve_primes(big).as_dicts() == [{"p": 10007}] or solve_primes(big).status == "scan-limited"
    res = solve_primes(big, scan_bound=100)
    assert res.status == "scan-limited" and res.solutions == ()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=2, max_size=4).filter(lambda c: c[-1] != 0))
def test_univariate_solver_against_sympy_roots(coeffs):
    poly = TPolynomial({(i, 0, 0): c for i, c in enumerate(coeffs) if c})
    res = solve_primes(poly)
    x = sympy.Symbol("x")
    roots = sympy.Poly(list(reversed(coeffs)), x).ground_roots() if len(coeffs) > 1 else {}
    expected = sorted(int(r) for r in roots if r.is_integer and sympy.isprime(int(r)))
    if res.status != "unconstrained":
        assert [d["p"] for d in res.as_dicts()] == expected
        assert res.status == "certified"


def test_multivariate_scan_agrees_with_brute_force():
    poly = parse_polynomial("pq-2p-2q+3")  # (p-2)(q-2) = 1
    found = {tuple(sorted(d.items())) for d in solve_primes(poly).as_dicts()}
    primes = list(sympy.primerange(2, 200))
    brute = {(("p", p), ("q", q)) for p in primes for q in primes if p != q and (p - 2) * (q - 2) == 1}
    assert found == brute


def test_random_rows_agree_numerically():
    rng = random.Random(7)
    order = SymbolicDivisor.parse("p^2q^2")
    divs = [SymbolicDivisor.parse(s) for s in ("1", "p", "q", "p^2", "pq", "q^2", "p^2q", "pq^2", "p^2q^2")]
    for _ in range(50):
        row = {d: rng.randint(0, 5) for d in divs}
        T = t_polynomial(order, row)
        p, q = rng.sample([2, 3, 5, 7, 11, 13], 2)
        n = p * p * q * q
        direct = n - sum(c * euler_phi(d.evaluate({"p": p, "q": q})) for d, c in row.items())
        assert T.evaluate({"p": p, "q": q}) == direct
