"""Exact polynomials over the prime variables p, q, r and the prime-root solver."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .arith import euler_phi, primes_up_to
from .errors import DivisorNotDividing, MalformedSpec, UnboundedSearch

VARS = ("p", "q", "r")
Monomial = tuple[int, int, int]
ZERO_MONO: Monomial = (0, 0, 0)


@dataclass(frozen=True)
class SymbolicDivisor:
    """const * p^a * q^b * r^c, the variables standing for distinct primes coprime to const."""

    const: int = 1
    exps: Monomial = ZERO_MONO

    def __post_init__(self):
        if self.const < 1:
            raise MalformedSpec(f"divisor constant must be positive, got {self.const}")
        if len(self.exps) != 3 or min(self.exps) < 0:
            raise MalformedSpec(f"bad exponent vector {self.exps}")

    @classmethod
    def parse(cls, text: str) -> "SymbolicDivisor":
        """Parse forms such as ``7p``, ``p^2q``, ``2^3``, ``21``."""
        s = text.replace(" ", "").replace("*", "")
        head = re.match(r"(\d+)(?:\^(\d+))?", s)
        const = int(head.group(1)) ** int(head.group(2) or 1) if head else 1
        rest = s[head.end():] if head else s
        exps = [0, 0, 0]
        for var, e in re.findall(r"([pqr])(?:\^(\d+))?", rest):
            exps[VARS.index(var)] += int(e or 1)
        if not s or re.sub(r"[pqr](?:\^\d+)?", "", rest):
            raise MalformedSpec(f"cannot parse divisor {text!r}")
        return cls(const, tuple(exps))

    @classmethod
    def from_json(cls, d: Mapping) -> "SymbolicDivisor":
        return cls(int(d.get("const", 1)), tuple(int(d.get(v, 0)) for v in VARS))

    def to_json(self) -> dict:
        out = {"const": self.const}
        out.update({v: e for v, e in zip(VARS, self.exps) if e})
        return out

    def bind(self, values: Mapping[str, int]) -> "SymbolicDivisor":
        """Substitute concrete primes for some variables, folding them into the constant."""
        const, exps = self.const, list(self.exps)
        for i, v in enumerate(VARS):
            if v in values and exps[i]:
                const *= values[v] ** exps[i]
                exps[i] = 0
        return SymbolicDivisor(const, tuple(exps))

    def divides(self, other: "SymbolicDivisor") -> bool:
        return other.const % self.const == 0 and all(a <= b for a, b in zip(self.exps, other.exps))

    def evaluate(self, values: Mapping[str, int]) -> int:
        b = self.bind(values)
        if any(b.exps):
            raise KeyError(f"unbound variables in {self}")
        return b.const

    def __str__(self) -> str:
        body = "".join(v if e == 1 else f"{v}^{e}" for v, e in zip(VARS, self.exps) if e)
        if self.const == 1:
            return body or "1"
        return f"{self.const}{body}"


class TPolynomial:
    """Integer polynomial in p, q, r; terms map exponent triples to nonzero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "TPolynomial":
        return cls({ZERO_MONO: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "TPolynomial":
        e = [0, 0, 0]
        e[VARS.index(name)] = power
        return cls({tuple(e): 1})

    @classmethod
    def from_divisor(cls, d: SymbolicDivisor) -> "TPolynomial":
        return cls({d.exps: d.const})

    # arithmetic
    def __add__(self, other) -> "TPolynomial":
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return TPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "TPolynomial":
        return TPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "TPolynomial":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "TPolynomial":
        return _lift(other) - self

    def __mul__(self, other) -> "TPolynomial":
        other = _lift(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[m] = out.get(m, 0) + c1 * c2
        return TPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = TPolynomial.const(other)
        return isinstance(other, TPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(VARS) if any(m[i] for m in self.terms))

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return 0
        if var is None:
            return max(sum(m) for m in self.terms)
        i = VARS.index(var)
        return max(m[i] for m in self.terms)

    def evaluate(self, values: Mapping[str, int]) -> int:
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in zip(VARS, m):
                if e:
                    term *= values[v] ** e
            total += term
        return total

    def substitute(self, values: Mapping[str, int]) -> "TPolynomial":
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            e = list(m)
            for i, v in enumerate(VARS):
                if v in values and e[i]:
                    c *= values[v] ** e[i]
                    e[i] = 0
            key = tuple(e)
            out[key] = out.get(key, 0) + c
        return TPolynomial(out)

    def rename(self, mapping: Mapping[str, str]) -> "TPolynomial":
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            e = [0, 0, 0]
            for i, v in enumerate(VARS):
                e[VARS.index(mapping.get(v, v))] += m[i]
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return TPolynomial(out)

    def ratio_to(self, other: "TPolynomial") -> Fraction | None:
        """lambda with self == lambda * other, if one exists (both nonzero)."""
        if self.is_zero() or other.is_zero() or set(self.terms) != set(other.terms):
            return None
        ratios = {Fraction(self.terms[m], other.terms[m]) for m in self.terms}
        return ratios.pop() if len(ratios) == 1 else None

    def univariate_coeffs(self, var: str) -> list[int]:
        """Coefficients by ascending power; requires no other variable."""
        i = VARS.index(var)
        coeffs = [0] * (self.degree(var) + 1)
        for m, c in self.terms.items():
            if any(m[j] for j in range(3) if j != i):
                raise ValueError(f"polynomial is not univariate in {var}")
            coeffs[m[i]] += c
        return coeffs

    def to_text(self) -> str:
        """Compact rendering such as ``2q^2-5q+3``; descending total degree."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(m), [-x for x in m])):
            c = self.terms[m]
            body = "".join(v if e == 1 else f"{v}^{e}" for v, e in zip(VARS, m) if e)
            mag = abs(c)
            piece = (str(mag) if mag != 1 or not body else "") + body
            sign = "-" if c < 0 else "+"
            parts.append((sign, piece))
        text = "".join(s + p for s, p in parts)
        return text[1:] if text.startswith("+") else text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"TPolynomial({self.to_text()!r})"


def _lift(x) -> TPolynomial:
    if isinstance(x, TPolynomial):
        return x
    if isinstance(x, int):
        return TPolynomial.const(x)
    raise TypeError(f"cannot combine TPolynomial with {type(x).__name__}")


# ------------------------------------------------------------ parsing cells

_POLY_TOKEN = re.compile(r"\s*(?:(\d+)|([pqr])|(\^)|([+-])|(\()|(\)))")


class CellParseError(ValueError):
    pass


def parse_polynomial(text: str) -> TPolynomial:
    """Parse a printed table cell such as ``2q^2-5q+3``, ``3-11p`` or ``p^3-3p^2+2p-p``.

    Implicit multiplication between adjacent factors is allowed. A single trailing period
    is treated as sentence punctuation. Anything else (for example ``q=9``) raises.
    """
    s = text.strip()
    if s.endswith("."):
        s = s[:-1].rstrip()
    if not s:
        raise CellParseError("empty cell")
    toks = []
    pos = 0
    while pos < len(s):
        m = _POLY_TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise CellParseError(f"unexpected {s[pos]!r} in {text!r}")
        toks.append(next(t for t in m.groups() if t is not None))
        pos = m.end()
    toks.append("")
    i = 0

    def peek():
        return toks[i]

    def expr():
        nonlocal i
        sign = 1
        if peek() in "+-" and peek():
            sign = -1 if toks[i] == "-" else 1
            i += 1
        acc = term() * sign
        while peek() in ("+", "-") and peek():
            op = toks[i]
            i += 1
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() and (peek().isdigit() or peek() in VARS or peek() == "("):
            acc = acc * factor()
        return acc

    def factor():
        nonlocal i
        t = peek()
        if not t:
            raise CellParseError(f"unexpected end of {text!r}")
        i += 1
        if t.isdigit():
            base = TPolynomial.const(int(t))
        elif t in VARS:
            base = TPolynomial.var(t)
        elif t == "(":
            base = expr()
            if peek() != ")":
                raise CellParseError(f"unbalanced parenthesis in {text!r}")
            i += 1
        else:
            raise CellParseError(f"unexpected {t!r} in {text!r}")
        if peek() == "^":
            i += 1
            e = peek()
            if not e.isdigit():
                raise CellParseError(f"bad exponent in {text!r}")
            i += 1
            out = TPolynomial.const(1)
            for _ in range(int(e)):
                out = out * base
            base = out
        return base

    result = expr()
    if peek():
        raise CellParseError(f"trailing input {peek()!r} in {text!r}")
    return result


# ------------------------------------------------------------ totient and T

def phi_symbolic(dv: SymbolicDivisor) -> TPolynomial:
    """phi(const) * prod (v^e - v^(e-1)), valid when the variables are primes coprime to const."""
    out = TPolynomial.const(euler_phi(dv.const))
    for v, e in zip(VARS, dv.exps):
        if e:
            out = out * (TPolynomial.var(v, e) - TPolynomial.var(v, e - 1))
    return out


def t_polynomial(order: SymbolicDivisor, row: Mapping[SymbolicDivisor, int] | Iterable) -> TPolynomial:
    """T = |G| - sum c(m) phi(m) over the row's divisors."""
    items = row.items() if isinstance(row, Mapping) else row
    total = TPolynomial.from_divisor(order)
    for dv, count in items:
        if not dv.divides(order):
            raise DivisorNotDividing(f"{dv} does not divide {order}")
        if count:
            total = total - phi_symbolic(dv) * count
    return total


# ------------------------------------------------------------ prime solving

@dataclass(frozen=True)
class PrimeDomain:
    """Admissible prime assignments: exclusions, lower bounds, strict orderings, and fixed values."""

    exclude: Mapping[str, frozenset[int]] = field(default_factory=dict)
    minimum: Mapping[str, int] = field(default_factory=dict)
    less_than: tuple[tuple[str, str], ...] = ()
    bound: Mapping[str, int] = field(default_factory=dict)

    def admits(self, assignment: Mapping[str, int]) -> bool:
        full = {**self.bound, **assignment}
        if len(set(full.values())) != len(full):
            return False
        for v, val in assignment.items():
            if val in self.exclude.get(v, ()) or val < self.minimum.get(v, 2):
                return False
        for a, b in self.less_than:
            if a in full and b in full and not full[a] < full[b]:
                return False
        return True


@dataclass(frozen=True)
class SolveResult:
    """Prime roots of a polynomial.

    ``status`` is one of ``certified`` (complete), ``unconstrained`` (identically zero),
    or ``scan-limited`` (complete only up to the scan bound).
    """

    solutions: tuple[tuple[tuple[str, int], ...], ...]
    status: str
    variables: tuple[str, ...] = ()

    def as_dicts(self) -> list[dict[str, int]]:
        return [dict(s) for s in self.solutions]


DEFAULT_SCAN_BOUND = 10000


def _cauchy_bound(coeffs: list[int]) -> Fraction:
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    lead = abs(coeffs[-1])
    return 1 + max((Fraction(abs(c), lead) for c in coeffs[:-1]), default=Fraction(0))


def _sign_certificate(poly: TPolynomial) -> bool:
    """True when every monomial coefficient (constant included) shares one strict sign,
    so the polynomial has no root with all variables positive."""
    signs = {c > 0 for c in poly.terms.values()}
    return len(signs) == 1


def solve_primes(poly: TPolynomial, domain: PrimeDomain | None = None,
                 scan_bound: int = DEFAULT_SCAN_BOUND, strict: bool = False) -> SolveResult:
    """All admissible prime assignments with poly = 0.

    Variables fixed in ``domain.bound`` are substituted first. For a univariate remainder,
    the Cauchy root bound certifies completeness whenever it lies below the scan bound.
    With strict=True a multivariate polynomial lacking a certificate raises UnboundedSearch.
    """
    domain = domain or PrimeDomain()
    poly = poly.substitute(domain.bound)
    free = poly.variables()
    if poly.is_zero():
        return SolveResult((), "unconstrained", free)
    if not free or _sign_certificate(poly):
        return SolveResult((), "certified", free)
    primes = primes_up_to(scan_bound)
    if len(free) == 1:
        v = free[0]
        coeffs = poly.univariate_coeffs(v)
        bound = _cauchy_bound(coeffs)
        limit = min(scan_bound, int(bound) + 1)
        sols = []
        for pr in primes:
            if pr > limit:
                break
            if poly.evaluate({v: pr}) == 0 and domain.admits({v: pr}):
                sols.append(((v, pr),))
        status = "certified" if bound <= scan_bound else "scan-limited"
        return SolveResult(tuple(sols), status, free)
    if strict:
        raise UnboundedSearch(f"no finite certificate for {poly.to_text()} in {free}")
    # multivariate: grid scan on a reduced bound, honestly flagged
    grid = [pr for pr in primes if pr <= min(scan_bound, 200)]
    sols = []

    def rec(i, acc):
        if i == len(free):
            if poly.evaluate(acc) == 0 and domain.admits(acc):
                sols.append(tuple(sorted(acc.items())))
            return
        for pr in grid:
            rec(i + 1, {**acc, free[i]: pr})

    rec(0, {})
    return SolveResult(tuple(sols), "scan-limited", free)

