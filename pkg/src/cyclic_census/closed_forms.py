"""Closed-form cyclic subgroup counts and the order-shape bound."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from math import gcd, prod

from .arith import divisor_count, divisors, euler_phi, is_prime, mobius, omega
from .errors import ParamOutOfRange

__all__ = [
    "euler_phi", "divisor_count", "omega", "Family", "FamilyCount", "family_count",
    "abelian_count", "p2q_menu", "OrderShape", "admissible_shapes", "shape_classes", "shapes_json",
]


class Family(Enum):
    DihedralPow2 = "DihedralPow2"
    QuaternionPow2 = "QuaternionPow2"
    ModularPow2 = "ModularPow2"
    SemidihedralPow2 = "SemidihedralPow2"
    RankTwoP = "RankTwoP"
    ModularOddP = "ModularOddP"
    ElementaryP3 = "ElementaryP3"
    NonabelianPQ = "NonabelianPQ"


@dataclass(frozen=True)
class FamilyCount:
    """A family symbol with its parameters.

    2-power families take ``(a,)``; RankTwoP and ModularOddP take ``(p, a)``;
    ElementaryP3 takes ``(p,)``; NonabelianPQ takes ``(p, q)``.
    """

    family: Family
    params: tuple[int, ...]


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ParamOutOfRange(msg)


def family_count(f: FamilyCount) -> int:
    fam, ps = f.family, f.params
    if fam in (Family.DihedralPow2, Family.QuaternionPow2, Family.ModularPow2, Family.SemidihedralPow2):
        _need(len(ps) == 1 and ps[0] >= 3, f"{fam.value} needs a single a >= 3, got {ps}")
        a = ps[0]
        return {
            Family.DihedralPow2: a + 2 ** (a - 1),
            Family.QuaternionPow2: a + 2 ** (a - 2),
            Family.ModularPow2: 2 * a,
            Family.SemidihedralPow2: a + 3 * 2 ** (a - 3),
        }[fam]
    if fam in (Family.RankTwoP, Family.ModularOddP):
        _need(len(ps) == 2, f"{fam.value} needs (p, a), got {ps}")
        p, a = ps
        _need(is_prime(p) and p % 2 == 1, f"{fam.value} needs an odd prime, got {p}")
        # M(p^a) is only defined from a = 3 on; the rank-two abelian group exists for a >= 2
        _need(a >= (3 if fam is Family.ModularOddP else 2), f"{fam.value} exponent out of range: {a}")
        return (a - 1) * p + 2
    if fam is Family.ElementaryP3:
        _need(len(ps) == 1 and is_prime(ps[0]), f"ElementaryP3 needs a prime, got {ps}")
        p = ps[0]
        return p * p + p + 2
    if fam is Family.NonabelianPQ:
        _need(len(ps) == 2, f"NonabelianPQ needs (p, q), got {ps}")
        p, q = ps
        _need(is_prime(p) and is_prime(q) and p < q and (q - 1) % p == 0,
              f"NonabelianPQ needs primes p < q with p | q-1, got {ps}")
        return q + 2
    raise ParamOutOfRange(f"unknown family {fam}")


def abelian_count(invariants: list[int]) -> int:
    """c(Z_n1 x ... x Z_nk) from the exact-order census.

    #{x : x^d = e} = prod gcd(d, n_i); Moebius inversion gives the number of elements
    of exact order d, and each cyclic subgroup of order d has phi(d) generators.
    """
    if not invariants or any(n < 1 for n in invariants):
        raise ParamOutOfRange(f"invariants must be a nonempty list of positive integers, got {invariants}")
    exponent = 1
    for n in invariants:
        exponent = exponent * n // gcd(exponent, n)
    solutions = {d: prod(gcd(d, n) for n in invariants) for d in divisors(exponent)}
    total = 0
    for d in divisors(exponent):
        exact = sum(mobius(d // e) * solutions[e] for e in divisors(d))
        total += exact // euler_phi(d)
    return total


def p2q_menu(p: int, q: int) -> frozenset[int]:
    """Quoted menu of possible c(G) for a nonabelian group of order p^2 q.

    The menu is cited without attributing values to groups, so it is a necessary
    condition only; nothing here claims every value is realised.
    """
    _need(is_prime(p) and is_prime(q) and p != q, f"p2q_menu needs distinct primes, got {(p, q)}")
    if p < q:
        return frozenset({6, 2 * p + 4, p * q + 4, q + 4, 2 * q + 2})
    return frozenset({6, 2 * p + 4, p * p + 3, p * p + p + 2, 2 * p + 3, 3 * p + 2})


_VARS = "pqr"


@dataclass(frozen=True)
class OrderShape:
    """Exponent multiset of an order, largest first; ``(2, 1)`` means p^2 q."""

    exponents: tuple[int, ...]

    @property
    def divisor_count(self) -> int:
        return prod(e + 1 for e in self.exponents)

    def text(self) -> str:
        if not self.exponents:
            return "p^0"
        return "".join(v if e == 1 else f"{v}^{e}" for v, e in zip(_VARS, self.exponents))


def admissible_shapes(n: int) -> list[OrderShape]:
    """Order shapes compatible with c(G) = n under c(G) >= d(|G|).

    The trivial shape is admissible only for n = 1 since the trivial group has exactly one
    cyclic subgroup. Sorted by number of primes, then by exponent tuple.
    """
    if n < 1:
        raise ParamOutOfRange(f"n must be positive, got {n}")
    if n == 1:
        return [OrderShape(())]
    shapes = []
    for k in (1, 2, 3):
        max_e = n  # d >= e + 1, so no exponent exceeds n - 1
        for exps in itertools.combinations_with_replacement(range(max_e, 0, -1), k):
            if prod(e + 1 for e in exps) <= n:
                shapes.append(OrderShape(tuple(exps)))
    return sorted(shapes, key=lambda s: (len(s.exponents), s.exponents))


def shape_classes(shapes: list[OrderShape]) -> list[str]:
    """Collapse the prime-power shapes into one ``p^k (k<=K)`` entry."""
    powers = [s.exponents[0] for s in shapes if len(s.exponents) == 1]
    out = [f"p^k (k<={max(powers)})"] if powers else []
    return out + [s.text() for s in shapes if len(s.exponents) != 1]


def shapes_json(shapes: list[OrderShape]) -> str:
    return json.dumps([list(s.exponents) for s in shapes])
