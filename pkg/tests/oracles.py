"""Independent reference implementations used only by the tests.

None of these touch Cayley tables: groups are rebuilt as sympy permutation groups or as
2x2 matrix groups over a prime field, and counted from their element orders.
"""
from __future__ import annotations

from collections import Counter
from math import gcd

from sympy import totient
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import AlternatingGroup, CyclicGroup, DihedralGroup


def count_from_orders(orders: Counter) -> int:
    return sum(v // int(totient(m)) for m, v in orders.items())


def perm_orders(G: PermutationGroup) -> Counter:
    return Counter(int(g.order()) for g in G.generate())


def perm_count(G: PermutationGroup) -> int:
    return count_from_orders(perm_orders(G))


def affine_semidirect(m: int, k: int, r: int) -> PermutationGroup:
    """Z_m x| Z_k as affine maps x -> r^y x + c on Z_m, tagged by a k-cycle on k extra points."""
    a = Permutation([(x + 1) % m for x in range(m)] + list(range(m, m + k)))
    b_img = [(r * x) % m for x in range(m)] + [m + (y + 1) % k for y in range(k)]
    return PermutationGroup([a, Permutation(b_img)])


def product_group(*groups: PermutationGroup) -> PermutationGroup:
    G = groups[0]
    for H in groups[1:]:
        G = G * H
    return G


def cyclic(n: int) -> PermutationGroup:
    return CyclicGroup(n) if n > 1 else PermutationGroup([Permutation([0])])


def abelian(invariants) -> PermutationGroup:
    return product_group(*(cyclic(n) for n in invariants))


def dihedral(n: int) -> PermutationGroup:
    """Order 2n."""
    return DihedralGroup(n)


def alternating4() -> PermutationGroup:
    return AlternatingGroup(4)


def z3_dot_a4() -> PermutationGroup:
    """(Z2 x Z2) x| Z9: Klein four on 4 points, a 3-cycle on them glued to a 9-cycle."""
    v1 = Permutation([1, 0, 3, 2] + list(range(4, 13)))
    v2 = Permutation([2, 3, 0, 1] + list(range(4, 13)))
    b = Permutation([0, 2, 3, 1] + [4 + (y + 1) % 9 for y in range(9)])
    return PermutationGroup([v1, v2, b])


# ------------------------------------------------------------ matrix groups

def _matmul(A, B, p):
    return (
        (A[0] * B[0] + A[1] * B[2]) % p, (A[0] * B[1] + A[1] * B[3]) % p,
        (A[2] * B[0] + A[3] * B[2]) % p, (A[2] * B[1] + A[3] * B[3]) % p,
    )


def matrix_orders(gens, p: int) -> Counter:
    """Element orders of the group generated by 2x2 matrices (flat 4-tuples) over F_p."""
    identity = (1, 0, 0, 1)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _matmul(g, s, p)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    orders = Counter()
    for g in seen:
        k, cur = 1, g
        while cur != identity:
            cur = _matmul(cur, g, p)
            k += 1
        orders[k] += 1
    return orders


def _element_of_order(n: int, p: int) -> int:
    for z in range(2, p):
        if pow(z, n, p) == 1 and all(pow(z, n // q, p) != 1 for q in _prime_factors(n)):
            return z
    raise ValueError(f"F_{p} has no element of order {n}")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return sorted(set(out))


def dicyclic_orders(n: int) -> Counter:
    """Dic_n inside SL(2, p): diag(z, z^-1) with z of order 2n, and [[0,-1],[1,0]]."""
    p = next(q for q in range(2 * n + 1, 10**5, 2 * n) if all(q % d for d in range(2, int(q**0.5) + 1)))
    z = _element_of_order(2 * n, p)
    zi = pow(z, -1, p)
    return matrix_orders([(z, 0, 0, zi), (0, p - 1, 1, 0)], p)


def sl23_orders() -> Counter:
    return matrix_orders([(1, 1, 0, 1), (0, 2, 1, 0)], 3)


def coprime_units(m: int) -> list[int]:
    return [r for r in range(1, m) if gcd(r, m) == 1]


def product_orders(A: Counter, B: Counter) -> Counter:
    """Order census of a direct product: ord(a, b) = lcm(ord a, ord b)."""
    out = Counter()
    for m, u in A.items():
        for n, v in B.items():
            out[m * n // gcd(m, n)] += u * v
    return out


def cyclic_orders(n: int) -> Counter:
    return Counter({d: int(totient(d)) for d in range(1, n + 1) if n % d == 0})


def gaussian_binomial_total(p: int, k: int) -> int:
    """Number of subspaces of F_p^k."""
    total = 0
    for j in range(k + 1):
        num = den = 1
        for i in range(j):
            num *= p ** (k - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total
