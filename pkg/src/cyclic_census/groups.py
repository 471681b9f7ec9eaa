"""Finite groups as explicit Cayley tables."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import dsl
from .dsl import (
    Cyclic, Dicyclic, Dihedral, DirectProduct, ElementaryAbelian, GeneralizedQuaternion, GroupSpec,
    ModularPGroup, Named, Semidihedral, SemidirectCyclic, SemidirectKlein9,
)
from .errors import IndexOutOfRange, InvalidAction, MalformedSpec

Element = int  # an index in [0, order); 0 is the identity


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group given by its full multiplication table: ``table[i, j] = i * j``."""

    order: int
    table: np.ndarray
    inverse: np.ndarray
    elem_order: np.ndarray
    label: str = ""

    @classmethod
    def from_table(cls, table: np.ndarray, label: str = "") -> "FiniteGroup":
        """Wrap a table whose identity is index 0; inverses and orders are derived.

        Only the identity row/column and the existence of inverses are checked here.
        Associativity is left to :func:`verify_group_axioms`.
        """
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n) or n == 0:
            raise MalformedSpec(f"table must be square and nonempty, got shape {table.shape}")
        if table.min() < 0 or table.max() >= n:
            raise MalformedSpec("table entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
            raise MalformedSpec("index 0 is not a two-sided identity")
        hits = table == 0
        if not np.all(hits.sum(axis=1) == 1):
            raise MalformedSpec("some element lacks a unique right inverse")
        inverse = hits.argmax(axis=1)
        return cls(n, _frozen(table), _frozen(inverse), _frozen(_orders(table)), label)

    def mul(self, a: Element, b: Element) -> Element:
        return int(self.table[a, b])

    def power(self, x: Element, k: int) -> Element:
        if k < 0:
            x, k = int(self.inverse[x]), -k
        acc, base = 0, x
        while k:
            if k & 1:
                acc = int(self.table[acc, base])
            base = int(self.table[base, base])
            k >>= 1
        return acc

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, label={self.label!r})"


def _orders(table: np.ndarray) -> np.ndarray:
    """Right-power orders; 0 marks an element whose powers never return to the identity,
    which only happens for a non-associative table."""
    n = table.shape[0]
    ar = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = ar.copy()  # cur[i] = i^k
    k = 1
    while True:
        done = (cur == 0) & (orders == 0)
        orders[done] = k
        if orders.all() or k > n:
            return orders
        cur = table[cur, ar]
        k += 1


@dataclass
class AxiomReport:
    """Outcome of :func:`verify_group_axioms`; truthy iff every law holds."""

    ok: bool
    law: str | None = None
    witness: tuple[int, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def verify_group_axioms(G: FiniteGroup) -> AxiomReport:
    """Full check of identity, inverse and associativity laws (O(n^3), vectorised per row)."""
    T = G.table
    n = G.order
    ar = np.arange(n)
    bad = np.flatnonzero((T[0] != ar) | (T[:, 0] != ar))
    if bad.size:
        return AxiomReport(False, "identity", (int(bad[0]),))
    bad = np.flatnonzero(T[ar, G.inverse] != 0)
    if bad.size:
        return AxiomReport(False, "inverse", (int(bad[0]),))
    for a in range(n):
        lhs = T[T[a]]  # (a b) c, rows b, columns c
        rhs = T[a][T]  # a (b c)
        diff = np.argwhere(lhs != rhs)
        if diff.size:
            b, c = diff[0]
            return AxiomReport(False, "associativity", (a, int(b), int(c)))
    return AxiomReport(True)


def element_order(G: FiniteGroup, x: Element) -> int:
    if not 0 <= x < G.order:
        raise IndexOutOfRange(f"element {x} not in [0, {G.order})")
    return int(G.elem_order[x])


def order_class_counts(G: FiniteGroup) -> dict[int, int]:
    """Map d -> number of elements of exact order d, keys ascending."""
    return dict(sorted(Counter(int(o) for o in G.elem_order).items()))


# ------------------------------------------------------------ constructions

def cyclic_group(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup.from_table(np.add.outer(ar, ar) % n, f"C{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Pairs (a, b) indexed a*|B| + b."""
    nb = B.order
    idx = np.arange(A.order * nb)
    a, b = idx // nb, idx % nb
    table = A.table[np.ix_(a, a)] * nb + B.table[np.ix_(b, b)]
    return FiniteGroup.from_table(table, f"{A.label} x {B.label}")


def metacyclic(m: int, k: int, r: int, t: int = 0, label: str = "") -> FiniteGroup:
    """Elements a^x b^y indexed x*k + y with b a b^-1 = a^r and b^k = a^t.

    With t = 0 this is the split extension Z_m x| Z_k.
    """
    if (r * t - t) % m:
        raise InvalidAction(f"a^{t} is not fixed by the action r={r} mod {m}")
    rp = np.array([pow(r, y, m) for y in range(k)], dtype=np.int64)
    idx = np.arange(m * k)
    x, y = idx // k, idx % k
    ysum = y[:, None] + y[None, :]
    xnew = (x[:, None] + rp[y][:, None] * x[None, :] + t * (ysum >= k)) % m
    return FiniteGroup.from_table(xnew * k + ysum % k, label or f"Z{m}:Z{k}")


def semidirect_by_automorphism(N: FiniteGroup, perm: Sequence[int], k: int, label: str = "") -> FiniteGroup:
    """N x| Z_k where the top generator acts on N by the permutation ``perm``.

    ``perm`` must be an automorphism of N whose order divides k. Elements (n, y) are indexed n*k + y.
    """
    P = np.asarray(perm, dtype=np.int64)
    ar = np.arange(N.order)
    if sorted(P.tolist()) != ar.tolist() or not np.array_equal(P[N.table], N.table[np.ix_(P, P)]):
        raise InvalidAction("permutation is not an automorphism")
    powers = [ar]
    for _ in range(k - 1):
        powers.append(P[powers[-1]])
    if not np.array_equal(P[powers[-1]], ar):
        raise InvalidAction(f"automorphism order does not divide {k}")
    Pk = np.stack(powers)  # Pk[y, n] = P^y(n)
    idx = np.arange(N.order * k)
    n_, y = idx // k, idx % k
    acted = Pk[y[:, None], n_[None, :]]
    table = N.table[n_[:, None], acted] * k + (y[:, None] + y[None, :]) % k
    return FiniteGroup.from_table(table, label or f"{N.label}:Z{k}")


def automorphism_from_images(G: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> list[int]:
    """Extend gens -> images to an automorphism of G, or raise InvalidAction."""
    phi = -np.ones(G.order, dtype=np.int64)
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for g in frontier:
            for s, im in zip(gens, images):
                h = G.table[g, s]
                if phi[h] < 0:
                    phi[h] = G.table[phi[g], im]
                    nxt.append(h)
        frontier = nxt
    if (phi < 0).any():
        raise InvalidAction("generators do not generate the group")
    if not np.array_equal(phi[G.table], G.table[np.ix_(phi, phi)]) or len(set(phi.tolist())) != G.order:
        raise InvalidAction("images do not define an automorphism")
    return phi.tolist()


# Klein four group EA(2,2): index 2x + y, so 1 = b, 2 = c, 3 = bc.
_KLEIN_ROTATION = [0, 3, 1, 2]  # b -> bc -> c -> b


def _sl23() -> FiniteGroup:
    q8 = metacyclic(4, 2, -1, 2)  # Dic_2: i = a (index 2), j = b (index 1), k = ab (index 3)
    i, j, k = 2, 1, 3
    perm = automorphism_from_images(q8, [i, j], [j, k])
    return semidirect_by_automorphism(q8, perm, 3, "SL(2,3)")


def build_group(spec: GroupSpec, order_cap: int = dsl.DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Realise a spec as a Cayley table after validating it."""
    dsl.validate(spec, order_cap)
    G = _build(spec)
    return FiniteGroup(G.order, G.table, G.inverse, G.elem_order, dsl.render(spec))


def _build(spec: GroupSpec) -> FiniteGroup:
    match spec:
        case Cyclic(n):
            return cyclic_group(n)
        case DirectProduct(a, b):
            return direct_product(_build(a), _build(b))
        case SemidirectCyclic(m, k, r):
            return metacyclic(m, k, r % m if m > 1 else 0)
        case Dihedral(n):
            return metacyclic(n, 2, -1 % n if n > 1 else 0)
        case Dicyclic(n):
            return metacyclic(2 * n, 2, -1, n)
        case GeneralizedQuaternion(a):
            return metacyclic(2 ** (a - 1), 2, -1, 2 ** (a - 2))
        case Semidihedral(a):
            return metacyclic(2 ** (a - 1), 2, 2 ** (a - 2) - 1)
        case ModularPGroup(p, a):
            return metacyclic(p ** (a - 1), p, 1 + p ** (a - 2))
        case ElementaryAbelian(p, k):
            G = cyclic_group(1)
            for _ in range(k):
                G = direct_product(G, cyclic_group(p)) if G.order > 1 else cyclic_group(p)
            return G
        case SemidirectKlein9():
            return semidirect_by_automorphism(_build(ElementaryAbelian(2, 2)), _KLEIN_ROTATION, 9)
        case Named("A4"):
            return semidirect_by_automorphism(_build(ElementaryAbelian(2, 2)), _KLEIN_ROTATION, 3)
        case Named("Z3A4"):
            return _build(SemidirectKlein9())
        case Named("SL23"):
            return _sl23()
        case Named("F5"):
            return metacyclic(5, 4, 2)
    raise MalformedSpec(f"cannot build {spec!r}")
