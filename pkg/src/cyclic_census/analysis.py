"""Cyclic subgroup counts, the subgroup lattice, and Sylow/CLT queries."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .arith import divisors, euler_phi, is_prime, prime_power_part
from .errors import LatticeCapExceeded, PrimeDoesNotDivideOrder
from .groups import FiniteGroup, order_class_counts

DEFAULT_LATTICE_CAP = 512


@dataclass(frozen=True)
class CyclicProfile:
    order: int
    per_order: dict[int, int]
    total: int

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "total": self.total,
            "per_order": {str(m): c for m, c in sorted(self.per_order.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def cyclic_profile(G: FiniteGroup) -> CyclicProfile:
    """c_G(m) = (number of elements of order m) / phi(m)."""
    per_order = {}
    for m, count in order_class_counts(G).items():
        c, rem = divmod(count, euler_phi(m))
        assert rem == 0, f"order class {m} has {count} elements, not a multiple of phi({m})"
        per_order[m] = c
    return CyclicProfile(G.order, per_order, sum(per_order.values()))


def count_cyclic(G: FiniteGroup) -> int:
    return cyclic_profile(G).total


@dataclass(frozen=True, order=True)
class Subgroup:
    """A subgroup identified by its sorted element indices; sorts by order, then elements."""

    order: int
    elements: tuple[int, ...]

    @classmethod
    def from_elements(cls, elems) -> "Subgroup":
        t = tuple(sorted(int(e) for e in elems))
        return cls(len(t), t)

    def mask(self) -> int:
        m = 0
        for e in self.elements:
            m |= 1 << e
        return m


def _cyclic_closure(G: FiniteGroup, x: int) -> list[int]:
    out = [0]
    cur = x
    while cur != 0:
        out.append(cur)
        cur = int(G.table[cur, x])
    return out


def enumerate_cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every <x>, found by marking the generators of each new cyclic subgroup as visited."""
    visited = np.zeros(G.order, dtype=bool)
    found = []
    for x in range(G.order):
        if visited[x]:
            continue
        elems = _cyclic_closure(G, x)
        ox = len(elems)
        for e in elems:
            if G.elem_order[e] == ox:
                visited[e] = True
        found.append(Subgroup.from_elements(elems))
    return sorted(found)


# ------------------------------------------------------------------ lattice

def _mask_of(arr: np.ndarray, n: int) -> int:
    v = np.zeros(n, dtype=bool)
    v[arr] = True
    return int.from_bytes(np.packbits(v, bitorder="little").tobytes(), "little")


def _closure(T: np.ndarray, seed: np.ndarray) -> np.ndarray:
    """Subgroup generated by ``seed`` in a finite group: close under products."""
    S = np.unique(np.concatenate([[0], seed]))
    while True:
        nxt = np.unique(T[np.ix_(S, S)])
        if nxt.size == S.size:
            return S
        S = nxt


@dataclass(frozen=True, eq=False)
class SubgroupLattice:
    group_order: int
    subgroups: tuple[Subgroup, ...]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(s.mask() for s in self.subgroups)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs (i, j): subgroups[i] is maximal in subgroups[j]."""
        masks = self.masks
        n = len(masks)
        edges = []
        for i in range(n):
            mi = masks[i]
            kept: list[int] = []
            for j in range(i + 1, n):
                mj = masks[j]
                if mj == mi or mj & mi != mi:
                    continue
                if any(mj & masks[c] == masks[c] for c in kept):
                    continue
                kept.append(j)
                edges.append((i, j))
        return tuple(edges)

    def orders(self) -> list[int]:
        return [s.order for s in self.subgroups]

    def __len__(self) -> int:
        return len(self.subgroups)


def subgroup_lattice(G: FiniteGroup, lattice_cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """All subgroups, by join-closure of the cyclic subgroups under joining with a cyclic subgroup.

    Every subgroup is the join of the cyclic subgroups it contains, so closing the family
    of cyclic subgroups under "join with one more cyclic subgroup" reaches all of them.
    """
    if G.order > lattice_cap:
        raise LatticeCapExceeded(f"order {G.order} exceeds lattice cap {lattice_cap}")
    T = G.table
    cyclic = enumerate_cyclic_subgroups(G)
    if int(G.elem_order.max()) == G.order:
        # every subgroup of a cyclic group is cyclic
        return SubgroupLattice(G.order, tuple(cyclic))
    gens = []  # one generator per cyclic subgroup
    cyc_masks = []
    for c in cyclic:
        g = next(e for e in c.elements if G.elem_order[e] == c.order)
        gens.append(g)
        cyc_masks.append(c.mask())
    known: dict[int, np.ndarray] = {}
    for c, m in zip(cyclic, cyc_masks):
        known[m] = np.array(c.elements, dtype=np.int64)
    work = list(known.items())
    while work:
        m, elems = work.pop()
        for g, cm in zip(gens, cyc_masks):
            if cm & m == cm:
                continue
            S = _closure(T, np.append(elems, g))
            sm = _mask_of(S, G.order)
            if sm not in known:
                known[sm] = S
                work.append((sm, S))
    subs = sorted(Subgroup(len(e), tuple(int(v) for v in e)) for e in known.values())
    return SubgroupLattice(G.order, tuple(subs))


def is_clt(G: FiniteGroup, lattice_cap: int = DEFAULT_LATTICE_CAP,
           lattice: SubgroupLattice | None = None) -> bool:
    """True iff G has a subgroup of every order dividing |G|."""
    lattice = lattice or subgroup_lattice(G, lattice_cap)
    present = set(lattice.orders())
    return all(d in present for d in divisors(G.order))


def sylow_count(G: FiniteGroup, p: int, lattice_cap: int = DEFAULT_LATTICE_CAP,
                lattice: SubgroupLattice | None = None) -> int:
    """n_p(G): the number of subgroups of order p^k with p^k exactly dividing |G|."""
    if not is_prime(p) or G.order % p:
        raise PrimeDoesNotDivideOrder(f"{p} is not a prime divisor of {G.order}")
    pk = prime_power_part(G.order, p)
    lattice = lattice or subgroup_lattice(G, lattice_cap)
    return sum(1 for o in lattice.orders() if o == pk)


def hasse_dot(lattice: SubgroupLattice, name: str = "lattice") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, s in enumerate(lattice.subgroups):
        lines.append(f'  n{i} [label="{s.order}:{i}"];')
    for i, j in lattice.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
