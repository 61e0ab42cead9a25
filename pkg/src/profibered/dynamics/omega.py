"""Conjugacy classes of a finite group merged under unit-exponent power maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Tuple

from ..groups import FiniteGroup
from .orbits import OrbitTable, twisted_lefschetz

DEFAULT_ORDER_BOUND = 10 ** 4


@dataclass(frozen=True)
class OmegaClasses:
    group: FiniteGroup
    conjugacy_classes: Tuple[Tuple[int, ...], ...]
    classes: Tuple[Tuple[int, ...], ...]  # each omega as sorted conjugacy-class indices

    def __len__(self) -> int:
        return len(self.classes)

    def omega_of(self, g: int) -> int:
        c = self.group.class_of(g)
        for i, w in enumerate(self.classes):
            if c in w:
                return i
        raise AssertionError("element outside every class")

    def elements(self, i: int) -> Tuple[int, ...]:
        return tuple(sorted(g for c in self.classes[i] for g in self.conjugacy_classes[c]))

    def chi(self, i: int) -> Callable[[int], Fraction]:
        """Characteristic function of the ``i``-th class."""
        members = frozenset(self.elements(i))
        return lambda g: Fraction(int(g in members))

    def to_json(self) -> Dict:
        names = self.group.names
        return {
            "group": self.group.name,
            "order": self.group.order,
            "conjugacy_classes": [[names[g] for g in c] for c in self.conjugacy_classes],
            "omega": [[names[g] for g in self.elements(i)] for i in range(len(self.classes))],
        }


def omega_classes(group: FiniteGroup, order_bound: int = DEFAULT_ORDER_BOUND) -> OmegaClasses:
    """Merge conjugacy classes ``c ~ c^e`` for every exponent ``e`` prime to
    the group order (these realize all profinite units on a finite group)."""
    if group.order > order_bound:
        raise ValueError(f"group order {group.order} exceeds the bound {order_bound}")
    ccs = tuple(group.conjugacy_classes())
    n = len(ccs)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    exps = [e for e in range(1, group.order + 1) if gcd(e, group.order) == 1]
    for i, c in enumerate(ccs):
        g = c[0]
        for e in exps:
            j = group.class_of(group.power(g, e))
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = tuple(tuple(sorted(v)) for _, v in sorted(groups.items()))
    return OmegaClasses(group, ccs, classes)


def hit_census(table: OrbitTable, m: int, omega: OmegaClasses) -> Dict[int, List[str]]:
    """Fixed points of ``f^m`` grouped by the class containing their label."""
    out: Dict[int, List[str]] = {i: [] for i in range(len(omega))}
    for r, ind, label, _ in table.at(m):
        if label is None:
            raise ValueError(f"orbit {r.id!r} has no class label")
        if ind == 0:
            continue
        out[omega.omega_of(label)].append(r.id)
    return out


def omega_lefschetz(table: OrbitTable, m: int, omega: OmegaClasses) -> List[Fraction]:
    """``L_m(f; chi_omega)`` for every class."""
    return [twisted_lefschetz(table, m, omega.chi(i)) for i in range(len(omega))]
