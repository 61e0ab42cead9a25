"""Small finite groups given by multiplication tables.

Elements are the integers ``0..order-1`` with ``0`` the identity; every group
also carries a display name per element so JSON inputs can refer to them.
"""

from __future__ import annotations

from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class FiniteGroup:
    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None, name: str = "G"):
        n = len(table)
        if n == 0 or any(len(r) != n for r in table):
            raise ValueError("multiplication table must be square and nonempty")
        self.table = [list(r) for r in table]
        self.order = n
        self.name = name
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        ident = [e for e in range(n) if all(self.table[e][x] == x for x in range(n))]
        if not ident:
            raise ValueError("table has no identity")
        if ident[0] != 0:
            raise ValueError("identity must be element 0")
        self._inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == 0:
                    self._inv[a] = b
                    break
            else:
                raise ValueError(f"element {a} has no inverse")
        self._index = {s: i for i, s in enumerate(self.names)}
        self._classes = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z/{n}")

    @classmethod
    def from_permutations(cls, generators: Iterable[Sequence[int]], name: str = "G") -> "FiniteGroup":
        gens = [tuple(g) for g in generators]
        if not gens:
            return cls([[0]], names=["()"], name=name)
        deg = len(gens[0])
        e = tuple(range(deg))
        elems = [e]
        seen = {e: 0}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = _compose(x, g)
                    if y not in seen:
                        seen[y] = len(elems)
                        elems.append(y)
                        nxt.append(y)
            frontier = nxt
        table = [[seen[_compose(a, b)] for b in elems] for a in elems]
        grp = cls(table, names=[cycle_notation(p) for p in elems], name=name)
        grp.perms = elems
        return grp

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
        if n >= 3:
            gens.append(tuple(list(range(1, n)) + [0]))
        return cls.from_permutations(gens, name=f"S{n}")

    # -- structure ------------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def power(self, g: int, n: int) -> int:
        if n < 0:
            g, n = self.inv(g), -n
        result, base = 0, g
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def conjugate(self, h: int, g: int) -> int:
        """``h g h^-1``."""
        return self.mul(self.mul(h, g), self.inv(h))

    def conjugacy_classes(self) -> List[Tuple[int, ...]]:
        """Classes as sorted tuples, ordered by their smallest element."""
        if self._classes is None:
            seen = set()
            classes = []
            for g in range(self.order):
                if g in seen:
                    continue
                cls_ = sorted({self.conjugate(h, g) for h in range(self.order)})
                seen.update(cls_)
                classes.append(tuple(cls_))
            self._classes = classes
            self._class_of = {g: i for i, c in enumerate(classes) for g in c}
        return self._classes

    def class_of(self, g: int) -> int:
        self.conjugacy_classes()
        return self._class_of[g]

    def element(self, ref) -> int:
        """Resolve an element given by index or display name."""
        if isinstance(ref, int):
            if not 0 <= ref < self.order:
                raise ValueError(f"element index {ref} out of range")
            return ref
        if isinstance(ref, str):
            if ref in self._index:
                return self._index[ref]
            if ref.lstrip("-").isdigit():
                return self.element(int(ref))
        if isinstance(ref, (list, tuple)) and hasattr(self, "perms"):
            p = tuple(ref)
            if p in self.perms:
                return self.perms.index(p)
        raise ValueError(f"unknown group element {ref!r}")

    def relabel(self, perm: Sequence[int]) -> "FiniteGroup":
        """Isomorphic copy where element ``g`` becomes ``perm[g]`` (perm[0] must be 0)."""
        if perm[0] != 0:
            raise ValueError("relabeling must fix the identity")
        inv = [0] * self.order
        for g, p in enumerate(perm):
            inv[p] = g
        table = [[perm[self.table[inv[a]][inv[b]]] for b in range(self.order)] for a in range(self.order)]
        names = [self.names[inv[a]] for a in range(self.order)]
        return FiniteGroup(table, names=names, name=self.name)

    def units(self) -> List[int]:
        """Exponents in ``[1, |G|]`` coprime to ``|G|``."""
        return [e for e in range(1, self.order + 1) if gcd(e, self.order) == 1]

    def to_json(self) -> Dict:
        return {"type": "table", "table": self.table, "names": self.names, "name": self.name}

    @classmethod
    def from_json(cls, data: Dict) -> "FiniteGroup":
        kind = data.get("type", "table")
        if kind == "cyclic":
            return cls.cyclic(int(data["n"]))
        if kind == "symmetric":
            return cls.symmetric(int(data["n"]))
        if kind == "trivial":
            return cls([[0]], names=["e"], name="1")
        if kind == "permutation":
            return cls.from_permutations([[int(x) for x in g] for g in data["generators"]], name=data.get("name", "G"))
        if kind == "table":
            return cls([[int(x) for x in r] for r in data["table"]], names=data.get("names"), name=data.get("name", "G"))
        raise ValueError(f"unknown group type {kind!r}")


def _compose(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    """``p * q`` acting on the right: first p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def cycle_notation(p: Sequence[int]) -> str:
    seen = set()
    cycles = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"
