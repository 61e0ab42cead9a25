"""Surface groups, free-group words and Fox calculus.

A word is a tuple of nonzero integers: ``i`` stands for generator ``i-1`` and
``-i`` for its inverse. Group-ring elements of the free group are dicts from
reduced words to integer coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

Word = Tuple[int, ...]
RingElt = Dict[Word, int]


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    punctures: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and punctures must be nonnegative")

    @property
    def closed(self) -> bool:
        return self.punctures == 0

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    @property
    def rank(self) -> int:
        """Number of generators of the one-vertex model."""
        return 2 * self.genus + (self.punctures - 1 if self.punctures else 0)

    @property
    def h1_rank(self) -> int:
        return self.rank

    def generator_names(self) -> List[str]:
        names = []
        for i in range(1, self.genus + 1):
            names += [f"a{i}", f"b{i}"]
        names += [f"c{i}" for i in range(1, self.punctures)]
        return names

    def relator(self) -> Word | None:
        """``[a1,b1]...[ag,bg]`` for closed surfaces, ``None`` otherwise."""
        if not self.closed:
            return None
        w: List[int] = []
        for i in range(self.genus):
            a, b = 2 * i + 1, 2 * i + 2
            w += [a, b, -a, -b]
        return tuple(w)

    def intersection_form(self) -> List[List[int]]:
        """Algebraic intersection pairing on the generator basis of H1.

        Puncture loops pair trivially with everything.
        """
        n = self.rank
        J = [[0] * n for _ in range(n)]
        for i in range(self.genus):
            J[2 * i][2 * i + 1] = 1
            J[2 * i + 1][2 * i] = -1
        return J


def reduce_word(w: Sequence[int]) -> Word:
    out: List[int] = []
    for x in w:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def word_mul(*ws: Sequence[int]) -> Word:
    out: List[int] = []
    for w in ws:
        out.extend(w)
    return reduce_word(out)


def substitute(w: Sequence[int], images: Sequence[Word]) -> Word:
    """Apply the endomorphism sending generator ``i`` to ``images[i]``."""
    out: List[int] = []
    for x in w:
        out.extend(images[x - 1] if x > 0 else invert_word(images[-x - 1]))
    return reduce_word(out)


def exponent_sums(w: Sequence[int], rank: int) -> List[int]:
    v = [0] * rank
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


_TOKEN = re.compile(r"\s*([A-Za-z]\w*)(?:\^(-?\d+))?\s*\*?")


def parse_word(text, names: Sequence[str]) -> Word:
    """Parse ``"a1 a1 b1^-1"`` (capitalized names also mean inverses).

    Lists of signed 1-based generator indices are accepted as well.
    """
    if isinstance(text, (list, tuple)):
        w = [int(x) for x in text]
        if any(x == 0 or abs(x) > len(names) for x in w):
            raise ValueError(f"word {text!r} uses an unknown generator index")
        return reduce_word(w)
    index = {n: i + 1 for i, n in enumerate(names)}
    out: List[int] = []
    pos = 0
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name in index:
            g = index[name]
        elif name.lower() in index and name != name.lower():
            g = -index[name.lower()]
        else:
            raise ValueError(f"unknown generator {name!r} in word {text!r}")
        out += [g if exp > 0 else -g] * abs(exp)
        pos = m.end()
    return reduce_word(out)


def format_word(w: Sequence[int], names: Sequence[str]) -> str:
    if not w:
        return "1"
    return " ".join(names[x - 1] if x > 0 else f"{names[-x - 1]}^-1" for x in w)


# -- group ring ---------------------------------------------------------


def ring_add(a: RingElt, b: RingElt, c: int = 1) -> RingElt:
    out = dict(a)
    for w, v in b.items():
        s = out.get(w, 0) + c * v
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def ring_mul(a: RingElt, b: RingElt) -> RingElt:
    out: RingElt = {}
    for u, x in a.items():
        for v, y in b.items():
            w = word_mul(u, v)
            s = out.get(w, 0) + x * y
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def augmentation(a: RingElt) -> int:
    return sum(a.values())


def fox_derivative(w: Sequence[int], gen: int) -> RingElt:
    """``d w / d x_gen`` (``gen`` is 1-based) in the free group ring."""
    out: RingElt = {}
    prefix: List[int] = []
    for x in w:
        if x == gen:
            out = ring_add(out, {reduce_word(prefix): 1})
        elif x == -gen:
            out = ring_add(out, {reduce_word(prefix + [x]): -1})
        prefix.append(x)
    return out


def fox_identity_holds(w: Sequence[int], rank: int) -> bool:
    """Check ``sum_x (dw/dx)(x - 1) == w - 1``."""
    total: RingElt = {}
    for g in range(1, rank + 1):
        total = ring_add(total, ring_mul(fox_derivative(w, g), {(g,): 1, (): -1}))
    return total == ring_add({reduce_word(w): 1}, {(): -1})


def surface_chain_complex(s: SurfaceSpec) -> Dict:
    """One-vertex CW model of the surface, boundaries over the free group ring.

    Chains are row vectors; ``d1[x]`` is the single entry ``x - 1`` of edge
    ``x`` and ``d2[x]`` the Fox derivative of the relator (closed case only).
    """
    r = s.rank
    d1 = [[{(g,): 1, (): -1}] for g in range(1, r + 1)]
    rel = s.relator()
    d2 = [[fox_derivative(rel, g) for g in range(1, r + 1)]] if rel is not None else []
    ranks = (1, r, 1 if rel is not None else 0)
    return {"ranks": ranks, "d1": d1, "d2": d2, "relator": rel}
