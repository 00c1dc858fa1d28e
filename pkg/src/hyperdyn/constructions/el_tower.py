"""Countable transitive point of (2^X, sigma_*) on {0,1}^Z with one accumulation point.

Odd-length equal-length word sets A_1, A_2, ... are listed by length and
then by subset bitmask over the lexicographically ordered words; the
special word of each set is its lexicographically first word.  Blocks are
glued into B_{k+1} = {b_k*}.A_{k+1}  u  B_k.{a_{k+1}*}, so every word of
B_k differs from the special word b_k* in at most one block.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice, product
from typing import Iterator

from ..symbolic.points import SymbolicPoint
from .families import TruncatedSetFamily


def enumerate_EL_sets(max_len: int) -> Iterator[tuple[tuple[str, ...], str]]:
    """Yield (A_k, a_k*) for all nonempty sets of equal odd length <= max_len.

    Lazy: length 5 alone has 2^32 - 1 sets.
    """
    if max_len < 1 or max_len % 2 == 0:
        raise ValueError("max_len must be odd and at least 1")
    for L in range(1, max_len + 1, 2):
        ws = ["".join(t) for t in product("01", repeat=L)]
        for mask in range(1, 2 ** len(ws)):
            A = tuple(w for i, w in enumerate(ws) if mask >> i & 1)
            yield A, A[0]


@dataclass(frozen=True)
class ELTower:
    A_list: tuple[tuple[str, ...], ...]
    specials: tuple[str, ...]               # a_k*
    B_list: tuple[frozenset, ...]
    b_specials: tuple[str, ...]             # b_k*

    @property
    def k_max(self) -> int:
        return len(self.A_list)

    def ell(self, k: int) -> int:
        """ell_k for 1-based k (block length is 2 ell_k + 1)."""
        return (len(self.A_list[k - 1][0]) - 1) // 2

    def N(self, k: int) -> int:
        """N_k = total length of the first k blocks; N_0 = 0."""
        return sum(len(A[0]) for A in self.A_list[:k])

    def blocks(self, word: str) -> list[str]:
        out, pos = [], 0
        for A in self.A_list:
            L = len(A[0])
            if pos >= len(word):
                break
            out.append(word[pos:pos + L])
            pos += L
        return out

    def nonspecial_blocks(self, word: str) -> list[int]:
        """1-based indices of blocks of ``word`` that differ from the special word."""
        return [k + 1 for k, b in enumerate(self.blocks(word)) if b != self.specials[k]]


def build_el_tower(k_max: int, max_len: int = 3) -> ELTower:
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    A = list(islice(enumerate_EL_sets(max_len), k_max))
    if len(A) < k_max:
        raise ValueError(f"only {len(A)} sets of length <= {max_len}")
    A_list = tuple(a for a, _ in A)
    specials = tuple(s for _, s in A)
    B = [frozenset(A_list[0])]
    b_star = [specials[0]]
    for k in range(1, k_max):
        left = {b_star[-1] + a for a in A_list[k]}
        right = {b + specials[k] for b in B[-1]}
        B.append(frozenset(left | right))
        b_star.append(b_star[-1] + specials[k])
    return ELTower(A_list, specials, tuple(B), tuple(b_star))


def build_el_set_family(tower: ELTower, depth: int) -> TruncatedSetFamily:
    """Members on coordinates -depth..depth: zeros at coordinates <= 0, then a B_K word.

    K is the least index with N_K >= depth; coordinates 1..depth are the
    prefixes of B_K words, which is all the window can see.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    K = next((k for k in range(1, tower.k_max + 1) if tower.N(k) >= depth), None)
    if K is None:
        raise ValueError(f"depth {depth} exceeds N_{tower.k_max} = {tower.N(tower.k_max)}")
    left = "0" * (depth + 1)
    members = frozenset(SymbolicPoint(left + b[:depth], -depth) for b in tower.B_list[K - 1])
    return TruncatedSetFamily(depth, members, f"el_tower(k_max={tower.k_max})", two_sided=True)


def special_member(tower: ELTower, depth: int) -> SymbolicPoint:
    K = next(k for k in range(1, tower.k_max + 1) if tower.N(k) >= depth)
    return SymbolicPoint("0" * (depth + 1) + tower.b_specials[K - 1][:depth], -depth)


def window_words(C: TruncatedSetFamily, shift: int, half_width: int) -> set[str]:
    """Words on coordinates -half_width..half_width of sigma^shift(C)."""
    out = set()
    for x in C.members:
        y = x.shift_two_sided(shift)
        out.add(y.segment(-half_width, half_width + 1))
    return out


def last_disagreement(x: SymbolicPoint, y: SymbolicPoint, lo: int, hi: int) -> int | None:
    """Largest coordinate in lo..hi-1 where x and y differ, None if they agree."""
    for i in range(hi - 1, lo - 1, -1):
        if x.symbol_at(i) != y.symbol_at(i):
            return i
    return None


def isolation_radius(x: SymbolicPoint, C: TruncatedSetFamily) -> int | None:
    """Least r such that no other member agrees with x on -r..r; None if none within the window."""
    others = [y for y in C.members if y != x]
    for r in range(0, C.depth + 1):
        seg = x.segment(-r, r + 1)
        if all(y.segment(-r, r + 1) != seg for y in others):
            return r
    return None


__all__ = [
    "enumerate_EL_sets", "ELTower", "build_el_tower", "build_el_set_family", "special_member",
    "window_words", "last_disagreement", "isolation_radius",
]
