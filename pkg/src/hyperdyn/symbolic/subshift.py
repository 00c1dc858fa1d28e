"""Subshifts as scanning automata, cylinder patterns and exact hitting sets.

A subshift is described by a *scanner*: a right-resolving automaton whose
paths spell exactly the words occurring in points of the shift.  For a
finite-type shift the states are the (pruned) m-block vertices of the
word graph; the gap-parsing shift built by :func:`gap_three_subshift`
tracks the run of zeros since the last 1.  Feasibility of any finite set
of coordinate constraints is then a forward pass over state sets.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Hashable, Iterable, Iterator, Mapping, Protocol, Sequence

SYMBOLS = string.digits + string.ascii_lowercase


class InadmissibleError(ValueError):
    """A cylinder or word that no point of the subshift carries."""


# -- patterns ----------------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    """Finitely many coordinate constraints: position -> allowed symbols.

    The empty pattern is the whole space.
    """

    constraints: tuple[tuple[int, frozenset], ...] = ()

    @classmethod
    def from_mapping(cls, m: Mapping[int, Iterable[str]]) -> "Pattern":
        return cls(tuple(sorted((int(k), frozenset(v)) for k, v in m.items())))

    @classmethod
    def word(cls, word: str, offset: int = 0) -> "Pattern":
        return cls(tuple((offset + i, frozenset(c)) for i, c in enumerate(word)))

    def as_dict(self) -> dict[int, frozenset]:
        return dict(self.constraints)

    @property
    def positions(self) -> list[int]:
        return [p for p, _ in self.constraints]

    @property
    def span(self) -> tuple[int, int] | None:
        if not self.constraints:
            return None
        return self.constraints[0][0], self.constraints[-1][0] + 1

    def shift(self, n: int) -> "Pattern":
        """The pattern of f^-n(this set): every position moves n to the right."""
        return Pattern(tuple((p + n, s) for p, s in self.constraints))

    def meet(self, other: "Pattern") -> "Pattern | None":
        """Intersection of the two sets, or None if some position empties."""
        d = dict(self.constraints)
        for p, s in other.constraints:
            if p in d:
                s = d[p] & s
                if not s:
                    return None
            d[p] = s
        return Pattern(tuple(sorted(d.items())))

    def is_word(self) -> bool:
        if not self.constraints:
            return False
        lo, hi = self.span
        return len(self.constraints) == hi - lo and all(len(s) == 1 for _, s in self.constraints)

    def __str__(self) -> str:
        if not self.constraints:
            return "[*]"
        lo, hi = self.span
        d = self.as_dict()
        cells = []
        for i in range(lo, hi):
            s = d.get(i)
            if s is None:
                cells.append(".")
            elif len(s) == 1:
                cells.append(next(iter(s)))
            else:
                cells.append("{" + "".join(sorted(s)) + "}")
        text = "".join(cells)
        return f"[{text}]" if lo == 0 else f"[{lo}:{text}]"


@dataclass(frozen=True)
class CylinderSet:
    """The cylinder of points carrying ``base_word`` starting at ``offset``."""

    base_word: str
    offset: int = 0

    @property
    def pattern(self) -> Pattern:
        return Pattern.word(self.base_word, self.offset)

    def __str__(self) -> str:
        return f"[{self.base_word}]" if self.offset == 0 else f"[{self.offset}:{self.base_word}]"


WHOLE_SPACE = Pattern()


def as_pattern(x: "Pattern | CylinderSet | str") -> Pattern:
    if isinstance(x, Pattern):
        return x
    if isinstance(x, CylinderSet):
        return x.pattern
    if isinstance(x, str):
        return Pattern.word(x)
    raise TypeError(f"cannot read {x!r} as a cylinder pattern")


# -- scanners ----------------------------------------------------------------


State = Hashable


class Scanner(Protocol):
    def initial(self) -> frozenset: ...
    def step(self, state: State, symbol: str) -> State | None: ...
    def live(self, state: State) -> bool: ...


def _has_forbidden_suffix(word: str, forbidden: frozenset[str], max_len: int) -> bool:
    return any(word[-k:] in forbidden for k in range(1, min(max_len, len(word)) + 1))


class FiniteTypeScanner:
    """Word-graph automaton of a shift of finite type.

    Vertices are the admissible m-blocks (m = longest forbidden word - 1,
    at least 1).  One-sided shifts read from the empty context and keep
    only vertices with an infinite forward path; two-sided shifts start
    from, and stay inside, the vertices with infinite paths both ways.
    """

    def __init__(self, alphabet: str, forbidden: Iterable[str], two_sided: bool):
        self.alphabet = alphabet
        self.forbidden = frozenset(forbidden)
        self.two_sided = two_sided
        self.max_len = max((len(w) for w in self.forbidden), default=1)
        self.m = max(self.max_len - 1, 1)
        verts = [
            "".join(t) for t in product(alphabet, repeat=self.m)
            if not any(w in "".join(t) for w in self.forbidden)
        ]
        succ = {v: {(v + a)[1:] for a in alphabet if not _has_forbidden_suffix(v + a, self.forbidden, self.max_len)}
                for v in verts}
        alive = set(verts)
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                out = succ[v] & alive
                has_in = (not two_sided) or any(v in succ[u] for u in alive)
                if not out or not has_in:
                    alive.discard(v)
                    changed = True
        self.vertices = frozenset(alive)
        # short contexts (length < m) that still reach a live vertex
        live_short: set[str] = set()
        if not two_sided:
            for length in range(self.m - 1, -1, -1):
                for t in product(alphabet, repeat=length):
                    s = "".join(t)
                    if any(w in s for w in self.forbidden):
                        continue
                    for a in alphabet:
                        nxt = s + a
                        if _has_forbidden_suffix(nxt, self.forbidden, self.max_len):
                            continue
                        if (len(nxt) == self.m and nxt in self.vertices) or nxt in live_short:
                            live_short.add(s)
                            break
        self._live_short = frozenset(live_short)

    def initial(self) -> frozenset:
        if self.two_sided:
            return self.vertices
        return frozenset({""}) if "" in self._live_short or self.m == 0 else frozenset()

    def step(self, state: str, symbol: str):
        nxt = state + symbol
        if _has_forbidden_suffix(nxt, self.forbidden, self.max_len):
            return None
        return nxt[-self.m:] if len(nxt) > self.m else nxt

    def live(self, state: str) -> bool:
        if len(state) == self.m:
            return state in self.vertices
        return state in self._live_short


def is_gap_power_of_three(z: int) -> bool:
    """z = 3^m with m >= 1."""
    if z < 3:
        return False
    while z % 3 == 0:
        z //= 3
    return z == 1


class GapScanner:
    """Scanner for sequences 0^k 1 0^g1 1 0^g2 1 ... with every gap a power 3^m, m >= 1.

    State -1 means no 1 has been read yet; otherwise it is the number of
    zeros read since the last 1.  Every state extends forever by zeros.
    """

    alphabet = "01"

    def initial(self) -> frozenset:
        return frozenset({-1})

    def step(self, state: int, symbol: str):
        if symbol == "0":
            return -1 if state == -1 else state + 1
        if symbol == "1":
            if state == -1 or is_gap_power_of_three(state):
                return 0
            return None
        return None

    def live(self, state: int) -> bool:
        return True


# -- subshifts ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subshift:
    alphabet: str
    two_sided: bool
    description: str
    scanner: Scanner = field(repr=False)
    forbidden: tuple[str, ...] | None = None

    def __hash__(self) -> int:
        return hash((self.description, self.two_sided))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subshift) and (self.description, self.two_sided) == (other.description, other.two_sided)

    # feasibility -----------------------------------------------------------

    def feasible(self, pattern: "Pattern | CylinderSet | str") -> bool:
        return _feasible(self, as_pattern(pattern))

    def forward_states(self, pattern: Pattern, length: int) -> list[frozenset]:
        """State sets after reading positions 0..i-1, for i = 0..length.

        Only meaningful for one-sided shifts (patterns anchored at 0).
        """
        cons = pattern.as_dict()
        states = frozenset(s for s in self.scanner.initial() if self.scanner.live(s))
        out = [states]
        for p in range(length):
            states = self._advance(states, cons.get(p))
            out.append(states)
        return out

    def _advance(self, states: frozenset, allowed) -> frozenset:
        sc = self.scanner
        symbols = self.alphabet if allowed is None else [a for a in self.alphabet if a in allowed]
        nxt = set()
        for s in states:
            for a in symbols:
                t = sc.step(s, a)
                if t is not None and sc.live(t):
                    nxt.add(t)
        return frozenset(nxt)

    def admissible(self, word: str) -> bool:
        if any(c not in self.alphabet for c in word):
            return False
        return self.feasible(Pattern.word(word))

    def words_of_length(self, n: int) -> list[str]:
        """All words of length n occurring in points of the shift, lexicographically."""
        if n < 1:
            raise ValueError("n must be at least 1")
        if self.two_sided:
            return [w for w in ("".join(t) for t in product(self.alphabet, repeat=n)) if self.admissible(w)]
        out: list[str] = []
        sc = self.scanner

        def walk(prefix: str, states: frozenset):
            if len(prefix) == n:
                out.append(prefix)
                return
            for a in self.alphabet:
                nxt = frozenset(t for s in states if (t := sc.step(s, a)) is not None and sc.live(t))
                if nxt:
                    walk(prefix + a, nxt)

        walk("", frozenset(s for s in sc.initial() if sc.live(s)))
        return out

    def cylinders(self, depth: int) -> list[CylinderSet]:
        return [CylinderSet(w) for w in self.words_of_length(depth)]

    def check_cylinder(self, U: "Pattern | CylinderSet | str") -> Pattern:
        p = as_pattern(U)
        if not self.feasible(p):
            raise InadmissibleError(f"{U} is empty in {self.description}")
        return p

    def admits_periodic(self, cycle: str) -> bool:
        """Is the one-sided periodic point cycle^infinity in the shift?"""
        if not cycle or any(c not in self.alphabet for c in cycle):
            return False
        sc = self.scanner
        reps = max(4, -(-4 * getattr(sc, "m", 1) // len(cycle)) + 2)
        states = frozenset(s for s in sc.initial() if sc.live(s))
        # run through enough periods that the state sets cycle
        seen = []
        for _ in range(reps):
            for a in cycle:
                states = frozenset(t for s in states if (t := sc.step(s, a)) is not None and sc.live(t))
                if not states:
                    return False
            if states in seen:
                return True
            seen.append(states)
        # gap scanner states grow along an all-zero cycle; that cycle is admissible
        return True

    def __str__(self) -> str:
        return self.description


@lru_cache(maxsize=1 << 16)
def _feasible(S: Subshift, pattern: Pattern) -> bool:
    if not pattern.constraints:
        return bool(S.scanner.initial())
    lo, hi = pattern.span
    if not S.two_sided:
        if lo < 0:
            raise ValueError("one-sided patterns must use nonnegative coordinates")
        lo = 0
    cons = pattern.as_dict()
    states = frozenset(s for s in S.scanner.initial() if S.scanner.live(s))
    for p in range(lo, hi):
        states = S._advance(states, cons.get(p))
        if not states:
            return False
    return True


def full_shift(k: int = 2, two_sided: bool = False) -> Subshift:
    if not 1 <= k <= len(SYMBOLS):
        raise ValueError(f"alphabet size must be between 1 and {len(SYMBOLS)}")
    alphabet = SYMBOLS[:k]
    return Subshift(alphabet, two_sided, f"full:{k}", FiniteTypeScanner(alphabet, (), two_sided), ())


def finite_type(forbidden: Sequence[str], alphabet: str | None = None, two_sided: bool = False) -> Subshift:
    forbidden = tuple(w for w in forbidden if w)
    if alphabet is None:
        alphabet = "".join(sorted(set("".join(forbidden)) | set("01")))
    desc = "forbid:" + ",".join(forbidden)
    return Subshift(alphabet, two_sided, desc, FiniteTypeScanner(alphabet, forbidden, two_sided), forbidden)


def golden_mean(two_sided: bool = False) -> Subshift:
    return finite_type(["11"], "01", two_sided)


def gap_three_subshift() -> Subshift:
    """One-sided shift of sequences whose interior gaps between 1s are powers of 3.

    Leading zeros are unrestricted and a final infinite run of zeros is
    allowed, which is what taking the closure adds.
    """
    return Subshift("01", False, "thm52", GapScanner(), None)


def parse_subshift(text: str, two_sided: bool = False) -> Subshift:
    """``full:k``, ``forbid:w1,w2,...`` or the gap-three shift (``thm52`` or ``gap3``)."""
    text = text.strip()
    if text in ("thm52", "gap3"):
        if two_sided:
            raise ValueError(f"{text} is a one-sided shift")
        return gap_three_subshift()
    kind, _, arg = text.partition(":")
    if kind == "full":
        try:
            k = int(arg)
        except ValueError:
            raise ValueError(f"bad alphabet size in {text!r}") from None
        return full_shift(k, two_sided)
    if kind == "forbid":
        words = [w.strip() for w in arg.split(",") if w.strip()]
        if not words:
            raise ValueError("forbid: needs at least one word")
        return finite_type(words, None, two_sided)
    raise ValueError(f"unknown subshift spec {text!r}; use full:k, forbid:w1,w2, thm52 or gap3")


# -- products ----------------------------------------------------------------


def pair_symbol(i: int, j: int, k2: int) -> str:
    return SYMBOLS[i * k2 + j]


def product_subshift(S1: Subshift, S2: Subshift) -> Subshift:
    """S1 x S2 under the product shift, as a finite-type shift on pairs."""
    if S1.forbidden is None or S2.forbidden is None:
        raise ValueError("products are only built for finite-type factors")
    if S1.two_sided != S2.two_sided:
        raise ValueError("factors must have the same sidedness")
    k1, k2 = len(S1.alphabet), len(S2.alphabet)
    if k1 * k2 > len(SYMBOLS):
        raise ValueError("product alphabet too large")
    alphabet = SYMBOLS[: k1 * k2]
    idx1 = {a: i for i, a in enumerate(S1.alphabet)}
    idx2 = {a: i for i, a in enumerate(S2.alphabet)}
    forb = []
    for f in S1.forbidden:
        for other in product(range(k2), repeat=len(f)):
            forb.append("".join(pair_symbol(idx1[a], j, k2) for a, j in zip(f, other)))
    for f in S2.forbidden:
        for other in product(range(k1), repeat=len(f)):
            forb.append("".join(pair_symbol(i, idx2[b], k2) for i, b in zip(other, f)))
    desc = f"({S1.description})x({S2.description})"
    return Subshift(alphabet, S1.two_sided, desc, FiniteTypeScanner(alphabet, forb, S1.two_sided), tuple(forb))


def product_pattern(S1: Subshift, S2: Subshift, P1, P2) -> Pattern:
    """The pattern of P1 x P2 in ``product_subshift(S1, S2)``."""
    P1, P2 = as_pattern(P1), as_pattern(P2)
    d1, d2 = P1.as_dict(), P2.as_dict()
    k2 = len(S2.alphabet)
    out = {}
    for p in set(d1) | set(d2):
        a_set = d1.get(p, frozenset(S1.alphabet))
        b_set = d2.get(p, frozenset(S2.alphabet))
        out[p] = frozenset(
            pair_symbol(i, j, k2)
            for i, a in enumerate(S1.alphabet) if a in a_set
            for j, b in enumerate(S2.alphabet) if b in b_set
        )
    return Pattern.from_mapping(out)


# -- hitting sets ------------------------------------------------------------


@dataclass(frozen=True)
class HittingSet:
    horizon: int
    members: tuple[int, ...]

    def __post_init__(self):
        if any(not 1 <= n <= self.horizon for n in self.members):
            raise ValueError("members must lie in [1, horizon]")

    def __contains__(self, n: int) -> bool:
        return n in set(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def as_set(self) -> frozenset:
        return frozenset(self.members)

    def first(self) -> int | None:
        return self.members[0] if self.members else None


def hitting_set(S: Subshift, U, V, horizon: int, *, check: bool = True) -> HittingSet:
    """N(U, V) restricted to [1, horizon], decided exactly on the word graph.

    n is a member iff some point carries U and, n steps later, V; i.e.
    U meets sigma^-n(V).
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    pu, pv = as_pattern(U), as_pattern(V)
    if check:
        S.check_cylinder(pu)
        S.check_cylinder(pv)
    return HittingSet(horizon, _hits(S, pu, pv, horizon))


@lru_cache(maxsize=1 << 14)
def _hits(S: Subshift, pu: Pattern, pv: Pattern, horizon: int) -> tuple[int, ...]:
    if not pu.constraints or not pv.constraints:
        other = pv if not pu.constraints else pu
        return tuple(range(1, horizon + 1)) if _feasible(S, other) else ()
    if S.two_sided or pv.span[0] < 0:
        return tuple(n for n in range(1, horizon + 1) if _meet_feasible(S, pu, pv.shift(n)))
    # one-sided: once V sits to the right of U, reuse the forward state sets of U
    u_hi = pu.span[1]
    v_lo, v_hi = pv.span
    fwd = S.forward_states(pu, max(u_hi, horizon + v_lo))
    vcons = pv.as_dict()
    out = []
    for n in range(1, horizon + 1):
        if n + v_lo < u_hi:
            if _meet_feasible(S, pu, pv.shift(n)):
                out.append(n)
            continue
        states = fwd[n + v_lo]
        for p in range(v_lo, v_hi):
            states = S._advance(states, vcons.get(p))
            if not states:
                break
        if states:
            out.append(n)
    return tuple(out)


def _meet_feasible(S: Subshift, a: Pattern, b: Pattern) -> bool:
    m = a.meet(b)
    return m is not None and _feasible(S, m)


def preimage(P, n: int) -> Pattern:
    """Pattern of sigma^-n(P)."""
    return as_pattern(P).shift(n)


def intersect(*patterns) -> Pattern | None:
    out = WHOLE_SPACE
    for p in patterns:
        out = out.meet(as_pattern(p))
        if out is None:
            return None
    return out


def expand_pattern(S: Subshift, P: Pattern) -> list[CylinderSet]:
    """Write a pattern as a finite union of cylinders over its span."""
    if not P.constraints:
        return [CylinderSet("")]
    lo, hi = P.span
    if not S.two_sided:
        lo = 0
    d = P.as_dict()
    choices = [sorted(d.get(i, S.alphabet)) for i in range(lo, hi)]
    out = []
    for t in product(*choices):
        w = "".join(t)
        if S.feasible(Pattern.word(w, lo)):
            out.append(CylinderSet(w, lo))
    return out


__all__ = [
    "SYMBOLS", "InadmissibleError", "Pattern", "CylinderSet", "WHOLE_SPACE", "as_pattern",
    "Scanner", "FiniteTypeScanner", "GapScanner", "is_gap_power_of_three", "Subshift",
    "full_shift", "finite_type", "golden_mean", "gap_three_subshift", "parse_subshift",
    "pair_symbol", "product_subshift", "product_pattern", "HittingSet", "hitting_set",
    "preimage", "intersect", "expand_pattern",
]
