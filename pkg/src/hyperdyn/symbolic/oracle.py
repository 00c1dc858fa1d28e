"""Reference hitting sets by direct window enumeration.

This deliberately shares nothing with the word-graph scanners: windows are
grown symbol by symbol and each prefix is tested with a plain predicate
on the whole word (forbidden-factor search, or gap parsing for the
powers-of-three shift).  It is slow and only meant for cross-checking.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable

from .subshift import as_pattern

WordPredicate = Callable[[str], bool]


def forbidden_factor_predicate(forbidden: Iterable[str]) -> WordPredicate:
    forbidden = [w for w in forbidden if w]
    return lambda word: not any(f in word for f in forbidden)


_ONE_RUNS = re.compile(r"1(0*)(?=1)")


def gap_predicate(word: str) -> bool:
    """Every run of zeros strictly between two 1s has length 3^m, m >= 1."""
    for m in _ONE_RUNS.finditer(word):
        g = len(m.group(1))
        if g < 3:
            return False
        while g % 3 == 0:
            g //= 3
        if g != 1:
            return False
    return True


def brute_force_feasible(
    alphabet: str, predicate: WordPredicate, pattern, extension: int
) -> bool:
    """Is there a word over positions 0..end+extension-1 that obeys the
    pattern and whose every prefix satisfies ``predicate``?"""
    pattern = as_pattern(pattern)
    cons = pattern.as_dict()
    end = (pattern.span[1] if pattern.constraints else 0) + extension

    def grow(word: str) -> bool:
        if len(word) == end:
            return True
        allowed = cons.get(len(word))
        for a in alphabet:
            if allowed is not None and a not in allowed:
                continue
            w = word + a
            if predicate(w) and grow(w):
                return True
        return False

    return grow("")


def brute_force_hitting_set(
    alphabet: str, predicate: WordPredicate, U, V, horizon: int, extension: int
) -> tuple[int, ...]:
    pu, pv = as_pattern(U), as_pattern(V)
    out = []
    for n in range(1, horizon + 1):
        m = pu.meet(pv.shift(n))
        if m is not None and brute_force_feasible(alphabet, predicate, m, extension):
            out.append(n)
    return tuple(out)


def sft_extension_length(alphabet: str, forbidden: Iterable[str]) -> int:
    """Right-extension length that certifies infinite extendability.

    A word that extends by more than (number of m-blocks) + m symbols
    traverses a cycle of the m-block graph and so extends forever.
    """
    forbidden = [w for w in forbidden if w]
    m = max(max((len(w) for w in forbidden), default=1) - 1, 1)
    return len(alphabet) ** m + m


def oracle_for(S) -> tuple[str, WordPredicate, int]:
    """(alphabet, predicate, extension) describing a one-sided subshift."""
    if S.two_sided:
        raise ValueError("the window oracle handles one-sided shifts only")
    if S.forbidden is not None:
        return S.alphabet, forbidden_factor_predicate(S.forbidden), sft_extension_length(S.alphabet, S.forbidden)
    if S.description == "thm52":
        # any admissible window continues with zeros forever
        return S.alphabet, gap_predicate, 0
    raise ValueError(f"no oracle for {S.description}")


__all__ = [
    "forbidden_factor_predicate", "gap_predicate", "brute_force_feasible",
    "brute_force_hitting_set", "sft_extension_length", "oracle_for",
]
