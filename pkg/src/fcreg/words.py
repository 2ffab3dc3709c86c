"""Primitive words, primitive roots, and root analysis of regular languages."""
from __future__ import annotations

from dataclasses import dataclass

from .automata import Dfa, as_alphabet, difference, minimize, shortest_accepted, Alphabet


@dataclass(frozen=True)
class RootDecomposition:
    root: str
    exponent: int

    def word(self) -> str:
        return self.root * self.exponent


def failure_function(w: str) -> list[int]:
    """KMP border table: ``f[i]`` is the longest proper border of ``w[:i+1]``."""
    f = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = f[k - 1]
        if w[i] == w[k]:
            k += 1
        f[i] = k
    return f


def smallest_period(w: str) -> int:
    if not w:
        raise ValueError("the empty word has no period")
    return len(w) - failure_function(w)[-1]


def primitive_root(w: str) -> RootDecomposition:
    """Primitive root and exponent of a nonempty word.

    If the smallest period divides ``|w|`` the prefix of that length is the
    root; otherwise ``w`` is primitive.
    """
    if not w:
        raise ValueError("primitive root is undefined for the empty word")
    p = smallest_period(w)
    if len(w) % p == 0:
        return RootDecomposition(w[:p], len(w) // p)
    return RootDecomposition(w, 1)


def root(w: str) -> str:
    return primitive_root(w).root


def is_primitive(w: str) -> bool:
    return primitive_root(w).exponent == 1


def is_internal_factor(u: str, w: str) -> bool:
    """``w = x u y`` for some nonempty ``x`` and ``y``."""
    start = w.find(u, 1)
    while start != -1:
        if start + len(u) < len(w):
            return True
        start = w.find(u, start + 1)
    return False


def commutes(u: str, v: str) -> bool:
    return u + v == v + u


def wstar_dfa(w: str, alphabet) -> Dfa:
    """Minimal DFA for ``{w^n : n >= 0}``; ``w = ""`` gives ``{""}``."""
    a = as_alphabet(alphabet)
    a.check_word(w)
    m = len(w)
    k = len(a)
    if m == 0:
        return Dfa(a, 2, 0, frozenset({0}), ((1,) * k, (1,) * k))
    sink = m
    rows = []
    for i in range(m):
        rows.append(tuple((i + 1) % m if c == w[i] else sink for c in a))
    rows.append((sink,) * k)
    return minimize(Dfa(a, m + 1, 0, frozenset({0}), rows))


# -- root classification ------------------------------------------------------


@dataclass(frozen=True)
class EmptyOrEpsilonOnly:
    """No nonempty word in the language."""


@dataclass(frozen=True)
class SingleRoot:
    """Every nonempty word is a power of ``root``; ``word`` is the shortest one."""

    root: str
    word: str


@dataclass(frozen=True)
class AtLeastTwoRoots:
    """``first`` and ``second`` are accepted and have different roots."""

    first: str
    second: str


RootClass = EmptyOrEpsilonOnly | SingleRoot | AtLeastTwoRoots


def roots_of_language(d: Dfa) -> RootClass:
    """Decide whether the nonempty words of ``L(d)`` share one primitive root.

    If any root is shared, it must be the root of the shortest nonempty word
    ``u``.  So the language has a single root iff it is contained in
    ``root(u)*``; otherwise the shortest word outside ``root(u)*`` is a
    witness with a different root.
    """
    u = shortest_accepted(d, nonempty_word_only=True)
    if u is None:
        return EmptyOrEpsilonOnly()
    r = root(u)
    outside = shortest_accepted(difference(d, wstar_dfa(r, d.alphabet)))
    if outside is None:
        return SingleRoot(r, u)
    # r* contains the empty word, so anything outside it is nonempty
    assert outside and root(outside) != r
    return AtLeastTwoRoots(u, outside)


__all__ = [
    "Alphabet",
    "AtLeastTwoRoots",
    "EmptyOrEpsilonOnly",
    "RootClass",
    "RootDecomposition",
    "SingleRoot",
    "commutes",
    "failure_function",
    "is_internal_factor",
    "is_primitive",
    "primitive_root",
    "root",
    "roots_of_language",
    "smallest_period",
    "wstar_dfa",
]
