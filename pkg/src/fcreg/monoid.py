"""Transition monoids of minimal DFAs and the group-primitivity test.

For a minimal DFA, two words have the same image under the syntactic
morphism exactly when they act identically on every state, so the
syntactic monoid is computed as the monoid of state maps induced by words.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .automata import Dfa
from .words import AtLeastTwoRoots, EmptyOrEpsilonOnly, root, roots_of_language

DEFAULT_MONOID_CAP = 100_000


class MonoidTooLarge(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"transition monoid exceeds the cap of {cap} elements")
        self.cap = cap


@dataclass(frozen=True)
class TransitionMonoid:
    """Elements are state maps (``elements[i][q]`` is the image of ``q``).

    ``witness[i]`` is the length-lexicographically least word inducing
    element ``i``; ``right[i][j]`` is element ``i`` followed by letter ``j``;
    ``generators[c]`` is the element of the letter ``c``.  Products of
    arbitrary elements are computed by composing maps.
    """

    base: Dfa
    elements: tuple[tuple[int, ...], ...]
    witness: tuple[str, ...]
    right: tuple[tuple[int, ...], ...]
    identity: int
    generators: dict[str, int]
    index: dict[tuple[int, ...], int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        """Element of ``witness[i] + witness[j]``."""
        g = self.elements[j]
        return self.index[tuple(g[q] for q in self.elements[i])]

    @property
    def table(self) -> list[list[int]]:
        """Full multiplication table; quadratic, meant for small monoids."""
        n = len(self)
        return [[self.mul(i, j) for j in range(n)] for i in range(n)]

    def element_of(self, word: str) -> int:
        e = self.identity
        idx = self.base.alphabet.index
        for c in word:
            e = self.right[e][idx(c)]
        return e

    def power(self, x: int, k: int) -> int:
        e = self.identity
        for _ in range(k):
            e = self.mul(e, x)
        return e


def transition_monoid(d: Dfa, cap: int = DEFAULT_MONOID_CAP) -> TransitionMonoid:
    """BFS closure from the identity map under right multiplication by letters.

    Breadth-first order with letters in sorted order makes each recorded
    witness the shortlex-least word for its element.  Raises
    :class:`MonoidTooLarge` once more than ``cap`` elements appear.
    """
    ident = tuple(range(d.n))
    letter_maps = [tuple(d.delta[p][j] for p in range(d.n)) for j in range(len(d.alphabet))]
    index = {ident: 0}
    elements = [ident]
    witness = [""]
    right: list[tuple[int, ...]] = []
    i = 0
    while i < len(elements):
        f = elements[i]
        row = []
        for j, g in enumerate(letter_maps):
            h = tuple(g[q] for q in f)
            k = index.get(h)
            if k is None:
                if len(elements) >= cap:
                    raise MonoidTooLarge(cap)
                k = index[h] = len(elements)
                elements.append(h)
                witness.append(witness[i] + d.alphabet.letters[j])
            row.append(k)
        right.append(tuple(row))
        i += 1
    generators = {c: right[0][j] for j, c in enumerate(d.alphabet)}
    return TransitionMonoid(d, tuple(elements), tuple(witness), tuple(right), 0, generators, index)


def index_period(m: TransitionMonoid, x: int) -> tuple[int, int]:
    """Least ``(j, p)`` with ``j, p >= 1`` and ``x^(j+p) == x^j``."""
    seen: dict[int, int] = {}
    e = x
    k = 1
    while e not in seen:
        seen[e] = k
        e = m.mul(e, x)
        k += 1
    j = seen[e]
    return j, k - j


def is_periodic(m: TransitionMonoid, x: int) -> bool:
    return index_period(m, x)[1] >= 2


def periodic_elements(m: TransitionMonoid) -> list[int]:
    return [x for x in range(len(m)) if is_periodic(m, x)]


def preimage_dfa(m: TransitionMonoid, x: int) -> Dfa:
    """DFA over the monoid elements accepting the words that induce ``x``."""
    return Dfa(m.base.alphabet, len(m), m.identity, frozenset({x}), m.right)


@dataclass(frozen=True)
class NonPrimitivityWitness:
    element: int
    word1: str
    word2: str
    index_period: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "element": self.element,
            "word1": self.word1,
            "word2": self.word2,
            "index": self.index_period[0],
            "period": self.index_period[1],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NonPrimitivityWitness":
        return cls(data["element"], data["word1"], data["word2"], (data["index"], data["period"]))


def non_primitivity_witness(d: Dfa, monoid: TransitionMonoid | None = None,
                            cap: int = DEFAULT_MONOID_CAP) -> NonPrimitivityWitness | None:
    """A periodic element whose preimage has two roots, or None if the
    language of ``d`` is group primitive.  ``d`` must be minimal."""
    m = monoid if monoid is not None else transition_monoid(d, cap)
    for x in range(len(m)):
        j, p = index_period(m, x)
        if p < 2:
            continue
        cls = roots_of_language(preimage_dfa(m, x))
        # only the identity is induced by the empty word, and it is aperiodic
        assert not isinstance(cls, EmptyOrEpsilonOnly)
        if isinstance(cls, AtLeastTwoRoots):
            return NonPrimitivityWitness(x, cls.first, cls.second, (j, p))
    return None


def is_group_primitive(d: Dfa, cap: int = DEFAULT_MONOID_CAP) -> bool:
    return non_primitivity_witness(d, cap=cap) is None


def verify_non_primitivity(d: Dfa, w: NonPrimitivityWitness) -> bool:
    """Replay a certificate against ``d`` using only word runs.

    Both words must be nonempty with distinct roots and act identically on
    every state; that common action ``g`` must satisfy ``g^(j+p) == g^j``
    with ``(j, p)`` least and ``p >= 2``, i.e. ``g`` is periodic.
    """
    if not w.word1 or not w.word2 or root(w.word1) == root(w.word2):
        return False
    g1 = tuple(d.run(q, w.word1) for q in range(d.n))
    g2 = tuple(d.run(q, w.word2) for q in range(d.n))
    if g1 != g2:
        return False
    j, p = w.index_period
    if j < 1 or p < 2:
        return False

    def power(k: int) -> tuple[int, ...]:
        return tuple(d.run(q, w.word1 * k) for q in range(d.n))

    if power(j + p) != power(j):
        return False
    if j > 1 and power(j - 1 + p) == power(j - 1):
        return False
    return all(power(j + s) != power(j) for s in range(1, p))
