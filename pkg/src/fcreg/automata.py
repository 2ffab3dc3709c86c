"""Complete DFAs, epsilon-NFAs and the usual regular-language toolbox.

States are plain integers ``0..n-1`` and the transition function is stored
as a tuple of rows, ``delta[state][letter_index]``.  Every :class:`Dfa` is
complete; operations that could produce a partial machine add an explicit
sink instead.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterable, Iterator, Sequence


class AutomatonError(ValueError):
    """Malformed automaton or an operation applied to incompatible inputs."""


class AlphabetMismatch(AutomatonError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Sorted tuple of distinct single-character letters."""

    letters: tuple[str, ...]

    def __init__(self, letters: Iterable[str]):
        letters = list(letters)
        for c in letters:
            if not isinstance(c, str) or len(c) != 1:
                raise AutomatonError(f"letters must be single characters, got {c!r}")
        if len(set(letters)) != len(letters):
            raise AutomatonError(f"duplicate letters in alphabet {letters!r}")
        if not letters:
            raise AutomatonError("alphabet must contain at least one letter")
        object.__setattr__(self, "letters", tuple(sorted(letters)))
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.letters)})

    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, c: object) -> bool:
        return c in self._index

    def index(self, c: str) -> int:
        try:
            return self._index[c]
        except KeyError:
            raise AutomatonError(f"letter {c!r} is not in alphabet {''.join(self.letters)!r}") from None

    def check_word(self, word: str) -> None:
        for c in word:
            self.index(c)

    def words(self, max_len: int) -> Iterator[str]:
        """All words of length <= max_len in length-lexicographic order."""
        for n in range(max_len + 1):
            for t in _cartesian(self.letters, repeat=n):
                yield "".join(t)


def as_alphabet(a: Alphabet | Iterable[str]) -> Alphabet:
    return a if isinstance(a, Alphabet) else Alphabet(a)


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    n: int
    initial: int
    accepting: frozenset[int]
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        if self.n < 1:
            raise AutomatonError("a DFA needs at least one state")
        if not 0 <= self.initial < self.n:
            raise AutomatonError(f"initial state {self.initial} out of range")
        if any(not 0 <= q < self.n for q in self.accepting):
            raise AutomatonError("accepting states out of range")
        if len(self.delta) != self.n:
            raise AutomatonError("transition table has the wrong number of rows")
        k = len(self.alphabet)
        for p, row in enumerate(self.delta):
            if len(row) != k:
                raise AutomatonError(f"state {p} is missing transitions")
            if any(not 0 <= q < self.n for q in row):
                raise AutomatonError(f"state {p} has a transition out of range")

    @property
    def states(self) -> range:
        return range(self.n)

    def step(self, state: int, letter: str) -> int:
        return self.delta[state][self.alphabet.index(letter)]

    def run(self, state: int, word: str) -> int:
        """Iterated transition function from ``state``."""
        idx = self.alphabet.index
        delta = self.delta
        for c in word:
            state = delta[state][idx(c)]
        return state

    def accepts(self, word: str) -> bool:
        return self.run(self.initial, word) in self.accepting

    def with_initial(self, initial: int, accepting: Iterable[int] | None = None) -> "Dfa":
        if not 0 <= initial < self.n:
            raise AutomatonError(f"state {initial} out of range")
        acc = self.accepting if accepting is None else frozenset(accepting)
        return Dfa(self.alphabet, self.n, initial, acc, self.delta)


@dataclass(frozen=True)
class Nfa:
    """Epsilon-NFA; a transition label of ``None`` is an epsilon move."""

    alphabet: Alphabet
    n: int
    initial: frozenset[int]
    accepting: frozenset[int]
    transitions: frozenset[tuple[int, str | None, int]]

    def __post_init__(self):
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        for q in self.initial | self.accepting:
            if not 0 <= q < self.n:
                raise AutomatonError(f"NFA state {q} does not exist")
        for p, c, q in self.transitions:
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise AutomatonError(f"NFA transition ({p}, {c!r}, {q}) references a missing state")
            if c is not None and c not in self.alphabet:
                raise AutomatonError(f"NFA transition label {c!r} not in alphabet")


# -- constructors -----------------------------------------------------------


def empty_dfa(alphabet) -> Dfa:
    a = as_alphabet(alphabet)
    return Dfa(a, 1, 0, frozenset(), ((0,) * len(a),))


def universal_dfa(alphabet) -> Dfa:
    a = as_alphabet(alphabet)
    return Dfa(a, 1, 0, frozenset({0}), ((0,) * len(a),))


def word_dfa(word: str, alphabet) -> Dfa:
    """Minimal DFA for the singleton language {word}."""
    a = as_alphabet(alphabet)
    a.check_word(word)
    m = len(word)
    sink = m + 1
    rows = []
    for i in range(m + 1):
        rows.append(tuple(i + 1 if i < m and c == word[i] else sink for c in a))
    rows.append((sink,) * len(a))
    return Dfa(a, m + 2, 0, frozenset({m}), rows)


def dfa_from_dict(alphabet, n: int, initial: int, accepting, trans: dict, complete: bool = False) -> Dfa:
    """Build from ``{(state, letter): state}``.  Missing edges are an error
    unless ``complete`` asks for a fresh rejecting sink."""
    a = as_alphabet(alphabet)
    rows = []
    sink = n
    used_sink = False
    for p in range(n):
        row = []
        for c in a:
            q = trans.get((p, c))
            if q is None:
                if not complete:
                    raise AutomatonError(f"missing transition for state {p} on {c!r}")
                q = sink
                used_sink = True
            row.append(q)
        rows.append(tuple(row))
    if used_sink:
        rows.append((sink,) * len(a))
        n += 1
    return Dfa(a, n, initial, frozenset(accepting), rows)


def dfa_to_nfa(d: Dfa) -> Nfa:
    trans = {(p, c, d.delta[p][i]) for p in d.states for i, c in enumerate(d.alphabet)}
    return Nfa(d.alphabet, d.n, frozenset({d.initial}), d.accepting, frozenset(trans))


# -- determinization and minimization --------------------------------------


def _eps_closure(states: Iterable[int], eps: dict[int, list[int]]) -> frozenset[int]:
    seen = set(states)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for q in eps.get(p, ()):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction; the empty subset becomes an explicit sink."""
    eps: dict[int, list[int]] = {}
    move: dict[tuple[int, str], list[int]] = {}
    for p, c, q in nfa.transitions:
        if c is None:
            eps.setdefault(p, []).append(q)
        else:
            move.setdefault((p, c), []).append(q)

    start = _eps_closure(nfa.initial, eps)
    ids = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    i = 0
    while i < len(order):
        subset = order[i]
        row = []
        for c in nfa.alphabet:
            nxt = _eps_closure((q for p in subset for q in move.get((p, c), ())), eps)
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
        i += 1
    accepting = {ids[s] for s in order if s & nfa.accepting}
    return Dfa(nfa.alphabet, len(order), 0, frozenset(accepting), rows)


def reachable_states(d: Dfa, start: int | None = None) -> list[int]:
    """States reachable from ``start`` in BFS order over the sorted alphabet."""
    s = d.initial if start is None else start
    seen = {s}
    order = [s]
    i = 0
    while i < len(order):
        for q in d.delta[order[i]]:
            if q not in seen:
                seen.add(q)
                order.append(q)
        i += 1
    return order


def minimize(d: Dfa) -> Dfa:
    """Minimal complete DFA, canonically numbered.

    Unreachable states are dropped, then Moore-style partition refinement
    merges equivalent states, and the quotient is renumbered in BFS order
    from the initial state (letters in sorted order).  Two DFAs accept the
    same language iff their minimizations compare equal.
    """
    live = reachable_states(d)
    pos = {q: i for i, q in enumerate(live)}
    delta = [tuple(pos[q] for q in d.delta[p]) for p in live]
    block = [1 if p in d.accepting else 0 for p in live]
    nblocks = len(set(block))
    while True:
        sigs: dict[tuple, int] = {}
        new = []
        for p in range(len(live)):
            key = (block[p],) + tuple(block[q] for q in delta[p])
            new.append(sigs.setdefault(key, len(sigs)))
        block = new
        if len(sigs) == nblocks:
            break
        nblocks = len(sigs)

    # quotient, then canonical BFS renumbering
    qdelta: dict[int, tuple[int, ...]] = {}
    qacc = set()
    for p in range(len(live)):
        qdelta.setdefault(block[p], tuple(block[q] for q in delta[p]))
        if live[p] in d.accepting:
            qacc.add(block[p])
    start = block[0]
    canon = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        for q in qdelta[order[i]]:
            if q not in canon:
                canon[q] = len(order)
                order.append(q)
        i += 1
    rows = [tuple(canon[q] for q in qdelta[b]) for b in order]
    return Dfa(d.alphabet, len(order), 0, frozenset(canon[b] for b in qacc), rows)


def is_minimal(d: Dfa) -> bool:
    """True iff no complete DFA with fewer states accepts the same language.

    State numbering is ignored; compare with ``minimize(d) == d`` for the
    canonical form."""
    return minimize(d).n == d.n


# -- Boolean operations ----------------------------------------------------


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.n, d.initial, frozenset(d.states) - d.accepting, d.delta)


_MODES = {
    "intersect": lambda x, y: x and y,
    "union": lambda x, y: x or y,
    "difference": lambda x, y: x and not y,
    "xor": lambda x, y: x != y,
}


def _check_same_alphabet(d1: Dfa, d2: Dfa) -> None:
    if d1.alphabet != d2.alphabet:
        raise AlphabetMismatch(
            f"alphabets differ: {''.join(d1.alphabet)!r} vs {''.join(d2.alphabet)!r}"
        )


def product(d1: Dfa, d2: Dfa, mode: str = "intersect") -> Dfa:
    """Pair construction over the reachable part of ``d1 x d2``."""
    _check_same_alphabet(d1, d2)
    try:
        keep = _MODES[mode]
    except KeyError:
        raise AutomatonError(f"unknown product mode {mode!r}") from None
    start = (d1.initial, d2.initial)
    ids = {start: 0}
    order = [start]
    rows = []
    i = 0
    k = len(d1.alphabet)
    while i < len(order):
        p, q = order[i]
        row = []
        for j in range(k):
            nxt = (d1.delta[p][j], d2.delta[q][j])
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
        i += 1
    acc = {ids[(p, q)] for p, q in order if keep(p in d1.accepting, q in d2.accepting)}
    return Dfa(d1.alphabet, len(order), 0, frozenset(acc), rows)


def intersect(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, "intersect")


def union(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, "union")


def difference(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, "difference")


# -- queries ----------------------------------------------------------------


def accepts(d: Dfa, word: str) -> bool:
    return d.accepts(word)


def is_empty(d: Dfa) -> bool:
    return not any(q in d.accepting for q in reachable_states(d))


def shortest_accepted(d: Dfa, nonempty_word_only: bool = False) -> str | None:
    """Length-lexicographically least accepted word, or None.

    With ``nonempty_word_only`` the empty word is skipped even if accepted.
    """
    if not nonempty_word_only and d.initial in d.accepting:
        return ""
    # BFS over (state) from the successors of the initial state; parents give
    # the shortlex-least path because letters are explored in sorted order.
    letters = d.alphabet.letters
    parent: dict[int, tuple[int | None, str]] = {}
    queue: deque[int] = deque()
    for j, c in enumerate(letters):
        q = d.delta[d.initial][j]
        if q not in parent:
            parent[q] = (None, c)
            queue.append(q)
    while queue:
        p = queue.popleft()
        if p in d.accepting:
            out = []
            node: int | None = p
            while node is not None:
                prev, c = parent[node]
                out.append(c)
                node = prev
            return "".join(reversed(out))
        for j, c in enumerate(letters):
            q = d.delta[p][j]
            if q not in parent:
                parent[q] = (p, c)
                queue.append(q)
    return None


def enumerate_language(d: Dfa, max_len: int) -> list[str]:
    """All accepted words of length <= max_len, length-lexicographic order."""
    out = []
    letters = d.alphabet.letters
    level = [("", d.initial)]
    for n in range(max_len + 1):
        out.extend(w for w, q in level if q in d.accepting)
        if n == max_len:
            break
        level = [(w + c, d.delta[q][j]) for w, q in level for j, c in enumerate(letters)]
    return out


def between_states_dfa(d: Dfa, p: int, q: int) -> Dfa:
    """DFA for the words leading from state ``p`` to state ``q``."""
    if not (0 <= p < d.n and 0 <= q < d.n):
        raise AutomatonError(f"state pair ({p}, {q}) out of range for a {d.n}-state DFA")
    return Dfa(d.alphabet, d.n, p, frozenset({q}), d.delta)


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    return is_empty(product(d1, d2, "xor"))


def included(d1: Dfa, d2: Dfa) -> bool:
    """L(d1) is a subset of L(d2)."""
    return is_empty(product(d1, d2, "difference"))


# -- NFA combinators used by the expression compiler --------------------------


def _shift(nfa: Nfa, k: int):
    return {(p + k, c, q + k) for p, c, q in nfa.transitions}


def nfa_union(a: Nfa, b: Nfa) -> Nfa:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("alphabets differ")
    k = a.n
    return Nfa(
        a.alphabet,
        a.n + b.n,
        a.initial | {q + k for q in b.initial},
        a.accepting | {q + k for q in b.accepting},
        frozenset(a.transitions | _shift(b, k)),
    )


def nfa_concat(a: Nfa, b: Nfa) -> Nfa:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("alphabets differ")
    k = a.n
    trans = set(a.transitions) | _shift(b, k)
    trans |= {(f, None, s + k) for f in a.accepting for s in b.initial}
    return Nfa(a.alphabet, a.n + b.n, a.initial, frozenset(q + k for q in b.accepting), frozenset(trans))


# -- text format ---------------------------------------------------------------


def parse_dfa_text(text: str, complete: bool = False) -> Dfa:
    """Parse the line-oriented DFA format::

        alphabet: a b
        states: 2
        initial: 0
        accepting: 0
        trans: 0 a 1
        ...

    ``#`` starts a comment.  Incomplete transition functions are rejected
    unless ``complete`` is set, in which case a rejecting sink is added.
    """
    alphabet = states = initial = None
    accepting: list[int] = []
    trans: dict[tuple[int, str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise AutomatonError(f"line {lineno}: expected 'key: value', got {raw!r}")
        key = key.strip()
        parts = rest.split()
        try:
            if key == "alphabet":
                alphabet = Alphabet(parts)
            elif key == "states":
                (states,) = map(int, parts)
            elif key == "initial":
                (initial,) = map(int, parts)
            elif key == "accepting":
                accepting = [int(x) for x in parts]
            elif key == "trans":
                p, c, q = parts
                if (int(p), c) in trans:
                    raise AutomatonError(f"duplicate transition for ({p}, {c!r})")
                trans[(int(p), c)] = int(q)
            else:
                raise AutomatonError(f"unknown key {key!r}")
        except (ValueError, TypeError) as exc:
            if isinstance(exc, AutomatonError):
                raise AutomatonError(f"line {lineno}: {exc}") from None
            raise AutomatonError(f"line {lineno}: cannot parse {raw!r}") from None
    if alphabet is None or states is None or initial is None:
        raise AutomatonError("DFA text must declare alphabet, states and initial")
    for (p, c), q in trans.items():
        if c not in alphabet:
            raise AutomatonError(f"transition letter {c!r} not in alphabet")
        if not (0 <= p < states and 0 <= q < states):
            raise AutomatonError(f"transition ({p}, {c!r}, {q}) references a missing state")
    return dfa_from_dict(alphabet, states, initial, accepting, trans, complete=complete)


def format_dfa_text(d: Dfa) -> str:
    lines = [
        "alphabet: " + " ".join(d.alphabet),
        f"states: {d.n}",
        f"initial: {d.initial}",
        "accepting: " + " ".join(str(q) for q in sorted(d.accepting)),
    ]
    for p in d.states:
        for j, c in enumerate(d.alphabet):
            lines.append(f"trans: {p} {c} {d.delta[p][j]}")
    return "\n".join(lines) + "\n"


def to_dot(d: Dfa) -> str:
    out = ["digraph dfa {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for p in d.states:
        shape = "doublecircle" if p in d.accepting else "circle"
        out.append(f"  {p} [shape={shape}];")
    out.append(f"  __start -> {d.initial};")
    edges: dict[tuple[int, int], list[str]] = {}
    for p in d.states:
        for j, c in enumerate(d.alphabet):
            edges.setdefault((p, d.delta[p][j]), []).append(c)
    for (p, q), cs in sorted(edges.items()):
        out.append(f'  {p} -> {q} [label="{",".join(cs)}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def transformation(d: Dfa, word: str) -> tuple[int, ...]:
    """The state map induced by ``word``."""
    return tuple(d.run(p, word) for p in d.states)


def all_words(alphabet: Sequence[str] | Alphabet, max_len: int) -> Iterator[str]:
    return as_alphabet(alphabet).words(max_len)
