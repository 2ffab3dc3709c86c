"""Brute-force oracles, instance generators and small-automata corpora.

Everything here is deliberately naive: it exists to check the real
decision procedures, so it must not share their shortcuts.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as cartesian

from .automata import Alphabet, Dfa, as_alphabet, minimize
from .fc import Atom, Const, EpsConst, Exists, FcFormula, Forall, FreeVariableError, Not, Var
from .fc import And as FcAnd, Or as FcOr
from .loopstep import LoopStepWitness, cyclic_tuples
from .words import root

MAX_ENUM_STATES = 4


@dataclass(frozen=True)
class DfaCorpus:
    alphabet: Alphabet
    dfas: tuple[Dfa, ...]

    def __len__(self) -> int:
        return len(self.dfas)

    def __iter__(self):
        return iter(self.dfas)

    def __contains__(self, d: object) -> bool:
        return isinstance(d, Dfa) and minimize(d) in set(self.dfas)


def enumerate_minimal_dfas(alphabet, max_states: int) -> DfaCorpus:
    """Every language recognised by a complete DFA with at most
    ``max_states`` states, as canonical minimal DFAs.

    The initial state is fixed to 0: renaming states turns any machine with
    another initial state into one of these, so no language is missed.
    """
    a = as_alphabet(alphabet)
    if not 1 <= max_states <= MAX_ENUM_STATES:
        raise ValueError(f"max_states must be between 1 and {MAX_ENUM_STATES}")
    k = len(a)
    seen: dict[Dfa, None] = {}
    for n in range(1, max_states + 1):
        for flat in cartesian(range(n), repeat=n * k):
            rows = [flat[p * k:(p + 1) * k] for p in range(n)]
            for mask in range(1 << n):
                acc = frozenset(q for q in range(n) if mask >> q & 1)
                seen.setdefault(minimize(Dfa(a, n, 0, acc, rows)), None)
    ordered = sorted(seen, key=lambda d: (d.n, sorted(d.accepting), d.delta))
    return DfaCorpus(a, tuple(ordered))


def random_minimal_dfa(alphabet, states: int, seed: int) -> Dfa:
    """Seeded random complete DFA, minimized.

    Transitions are uniform and independent, the initial state is 0, and
    the accepting set is a uniform subset redrawn while empty or full.
    """
    a = as_alphabet(alphabet)
    rng = random.Random(seed)
    rows = [tuple(rng.randrange(states) for _ in a) for _ in range(states)]
    while True:
        acc = frozenset(q for q in range(states) if rng.random() < 0.5)
        if states == 1 or 0 < len(acc) < states:
            break
    return minimize(Dfa(a, states, 0, acc, rows))


def brute_force_loop_step(d: Dfa, max_word_len: int) -> LoopStepWitness | None:
    """Search all cyclic tuples and all word pairs up to ``max_word_len``.

    Finding nothing only means there is no short witness.
    """
    words = [w for w in d.alphabet.words(max_word_len) if w]
    action = {w: tuple(d.run(q, w) for q in range(d.n)) for w in words}
    for n in range(2, d.n + 1):
        for tup in cyclic_tuples(d.n, n):
            fixers = [w for w in words if all(action[w][p] == p for p in tup)]
            if not fixers:
                continue
            shifters = [w for w in words
                        if all(action[w][tup[i]] == tup[(i + 1) % n] for i in range(n))]
            for w in fixers:
                for v in shifters:
                    if root(w) != root(v):
                        return LoopStepWitness(tup, w, v)
    return None


def naive_is_primitive(w: str) -> bool:
    """Primitivity via the internal-factor characterisation: ``w`` is
    primitive iff it does not occur in ``ww`` away from both ends."""
    if not w:
        raise ValueError("empty word")
    ww = w + w
    return not any(ww[i:i + len(w)] == w for i in range(1, len(w)))


def hard_pair(w: str, v: str, n: int) -> tuple[str, str]:
    """The images of 0 and 1 under the morphism used to pump a loop-step
    cycle: ``w^(n|v|) v^(n|w|+n+1)`` and ``w^(2n|v|) v^(n+1)``."""
    if not w or not v:
        raise ValueError("words must be nonempty")
    if n < 2:
        raise ValueError("n must be at least 2")
    if root(w) == root(v):
        raise ValueError(f"{w!r} and {v!r} have the same primitive root")
    h0 = w * (n * len(v)) + v * (n * len(w) + n + 1)
    h1 = w * (2 * n * len(v)) + v * (n + 1)
    return h0, h1


def hard_pair_length(w: str, v: str, n: int) -> int:
    return 2 * n * len(v) * len(w) + n * len(v) + len(v)


def is_bifix(u: str, v: str) -> bool:
    """Neither word is a prefix or a suffix of the other."""
    return not (u.startswith(v) or v.startswith(u) or u.endswith(v) or v.endswith(u))


def encode_set_word(a) -> str:
    """``1 0^a1 1 0^a2 1 ... 1 0^an 1`` for the elements in increasing order."""
    elems = sorted(set(a))
    if not elems:
        raise ValueError("the encoding is only defined for nonempty sets")
    if any(x < 0 for x in elems):
        raise ValueError("elements must be natural numbers")
    return "1" + "".join("0" * x + "1" for x in elems)


def naive_eval_fc(word: str, phi: FcFormula, env: dict[str, str] | None = None) -> bool:
    """Reference model checker: materialise the universe and the ternary
    concatenation relation, then try every assignment."""
    universe = sorted({word[i:j] for i in range(len(word) + 1) for j in range(i, len(word) + 1)})
    concat = {(a, b, c) for a in universe for b in universe for c in universe if a == b + c}
    present = set(word)

    def val(t, env):
        if isinstance(t, Var):
            if t.name not in env:
                raise FreeVariableError(t.name)
            return env[t.name]
        if isinstance(t, Const):
            return t.letter if t.letter in present else None
        assert isinstance(t, EpsConst)
        return ""

    def sat(f, env) -> bool:
        if isinstance(f, Atom):
            return (val(f.x, env), val(f.y, env), val(f.z, env)) in concat
        if isinstance(f, FcAnd):
            return sat(f.left, env) and sat(f.right, env)
        if isinstance(f, FcOr):
            return sat(f.left, env) or sat(f.right, env)
        if isinstance(f, Not):
            return not sat(f.inner, env)
        results = [sat(f.body, {**env, f.var: u}) for u in universe]
        return any(results) if isinstance(f, Exists) else all(results)

    assert isinstance(phi, (Atom, FcAnd, FcOr, Not, Exists, Forall))
    return sat(phi, dict(env or {}))


def random_fc_formula(rng: random.Random, letters, max_quantifiers: int = 3, depth: int = 4) -> FcFormula:
    """Random sentence with at most ``max_quantifiers`` quantifiers."""
    names = ["x", "y", "z", "u"]

    def term(bound):
        r = rng.random()
        if bound and r < 0.6:
            return Var(rng.choice(bound))
        if r < 0.85:
            return Const(rng.choice(list(letters)))
        return EpsConst()

    def gen(bound, qleft, d):
        choices = ["atom"]
        if d > 0:
            choices += ["and", "or", "not"]
            if qleft:
                choices += ["E", "A", "E"]
        kind = rng.choice(choices)
        if kind == "atom":
            return Atom(term(bound), term(bound), term(bound))
        if kind == "not":
            return Not(gen(bound, qleft, d - 1))
        if kind in ("and", "or"):
            split = rng.randint(0, qleft)
            left = gen(bound, split, d - 1)
            right = gen(bound, qleft - split, d - 1)
            return FcAnd(left, right) if kind == "and" else FcOr(left, right)
        var = rng.choice(names)
        body = gen(bound + [var], qleft - 1, d - 1)
        return Exists(var, body) if kind == "E" else Forall(var, body)

    return gen([], max_quantifiers, depth)
