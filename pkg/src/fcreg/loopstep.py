"""Loop-step cycles: exact detection, witness replay, and a deterministic
simulation of the nondeterministic polynomial-space guessing procedure.

A loop-step cycle of a minimal DFA is a tuple ``p_0..p_{n-1}`` (``n >= 2``,
pairwise distinct) with nonempty words ``w``, ``v`` of different primitive
roots such that ``w`` fixes every ``p_i`` and ``v`` sends ``p_i`` to
``p_{i+1 mod n}``.

Why root analysis suffices
--------------------------
Fix the tuple.  Let ``S`` be the nonempty words fixing every ``p_i`` and
``C`` the words shifting the tuple by one.  A suitable pair ``(w, v)``
exists iff ``S`` and ``C`` are nonempty and *not* both contained in
``r*`` for one common primitive word ``r``: if they were, every choice
has ``root(w) == root(v) == r``; if they are not, either one side has two
words of different roots (pick the one whose root differs from some word
on the other side) or both sides are single-rooted with different roots.
:func:`fcreg.words.roots_of_language` decides single-rootedness exactly,
which makes the search exact.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

from .automata import Dfa
from .words import AtLeastTwoRoots, EmptyOrEpsilonOnly, RootClass, SingleRoot, root, roots_of_language

DEFAULT_STATE_CAP = 10


class StateCapExceeded(RuntimeError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"DFA has {n} states, more than the cap of {cap} for exhaustive tuple search")
        self.n = n
        self.cap = cap


@dataclass(frozen=True)
class LoopStepWitness:
    states: tuple[int, ...]
    w: str
    v: str

    def to_dict(self) -> dict:
        return {"states": list(self.states), "w": self.w, "v": self.v}

    @classmethod
    def from_dict(cls, data: dict) -> "LoopStepWitness":
        return cls(tuple(data["states"]), data["w"], data["v"])

    def __str__(self) -> str:
        return f"states {list(self.states)}, w = {self.w!r}, v = {self.v!r}"


def verify_witness(d: Dfa, wit: LoopStepWitness) -> bool:
    """Replay every clause of the loop-step definition."""
    ps = wit.states
    n = len(ps)
    if n < 2 or len(set(ps)) != n or any(not 0 <= p < d.n for p in ps):
        return False
    if not wit.w or not wit.v:
        return False
    try:
        if root(wit.w) == root(wit.v):
            return False
        return all(d.run(p, wit.w) == p for p in ps) and all(
            d.run(ps[i], wit.v) == ps[(i + 1) % n] for i in range(n)
        )
    except ValueError:
        return False


def _check_cap(d: Dfa, cap: int | None) -> None:
    if cap is not None and d.n > cap:
        raise StateCapExceeded(d.n, cap)


def cyclic_tuples(states: int, n: int) -> Iterator[tuple[int, ...]]:
    """Tuples of ``n`` distinct states, one per rotation class: the smallest
    state comes first.  Reflections are kept apart."""
    for first in range(states):
        for rest in permutations(range(first + 1, states), n - 1):
            yield (first,) + rest


# -- exact detection ------------------------------------------------------


def _restricted_maps(d: Dfa, subset: tuple[int, ...]) -> tuple[Dfa, list[tuple[int, ...]]]:
    """Lazy product of ``len(subset)`` copies of ``d``, one started in each
    state of ``subset``.  State 0 is the starting tuple; no accepting states.

    Equivalently: states are the maps ``subset -> Q`` induced by words.
    """
    start = subset
    ids = {start: 0}
    order = [start]
    rows = []
    k = len(d.alphabet)
    delta = d.delta
    i = 0
    while i < len(order):
        t = order[i]
        row = []
        for j in range(k):
            nxt = tuple(delta[q][j] for q in t)
            x = ids.get(nxt)
            if x is None:
                x = ids[nxt] = len(order)
                order.append(nxt)
            row.append(x)
        rows.append(row)
        i += 1
    return Dfa(d.alphabet, len(order), 0, frozenset(), rows), order


def _representatives(cls: RootClass) -> list[str]:
    if isinstance(cls, SingleRoot):
        return [cls.word]
    if isinstance(cls, AtLeastTwoRoots):
        return [cls.first, cls.second]
    return []


def _pick_pair(stab: RootClass, cyc: RootClass) -> tuple[str, str] | None:
    """A distinct-root pair from the representatives, shortest ``v`` first.

    Representatives are enough: if one side has two roots, one of its two
    representatives differs in root from any word of the other side.
    """
    for v in _representatives(cyc):
        for w in _representatives(stab):
            if root(w) != root(v):
                return w, v
    return None


def _subset_witnesses(d: Dfa, subset: tuple[int, ...]) -> Iterator[LoopStepWitness]:
    prod, order = _restricted_maps(d, subset)
    pos = {q: i for i, q in enumerate(subset)}
    n = len(subset)
    cycles = []
    for x, t in enumerate(order):
        if sorted(t) != list(subset):
            continue
        # t permutes the subset; keep it if it is one n-cycle
        tup = [subset[0]]
        for _ in range(n - 1):
            tup.append(t[pos[tup[-1]]])
        if len(set(tup)) == n and t[pos[tup[-1]]] == subset[0]:
            cycles.append((tuple(tup), x))
    if not cycles:
        return
    stab = roots_of_language(prod.with_initial(0, {0}))
    if isinstance(stab, EmptyOrEpsilonOnly):
        return
    for tup, x in sorted(cycles):
        cyc = roots_of_language(prod.with_initial(0, {x}))
        pair = _pick_pair(stab, cyc)
        if pair is not None:
            yield LoopStepWitness(tup, *pair)


def detect_loop_step(d: Dfa, state_cap: int | None = DEFAULT_STATE_CAP) -> LoopStepWitness | None:
    """First loop-step witness in enumeration order (tuple size, then state
    subset lexicographically, then cyclic order), or None.

    For every subset of states the words are classified by the map they
    induce on the subset; a cyclic order of the subset is a candidate iff
    some word realises the matching n-cycle.
    """
    _check_cap(d, state_cap)
    for n in range(2, d.n + 1):
        for subset in combinations(range(d.n), n):
            for wit in _subset_witnesses(d, subset):
                return wit
    return None


def loop_step_for_tuple(d: Dfa, states: tuple[int, ...]) -> LoopStepWitness | None:
    """Decide whether this particular cyclic tuple carries a loop-step cycle."""
    n = len(states)
    if n < 2 or len(set(states)) != n:
        return None
    prod, order = _restricted_maps(d, tuple(states))
    shifted = tuple(states[(i + 1) % n] for i in range(n))
    try:
        x = order.index(shifted)
    except ValueError:
        return None
    pair = _pick_pair(
        roots_of_language(prod.with_initial(0, {0})),
        roots_of_language(prod.with_initial(0, {x})),
    )
    return None if pair is None else LoopStepWitness(tuple(states), *pair)


# -- the guessing procedure, run deterministically ----------------------------


def _tuple_graph(d: Dfa, start: tuple[int, ...]):
    """Forward-reachable tuples from ``start`` and the reverse edges."""
    k = len(d.alphabet)
    delta = d.delta
    seen = {start}
    order = [start]
    succ: dict[tuple, list[tuple]] = {}
    i = 0
    while i < len(order):
        t = order[i]
        row = []
        for j in range(k):
            nxt = tuple(delta[q][j] for q in t)
            row.append(nxt)
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
        succ[t] = row
        i += 1
    return succ


def _coreachable(succ: dict, target: tuple) -> set:
    pred: dict[tuple, list[tuple]] = {}
    for t, row in succ.items():
        for u in row:
            pred.setdefault(u, []).append(t)
    out = {target}
    stack = [target]
    while stack:
        u = stack.pop()
        for t in pred.get(u, ()):
            if t not in out:
                out.add(t)
                stack.append(t)
    return out


def _algorithm1_accepts(d: Dfa, a: tuple[int, ...]) -> bool:
    """Reachability in the configuration graph of the guessing procedure
    started on tuple ``a``.

    Configurations are ``(B, C, diff)``; one step guesses letters ``x, y``
    and moves ``B`` by ``x``, ``C`` by ``y``, setting ``diff`` if
    ``x != y``.  Accept when ``B == C``, ``B`` is ``a`` shifted by one and
    ``diff`` is set.  Configurations from which ``B`` or ``C`` can no
    longer reach the shifted tuple are pruned, and ``(B, C)`` is identified
    with ``(C, B)`` (swapping the guessed letters maps one run onto the
    other); neither changes the answer.
    """
    n = len(a)
    target = tuple(a[(i + 1) % n] for i in range(n))
    succ = _tuple_graph(d, a)
    if target not in succ:
        return False
    live = _coreachable(succ, target)
    k = len(d.alphabet)
    start = (a, a, False)
    seen = {start}
    queue = deque([start])
    while queue:
        b, c, diff = queue.popleft()
        sb, sc = succ[b], succ[c]
        for x in range(k):
            nb = sb[x]
            if nb not in live:
                continue
            for y in range(k):
                nc = sc[y]
                if nc not in live:
                    continue
                nd = diff or x != y
                if nd and nb == nc == target:
                    return True
                cfg = (nb, nc, nd) if nb <= nc else (nc, nb, nd)
                if cfg not in seen:
                    seen.add(cfg)
                    queue.append(cfg)
    return False


def algorithm1_exact(d: Dfa, n_max: int | None = None,
                     state_cap: int | None = DEFAULT_STATE_CAP) -> bool:
    """Exhaustive deterministic run of the guessing procedure over every
    tuple size ``2..min(|Q|, n_max)`` and every tuple of distinct states.

    Only one rotation per tuple is tried: rotating the start tuple rotates
    every configuration alike, so acceptance is rotation invariant.
    """
    _check_cap(d, state_cap)
    top = d.n if n_max is None else min(d.n, n_max)
    for n in range(2, top + 1):
        for a in cyclic_tuples(d.n, n):
            if _algorithm1_accepts(d, a):
                return True
    return False
