"""FC: first-order logic over the factors of a word with concatenation.

A model is a word ``w``.  Variables range over the factors of ``w``; the
atom ``x = y . z`` holds when the value of ``x`` is the value of ``y``
followed by the value of ``z``.  A letter constant denotes that letter if it
occurs in ``w`` and an undefined element otherwise, in which case every
atom mentioning it is false.

Concrete syntax::

    formula := 'E' VAR (',' VAR)* ':' formula
             | 'A' VAR (',' VAR)* ':' formula
             | disj
    disj    := conj ('|' conj)*
    conj    := unit ('&' unit)*
    unit    := '!' unit | '(' formula ')' | atom
    atom    := term '=' term '.' term | term '=' term
    term    := VAR | "'" LETTER "'" | 'eps'

``E``, ``A`` and ``eps`` are reserved and cannot be variable names.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator

from . import sfr
from .automata import as_alphabet
from .words import primitive_root


class FcSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class FreeVariableError(ValueError):
    pass


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    letter: str


@dataclass(frozen=True)
class EpsConst:
    pass


Term = Var | Const | EpsConst
EPS_TERM = EpsConst()


@dataclass(frozen=True)
class Atom:
    """``x = y . z``"""

    x: Term
    y: Term
    z: Term


@dataclass(frozen=True)
class And:
    left: "FcFormula"
    right: "FcFormula"


@dataclass(frozen=True)
class Or:
    left: "FcFormula"
    right: "FcFormula"


@dataclass(frozen=True)
class Not:
    inner: "FcFormula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "FcFormula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "FcFormula"


FcFormula = Atom | And | Or | Not | Exists | Forall


def conj(*parts: FcFormula) -> FcFormula:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(*parts: FcFormula) -> FcFormula:
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def exists(names, body: FcFormula) -> FcFormula:
    for n in reversed(list(names)):
        body = Exists(n, body)
    return body


def forall(names, body: FcFormula) -> FcFormula:
    for n in reversed(list(names)):
        body = Forall(n, body)
    return body


def implies(a: FcFormula, b: FcFormula) -> FcFormula:
    return Or(Not(a), b)


def _term_vars(t: Term) -> set[str]:
    return {t.name} if isinstance(t, Var) else set()


def free_variables(phi: FcFormula) -> frozenset[str]:
    if isinstance(phi, Atom):
        return frozenset(_term_vars(phi.x) | _term_vars(phi.y) | _term_vars(phi.z))
    if isinstance(phi, (And, Or)):
        return free_variables(phi.left) | free_variables(phi.right)
    if isinstance(phi, Not):
        return free_variables(phi.inner)
    return free_variables(phi.body) - {phi.var}


def quantifier_rank(phi: FcFormula) -> int:
    if isinstance(phi, Atom):
        return 0
    if isinstance(phi, Not):
        return quantifier_rank(phi.inner)
    if isinstance(phi, (And, Or)):
        return max(quantifier_rank(phi.left), quantifier_rank(phi.right))
    return quantifier_rank(phi.body) + 1


def size(phi: FcFormula) -> int:
    if isinstance(phi, Atom):
        return 1
    if isinstance(phi, (And, Or)):
        return 1 + size(phi.left) + size(phi.right)
    if isinstance(phi, Not):
        return 1 + size(phi.inner)
    return 1 + size(phi.body)


# -- text ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|'(?P<letter>[^'])'|(?P<op>[=.:,&|!()]))")
_RESERVED = {"E", "A", "eps"}


class _FcParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise FcSyntaxError(f"unexpected {text[pos]!r}", pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else ("end", "", len(self.text))

    def error(self, msg: str):
        raise FcSyntaxError(msg, self.peek()[2])

    def take_op(self, op: str) -> bool:
        kind, val, _ = self.peek()
        if kind == "op" and val == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        if not self.take_op(op):
            self.error(f"expected {op!r}")

    def parse(self) -> FcFormula:
        phi = self.formula()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return phi

    def is_quantifier(self) -> bool:
        kind, val, _ = self.peek()
        return kind == "name" and val in ("E", "A") and self.peek(1)[0] == "name"

    def formula(self) -> FcFormula:
        if self.is_quantifier():
            q = self.peek()[1]
            self.i += 1
            names = [self.variable()]
            while self.take_op(","):
                names.append(self.variable())
            self.expect(":")
            body = self.formula()
            return (exists if q == "E" else forall)(names, body)
        return self.disj()

    def variable(self) -> str:
        kind, val, _ = self.peek()
        if kind != "name" or val in _RESERVED:
            self.error("expected a variable name")
        self.i += 1
        return val

    def disj(self) -> FcFormula:
        phi = self.conj()
        while self.take_op("|"):
            phi = Or(phi, self.conj())
        return phi

    def conj(self) -> FcFormula:
        phi = self.unit()
        while self.take_op("&"):
            phi = And(phi, self.unit())
        return phi

    def unit(self) -> FcFormula:
        if self.take_op("!"):
            return Not(self.unit())
        if self.take_op("("):
            phi = self.formula()
            self.expect(")")
            return phi
        if self.is_quantifier():
            return self.formula()
        return self.atom()

    def term(self) -> Term:
        kind, val, _ = self.peek()
        if kind == "letter":
            self.i += 1
            return Const(val)
        if kind == "name":
            self.i += 1
            if val == "eps":
                return EPS_TERM
            if val in _RESERVED:
                self.i -= 1
                self.error(f"{val!r} is reserved")
            return Var(val)
        self.error("expected a term")

    def atom(self) -> FcFormula:
        x = self.term()
        self.expect("=")
        y = self.term()
        if self.take_op("."):
            return Atom(x, y, self.term())
        return Atom(x, y, EPS_TERM)


def parse_fc(text: str) -> FcFormula:
    return _FcParser(text).parse()


def _term_text(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return f"'{t.letter}'"
    return "eps"


def to_text(phi: FcFormula) -> str:
    """Render in the concrete syntax; ``parse_fc(to_text(phi)) == phi``."""
    if isinstance(phi, Atom):
        if phi.z == EPS_TERM:
            return f"{_term_text(phi.x)} = {_term_text(phi.y)}"
        return f"{_term_text(phi.x)} = {_term_text(phi.y)} . {_term_text(phi.z)}"
    if isinstance(phi, And):
        return f"({to_text(phi.left)} & {to_text(phi.right)})"
    if isinstance(phi, Or):
        return f"({to_text(phi.left)} | {to_text(phi.right)})"
    if isinstance(phi, Not):
        return f"!{to_text(phi.inner)}"
    q = "E" if isinstance(phi, Exists) else "A"
    return f"({q} {phi.var}: {to_text(phi.body)})"


# -- evaluation ----------------------------------------------------------------


def factors(w: str) -> list[str]:
    """Distinct factors of ``w`` (empty word included), shortest first."""
    seen = {""}
    for i in range(len(w)):
        for j in range(i + 1, len(w) + 1):
            seen.add(w[i:j])
    return sorted(seen, key=lambda u: (len(u), u))


_UNKNOWN = object()


class _Evaluator:
    """Model checker for one word.

    Quantifier domains are narrowed using the atoms that mention the bound
    variable: a candidate set is computed that contains every value for
    which the body can hold (for ``E``) or fail (for ``A``); values outside
    it need not be tried.  Quantified subformulas are memoized on the values
    of their free variables.
    """

    def __init__(self, word: str):
        self.word = word
        self.facts = factors(word)
        self.letters = set(word)
        self.memo: dict = {}
        self.free: dict[int, tuple[str, ...]] = {}

    def free_of(self, phi) -> tuple[str, ...]:
        key = id(phi)
        fv = self.free.get(key)
        if fv is None:
            fv = self.free[key] = tuple(sorted(free_variables(phi)))
        return fv

    def value(self, t: Term, env: dict):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise FreeVariableError(f"variable {t.name!r} is free") from None
        if isinstance(t, Const):
            return t.letter if t.letter in self.letters else None
        return ""

    def holds(self, phi: FcFormula, env: dict) -> bool:
        if isinstance(phi, Atom):
            x, y, z = self.value(phi.x, env), self.value(phi.y, env), self.value(phi.z, env)
            return x is not None and y is not None and z is not None and x == y + z
        if isinstance(phi, And):
            return self.holds(phi.left, env) and self.holds(phi.right, env)
        if isinstance(phi, Or):
            return self.holds(phi.left, env) or self.holds(phi.right, env)
        if isinstance(phi, Not):
            return not self.holds(phi.inner, env)
        key = (id(phi),) + tuple(env.get(v) for v in self.free_of(phi))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        want = isinstance(phi, Exists)
        cand = self.restrict(phi.var, phi.body, want, env)
        domain = self.facts if cand is None else [f for f in self.facts if f in cand]
        inner = dict(env)
        result = not want
        for c in domain:
            inner[phi.var] = c
            if self.holds(phi.body, inner) == want:
                result = want
                break
        self.memo[key] = result
        return result

    # candidate sets ------------------------------------------------------------

    def known(self, t: Term, var: str, env: dict):
        if isinstance(t, Var):
            if t.name == var:
                return _UNKNOWN
            return env.get(t.name, _UNKNOWN)
        return self.value(t, env)

    def atom_candidates(self, var: str, a: Atom, env: dict):
        terms = (a.x, a.y, a.z)
        where = [i for i, t in enumerate(terms) if isinstance(t, Var) and t.name == var]
        if not where:
            return None
        vals = [None if i in where else self.known(t, var, env) for i, t in enumerate(terms)]
        if any(v is None for i, v in enumerate(vals) if i not in where):
            return set()  # an undefined constant makes the atom false
        x, y, z = vals
        if where == [0]:
            if y is not _UNKNOWN and z is not _UNKNOWN:
                return {y + z}
            if y is not _UNKNOWN:
                return {f for f in self.facts if f.startswith(y)}
            if z is not _UNKNOWN:
                return {f for f in self.facts if f.endswith(z)}
            return None
        if x is _UNKNOWN:
            return None
        if where == [1]:
            if z is not _UNKNOWN:
                return {x[: len(x) - len(z)]} if x.endswith(z) else set()
            return {x[:i] for i in range(len(x) + 1)}
        if where == [2]:
            if y is not _UNKNOWN:
                return {x[len(y):]} if x.startswith(y) else set()
            return {x[i:] for i in range(len(x) + 1)}
        if where == [1, 2]:
            h = len(x) // 2
            return {x[:h]} if len(x) % 2 == 0 and x[:h] == x[h:] else set()
        return None

    def restrict(self, var: str, phi: FcFormula, positive: bool, env: dict):
        """Superset of the values of ``var`` under which ``phi`` can evaluate
        to ``positive`` (None means no restriction)."""
        if isinstance(phi, Atom):
            return self.atom_candidates(var, phi, env) if positive else None
        if isinstance(phi, Not):
            return self.restrict(var, phi.inner, not positive, env)
        if isinstance(phi, (And, Or)):
            left = self.restrict(var, phi.left, positive, env)
            right = self.restrict(var, phi.right, positive, env)
            if isinstance(phi, And) == positive:
                # all parts must hold: intersect what is known
                if left is None:
                    return right
                if right is None:
                    return left
                return left & right
            if left is None or right is None:
                return None
            return left | right
        if phi.var == var:
            return None
        # quantified inner variable: treat it as unknown; the over-approximation
        # for "some value" also covers "every value" since domains are nonempty
        inner = env
        if phi.var in env:
            inner = dict(env)
            del inner[phi.var]
        return self.restrict(var, phi.body, positive, inner)


def eval_fc(word: str, phi: FcFormula, alphabet=None) -> bool:
    """Truth of the sentence ``phi`` in the word ``word``."""
    if alphabet is not None:
        as_alphabet(alphabet).check_word(word)
    fv = free_variables(phi)
    if fv:
        raise FreeVariableError(f"formula has free variables {sorted(fv)}")
    return _Evaluator(word).holds(phi, {})


def eval_fc_with(word: str, phi: FcFormula, assignment: dict[str, str]) -> bool:
    """Truth of ``phi`` under an assignment of factors to its free variables."""
    facts = set(factors(word))
    for name, val in assignment.items():
        if val not in facts:
            raise ValueError(f"{val!r} is not a factor of {word!r}")
    missing = free_variables(phi) - set(assignment)
    if missing:
        raise FreeVariableError(f"unassigned free variables {sorted(missing)}")
    return _Evaluator(word).holds(phi, dict(assignment))


def fc_language(phi: FcFormula, alphabet, max_len: int) -> list[str]:
    a = as_alphabet(alphabet)
    return [w for w in a.words(max_len) if eval_fc(w, phi)]


# -- SF(R) expressions to FC ------------------------------------------------------


def whole_word(x: str, fresh: Iterator[str]) -> FcFormula:
    """``x`` is the whole word: anything of the form ``x z`` or ``z x`` has ``z`` empty."""
    y, z = next(fresh), next(fresh)
    X, Y, Z = Var(x), Var(y), Var(z)
    return forall([y, z], implies(Or(Atom(Y, X, Z), Atom(Y, Z, X)), Atom(Z, EPS_TERM, EPS_TERM)))


def _fresh_names(prefix: str = "v") -> Iterator[str]:
    return (f"{prefix}{i}" for i in itertools.count())


def power_atoms(target: str, base: str, p: int, fresh: Iterator[str]) -> tuple[list[str], list[Atom]]:
    """Atoms stating ``target = base^p`` by repeated squaring.

    Returns the helper variables (to be existentially bound) and the atoms;
    the number of atoms is logarithmic in ``p``.
    """
    if p < 1:
        raise ValueError("exponent must be positive")
    if p == 1:
        return [], [Atom(Var(target), Var(base), EPS_TERM)]
    bits = [i for i in range(p.bit_length()) if p >> i & 1]
    top = p.bit_length() - 1
    names: list[str] = []
    atoms: list[Atom] = []
    squares = [base]
    for i in range(1, top + 1):
        last = i == top and len(bits) == 1
        name = target if last else next(fresh)
        if not last:
            names.append(name)
        atoms.append(Atom(Var(name), Var(squares[-1]), Var(squares[-1])))
        squares.append(name)
    if len(bits) > 1:
        acc = squares[bits[0]]
        for k, b in enumerate(bits[1:], 1):
            name = target if k == len(bits) - 1 else next(fresh)
            if name != target:
                names.append(name)
            atoms.append(Atom(Var(name), Var(acc), Var(squares[b])))
            acc = name
    return names, atoms


def _word_term(word: str, fresh: Iterator[str]) -> tuple[list[str], list[Atom], Term]:
    """A term denoting ``word`` plus the chain of atoms that pins it down."""
    if len(word) == 1:
        return [], [], Const(word)
    names: list[str] = []
    atoms: list[Atom] = []
    prev: Term = Const(word[0])
    for c in word[1:]:
        t = next(fresh)
        names.append(t)
        atoms.append(Atom(Var(t), prev, Const(c)))
        prev = Var(t)
    return names, atoms, prev


def _compile(e: sfr.SfrExpr, x: str, fresh: Iterator[str]) -> FcFormula:
    X = Var(x)
    if isinstance(e, sfr.Letter):
        return Atom(X, Const(e.char), EPS_TERM)
    if isinstance(e, sfr.Empty):
        return Not(Atom(X, X, EPS_TERM))
    if isinstance(e, sfr.WordStar):
        is_eps = Atom(X, EPS_TERM, EPS_TERM)
        if not e.word:
            return is_eps
        rd = primitive_root(e.word)
        names, atoms, r = _word_term(rd.root, fresh)
        y = next(fresh)
        atoms = atoms + [Atom(X, Var(y), r), Atom(X, r, Var(y))]
        names = names + [y]
        if rd.exponent > 1:
            z = next(fresh)
            pnames, patoms = power_atoms(x, z, rd.exponent, fresh)
            names += [z] + pnames
            atoms += patoms
        # the empty word is in w* but no nonempty power of the root equals it
        return Or(exists(names, conj(*atoms)), is_eps)
    if isinstance(e, sfr.Union):
        return Or(_compile(e.left, x, fresh), _compile(e.right, x, fresh))
    if isinstance(e, sfr.Complement):
        return Not(_compile(e.inner, x, fresh))
    if isinstance(e, sfr.Concat):
        x1, x2 = next(fresh), next(fresh)
        return exists(
            [x1, x2],
            conj(Atom(X, Var(x1), Var(x2)), _compile(e.left, x1, fresh), _compile(e.right, x2, fresh)),
        )
    raise TypeError(f"not an expression node: {e!r}")


def compile_sfr_to_fc_formula(e: sfr.SfrExpr, x: str = "x") -> FcFormula:
    """Formula with the single free variable ``x`` that holds iff the value
    of ``x`` is in the language of ``e``."""
    return _compile(e, x, _fresh_names())


def compile_sfr_to_fc(e: sfr.SfrExpr) -> FcFormula:
    """Sentence defining the language of ``e``."""
    fresh = _fresh_names()
    x = "x"
    body = _compile(e, x, fresh)
    return Exists(x, And(body, whole_word(x, fresh)))
