"""Star-free expressions with word-star atoms.

The only starred thing the grammar admits is a quoted terminal word, so the
restriction to this class is structural: there is no general Kleene star
node to check for.

Concrete syntax (loosest binding first)::

    expr  := inter ('|' inter)*
    inter := diff ('&' diff)*
    diff  := cat ('\\' cat)*
    cat   := fact+
    fact  := '!' fact | base
    base  := '(' expr ')' | LETTER | STRING '*' | STRING | 'EPS' | 'EMPTY' | 'ANY'

``STRING`` is a double-quoted letter sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import automata as fa
from .automata import Alphabet, Dfa, as_alphabet
from .words import wstar_dfa


class SfrSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Letter:
    char: str


@dataclass(frozen=True)
class WordStar:
    word: str


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Union:
    left: "SfrExpr"
    right: "SfrExpr"


@dataclass(frozen=True)
class Concat:
    left: "SfrExpr"
    right: "SfrExpr"


@dataclass(frozen=True)
class Complement:
    inner: "SfrExpr"


SfrExpr = Letter | WordStar | Empty | Union | Concat | Complement

EPS = WordStar("")
ANY = Complement(Empty())


def intersection(a: SfrExpr, b: SfrExpr) -> SfrExpr:
    return Complement(Union(Complement(a), Complement(b)))


def minus(a: SfrExpr, b: SfrExpr) -> SfrExpr:
    return Complement(Union(Complement(a), b))


def word(w: str) -> SfrExpr:
    """Concatenation of the letters of ``w``; the empty word gives EPS."""
    if not w:
        return EPS
    e: SfrExpr = Letter(w[0])
    for c in w[1:]:
        e = Concat(e, Letter(c))
    return e


# -- parser --------------------------------------------------------------------

_KEYWORDS = ("EMPTY", "EPS", "ANY")
_SPECIAL = set('()|&\\!*"')


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise SfrSyntaxError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self) -> SfrExpr:
        e = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected {self.text[self.pos]!r}")
        return e

    def expr(self) -> SfrExpr:
        e = self.inter()
        while self.eat("|"):
            e = Union(e, self.inter())
        return e

    def inter(self) -> SfrExpr:
        e = self.diff()
        while self.eat("&"):
            e = intersection(e, self.diff())
        return e

    def diff(self) -> SfrExpr:
        e = self.cat()
        while self.eat("\\"):
            e = minus(e, self.cat())
        return e

    def starts_fact(self) -> bool:
        c = self.peek()
        return c is not None and c not in ")|&\\*"

    def cat(self) -> SfrExpr:
        if not self.starts_fact():
            self.error("expected an expression")
        e = self.fact()
        while self.starts_fact():
            e = Concat(e, self.fact())
        return e

    def fact(self) -> SfrExpr:
        if self.eat("!"):
            return Complement(self.fact())
        return self.base()

    def keyword(self) -> str | None:
        for kw in _KEYWORDS:
            end = self.pos + len(kw)
            if self.text.startswith(kw, self.pos) and (
                end == len(self.text) or not self.text[end].isalnum()
            ):
                return kw
        return None

    def base(self) -> SfrExpr:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            e = self.expr()
            if not self.eat(")"):
                self.error("expected ')'")
            return e
        if c == '"':
            end = self.text.find('"', self.pos + 1)
            if end == -1:
                self.error("unterminated string")
            w = self.text[self.pos + 1 : end]
            for i, ch in enumerate(w):
                if ch not in self.alphabet:
                    self.error(f"letter {ch!r} not in alphabet", self.pos + 1 + i)
            self.pos = end + 1
            if self.eat("*"):
                return WordStar(w)
            return word(w)
        kw = self.keyword()
        if kw is not None:
            self.pos += len(kw)
            return {"EPS": EPS, "EMPTY": Empty(), "ANY": ANY}[kw]
        if c in _SPECIAL:
            self.error(f"unexpected {c!r}")
        if c not in self.alphabet:
            self.error(f"letter {c!r} not in alphabet", start)
        self.pos += 1
        if self.peek() == "*":
            self.error("'*' may only follow a quoted word")
        return Letter(c)


def parse_sfr(text: str, alphabet) -> SfrExpr:
    return _Parser(text, as_alphabet(alphabet)).parse()


def to_text(e: SfrExpr) -> str:
    """Render in the concrete syntax (fully parenthesised where needed)."""
    if isinstance(e, Letter):
        return e.char
    if isinstance(e, WordStar):
        return "EPS" if not e.word else f'"{e.word}"*'
    if isinstance(e, Empty):
        return "EMPTY"
    if isinstance(e, Union):
        return f"({to_text(e.left)} | {to_text(e.right)})"
    if isinstance(e, Concat):
        return f"({to_text(e.left)} {to_text(e.right)})"
    if isinstance(e, Complement):
        return f"!{to_text(e.inner)}"
    raise TypeError(e)


def letters_of(e: SfrExpr) -> set[str]:
    if isinstance(e, Letter):
        return {e.char}
    if isinstance(e, WordStar):
        return set(e.word)
    if isinstance(e, Empty):
        return set()
    if isinstance(e, (Union, Concat)):
        return letters_of(e.left) | letters_of(e.right)
    return letters_of(e.inner)


# -- compiler ----------------------------------------------------------------


def compile_sfr(e: SfrExpr, alphabet) -> Dfa:
    """Minimal complete DFA for the language denoted by ``e``."""
    a = as_alphabet(alphabet)
    foreign = letters_of(e) - set(a)
    if foreign:
        raise fa.AutomatonError(f"letters {sorted(foreign)} not in alphabet")
    return _compile(e, a)


@lru_cache(maxsize=4096)
def _compile(e: SfrExpr, a: Alphabet) -> Dfa:
    if isinstance(e, Letter):
        return fa.word_dfa(e.char, a)
    if isinstance(e, WordStar):
        return wstar_dfa(e.word, a)
    if isinstance(e, Empty):
        return fa.empty_dfa(a)
    if isinstance(e, Complement):
        return fa.minimize(fa.complement(_compile(e.inner, a)))
    left = fa.dfa_to_nfa(_compile(e.left, a))
    right = fa.dfa_to_nfa(_compile(e.right, a))
    if isinstance(e, Union):
        nfa = fa.nfa_union(left, right)
    elif isinstance(e, Concat):
        nfa = fa.nfa_concat(left, right)
    else:
        raise TypeError(f"not an expression node: {e!r}")
    return fa.minimize(fa.determinize(nfa))
