import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from fcreg.automata import (
    Alphabet,
    AlphabetMismatch,
    AutomatonError,
    Dfa,
    Nfa,
    accepts,
    between_states_dfa,
    complement,
    determinize,
    difference,
    dfa_from_dict,
    empty_dfa,
    enumerate_language,
    equivalent,
    format_dfa_text,
    included,
    intersect,
    is_empty,
    is_minimal,
    minimize,
    parse_dfa_text,
    product,
    shortest_accepted,
    to_dot,
    union,
    universal_dfa,
    word_dfa,
)
from fcreg.sfr import compile_sfr, parse_sfr
from fcreg.words import wstar_dfa

from conftest import L1_TEXT

AB = Alphabet("ab")


def raw_random_dfa(rng: random.Random, n: int, letters="ab") -> Dfa:
    a = Alphabet(letters)
    rows = [[rng.randrange(n) for _ in a] for _ in range(n)]
    acc = {q for q in range(n) if rng.random() < 0.5}
    return Dfa(a, n, rng.randrange(n), acc, rows)


@st.composite
def dfas(draw, max_states=5):
    n = draw(st.integers(1, max_states))
    rows = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=2, max_size=2), min_size=n, max_size=n))
    acc = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(AB, n, draw(st.integers(0, n - 1)), acc, rows)


def a_plus():
    return dfa_from_dict("ab", 2, 0, {1}, {(0, "a"): 1, (1, "a"): 1}, complete=True)


def a_star():
    return dfa_from_dict("ab", 1, 0, {0}, {(0, "a"): 0}, complete=True)


def b_star():
    return dfa_from_dict("ab", 1, 0, {0}, {(0, "b"): 0}, complete=True)


# -- construction -------------------------------------------------------------


def test_alphabet_is_sorted_and_checked():
    assert Alphabet("ba").letters == ("a", "b")
    with pytest.raises(AutomatonError):
        Alphabet("aa")
    with pytest.raises(AutomatonError):
        Alphabet(["ab"])
    with pytest.raises(AutomatonError):
        Alphabet("")
    assert len(list(AB.words(4))) == 31


def test_dfa_must_be_complete():
    with pytest.raises(AutomatonError):
        Dfa(AB, 2, 0, {0}, [(0, 1), (1,)])
    with pytest.raises(AutomatonError):
        dfa_from_dict("ab", 2, 0, {0}, {(0, "a"): 1})
    with pytest.raises(AutomatonError):
        Dfa(AB, 1, 1, set(), [(0, 0)])


def test_accepts_traces(even_a):
    assert accepts(even_a, "abab")
    assert not accepts(even_a, "a")
    with pytest.raises(AutomatonError):
        accepts(even_a, "abc")


def test_accepts_empty_word_iff_initial_accepting():
    rng = random.Random(3)
    for _ in range(30):
        d = raw_random_dfa(rng, 4)
        assert accepts(d, "") == (d.initial in d.accepting)


# -- determinize ---------------------------------------------------------------


def test_determinize_single_letter():
    nfa = Nfa(AB, 2, frozenset({0}), frozenset({1}), frozenset({(0, "a", 1)}))
    d = determinize(nfa)
    assert d.n == 3
    assert enumerate_language(d, 5) == ["a"]


def test_determinize_no_accepting_state():
    nfa = Nfa(AB, 2, frozenset({0}), frozenset(), frozenset({(0, "a", 1), (1, None, 0)}))
    assert is_empty(determinize(nfa))


def test_determinize_epsilon_closure():
    # 0 -eps-> 1 -b-> 2, 0 -a-> 0
    nfa = Nfa(AB, 3, frozenset({0}), frozenset({2}), frozenset({(0, None, 1), (1, "b", 2), (0, "a", 0)}))
    d = determinize(nfa)
    assert enumerate_language(d, 4) == ["b", "ab", "aab", "aaab"]


def test_example_expression_matches_direct_semantics():
    # a word is in L1 iff it has a maximal block of a's or of b's of odd length
    d = compile_sfr(parse_sfr(L1_TEXT, "ab"), "ab")
    pattern = re.compile(r"(|.*b)(aa)*a(b.*|)|(|.*a)(bb)*b(a.*|)")
    for w in AB.words(8):
        assert accepts(d, w) == bool(pattern.fullmatch(w)), w


# -- minimize ------------------------------------------------------------------


def test_left_machine_is_already_minimal(left):
    m = minimize(left)
    assert m.n == 4
    assert is_minimal(left)
    assert equivalent(m, left)
    assert not is_minimal(dfa_from_dict("ab", 2, 0, {0, 1}, {(0, "a"): 1, (0, "b"): 1, (1, "a"): 0, (1, "b"): 0}))


def test_duplicate_accepting_sinks_merge():
    d = dfa_from_dict("ab", 3, 0, {1, 2}, {
        (0, "a"): 1, (0, "b"): 2, (1, "a"): 1, (1, "b"): 1, (2, "a"): 2, (2, "b"): 2,
    })
    assert minimize(d).n == d.n - 1


def test_minimize_removes_unreachable_states():
    d = dfa_from_dict("ab", 3, 0, {0, 2}, {
        (0, "a"): 0, (0, "b"): 0, (1, "a"): 2, (1, "b"): 2, (2, "a"): 2, (2, "b"): 1,
    })
    assert minimize(d) == universal_dfa("ab")


def test_minimize_idempotent_on_random_six_state_machines():
    rng = random.Random(42)
    for _ in range(100):
        m = minimize(raw_random_dfa(rng, 6))
        assert minimize(m) == m


def test_minimize_preserves_language():
    rng = random.Random(7)
    for _ in range(40):
        d = raw_random_dfa(rng, 5)
        assert enumerate_language(minimize(d), 8) == enumerate_language(d, 8)


def test_equal_languages_have_identical_minimal_encodings():
    d1 = compile_sfr(parse_sfr('"ab"*', "ab"), "ab")
    d2 = wstar_dfa("ab", "ab")
    assert d1 == d2


@settings(max_examples=60, deadline=None)
@given(dfas())
def test_minimize_canonical_under_state_renaming(d):
    rng = random.Random(d.n)
    perm = list(range(d.n))
    rng.shuffle(perm)
    inv = {perm[p]: p for p in range(d.n)}
    rows = [[perm[q] for q in d.delta[inv[p]]] for p in range(d.n)]
    renamed = Dfa(d.alphabet, d.n, perm[d.initial], {perm[q] for q in d.accepting}, rows)
    assert minimize(renamed) == minimize(d)


# -- Boolean operations ----------------------------------------------------------


def test_complement_of_universal_is_empty():
    assert is_empty(complement(universal_dfa("ab")))


@settings(max_examples=50, deadline=None)
@given(dfas())
def test_complement_is_an_involution(d):
    assert equivalent(complement(complement(d)), d)


def test_complement_of_example_language_is_aa_bb_star(aa_bb_star):
    l1 = compile_sfr(parse_sfr(L1_TEXT, "ab"), "ab")
    assert equivalent(complement(l1), aa_bb_star)


def test_a_star_meets_b_star_in_epsilon():
    assert enumerate_language(intersect(a_star(), b_star()), 6) == [""]


def test_a_star_minus_a_plus_is_epsilon():
    assert enumerate_language(difference(a_star(), a_plus()), 6) == [""]


def test_union_with_empty(even_a):
    assert equivalent(union(even_a, empty_dfa("ab")), even_a)


def test_product_rejects_alphabet_mismatch(even_a):
    with pytest.raises(AlphabetMismatch):
        product(even_a, universal_dfa("abc"), "intersect")
    with pytest.raises(AutomatonError):
        product(even_a, even_a, "concat")


@settings(max_examples=40, deadline=None)
@given(dfas(4), dfas(4))
def test_product_modes_match_pointwise_membership(d1, d2):
    i, u, m = product(d1, d2, "intersect"), product(d1, d2, "union"), product(d1, d2, "difference")
    for w in AB.words(6):
        x, y = accepts(d1, w), accepts(d2, w)
        assert accepts(i, w) == (x and y)
        assert accepts(u, w) == (x or y)
        assert accepts(m, w) == (x and not y)


def test_intersection_with_complement_is_empty():
    rng = random.Random(11)
    for _ in range(50):
        d = raw_random_dfa(rng, 5)
        assert is_empty(intersect(d, complement(d)))


# -- queries ---------------------------------------------------------------------


def test_is_empty(even_a):
    assert is_empty(empty_dfa("ab"))
    assert not is_empty(even_a)


def test_shortest_accepted(even_a):
    assert shortest_accepted(even_a) == ""
    assert shortest_accepted(even_a, nonempty_word_only=True) == "b"
    assert shortest_accepted(a_plus()) == "a"
    assert shortest_accepted(empty_dfa("ab")) is None
    assert shortest_accepted(word_dfa("", "ab"), nonempty_word_only=True) is None


@settings(max_examples=60, deadline=None)
@given(dfas())
def test_shortest_accepted_is_first_in_enumeration(d):
    words = enumerate_language(d, 2 * d.n)
    first = shortest_accepted(d)
    assert first == (words[0] if words else None)
    nonempty = [w for w in words if w]
    got = shortest_accepted(d, nonempty_word_only=True)
    if nonempty:
        assert got == nonempty[0]
    else:
        assert got is None


def test_enumerate_language(aa_bb_star):
    assert enumerate_language(aa_bb_star, 4) == ["", "aa", "bb", "aaaa", "aabb", "bbaa", "bbbb"]
    assert enumerate_language(empty_dfa("ab"), 5) == []
    assert len(enumerate_language(universal_dfa("ab"), 2)) == 7


def test_between_states_on_right_machine(right, aa_star):
    # states: 0 initial, 1 after a, 3 after b, 2 sink
    fix01 = intersect(between_states_dfa(right, 0, 0), between_states_dfa(right, 1, 1))
    assert equivalent(fix01, aa_star)
    swap03 = intersect(between_states_dfa(right, 0, 3), between_states_dfa(right, 3, 0))
    b_odd = dfa_from_dict("ab", 2, 0, {1}, {(0, "b"): 1, (1, "b"): 0}, complete=True)
    assert equivalent(swap03, b_odd)


def test_between_states_loop_accepts_epsilon(right):
    for p in right.states:
        assert accepts(between_states_dfa(right, p, p), "")
    with pytest.raises(AutomatonError):
        between_states_dfa(right, 0, 9)


def test_between_states_union_over_accepting_is_language():
    rng = random.Random(5)
    for _ in range(30):
        d = raw_random_dfa(rng, 5)
        acc = empty_dfa("ab")
        for q in d.accepting:
            acc = union(acc, between_states_dfa(d, d.initial, q))
        assert equivalent(acc, d)


def test_equivalent_and_included(even_a):
    assert equivalent(even_a, minimize(even_a))
    assert included(a_plus(), a_star())
    assert not included(a_star(), a_plus())


# -- text format -------------------------------------------------------------------


FIG1_TEXT = """\
# even number of a's
alphabet: a b
states: 2
initial: 0
accepting: 0
trans: 0 a 1
trans: 0 b 0
trans: 1 a 0
trans: 1 b 1
"""


def test_parse_dfa_text(even_a):
    d = parse_dfa_text(FIG1_TEXT)
    assert d == even_a
    assert parse_dfa_text(format_dfa_text(d)) == d


def test_parse_rejects_incomplete_unless_asked():
    text = "alphabet: a b\nstates: 1\ninitial: 0\naccepting: 0\ntrans: 0 a 0\n"
    with pytest.raises(AutomatonError):
        parse_dfa_text(text)
    d = parse_dfa_text(text, complete=True)
    assert d.n == 2
    assert enumerate_language(d, 3) == ["", "a", "aa", "aaa"]


@pytest.mark.parametrize("text", [
    "alphabet: a b\nstates: 1\n",
    "alphabet: a b\nstates: 1\ninitial: 0\nfoo: 1\n",
    "alphabet: a b\nstates: 1\ninitial: 0\ntrans: 0 c 0\n",
    "alphabet: a b\nstates: 1\ninitial: 0\ntrans: 0 a 4\n",
    "alphabet: a b\nstates: x\ninitial: 0\n",
    "alphabet: a b\nstates: 1\ninitial: 0\ntrans: 0 a 0\ntrans: 0 a 0\n",
    "no colon here\n",
])
def test_parse_errors(text):
    with pytest.raises(AutomatonError):
        parse_dfa_text(text, complete=True)


def test_dot_export(even_a):
    dot = to_dot(even_a)
    assert dot.startswith("digraph")
    assert "0 [shape=doublecircle]" in dot
