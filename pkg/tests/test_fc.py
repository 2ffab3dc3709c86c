import random

import pytest
from hypothesis import given, settings, strategies as st

from fcreg.automata import Alphabet, enumerate_language
from fcreg.fc import (
    EPS_TERM,
    And,
    Atom,
    Const,
    Exists,
    FcSyntaxError,
    Forall,
    FreeVariableError,
    Not,
    Var,
    compile_sfr_to_fc,
    compile_sfr_to_fc_formula,
    eval_fc,
    eval_fc_with,
    factors,
    fc_language,
    free_variables,
    parse_fc,
    power_atoms,
    quantifier_rank,
    size,
    to_text,
    whole_word,
)
from fcreg.oracles import naive_eval_fc, random_fc_formula
from fcreg.sfr import Complement, compile_sfr, parse_sfr

AB = Alphabet("ab")

SQUARE_WITH_B = "E x: E y: E z: (x = y . y) & (y = 'b' . z)"
# "the whole word is a square and contains no b"
AA_STAR = (
    "E w, x: ((A y, z: (!((y = w . z) | (y = z . w)) | z = eps))"
    " & (w = x . x) & !(E y: y = 'b'))"
)


def test_parse_nested_existentials():
    phi = parse_fc("E x: E y: x = y . y")
    assert phi == Exists("x", Exists("y", Atom(Var("x"), Var("y"), Var("y"))))


def test_parse_letter_constant():
    phi = parse_fc(SQUARE_WITH_B)
    assert Atom(Var("y"), Const("b"), Var("z")) == phi.body.body.body.right


def test_parse_forall_and_sugar():
    assert parse_fc("A x: x = x") == Forall("x", Atom(Var("x"), Var("x"), EPS_TERM))
    assert parse_fc("E x, y: x = y") == parse_fc("E x: E y: x = y . eps")


@pytest.mark.parametrize("text", [
    "E x x = x", "E eps: eps = eps", "x = ", "(x = y", "x = y .", "E : x = x", "x = 'ab'", "x = y z", "x ~ y",
])
def test_parse_errors(text):
    with pytest.raises(FcSyntaxError):
        parse_fc(text)


def test_non_sentence_rejected():
    phi = parse_fc("E x: x = y . x")
    assert free_variables(phi) == {"y"}
    with pytest.raises(FreeVariableError):
        eval_fc("ab", phi)
    assert eval_fc_with("ab", phi, {"y": ""})


def test_eval_square_with_b():
    phi = parse_fc(SQUARE_WITH_B)
    assert eval_fc("babbab", phi)
    assert not eval_fc("aaaa", phi)
    for w in ("babbab", "aaaa", "bb", "abab", "bab", "abbabba"):
        assert eval_fc(w, phi) == naive_eval_fc(w, phi), w


def test_eval_aa_star_sentence():
    phi = parse_fc(AA_STAR)
    assert eval_fc("aaaa", phi)
    assert not eval_fc("aaa", phi)
    assert not eval_fc("aab", phi)
    assert fc_language(phi, "ab", 6) == ["", "aa", "aaaa", "aaaaaa"]


def test_trivial_sentences():
    for w in ("", "a", "abba"):
        assert eval_fc(w, parse_fc("E x: x = x"))
    assert fc_language(parse_fc("!(E x: x = x)"), "ab", 5) == []


def test_absent_letter_makes_atoms_false():
    phi = parse_fc("E x: x = 'b'")
    assert not eval_fc("aaa", phi)
    assert eval_fc("aab", phi)
    # the negated atom holds for every value when the constant is undefined
    assert eval_fc("aa", parse_fc("A x: !(x = 'b' . eps)"))


def test_eval_checks_alphabet():
    with pytest.raises(ValueError):
        eval_fc("abc", parse_fc("E x: x = x"), "ab")


def test_factors():
    assert factors("aba") == ["", "a", "b", "ab", "ba", "aba"]


def test_quantifier_rank():
    assert quantifier_rank(Atom(Var("x"), Var("y"), EPS_TERM)) == 0
    assert quantifier_rank(parse_fc("E x: A y: x = y")) == 2
    left, right = parse_fc("E x: E y: x = y"), parse_fc("A z: z = z")
    assert quantifier_rank(And(left, right)) == max(quantifier_rank(left), quantifier_rank(right)) == 2
    assert quantifier_rank(Not(left)) == 2


def test_to_text_round_trips_random_formulas():
    rng = random.Random(0)
    for _ in range(200):
        phi = random_fc_formula(rng, "ab", 3)
        assert parse_fc(to_text(phi)) == phi


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.text(alphabet="ab", max_size=6))
def test_eval_agrees_with_naive_evaluator(seed, w):
    phi = random_fc_formula(random.Random(seed), "ab", max_quantifiers=3)
    assert eval_fc(w, phi) == naive_eval_fc(w, phi)


def test_eval_agrees_with_naive_evaluator_exhaustive_words():
    rng = random.Random(1)
    words = list(AB.words(5))
    for _ in range(60):
        phi = random_fc_formula(rng, "ab", max_quantifiers=3, depth=5)
        for w in words:
            assert eval_fc(w, phi) == naive_eval_fc(w, phi), (to_text(phi), w)


# -- compiler --------------------------------------------------------------------------


def compiled_language(text: str, bound: int) -> list[str]:
    return fc_language(compile_sfr_to_fc(parse_sfr(text, "ab")), "ab", bound)


def dfa_language(text: str, bound: int) -> list[str]:
    return enumerate_language(compile_sfr(parse_sfr(text, "ab"), "ab"), bound)


def test_compile_letter():
    assert compiled_language("a", 3) == ["a"]


def test_compile_word_star_includes_epsilon():
    assert compiled_language('"aa"*', 6) == ["", "aa", "aaaa", "aaaaaa"]
    assert compiled_language('"ab"*', 6) == ["", "ab", "abab", "ababab"]
    assert compiled_language('"ab"*', 6) == dfa_language('"ab"*', 6)


def test_compile_complement_is_bounded_complement():
    e = parse_sfr('"ab"* a', "ab")
    pos = set(fc_language(compile_sfr_to_fc(e), "ab", 5))
    neg = fc_language(compile_sfr_to_fc(Complement(e)), "ab", 5)
    assert neg == [w for w in AB.words(5) if w not in pos]


@pytest.mark.parametrize("text", [
    "EPS", "EMPTY", "ANY", "a b", "a | b", '"abab"*', '"aab"* b', '!"ba"*', r"ANY a \ a ANY", '"aaaa"*',
    '"aaaaaa"*', '"ababab"* & ANY b',
])
def test_compiler_round_trip(text):
    assert compiled_language(text, 6) == dfa_language(text, 6)


def test_power_atoms():
    for p in range(1, 10):
        names, atoms = power_atoms("t", "z", p, (f"h{i}" for i in range(100)))
        phi = conj_all(atoms)
        assert len(atoms) <= 2 * p.bit_length()
        body = phi
        for n in names:
            body = Exists(n, body)
        for z in ("a", "ab"):
            word = z * 10
            for t in factors(word):
                expected = t == z * p
                assert eval_fc_with(word, body, {"t": t, "z": z}) == expected, (p, z, t)
    with pytest.raises(ValueError):
        power_atoms("t", "z", 0, iter(()))


def conj_all(atoms):
    out = atoms[0]
    for a in atoms[1:]:
        out = And(out, a)
    return out


def test_whole_word_holds_only_for_the_word():
    phi = whole_word("x", (f"v{i}" for i in range(10)))
    for w in AB.words(4):
        for f in factors(w):
            assert eval_fc_with(w, phi, {"x": f}) == (f == w)


@pytest.mark.parametrize("text", ['"ab"*', "ANY a", '!("abab" "abab"*)'])
def test_wrapped_variable_is_the_whole_word(text):
    fresh = (f"w{i}" for i in range(1000))
    body = compile_sfr_to_fc_formula(parse_sfr(text, "ab"), "x")
    wrapped = And(body, whole_word("x", fresh))
    for w in AB.words(5):
        sat = [f for f in factors(w) if eval_fc_with(w, wrapped, {"x": f})]
        assert sat in ([], [w])


def test_compiled_formula_size_stays_small():
    phi = compile_sfr_to_fc(parse_sfr('"' + "ab" * 16 + '"*', "ab"))
    assert size(phi) < 60
    assert free_variables(phi) == frozenset()
