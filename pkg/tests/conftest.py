import pytest

from fcreg.automata import dfa_from_dict

L1_TEXT = '((EPS | ANY b) "aa"* a (b ANY | EPS)) | ((EPS | ANY a) "bb"* b (a ANY | EPS))'


def even_a_dfa():
    """Words with an even number of a's."""
    return dfa_from_dict("ab", 2, 0, {0}, {(0, "a"): 1, (1, "a"): 0, (0, "b"): 0, (1, "b"): 1})


def _pairs_star(from3_a: int, from3_b: int):
    # 0 -a-> 1 -a/b-> 0, 0 -b-> 3, state 2 is the sink
    return dfa_from_dict("ab", 4, 0, {0}, {
        (0, "a"): 1, (1, "a"): 0, (1, "b"): 0, (0, "b"): 3,
        (3, "a"): from3_a, (3, "b"): from3_b, (2, "a"): 2, (2, "b"): 2,
    })


def aa_ab_ba_star_dfa():
    """(aa | ab | ba)*, the left machine of the running example."""
    return _pairs_star(0, 2)


def aa_ab_bb_star_dfa():
    """(aa | ab | bb)*, the right machine of the running example."""
    return _pairs_star(2, 0)


def aa_bb_star_dfa():
    return dfa_from_dict("ab", 4, 0, {0}, {
        (0, "a"): 1, (1, "a"): 0, (1, "b"): 2, (0, "b"): 3,
        (3, "b"): 0, (3, "a"): 2, (2, "a"): 2, (2, "b"): 2,
    })


def aa_star_dfa():
    return dfa_from_dict("ab", 3, 0, {0}, {
        (0, "a"): 1, (1, "a"): 0, (0, "b"): 2, (1, "b"): 2, (2, "a"): 2, (2, "b"): 2,
    })


@pytest.fixture
def even_a():
    return even_a_dfa()


@pytest.fixture
def left():
    return aa_ab_ba_star_dfa()


@pytest.fixture
def right():
    return aa_ab_bb_star_dfa()


@pytest.fixture
def aa_bb_star():
    return aa_bb_star_dfa()


@pytest.fixture
def aa_star():
    return aa_star_dfa()


# -- acceptance reporting ------------------------------------------------------

ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
