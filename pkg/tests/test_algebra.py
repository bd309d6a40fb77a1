from itertools import product

import pytest
from hypothesis import given, strategies as st

from tanglekit import algebra as alg
from tanglekit.algebra import FILLED, HOLLOW, Elem, Path, S, D, unit

PATHS6 = alg.basis_paths(6)


def test_generator_composition():
    a = S(1, FILLED)  # hollow -> filled
    b = S(1, HOLLOW)  # filled -> hollow
    assert a.left == HOLLOW and b.left == FILLED
    assert alg.mul(a, b) == Elem([S(2, HOLLOW)])


def test_mixed_kinds_vanish():
    assert alg.mul(D(1, FILLED), S(1, HOLLOW)) == alg.ZERO
    assert alg.mul(S(1, FILLED), D(1, FILLED)) == alg.ZERO


def test_H_times_S():
    s = S(1, HOLLOW)
    assert alg.mul(alg.central_H(), s) == Elem([S(3, HOLLOW)])
    assert alg.mul(s, alg.central_H()) == Elem([S(3, HOLLOW)])


def test_H_squared():
    H = alg.central_H()
    want = Elem([D(2, FILLED), D(2, HOLLOW), S(4, FILLED), S(4, HOLLOW)])
    assert alg.mul(H, H) == want


def test_H_projected():
    assert alg.mul(alg.central_H(), unit(FILLED)) == Elem([D(1, FILLED), S(2, FILLED)])


@pytest.mark.parametrize("p, gr", [
    (S(1, FILLED), (-1, -1)),
    (D(3, HOLLOW), (-6, -6)),
    (unit(FILLED), (0, 0)),
    (S(4, HOLLOW), (-4, -4)),
])
def test_grading(p, gr):
    assert alg.grading(p) == gr


@pytest.mark.parametrize("p, q", [
    (S(1, HOLLOW), S(1, FILLED)),
    (D(1, FILLED), D(1, FILLED)),
    (S(2, HOLLOW), S(2, HOLLOW)),
])
def test_reverse_examples(p, q):
    assert alg.path_reverse(p) == q


def test_associativity_exhaustive():
    for a, b, c in product(PATHS6, repeat=3):
        assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))


def test_unit():
    one = alg.one()
    for p in PATHS6:
        assert alg.mul(one, p) == Elem([p]) == alg.mul(p, one)


def test_centrality():
    H = alg.central_H()
    for p in PATHS6:
        assert alg.mul(H, p) == alg.mul(p, H)


def test_grading_additive():
    for a, b in product(PATHS6, repeat=2):
        r = alg.path_mul(a, b)
        if r is not None:
            ga, gb = alg.grading(a), alg.grading(b)
            assert alg.grading(r) == (ga[0] + gb[0], ga[1] + gb[1])


def test_reverse_anti_multiplicative():
    for a, b in product(PATHS6, repeat=2):
        assert alg.reverse(alg.mul(a, b)) == alg.mul(alg.reverse(b), alg.reverse(a))
    for p in PATHS6:
        assert alg.path_reverse(alg.path_reverse(p)) == p


def test_idempotent_invariants():
    for p in PATHS6:
        if p.kind == "S":
            assert (p.left == p.right) == (p.n % 2 == 0)
        else:
            assert p.left == p.right


paths = st.sampled_from(PATHS6)
elems = st.lists(paths, max_size=8).map(Elem)


@given(elems)
def test_char_two(a):
    assert not (a + a)


@given(elems, elems, elems)
def test_distributive(a, b, c):
    assert alg.mul(a, b + c) == alg.mul(a, b) + alg.mul(a, c)


@given(elems)
def test_text_roundtrip(a):
    assert alg.from_text(alg.to_text(a)) == a


@pytest.mark.parametrize("text, paths", [
    ("0", []),
    ("i.", [unit(FILLED)]),
    ("S^2:+D^1.", [S(2, HOLLOW), D(1, FILLED)]),
    ("S:", [S(1, HOLLOW)]),
])
def test_parse(text, paths):
    assert alg.from_text(text) == Elem(paths)


@pytest.mark.parametrize("bad", ["S^1", "X^2.", "S^0.", ""])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        alg.from_text(bad)


def test_path_is_tuple():
    assert Path("S", 3, FILLED).left == HOLLOW
    assert str(S(3, FILLED)) == "S^3."
