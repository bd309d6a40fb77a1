import pytest
from hypothesis import given, settings, strategies as st

from tanglekit import algebra as alg, cube as cb, curves as cv, simplify as sp, tangles as tg, typed as ty
from tanglekit.algebra import FILLED, HOLLOW, Elem
from tanglekit.samples import random_complex
from tanglekit.typed import Gen, TypeD

seeds = st.integers(0, 10_000)


def r1():
    return cv.standard_complex(cv.Curve("r", 1, 0, 1))


def unit_labels(X):
    return [(s, d) for s, lab, d in X.arrows() if any(p.kind == "i" for p in lab.terms)]


def test_cancel_pair():
    X = TypeD({"x": Gen(FILLED, 0, 0), "y": Gen(FILLED, 0, -2)})
    X.add_arrow("x", alg.unit(FILLED), "y")
    assert len(sp.cancel(X, "x", "y")) == 0


def test_cancel_zigzag_D_after_S_vanishes():
    X = TypeD()
    for name, e in (("z", HOLLOW), ("y", FILLED), ("x", FILLED), ("w", FILLED)):
        X.add_gen(name, Gen(e, 0, 0))
    X.add_arrow("z", alg.S(1, HOLLOW), "y")
    X.add_arrow("x", alg.unit(FILLED), "y")
    X.add_arrow("x", alg.D(1, FILLED), "w")
    X = ty.regrade(X)
    assert ty.check_typed(X).ok
    Y = sp.cancel(X, "x", "y")
    assert set(Y.gens) == {"z", "w"} and Y.n_arrows() == 0


def test_cancel_zigzag_adds_product():
    X = TypeD()
    for name in ("z", "y", "x", "w"):
        X.add_gen(name, Gen(FILLED, 0, 0))
    X.add_arrow("z", alg.D(1, FILLED), "y")
    X.add_arrow("x", alg.unit(FILLED), "y")
    X.add_arrow("x", alg.D(1, FILLED), "w")
    X = ty.regrade(X)
    Y = sp.cancel(X, "x", "y")
    assert Y.label("z", "w") == Elem([alg.D(2, FILLED)])


def test_cancel_rejects():
    X = r1()
    with pytest.raises(ValueError):
        sp.cancel(X, "a0", "a1")
    with pytest.raises(ValueError):
        sp.cancel(X, "a1", "a0")


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_cancel_preserves_homology(seed):
    X = random_complex(seed)
    pairs = unit_labels(X)
    if not pairs:
        return
    x, y = pairs[0]
    if x == y or len(X.out[x][y]) != 1:
        return
    Y = sp.cancel(X, x, y)
    assert ty.check_typed(Y).ok
    assert len(Y) == len(X) - 2
    assert ty.mor_homology(r1(), X).dims == ty.mor_homology(r1(), Y).dims


def test_reduce_reduced_unchanged():
    X = r1()
    Y = sp.reduce(X)
    assert Y.gens == X.gens and list(map(str, Y.arrows())) == list(map(str, X.arrows()))


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_reduce_properties(seed):
    X = random_complex(seed)
    Y = sp.reduce(X)
    assert not unit_labels(Y)
    assert ty.check_typed(Y).ok
    Z = sp.reduce(Y)
    assert Z.to_json() == Y.to_json()
    assert sp.reduce(X).to_json() == Y.to_json()


def test_reduce_one_crossing():
    T = tg.twist(tg.rational(0), "east", 1)
    assert T.n == 1
    X = sp.reduce(cb.build_DD(T))
    assert len(X) == 2 and ty.check_typed(X).ok


def test_reduce_pretzel_labels():
    X = sp.reduce(cb.build_DD(tg.pretzel([2, -3])))
    assert len(X) == 9
    assert not unit_labels(X)
    assert all(p.kind in ("S", "D") for _, lab, _ in X.arrows() for p in lab.terms)


def test_split_connected():
    assert len(sp.split_components(r1())) == 1


def test_split_sum():
    X = ty.direct_sum(r1(), cv.standard_complex(cv.Curve("s", 1, 1, 0)), prefixes=["a", "b"])
    parts = sp.split_components(X)
    assert sorted(len(p) for p in parts) == [2, 8]


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_split_partition(seed):
    X = sp.reduce(random_complex(seed))
    parts = sp.split_components(X)
    seen = [g for p in parts for g in p.gens]
    assert sorted(seen) == sorted(X.gens)
    arrows = sorted(str(a) for p in parts for a in p.arrows())
    assert arrows == sorted(str(a) for a in X.arrows())


def test_pretzel_two_summands():
    # the reduced complex is connected as a graph; the two summands appear
    # once the classifier twists it
    X = sp.reduce(cb.build_DD1(tg.pretzel([2, -3])))
    assert len(X) == 18 and len(sp.split_components(X)) == 1
    cl = cv.classify(X)
    assert cl.ok and len(cl.curves) == 2


def test_cleanup_zero():
    X = r1()
    assert sp.cleanup(X, ty.Mor({}, (0, 0))).to_json() == X.to_json()


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(0, 1000))
def test_cleanup_involution(seed, pick):
    X = random_complex(seed, cleanups=0)
    cands = list(sp.cleanup_candidates(X))
    if not cands:
        return
    g = cands[pick % len(cands)]
    Y = sp.cleanup(X, g)
    assert ty.check_typed(Y).ok and len(Y) == len(X)
    assert cv.isomorphic(sp.cleanup(Y, g), X)


def test_cleanup_removes_component():
    # two parallel arrows out of x; sliding y2 onto y1 kills one of them
    X = TypeD()
    X.add_gen("x", Gen(FILLED, 0, 0))
    X.add_gen("y1", Gen(FILLED, 2, 0))
    X.add_gen("y2", Gen(FILLED, 2, 0))
    X.add_arrow("x", alg.S(2, FILLED), "y1")
    X.add_arrow("x", alg.S(2, FILLED), "y2")
    g = ty.Mor({("y1", "y2"): Elem([alg.unit(FILLED)])}, (0, 0))
    Y = sp.cleanup(X, g)
    assert Y.n_arrows() == 1


@pytest.mark.parametrize("entries", [
    {("a0", "a0"): Elem([alg.unit(FILLED)])},
    {("a0", "a1"): Elem([alg.unit(FILLED)])},
])
def test_cleanup_rejects(entries):
    with pytest.raises(ValueError):
        sp.cleanup(r1(), ty.Mor(entries, (0, 0)))
