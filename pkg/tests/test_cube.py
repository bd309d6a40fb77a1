from fractions import Fraction
from itertools import product

import pytest

from tanglekit import algebra as alg, cube as cb, curves as cv, tangles as tg, typed as ty
from tanglekit.algebra import FILLED, HOLLOW, Elem
from tanglekit.library import builtin_tangles

SMALL = {name: T for name, (T, _) in builtin_tangles().items() if T.n <= 5}


def edges(T):
    cube = cb.Cube(T)
    for v in product((0, 1), repeat=T.n):
        for i in range(T.n):
            if v[i] == 0:
                yield cube, v, i


def edge_kind(cube, v, i):
    c = cube.T.crossings[i]
    R = cube.res(v)
    p0 = c.smoothing(0)
    k1, k2 = R.comp[c.arcs[p0[0][0]]], R.comp[c.arcs[p0[1][0]]]
    circ = set(R.circles)
    if k1 == k2:
        if k1 in circ:
            return "split"
        return "split-special" if k1 == R.special else "split-strand"
    n = (k1 in circ) + (k2 in circ)
    if n == 2:
        return "merge"
    if n == 0:
        return "flip"
    strand = k2 if k1 in circ else k1
    return "merge-special" if strand == R.special else "merge-strand"


def test_Q0_single_generator():
    X = cb.build_DD(tg.rational(0))
    assert len(X) == 1 and X.n_arrows() == 0
    assert next(iter(X.gens.values())).idem == FILLED


def test_one_crossing():
    X = cb.build_DD(tg.rational(1))
    assert sorted(g.idem for g in X.gens.values()) == [FILLED, HOLLOW]
    [(_, lab, _)] = list(X.arrows())
    assert len(lab) == 1 and next(iter(lab.terms)).kind == "S"


def test_DD1_Q0_is_figure_eight():
    X = cb.build_DD1(tg.rational(0))
    assert cv.isomorphic(X, cv.standard_complex(cv.Curve("r", 1, 0, 1)))


@pytest.mark.parametrize("name", sorted(SMALL))
def test_d_squared(name):
    T = SMALL[name]
    assert ty.check_typed(cb.build_DD(T)).ok
    assert ty.check_typed(cb.build_DD1(T)).ok


@pytest.mark.parametrize("name", sorted(SMALL))
def test_generator_count(name):
    T = SMALL[name]
    cube = cb.Cube(T)
    want = sum(2 ** len(cube.circles(v)) for v in product((0, 1), repeat=T.n))
    assert len(cb.build_DD(T)) == want


@pytest.mark.parametrize("name", sorted(SMALL))
def test_single_bit_edges(name):
    X = cb.build_DD(SMALL[name])
    for s, _, d in X.arrows():
        vs, vd = s.split("-")[0], d.split("-")[0]
        assert sum(a != b for a, b in zip(vs, vd)) == 1
        assert vs.count("1") + 1 == vd.count("1")


def test_idempotent_matches_resolution():
    T = tg.pretzel([2, -3])
    cube = cb.Cube(T)
    for v in product((0, 1), repeat=T.n):
        for _, g, _ in cube.generators(v):
            assert g.idem == cube.res(v).eps


def _collect(samples):
    kinds = {}
    for T in samples:
        for cube, v, i in edges(T):
            kinds.setdefault(edge_kind(cube, v, i), []).append((cube, v, i))
    return kinds


KINDS = _collect([tg.pretzel([2, -5]), tg.pretzel([3, -2]), tg.rational(4), tg.rational(Fraction(1, 4))])


def test_all_six_cases_present():
    assert set(KINDS) == {"flip", "merge", "split", "merge-strand", "merge-special",
                          "split-strand", "split-special"}


def outputs(kind):
    cube, v, i = KINDS[kind][0]
    per_src = {}
    for s, elem, d in cb.saddle_map(cube, v, i):
        per_src.setdefault(s, []).append((str(elem), d))
    return cube.res(v).eps, per_src


def test_merge_two_circles():
    cube, v, i = KINDS["merge"][0]
    for s, elem, d in cb.saddle_map(cube, v, i):
        src_lab = s.split("-")[1]
        if src_lab.count("y") == len(src_lab):
            e = cube.res(v).eps
            if elem == alg.H_at(e):
                assert d.split("-")[1].count("y") == len(d.split("-")[1])
                return
    pytest.fail("no H-labelled output from the all-y generator")


def test_flip_is_single_S():
    e, per_src = outputs("flip")
    for outs in per_src.values():
        [(lab, _)] = outs
        assert lab == str(Elem([alg.S(1, e)]))


def test_split_circle_counts():
    e, per_src = outputs("split")
    sizes = sorted(len(v) for v in per_src.values())
    # 1 -> y1 + 1y + H.11 and y -> yy
    assert set(sizes) == {1, 3}
    for outs in per_src.values():
        labs = sorted(lab for lab, _ in outs)
        assert labs in ([str(Elem([alg.unit(e)]))],
                        sorted([str(Elem([alg.unit(e)]))] * 2 + [str(alg.H_at(e))]))


def test_split_off_special_strand():
    e, per_src = outputs("split-special")
    for outs in per_src.values():
        [(lab, d)] = outs
        assert lab == str(Elem([alg.unit(e)]))


def test_split_off_other_strand():
    e, per_src = outputs("split-strand")
    for outs in per_src.values():
        assert sorted(lab for lab, _ in outs) == sorted([str(Elem([alg.D(1, e)])), str(Elem([alg.unit(e)]))])


@pytest.mark.parametrize("kind, y_label", [
    ("merge-special", lambda e: str(alg.H_at(e))),
    ("merge-strand", lambda e: str(Elem([alg.S(2, e)]))),
])
def test_merge_into_strand(kind, y_label):
    e, per_src = outputs(kind)
    labs = sorted(lab for outs in per_src.values() for lab, _ in outs)
    assert str(Elem([alg.unit(e)])) in labs and y_label(e) in labs


def test_saddle_rejects_wrong_direction():
    T = tg.rational(1)
    with pytest.raises(ValueError):
        list(cb.saddle_map(cb.Cube(T), (1,), 0))


def test_closed_rejected():
    with pytest.raises(ValueError):
        cb.Cube(tg.glue(tg.rational(0), tg.rational(0)))
