from fractions import Fraction
from itertools import product

import pytest

from tanglekit import tangles as tg

Q1_TEXT = """\
ends NW=a1 NE=a2 SE=a3 SW=a4
x c1: (a4,a3,a2,a1) over=ac
orient a1 -> c1.3
orient a2 -> c1.2
"""

TWIST2 = """\
ends NW=a1 NE=a2 SE=a3 SW=a4
x c1: (a4,a5,a6,a1) over=ac
x c2: (a5,a3,a2,a6) over=ac
"""


def count_circles(T, v):
    """Closed loops of a resolution by walking strands through smoothings."""
    inc = T.endpoints()
    partner = {}
    for i, (c, bit) in enumerate(zip(T.crossings, v)):
        for s, t in c.smoothing(bit):
            partner[("x", i, s)] = ("x", i, t)
            partner[("x", i, t)] = ("x", i, s)
    seen = set()

    def walk(a, tail):
        # returns True when the walk closes up without meeting an end
        while a not in seen:
            seen.add(a)
            p, q = inc[a]
            h = q if p == tail else p
            if h[0] == "e":
                return False
            tail = partner[h]
            a = T.crossings[tail[1]].arcs[tail[2]]
        return True

    for e, a in T.ends.items():
        walk(a, ("e", e))
    loops = 0
    for a in T.arcs():
        if a not in seen:
            loops += walk(a, inc[a][0])
    return loops


LIBRARY = {
    "Q0": tg.rational(0),
    "Qinf": tg.rational(None),
    "Q1": tg.rational(1),
    "Q2/3": tg.rational(Fraction(2, 3)),
    "P2,-3": tg.pretzel([2, -3]),
    "P3,-2": tg.pretzel([3, -2]),
}


@pytest.mark.parametrize("text, n, conn", [
    ("rational 0\n", 0, "Lo"),
    ("rational inf\n", 0, "Li"),
    ("rational 2/3\n", 3, "Lo"),
    ("pretzel 2 -3\n", 5, "Li"),
    (Q1_TEXT, 1, "X"),
    (TWIST2, 2, "Lo"),
])
def test_parse(text, n, conn):
    T = tg.parse(text)
    assert T.n == n and T.connectivity() == conn


@pytest.mark.parametrize("text, msg", [
    ("ends NW=a1 NE=a2 SE=a3 SW=a4\nx c1: (a4,a2,a3,a1) over=ac\n", "planar"),
    (TWIST2 + "orient a1 -> c1.3\norient a5 -> c1.1\n", "conflicts"),
    ("ends NW=a1 NE=a2\n", "ends must be"),
    ("x c1: (a,b,c) over=a\n", "line 1"),
    ("foo 1\n", "unknown declaration"),
    ("ends NW=a1 NE=a2 SE=a3 SW=a4\nx c1: (a4,a3,a2,a1) over=a9\n", "line 2"),
])
def test_parse_errors(text, msg):
    with pytest.raises(tg.DiagramError, match=msg):
        tg.parse(text)


@pytest.mark.parametrize("name", sorted(LIBRARY))
def test_text_roundtrip(name):
    T = LIBRARY[name]
    U = tg.parse(T.to_text())
    assert U.n == T.n and U.signs() == T.signs() and U.connectivity() == T.connectivity()


def test_Q0_resolution():
    r = tg.rational(0).resolve(())
    assert r.circles == [] and r.eps == 0


def test_one_crossing_resolutions():
    T = tg.rational(1)
    got = [(len(T.resolve((b,)).circles), T.resolve((b,)).eps) for b in (0, 1)]
    assert sorted(got) == [(0, 0), (0, 1)]


def test_connectivity_examples():
    assert tg.rational(0).connectivity() == "Lo"
    assert tg.rational(None).connectivity() == "Li"
    assert tg.twist(tg.twist(tg.rational(None), "south", 1), "south", 1).connectivity() == "Li"
    assert tg.pretzel([2, -3]).connectivity() == "Li"


@pytest.mark.parametrize("T, want", [
    (tg.rational(0), (0, 0)),
    (tg.rational(1), (1, 0)),
    (tg.rational(-1), (0, 1)),
    (tg.pretzel([2, -3]), (0, 5)),
    (tg.pretzel([3, -2]), (5, 0)),
])
def test_writhe(T, want):
    assert T.writhe_data() == want


@pytest.mark.parametrize("name", sorted(LIBRARY))
def test_circles_match_traversal(name):
    T = LIBRARY[name]
    for v in product((0, 1), repeat=T.n):
        assert len(T.resolve(v).circles) == count_circles(T, v)


@pytest.mark.parametrize("name", sorted(LIBRARY))
def test_resolution_locality(name):
    T = LIBRARY[name]
    for v in product((0, 1), repeat=T.n):
        r0 = T.resolve(v)
        for i in range(T.n):
            if v[i]:
                continue
            r1 = T.resolve(v[:i] + (1,) + v[i + 1:])
            dc = len(r1.circles) - len(r0.circles)
            if r0.eps == r1.eps:
                assert dc in (-1, 1)
            else:
                assert dc == 0


def test_pretzel_all_zero_circles():
    T = tg.pretzel([2, -3])
    assert count_circles(T, (0,) * 5) == len(T.resolve((0,) * 5).circles) == 2


def test_connectivity_relabel_invariant():
    T = tg.pretzel([2, -3])
    U = tg.renumber(T, "relabelled")
    assert U.connectivity() == T.connectivity()


def test_glue_closed():
    L = tg.glue(tg.rational(0), tg.rational(0))
    assert L.closed
    assert L.closed_components() == 2
