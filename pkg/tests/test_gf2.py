import random

from hypothesis import given, strategies as st

from tanglekit import gf2


def _dense_rank(rows, width):
    rows = [[(r >> i) & 1 for i in range(width)] for r in rows]
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


vecs = st.lists(st.integers(0, 2**12 - 1), max_size=14)


@given(vecs)
def test_rank_matches_dense(vs):
    assert gf2.rank(vs) == _dense_rank(vs, 12)


@given(vecs)
def test_kernel_combinations_vanish(vs):
    ker = gf2.kernel(vs)
    assert len(ker) == len(vs) - gf2.rank(vs)
    for combo in ker:
        acc = 0
        for i in gf2.bits(combo):
            acc ^= vs[i]
        assert acc == 0


@given(vecs, st.integers(0, 2**12 - 1))
def test_solve(vs, target):
    combo = gf2.solve(vs, target)
    if combo is None:
        assert gf2.rank(vs + [target]) > gf2.rank(vs)
    else:
        acc = 0
        for i in gf2.bits(combo):
            acc ^= vs[i]
        assert acc == target


def test_bits():
    assert list(gf2.bits(0b101001)) == [0, 3, 5]
    assert list(gf2.bits(0)) == []


def test_identity_full_rank():
    rng = random.Random(3)
    n = 40
    rows = [1 << i for i in range(n)]
    rng.shuffle(rows)
    assert gf2.rank(rows) == n
