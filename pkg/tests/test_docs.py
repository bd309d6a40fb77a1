import re
from pathlib import Path

import pytest

from tanglekit import cube as cb, curves as cv, pairing as pr, simplify as sp, tangles as tg

DOC = Path(__file__).resolve().parents[1] / "docs" / "tangle_format.md"
BLOCKS = re.findall(r"```tangle\n(.*?)```", DOC.read_text(), re.S)


def test_five_blocks():
    assert len(BLOCKS) == 5


@pytest.mark.parametrize("i, n, conn, curves", [
    (0, 0, "Lo", ["r_1(0)"]),
    (1, 1, "X", ["r_1(1)"]),
    (2, 2, "Li", ["r_1(1/2)"]),
    (3, 5, "Li", ["r_1(1/2)", "s_4(0)"]),
])
def test_open_examples(i, n, conn, curves):
    T = tg.parse(BLOCKS[i])
    assert T.n == n and T.connectivity() == conn
    cl = cv.classify(sp.reduce(cb.build_DD1(T)))
    assert sorted(str(c) for c, _ in cl.curves) == curves


def test_closed_example():
    L = tg.parse(BLOCKS[4])
    assert L.closed and L.closed_components() == 2
    assert pr.reduced_kh_oracle(L).total == 2
