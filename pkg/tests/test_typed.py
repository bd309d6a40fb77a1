import pytest
from hypothesis import given, settings, strategies as st

from tanglekit import algebra as alg, curves as cv, simplify as sp, typed as ty
from tanglekit.algebra import FILLED, HOLLOW, Elem
from tanglekit.samples import random_complex
from tanglekit.simplify import reduce
from tanglekit.typed import Gen, TypeD


def point(idem=FILLED):
    return TypeD({"g": Gen(idem, 0, 0)})


def r1():
    return cv.standard_complex(cv.Curve("r", 1, 0, 1))


def chain(labels, idems):
    X = TypeD()
    for i, e in enumerate(idems):
        X.add_gen(f"x{i}", Gen(e, 0, 0))
    for i, lab in enumerate(labels):
        X.add_arrow(f"x{i}", alg.from_text(lab), f"x{i + 1}")
    return ty.regrade(X)


seeds = st.integers(0, 10_000)


def test_check_point():
    assert ty.check_typed(point()).ok


def test_check_r1():
    X = r1()
    assert ty.check_typed(X).ok
    assert {str(lab) for _, lab, _ in X.arrows()} == {"S^2.+D^1."}


def test_check_DS_passes():
    assert ty.check_typed(chain(["D.", "S."], [FILLED, FILLED, HOLLOW])).ok


def test_check_DD_fails():
    rep = ty.check_typed(chain(["D.", "D."], [FILLED] * 3))
    assert not rep.ok
    kind, src, val, dst = rep.issues[0]
    assert (kind, src, val, dst) == ("d^2", "x0", "D^2.", "x2")


def test_check_bad_grading():
    X = TypeD({"a": Gen(FILLED, 0, 0), "b": Gen(FILLED, 0, 0)})
    X.add_arrow("a", alg.D(1, FILLED), "b")
    assert ty.check_typed(X).issues[0][0] == "grading"


def test_check_bad_idempotent():
    X = TypeD({"a": Gen(FILLED, 0, 0), "b": Gen(FILLED, 1, -1)})
    X.add_arrow("a", alg.S(1, FILLED), "b")
    assert ty.check_typed(X).issues[0][0] == "idempotent"


def test_central_H_point():
    f = ty.central_action("H", point())
    assert f.entries == {("g", "g"): Elem([alg.D(1, FILLED), alg.S(2, FILLED)])}


def test_central_hollow_D_on_r1_is_zero():
    assert not ty.central_action("D:", r1())


def test_central_S2_on_r1():
    f = ty.central_action("S2", r1())
    assert f.entries == {(g, g): Elem([alg.S(2, FILLED)]) for g in ("a0", "a1")}


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_central_actions_chain_maps(seed):
    X = random_complex(seed)
    acts = {z: ty.central_action(z, X) for z in ("H", "D.", "D:", "S2")}
    for f in acts.values():
        assert ty.is_chain_map(X, X, f)
    assert (acts["D."] + acts["D:"] + acts["S2"]).entries == acts["H"].entries


def test_mor_basis_identity():
    sl = ty.mor_basis(point(), point(), (0, 0))
    assert sl.basis == [("g", alg.unit(FILLED), "g")]
    assert not ty.mor_differential(point(), point(), ty.identity_mor(point()))


def test_mor_basis_S2_slice():
    X = r1()
    sl = ty.mor_basis(X, X, (-2, -2))
    assert len(sl.basis) == 4
    v = ty.mor_to_vector(ty.central_action("S2", X), sl)
    assert ty.vector_to_mor(v, sl).entries == ty.central_action("S2", X).entries


def test_mor_basis_parity_mismatch_empty():
    X, Y = point(FILLED), point(HOLLOW)
    assert ty.mor_basis(X, Y, (0, 0)).basis == []
    assert ty.mor_basis(X, Y, (-1, -1)).basis


def test_nullhomotopic_zero():
    ok, w = ty.is_nullhomotopic(ty.Mor({}, (0, 0)), r1(), r1())
    assert ok and not w


def test_filled_D_on_r1_not_null():
    ok, w = ty.is_nullhomotopic(ty.central_action("D.", r1()), r1(), r1())
    assert not ok and w is None


def test_H_on_r1_null_with_witness():
    X = r1()
    f = ty.central_action("H", X)
    ok, w = ty.is_nullhomotopic(f, X, X)
    assert ok
    assert not (ty.mor_differential(X, X, w) + f)


def test_nullhomotopic_rejects_non_cycle():
    X = r1()
    f = ty.Mor({("a0", "a0"): Elem([alg.unit(FILLED)])}, (0, 0))
    with pytest.raises(ValueError):
        ty.is_nullhomotopic(f, X, X)


def test_mor_homology_point_tail():
    h = ty.mor_homology(point(), point(), cap=10, strict=False)
    assert not h.stabilized
    assert h.dims[(0, 0)] == 1
    ks = range(1, len(h.dims))
    assert set(h.dims) == {(0, 0)} | {(-2 * k, -2 * k) for k in ks}
    assert all(h.dims[(-2 * k, -2 * k)] == 2 for k in ks)
    assert len(ks) >= 5


def test_mor_homology_point_strict_raises():
    with pytest.raises(ty.WindowNotStabilized):
        ty.mor_homology(point(), point(), cap=8)


def test_mor_homology_empty():
    assert ty.mor_homology(TypeD(), r1()).total == 0


def test_mor_homology_r1_self():
    h = ty.mor_homology(r1(), r1())
    assert h.dims == {(2, 0): 1, (0, 0): 1, (0, -2): 1, (-2, -2): 1}


def test_cone_of_H_on_point_is_r1():
    X = point()
    c = ty.cone(ty.central_action("H", X), X)
    assert c.gens == {"g|0": Gen(FILLED, -1, 1), "g|1": Gen(FILLED, 1, 1)}
    assert cv.isomorphic(c, r1())
    assert ty.check_typed(c).ok


def test_cone_of_zero_is_sum():
    X = r1()
    c = ty.cone(ty.Mor({}, (0, -2)), X)
    assert len(c) == 4 and c.n_arrows() == 2
    assert cv.isomorphic(c, ty.direct_sum(X, X, prefixes=["a", "b"]))


def test_cone_rejects_non_chain_map():
    X = r1()
    f = ty.Mor({("a0", "a0"): Elem([alg.unit(FILLED)])}, (0, 0))
    with pytest.raises(ValueError):
        ty.cone(f, X)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_cone_valid(seed):
    X = random_complex(seed)
    assert ty.check_typed(ty.cone(ty.central_action("H", X), X)).ok


def test_dual_point():
    X = TypeD({"g": Gen(HOLLOW, 3, -1)})
    assert ty.dual(X).gens == {"g": Gen(HOLLOW, -3, 1)}


def test_dual_r1():
    assert cv.isomorphic(ty.dual(r1()), r1())


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_dual_involution(seed):
    X = random_complex(seed)
    Y = ty.dual(ty.dual(X))
    assert Y.gens == X.gens
    assert sorted(map(str, Y.arrows())) == sorted(map(str, X.arrows()))
    assert ty.check_typed(ty.dual(X)).ok


def test_box_point_tau1():
    Y = ty.box_tensor(point(), cv.tau_bimodule("t1"))
    assert len(Y) == 2
    [(s, lab, d)] = list(Y.arrows())
    assert lab == Elem([alg.S(1, FILLED)])
    assert Y.gens[s].idem == FILLED and Y.gens[d].idem == HOLLOW


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_box_identity(seed):
    X = reduce(random_complex(seed))
    assert cv.isomorphic(ty.box_tensor(X, ty.identity_bimodule()), X)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_json_roundtrip(seed):
    X = random_complex(seed)
    s = X.to_json()
    Y = TypeD.from_json(s)
    assert Y.to_json() == s


@settings(max_examples=6, deadline=None)
@given(seeds)
def test_mor_homology_invariant_under_reduce(seed):
    X = random_complex(seed)
    probe = r1()
    assert ty.mor_homology(probe, X).dims == ty.mor_homology(probe, reduce(X)).dims
    assert ty.mor_homology(X, probe).dims == ty.mor_homology(reduce(X), probe).dims


def test_cone_H_homology_matches_reduced():
    X = random_complex(11)
    a = ty.cone(ty.central_action("H", X), X)
    b = ty.cone(ty.central_action("H", reduce(X)), reduce(X))
    probe = r1()
    assert ty.mor_homology(probe, a).dims == ty.mor_homology(probe, b).dims


def _norm(text):
    return ty.regrade(cv.curve_complex(cv.Curve.parse(text)))


@pytest.mark.parametrize("a, b, want", [
    ("r_1(0)", "r_1(0)", True),
    ("r_1(0)", "r_1(1/0)", False),
    ("r_2(0)", "r_2(1/0)", False),
    ("s_2(0)", "s_2(1/0)", False),
    ("s_4(0)", "s_4(0)", True),
])
def test_find_equivalence(a, b, want):
    X, Y = _norm(a), _norm(b)
    res = ty.find_equivalence(X, Y)
    assert (res is not None) is want
    if res:
        f, g = res
        assert ty.is_chain_map(X, Y, f) and ty.is_chain_map(Y, X, g)
        assert ty.is_nullhomotopic(ty.compose(g, f) + ty.identity_mor(X), X, X)[0]
        assert ty.is_nullhomotopic(ty.compose(f, g) + ty.identity_mor(Y), Y, Y)[0]


def test_find_equivalence_after_cleanup():
    X = cv.standard_complex(cv.Curve.parse("s_2(0)"))
    Y = sp.tidy(X)
    assert ty.find_equivalence(X, Y) is not None


def test_homology_reps_match_table():
    X = cv.standard_complex(cv.Curve.parse("r_1(0)"))
    h = ty.mor_homology(X, X)
    for deg, dim in h.dims.items():
        assert len(ty.homology_reps(X, X, deg)) == dim
