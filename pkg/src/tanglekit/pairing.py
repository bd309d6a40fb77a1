"""Gluing: Floer pairing as morphism homology, plus a reduced Khovanov oracle.

Bigradings are (q, delta2) with delta2 = 2*delta = q - 2h.  All tables are
relative: comparisons go through ``normalized``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import gf2
from . import cube as cb
from . import simplify
from . import tangles as tg
from .typed import TypeD, dual, mor_homology


@dataclass
class BigradedDims:
    table: dict = field(default_factory=dict)  # (q, delta2) -> dim
    window: tuple | None = None

    def __post_init__(self):
        self.table = {k: v for k, v in self.table.items() if v}

    @property
    def total(self) -> int:
        return sum(self.table.values())

    def normalized(self) -> "BigradedDims":
        """Shift so that the minimal q and minimal delta2 are both 0."""
        if not self.table:
            return BigradedDims({})
        mq = min(q for q, _ in self.table)
        md = min(d for _, d in self.table)
        return BigradedDims({(q - mq, d - md): v for (q, d), v in self.table.items()})

    def same_relative(self, other: "BigradedDims") -> bool:
        return self.normalized().table == other.normalized().table

    def delta_profile(self) -> dict:
        out: dict = {}
        for (_, d), v in self.table.items():
            out[d] = out.get(d, 0) + v
        return dict(sorted(out.items()))

    def tensor(self, other: "BigradedDims") -> "BigradedDims":
        out: dict = {}
        for (q1, d1), a in self.table.items():
            for (q2, d2), b in other.table.items():
                k = (q1 + q2, d1 + d2)
                out[k] = out.get(k, 0) + a * b
        return BigradedDims(out)

    def to_json_obj(self) -> list:
        return [{"q": q, "delta2": d, "dim": v} for (q, d), v in sorted(self.table.items())]

    def to_text(self) -> str:
        if not self.table:
            return "(zero)"
        qs = sorted({q for q, _ in self.table})
        ds = sorted({d for _, d in self.table})
        head = "delta2\\q " + " ".join(f"{q:>3}" for q in qs)
        rows = [head]
        for d in reversed(ds):
            rows.append(f"{d:>8} " + " ".join(f"{self.table.get((q, d), 0) or '.':>3}" for q in qs))
        return "\n".join(rows)


VSPACE = BigradedDims({(1, 1): 1, (-1, 1): 1})


def mirror(X: TypeD) -> TypeD:
    """Complex of the mirrored tangle, up to an overall grading shift."""
    return dual(X)


def hf(X: TypeD, Y: TypeD, band: int = 4, cap: int = 64) -> BigradedDims:
    """Pairing of the curves of X and Y, as homology of Mor(X, Y)."""
    h = mor_homology(X, Y, band=band, cap=cap, strict=True)
    return BigradedDims(dict(h.dims), window=h.window)


@dataclass
class GlueReport:
    khr_times_V: BigradedDims
    khr_direct: BigradedDims
    oracle: BigradedDims | None = None
    link: tg.Tangle | None = None

    @property
    def doubled(self) -> bool:
        return self.khr_times_V.total == 2 * self.khr_direct.total

    @property
    def delta_copies_agree(self) -> bool:
        """khr_times_V is two copies of khr_direct with identical delta profiles."""
        a = self.khr_times_V.delta_profile()
        b = self.khr_direct.delta_profile()
        if not a or not b:
            return not a and not b
        shift = min(a) - min(b)
        return a == {d + shift: 2 * v for d, v in b.items()}

    @property
    def matches_oracle(self) -> bool | None:
        if self.oracle is None:
            return None
        return self.khr_direct.same_relative(self.oracle)

    @property
    def consistent(self) -> bool:
        ok = self.doubled and self.delta_copies_agree
        if self.oracle is not None:
            ok = ok and self.matches_oracle and self.khr_times_V.same_relative(
                self.khr_direct.tensor(VSPACE))
        return ok

    def to_json_obj(self) -> dict:
        return {
            "khr_times_V": self.khr_times_V.to_json_obj(),
            "khr_direct": self.khr_direct.to_json_obj(),
            "oracle": None if self.oracle is None else self.oracle.to_json_obj(),
            "windows": {"khr_times_V": self.khr_times_V.window, "khr_direct": self.khr_direct.window},
            "consistent": self.consistent,
        }


def _check_orientations(T1: tg.Tangle, T2: tg.Tangle):
    """Both tangles must induce one orientation on each glued strand."""
    L = tg.glue(T1, T2)
    try:
        L.orientation()
    except tg.DiagramError as e:
        raise tg.DiagramError(f"orientations do not match at the glued ends: {e}") from None
    return L


def glue(T1: tg.Tangle, T2: tg.Tangle, oracle: bool = True, band: int = 4) -> GlueReport:
    L = _check_orientations(T1, T2)
    X1 = mirror(simplify.reduce(cb.build_DD1(T1)))
    DD2 = cb.build_DD(T2)
    times_v = hf(X1, simplify.reduce(cb.build_DD1(T2, DD2)), band=band)
    direct = hf(X1, simplify.reduce(DD2), band=band)
    orc = reduced_kh_oracle(L) if oracle else None
    return GlueReport(times_v, direct, orc, L)


# ---------------------------------------------------------------- oracle

def reduced_kh_oracle(L: tg.Tangle) -> BigradedDims:
    """Reduced Khovanov homology over F2 of a closed diagram.

    Plain cube of resolutions: merge 1.1=1, 1.x=x, x.x=0; split
    1 -> 1x + x1, x -> xx.  The circle through the basepoint is fixed to x.
    """
    if not L.closed:
        raise ValueError("the oracle needs a closed diagram")
    n = L.n
    npos, nneg = L.writhe_data() if n else (0, 0)
    free = L.loops
    verts = list(product((0, 1), repeat=n))
    states: dict = {}  # vertex -> (circle keys, marked key)
    for v in verts:
        r = L.resolve(v) if n else None
        circ = list(r.circles) if r else []
        marked = r.comp[L.base] if (r and L.base is not None) else None
        states[v] = (circ, marked)
    # free loops: the basepoint sits on one when the diagram has no crossings
    extra_marked = n == 0
    gens: dict = {}  # (h, q) -> list of (vertex, labels)
    index: dict = {}
    for v in verts:
        circ, marked = states[v]
        keys = [c for c in circ if c != marked] + [f"loop{i}" for i in range(free - (1 if extra_marked else 0))]
        for labels in product("1x", repeat=len(keys)):
            h = sum(v) - nneg
            q = sum(1 if c == "1" else -1 for c in labels) + sum(v) + npos - 2 * nneg
            k = (h, q)
            gens.setdefault(k, []).append((v, tuple(zip(keys, labels))))
    for k, lst in gens.items():
        index[k] = {g: i for i, g in enumerate(lst)}

    def image(v, lab, i):
        """Edge map along crossing i from a generator at v (v[i] == 0)."""
        w = v[:i] + (1,) + v[i + 1:]
        r0, r1 = L.resolve(v), L.resolve(w)
        c = L.crossings[i]
        mk0, mk1 = states[v][1], states[w][1]
        lab = dict(lab)
        lab[mk0] = "x"
        p0 = c.smoothing(0)
        a, b = r0.comp[c.arcs[p0[0][0]]], r0.comp[c.arcs[p0[1][0]]]
        p1 = c.smoothing(1)
        m1, m2 = r1.comp[c.arcs[p1[0][0]]], r1.comp[c.arcs[p1[1][0]]]
        rest = {k: x for k, x in lab.items() if k not in (a, b)}
        outs = []
        if a != b:  # merge
            la, lb = lab[a], lab[b]
            if la == "x" and lb == "x":
                return []
            outs.append({m1: "x" if "x" in (la, lb) else "1"})
        else:  # split
            if lab[a] == "1":
                outs += [{m1: "1", m2: "x"}, {m1: "x", m2: "1"}]
            else:
                outs.append({m1: "x", m2: "x"})
        res = []
        circ1 = states[w][0]
        keys1 = [k for k in circ1 if k != mk1] + [k for k, _ in lab.items() if k.startswith("loop")]
        for o in outs:
            d = dict(rest)
            d.update(o)
            if d.get(mk1, "x") != "x":
                continue  # leaves the reduced subcomplex: x times it is zero
            res.append((w, tuple((k, d[k]) for k in keys1)))
        return res

    ranks: dict = {}
    for (h, q), lst in gens.items():
        tgt = index.get((h + 1, q), {})
        cols = []
        for v, lab in lst:
            vec = 0
            for i in range(n):
                if v[i] == 0:
                    for g in image(v, lab, i):
                        vec ^= 1 << tgt[g]
            cols.append(vec)
        ranks[(h, q)] = gf2.rank(cols)
    out = {}
    for (h, q), lst in gens.items():
        dim = len(lst) - ranks[(h, q)] - ranks.get((h - 1, q), 0)
        if dim:
            out[(q, q - 2 * h)] = dim
    return BigradedDims(out)


CLOSURES = {
    # name: (T1, T2) factories; the link is glue(T1, T2)
    "unknot": (lambda: tg.rational(0), lambda: tg.rational(None)),
    "unlink2": (lambda: tg.rational(0), lambda: tg.rational(0)),
    "trefoil": (lambda: tg.rational(0), lambda: tg.pretzel([2, -5])),
    "figure_eight": (lambda: tg.rational(0), lambda: tg.rational(Fraction(5, 2))),
    "pretzel_2_m5": (lambda: tg.rational(None), lambda: tg.pretzel([2, -5])),
}
