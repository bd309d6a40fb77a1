"""Delooped cube of resolutions of a four-ended tangle, as a type D structure."""
from __future__ import annotations

from itertools import product

from . import algebra as alg
from .algebra import Elem
from .tangles import Tangle, Resolution
from .typed import TypeD, Gen, cone, central_action

ONE, Y = "1", "y"


def _labels_q(labels) -> int:
    return sum(1 if c == ONE else -1 for c in labels)


def gen_id(vertex, labels) -> str:
    return "".join(map(str, vertex)) + "-" + "".join(labels)


class Cube:
    """Resolutions of a diagram with circles keyed by their smallest arc."""

    def __init__(self, T: Tangle):
        if T.closed:
            raise ValueError("cube builder needs a four-ended tangle")
        self.T = T
        self.npos, self.nneg = T.writhe_data()
        self._res: dict = {}

    def res(self, v) -> Resolution:
        v = tuple(v)
        r = self._res.get(v)
        if r is None:
            r = self._res[v] = self.T.resolve(v)
        return r

    def circles(self, v) -> list:
        return self.res(v).circles + [f"loop{i}" for i in range(self.T.loops)]

    def generators(self, v):
        r = self.res(v)
        circ = self.circles(v)
        h = sum(v) - self.nneg
        for labels in product((ONE, Y), repeat=len(circ)):
            q = _labels_q(labels) + sum(v) + self.npos - 2 * self.nneg
            yield gen_id(v, labels), Gen(r.eps, q, q - 2 * h), dict(zip(circ, labels))


def saddle_map(cube: Cube, v, i: int):
    """Edge map of the cube along crossing i (bit 0 -> 1 at vertex v).

    Yields (source labels, label, target labels) with labels as dicts
    circle -> "1"/"y" for every generator of the source vertex.
    """
    v = tuple(v)
    if v[i] != 0:
        raise ValueError("saddle maps go from the 0- to the 1-smoothing")
    w = v[:i] + (1,) + v[i + 1:]
    R, R2 = cube.res(v), cube.res(w)
    c = cube.T.crossings[i]
    p0 = c.smoothing(0)
    p1 = c.smoothing(1)
    k1, k2 = R.comp[c.arcs[p0[0][0]]], R.comp[c.arcs[p0[1][0]]]
    m1, m2 = R2.comp[c.arcs[p1[0][0]]], R2.comp[c.arcs[p1[1][0]]]
    eps = R.eps
    unit = Elem([alg.unit(eps)])
    H = alg.H_at(eps)
    src_circ = cube.circles(v)
    dst_circ = cube.circles(w)
    is_circ = set(R.circles).__contains__
    is_circ2 = set(R2.circles).__contains__
    out = []
    for gid, g, lab in cube.generators(v):
        rest = {k: x for k, x in lab.items() if k not in (k1, k2)}

        def emit(elem, extra):
            d = dict(rest)
            d.update(extra)
            out.append((lab, elem, d))

        if k1 == k2:
            # split
            if is_circ(k1):
                a = lab[k1]
                if a == ONE:
                    emit(unit, {m1: Y, m2: ONE})
                    emit(unit, {m1: ONE, m2: Y})
                    emit(H, {m1: ONE, m2: ONE})
                else:
                    emit(unit, {m1: Y, m2: Y})
            else:
                ci = m1 if is_circ2(m1) else m2
                if R.special == k1:
                    emit(unit, {ci: Y})
                else:
                    emit(Elem([alg.D(1, eps)]), {ci: ONE})
                    emit(unit, {ci: Y})
        else:
            c1, c2 = is_circ(k1), is_circ(k2)
            if c1 and c2:
                a, b = lab[k1], lab[k2]
                if a == ONE and b == ONE:
                    emit(unit, {m1: ONE})
                elif a == ONE or b == ONE:
                    emit(unit, {m1: Y})
                else:
                    emit(H, {m1: Y})
            elif c1 or c2:
                ci, strand = (k1, k2) if c1 else (k2, k1)
                if lab[ci] == ONE:
                    emit(unit, {})
                elif R.special == strand:
                    emit(H, {})
                else:
                    emit(Elem([alg.S(2, eps)]), {})
            else:
                emit(Elem([alg.S(1, eps)]), {})
    src_order = src_circ
    for slab, elem, dlab in out:
        yield (gen_id(v, [slab[k] for k in src_order]), elem,
               gen_id(w, [dlab[k] for k in dst_circ]))


def build_DD(T: Tangle) -> TypeD:
    """Reduced Bar-Natan complex of T over the quiver algebra (unsimplified)."""
    cube = Cube(T)
    X = TypeD()
    verts = list(product((0, 1), repeat=T.n))
    for v in verts:
        for gid, g, _ in cube.generators(v):
            X.add_gen(gid, g)
    for v in verts:
        for i in range(T.n):
            if v[i] == 0:
                for s, elem, d in saddle_map(cube, v, i):
                    X.add_arrow(s, elem, d)
    return X


def build_DD1(T: Tangle, DD: TypeD | None = None) -> TypeD:
    """Mapping cone of H.id on DD(T)."""
    X = build_DD(T) if DD is None else DD
    return cone(central_action("H", X), X)
