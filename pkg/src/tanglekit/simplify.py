"""Homotopy simplification: cancellation, clean-up and splitting into summands."""
from __future__ import annotations

import heapq

from . import algebra as alg
from .typed import TypeD, Mor, compose


def _is_unit(lab) -> bool:
    return any(p.kind == "i" for p in lab.terms)


def _cancel_inplace(X: TypeD, x: str, y: str, touched=None):
    lab = X.out[x][y]
    if len(lab) != 1 or next(iter(lab.terms)).kind != "i":
        raise ValueError(f"arrow {x}->{y} is not an identity arrow: {lab}")
    ins = [(z, a) for z, a in X.inc[y].items() if z != x]
    outs = [(z, b) for z, b in X.out[x].items() if z != y]
    for z1, a in ins:
        if z1 == y:
            continue
        for z2, b in outs:
            if z2 == x:
                continue
            prod = alg.mul(b, a)
            if prod:
                X.add_arrow(z1, prod, z2)
                if touched is not None:
                    touched.append((z1, z2))
    X.remove_gen(x)
    X.remove_gen(y)


def cancel(X: TypeD, x: str, y: str) -> TypeD:
    """Cancel the identity arrow x -> y (zigzags z1 -> y <- x -> z2 add b*a)."""
    if x == y:
        raise ValueError("cannot cancel a self-arrow")
    if y not in X.out.get(x, {}):
        raise ValueError(f"no arrow {x}->{y}")
    t = X.copy()
    _cancel_inplace(t, x, y)
    return t


def reduce(X: TypeD) -> TypeD:
    """Cancel identity arrows until none remain.

    Candidates are processed lowest (source index, target index) first, which
    keeps the output independent of dictionary iteration accidents.
    """
    t = X.copy()
    order = {g: i for i, g in enumerate(X.gens)}
    heap = []
    for s, lab, d in t.arrows():
        if _is_unit(lab):
            heap.append((order[s], order[d], s, d))
    heapq.heapify(heap)
    while heap:
        _, _, s, d = heapq.heappop(heap)
        if s not in t.gens or d not in t.out[s] or not _is_unit(t.out[s][d]):
            continue
        touched = []
        _cancel_inplace(t, s, d, touched)
        for z1, z2 in touched:
            lab = t.out[z1].get(z2)
            if lab is not None and _is_unit(lab):
                heapq.heappush(heap, (order[z1], order[z2], z1, z2))
    return t


def differential_mor(X: TypeD) -> Mor:
    return Mor({(s, d): lab for s, lab, d in X.arrows()}, None)


def cleanup(X: TypeD, g: Mor) -> TypeD:
    """Change of basis by 1 + g (requires g o g = 0 and g of degree (0, 0))."""
    if not g:
        return X.copy()
    for (x, y), lab in g.entries.items():
        if x == y:
            raise ValueError("clean-up arrows must join distinct generators")
        gx, gy = X.gens[x], X.gens[y]
        for p in lab.terms:
            if p.right != gx.idem or p.left != gy.idem:
                raise ValueError("clean-up label has wrong idempotents")
            pq, pd = alg.grading(p)
            if (pq + gy.q - gx.q, pd + gy.d2 - gx.d2) != (0, 0):
                raise ValueError("clean-up morphism must have degree (0, 0)")
    if compose(g, g):
        raise ValueError("clean-up morphism does not square to zero")
    d = differential_mor(X)
    new = d + compose(g, d) + compose(d, g) + compose(g, compose(d, g))
    t = TypeD()
    for gid, gen in X.gens.items():
        t.add_gen(gid, gen)
    for (s, e), lab in new.entries.items():
        t.add_arrow(s, lab, e)
    return t


def split_components(X: TypeD) -> list[TypeD]:
    parent = {g: g for g in X.gens}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s, _, d in X.arrows():
        ra, rb = find(s), find(d)
        if ra != rb:
            parent[rb] = ra
    groups: dict[str, list[str]] = {}
    for g in X.gens:
        groups.setdefault(find(g), []).append(g)
    out = []
    for members in groups.values():
        t = TypeD()
        for g in members:
            t.add_gen(g, X.gens[g])
        for g in members:
            for d, lab in X.out[g].items():
                t.set_arrow(g, lab, d)
        out.append(t)
    return out


def _term_count(X: TypeD) -> int:
    return sum(len(lab) for _, lab, _ in X.arrows())


def cleanup_candidates(X: TypeD):
    """Single-entry degree (0, 0) morphisms between distinct generators."""
    from .typed import paths_of_grading
    for x, gx in X.gens.items():
        for y, gy in X.gens.items():
            if x == y:
                continue
            for p in paths_of_grading(gx.q - gy.q, gx.d2 - gy.d2, gx.idem, gy.idem):
                yield Mor({(x, y): alg.as_elem(p)}, (0, 0))


def tidy(X: TypeD, max_rounds: int = 200) -> TypeD:
    """Reduce, then greedily apply clean-ups that shrink the arrow set."""
    X = reduce(X)
    for _ in range(max_rounds):
        base = (len(X), _term_count(X))
        best = None
        for g in cleanup_candidates(X):
            Y = reduce(cleanup(X, g))
            key = (len(Y), _term_count(Y))
            if key < base and (best is None or key < best[0]):
                best = (key, Y)
        if best is None:
            return X
        X = best[1]
    return X
