"""Bigraded type D structures over the quiver algebra.

A structure is a set of generators (idempotent plus (q, delta2) grading) and
arrows ``src -> dst`` labelled by algebra elements.  A label ``a`` on
``x -> y`` satisfies ``a = i_y * a * i_x``; composing ``x -a-> y -b-> z``
gives ``b * a``.  Every arrow term raises nothing in q and lowers delta2 by 2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import algebra as alg
from .algebra import Elem, Path, FILLED, HOLLOW
from . import gf2

ARROW_DEGREE = (0, -2)


@dataclass(frozen=True)
class Gen:
    idem: int
    q: int
    d2: int

    @property
    def gr(self) -> tuple[int, int]:
        return (self.q, self.d2)

    @property
    def h2(self) -> int:
        """Twice the homological grading, h = q/2 - delta."""
        return self.q - self.d2


class TypeD:
    """Type D structure; treat instances as immutable once built."""

    def __init__(self, gens=None, arrows=None):
        self.gens: dict[str, Gen] = {}
        self.out: dict[str, dict[str, Elem]] = {}
        self.inc: dict[str, dict[str, Elem]] = {}
        for gid, g in (gens.items() if isinstance(gens, dict) else (gens or [])):
            self.add_gen(gid, g)
        for src, lab, dst in arrows or []:
            self.add_arrow(src, lab, dst)

    # construction helpers
    def add_gen(self, gid: str, g: Gen):
        if gid in self.gens:
            raise ValueError(f"duplicate generator id {gid!r}")
        self.gens[gid] = g
        self.out[gid] = {}
        self.inc[gid] = {}

    def add_arrow(self, src: str, label, dst: str):
        """Add label to the src->dst arrow (F2 sum)."""
        label = alg.as_elem(label)
        if not label:
            return
        cur = self.out[src].get(dst)
        new = label if cur is None else cur + label
        if new:
            self.out[src][dst] = new
            self.inc[dst][src] = new
        else:
            del self.out[src][dst]
            del self.inc[dst][src]

    def set_arrow(self, src: str, label, dst: str):
        label = alg.as_elem(label)
        self.out[src].pop(dst, None)
        self.inc[dst].pop(src, None)
        if label:
            self.out[src][dst] = label
            self.inc[dst][src] = label

    def remove_gen(self, gid: str):
        for d in list(self.out[gid]):
            del self.inc[d][gid]
        for s in list(self.inc[gid]):
            del self.out[s][gid]
        del self.out[gid], self.inc[gid], self.gens[gid]

    def copy(self) -> "TypeD":
        t = TypeD()
        t.gens = dict(self.gens)
        t.out = {k: dict(v) for k, v in self.out.items()}
        t.inc = {k: dict(v) for k, v in self.inc.items()}
        return t

    # queries
    def arrows(self):
        for s in self.gens:
            for d, lab in self.out[s].items():
                yield s, lab, d

    def n_arrows(self) -> int:
        return sum(len(v) for v in self.out.values())

    def __len__(self) -> int:
        return len(self.gens)

    def __repr__(self) -> str:
        return f"TypeD({len(self.gens)} gens, {self.n_arrows()} arrows)"

    def label(self, src: str, dst: str) -> Elem:
        return self.out[src].get(dst, alg.ZERO)

    def shifted(self, dq: int, dd2: int, rename: Callable[[str], str] | None = None) -> "TypeD":
        rename = rename or (lambda s: s)
        t = TypeD()
        for gid, g in self.gens.items():
            t.add_gen(rename(gid), Gen(g.idem, g.q + dq, g.d2 + dd2))
        for s, lab, d in self.arrows():
            t.set_arrow(rename(s), lab, rename(d))
        return t

    def label_census(self) -> set[tuple[str, int]]:
        return {(p.kind, p.n) for _, lab, _ in self.arrows() for p in lab.terms}

    # serialization
    def to_json_obj(self) -> dict:
        return {
            "generators": [{"id": gid, "idem": alg.IDEM_CHAR[g.idem], "q": g.q, "delta2": g.d2}
                           for gid, g in self.gens.items()],
            "arrows": [{"src": s, "label": alg.to_text(lab), "dst": d} for s, lab, d in self.arrows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), ensure_ascii=False)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TypeD":
        t = cls()
        for g in obj["generators"]:
            idem = g["idem"]
            idem = alg.CHAR_IDEM[idem] if isinstance(idem, str) else int(idem)
            t.add_gen(str(g["id"]), Gen(idem, int(g["q"]), int(g["delta2"])))
        for a in obj["arrows"]:
            t.add_arrow(str(a["src"]), alg.from_text(a["label"]), str(a["dst"]))
        return t

    @classmethod
    def from_json(cls, s: str) -> "TypeD":
        return cls.from_json_obj(json.loads(s))


def direct_sum(*parts: TypeD, prefixes: Iterable[str] | None = None) -> TypeD:
    t = TypeD()
    prefixes = list(prefixes) if prefixes is not None else [""] * len(parts)
    for pre, X in zip(prefixes, parts):
        for gid, g in X.gens.items():
            t.add_gen(pre + gid, g)
        for s, lab, d in X.arrows():
            t.set_arrow(pre + s, lab, pre + d)
    return t


def regrade(X: TypeD) -> TypeD:
    """Recompute gradings from the arrows, one base generator per component.

    Useful for hand-built complexes where only the shape is known.
    """
    t = TypeD()
    gr: dict[str, tuple[int, int]] = {}
    for start in X.gens:
        if start in gr:
            continue
        gr[start] = (0, 0)
        stack = [start]
        while stack:
            x = stack.pop()
            qx, dx = gr[x]
            for y, lab in X.out[x].items():
                pq, pd = alg.grading(next(iter(lab)))
                want = (qx - pq, dx - pd - 2)
                if y not in gr:
                    gr[y] = want
                    stack.append(y)
                elif gr[y] != want:
                    raise ValueError(f"inconsistent gradings at {y!r}")
            for y, lab in X.inc[x].items():
                pq, pd = alg.grading(next(iter(lab)))
                want = (qx + pq, dx + pd + 2)
                if y not in gr:
                    gr[y] = want
                    stack.append(y)
                elif gr[y] != want:
                    raise ValueError(f"inconsistent gradings at {y!r}")
    for gid, g in X.gens.items():
        t.add_gen(gid, Gen(g.idem, *gr[gid]))
    for s, lab, d in X.arrows():
        t.set_arrow(s, lab, d)
    return t


# ---------------------------------------------------------------- checking

@dataclass
class Report:
    ok: bool
    issues: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_typed(X: TypeD, max_issues: int = 1) -> Report:
    issues = []
    for s, lab, d in X.arrows():
        gs, gd = X.gens[s], X.gens[d]
        for p in lab.terms:
            if p.right != gs.idem or p.left != gd.idem:
                issues.append(("idempotent", s, str(p), d))
            pq, pd = alg.grading(p)
            if (pq + gd.q - gs.q, pd + gd.d2 - gs.d2) != ARROW_DEGREE:
                issues.append(("grading", s, str(p), d))
        if len(issues) >= max_issues:
            return Report(False, issues)
    for x in X.gens:
        acc: dict[str, Elem] = {}
        for y, a in X.out[x].items():
            for z, b in X.out[y].items():
                acc[z] = acc.get(z, alg.ZERO) + alg.mul(b, a)
        for z, v in acc.items():
            if v:
                issues.append(("d^2", x, str(v), z))
                if len(issues) >= max_issues:
                    return Report(False, issues)
    return Report(not issues, issues)


# ---------------------------------------------------------------- morphisms

@dataclass
class Mor:
    """Homogeneous morphism X -> Y: entries (x, y) -> label."""
    entries: dict
    degree: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return any(self.entries.values())

    def __add__(self, other: "Mor") -> "Mor":
        e = dict(self.entries)
        for k, v in other.entries.items():
            nv = e.get(k, alg.ZERO) + v
            if nv:
                e[k] = nv
            else:
                e.pop(k, None)
        return Mor(e, self.degree or other.degree)


def mor_degree(X: TypeD, Y: TypeD, x: str, p: Path, y: str) -> tuple[int, int]:
    pq, pd = alg.grading(p)
    return (pq + Y.gens[y].q - X.gens[x].q, pd + Y.gens[y].d2 - X.gens[x].d2)


def central_action(z: str, X: TypeD) -> Mor:
    """Diagonal morphism given by one of H, D. (D at FILLED), D: (at HOLLOW), S2."""
    entries = {}
    for gid, g in X.gens.items():
        e = g.idem
        if z == "H":
            lab = alg.H_at(e)
        elif z == "S2":
            lab = Elem([alg.S(2, e)])
        elif z in ("D.", "Dfilled"):
            lab = Elem([alg.D(1, e)]) if e == FILLED else alg.ZERO
        elif z in ("D:", "Dhollow"):
            lab = Elem([alg.D(1, e)]) if e == HOLLOW else alg.ZERO
        else:
            raise ValueError(f"unknown central element {z!r}")
        if lab:
            entries[(gid, gid)] = lab
    return Mor(entries, (-2, -2))


def identity_mor(X: TypeD) -> Mor:
    return Mor({(g, g): Elem([alg.unit(X.gens[g].idem)]) for g in X.gens}, (0, 0))


def mor_differential(X: TypeD, Y: TypeD, f: Mor) -> Mor:
    """d_Y o f + f o d_X."""
    e: dict = {}

    def add(k, v):
        nv = e.get(k, alg.ZERO) + v
        if nv:
            e[k] = nv
        else:
            e.pop(k, None)

    for (x, y), a in f.entries.items():
        for y2, b in Y.out[y].items():
            add((x, y2), alg.mul(b, a))
        for x0, c in X.inc[x].items():
            add((x0, y), alg.mul(a, c))
    deg = None if f.degree is None else (f.degree[0], f.degree[1] - 2)
    return Mor(e, deg)


def compose(g: Mor, f: Mor) -> Mor:
    """g o f for f: X -> Y, g: Y -> Z."""
    by_src: dict = {}
    for (y, z), b in g.entries.items():
        by_src.setdefault(y, []).append((z, b))
    e: dict = {}
    for (x, y), a in f.entries.items():
        for z, b in by_src.get(y, ()):
            nv = e.get((x, z), alg.ZERO) + alg.mul(b, a)
            if nv:
                e[(x, z)] = nv
            else:
                e.pop((x, z), None)
    deg = None
    if f.degree is not None and g.degree is not None:
        deg = (f.degree[0] + g.degree[0], f.degree[1] + g.degree[1])
    return Mor(e, deg)


def is_chain_map(X: TypeD, Y: TypeD, f: Mor) -> bool:
    return not mor_differential(X, Y, f)


def paths_of_grading(m_q: int, m_d2: int, right: int, left: int) -> list[Path]:
    """Basis paths from idempotent ``right`` to ``left`` with the given grading."""
    if m_q != m_d2 or m_q > 0:
        return []
    m = -m_q
    out = []
    if m == 0:
        if right == left:
            out.append(alg.unit(right))
        return out
    if (m & 1) == (right ^ left):
        out.append(alg.S(m, right))
    if m % 2 == 0 and right == left:
        out.append(alg.D(m // 2, right))
    return out


@dataclass
class MorSlice:
    degree: tuple[int, int]
    basis: list  # (x, path, y)
    index: dict


def mor_basis(X: TypeD, Y: TypeD, degree: tuple[int, int]) -> MorSlice:
    basis = []
    for x, gx in X.gens.items():
        for y, gy in Y.gens.items():
            for p in paths_of_grading(degree[0] - gy.q + gx.q, degree[1] - gy.d2 + gx.d2, gx.idem, gy.idem):
                basis.append((x, p, y))
    return MorSlice(degree, basis, {b: i for i, b in enumerate(basis)})


def _diff_basis_elem(X: TypeD, Y: TypeD, x: str, p: Path, y: str) -> list:
    out: dict = {}
    for y2, b in Y.out[y].items():
        for q in b.terms:
            r = alg.path_mul(q, p)
            if r is not None:
                k = (x, r, y2)
                out[k] = not out.get(k, False)
    for x0, c in X.inc[x].items():
        for q in c.terms:
            r = alg.path_mul(p, q)
            if r is not None:
                k = (x0, r, y)
                out[k] = not out.get(k, False)
    return [k for k, v in out.items() if v]


def mor_complex(X: TypeD, Y: TypeD, degree: tuple[int, int]):
    """Slices at degree, degree+(0,2) and degree-(0,2) with the differentials.

    Returns (lower, mid, upper, d_in, d_out) where d_in maps upper -> mid and
    d_out maps mid -> lower; each matrix is a list of column bitmasks.
    """
    q, d2 = degree
    upper = mor_basis(X, Y, (q, d2 + 2))
    mid = mor_basis(X, Y, (q, d2))
    lower = mor_basis(X, Y, (q, d2 - 2))

    def matrix(src: MorSlice, dst: MorSlice):
        cols = []
        for b in src.basis:
            v = 0
            for k in _diff_basis_elem(X, Y, *b):
                v ^= 1 << dst.index[k]
            cols.append(v)
        return cols

    return lower, mid, upper, matrix(upper, mid), matrix(mid, lower)


def mor_to_vector(f: Mor, sl: MorSlice) -> int:
    v = 0
    for (x, y), lab in f.entries.items():
        for p in lab.terms:
            k = (x, p, y)
            if k not in sl.index:
                raise ValueError("morphism term outside the expected degree slice")
            v ^= 1 << sl.index[k]
    return v


def vector_to_mor(v: int, sl: MorSlice) -> Mor:
    e: dict = {}
    for i in gf2.bits(v):
        x, p, y = sl.basis[i]
        e[(x, y)] = e.get((x, y), alg.ZERO) + p
    return Mor({k: w for k, w in e.items() if w}, sl.degree)


def is_nullhomotopic(f: Mor, X: TypeD, Y: TypeD):
    """Return (bool, witness) with d(witness) = f when f is null-homotopic."""
    if not f:
        return True, Mor({}, None if f.degree is None else (f.degree[0], f.degree[1] + 2))
    if mor_differential(X, Y, f):
        raise ValueError("morphism is not a cycle")
    degs = set()
    for (x, y), lab in f.entries.items():
        for p in lab.terms:
            degs.add(mor_degree(X, Y, x, p, y))
    if len(degs) != 1:
        raise ValueError("morphism is not homogeneous")
    deg = degs.pop()
    mid = mor_basis(X, Y, deg)
    upper = mor_basis(X, Y, (deg[0], deg[1] + 2))
    cols = []
    for b in upper.basis:
        v = 0
        for k in _diff_basis_elem(X, Y, *b):
            v ^= 1 << mid.index[k]
        cols.append(v)
    combo = gf2.solve(cols, mor_to_vector(f, mid))
    if combo is None:
        return False, None
    return True, vector_to_mor(combo, upper)


class WindowNotStabilized(RuntimeError):
    pass


def _level_homology(X: TypeD, Y: TypeD, Q: int, pairs) -> dict:
    """Homology of the q = Q part of Mor(X, Y), keyed by delta2."""
    by_d2: dict[int, list] = {}
    for x, gx, y, gy in pairs:
        m = Q - gy.q + gx.q
        if m > 0:
            continue
        for p in paths_of_grading(m, m, gx.idem, gy.idem):
            d2 = m + gy.d2 - gx.d2
            by_d2.setdefault(d2, []).append((x, p, y))
    index = {d2: {b: i for i, b in enumerate(bs)} for d2, bs in by_d2.items()}
    ranks: dict[int, int] = {}
    for d2, bs in by_d2.items():
        tgt = index.get(d2 - 2, {})
        cols = []
        for b in bs:
            v = 0
            for k in _diff_basis_elem(X, Y, *b):
                v ^= 1 << tgt[k]
            cols.append(v)
        ranks[d2] = gf2.rank(cols)
    out = {}
    for d2, bs in by_d2.items():
        dim = len(bs) - ranks[d2] - ranks.get(d2 + 2, 0)
        if dim:
            out[d2] = dim
    return out


@dataclass
class HomologyTable:
    dims: dict  # (q, delta2) -> dim
    window: tuple[int, int]  # q-levels examined (high, low)
    stabilized: bool = True

    @property
    def total(self) -> int:
        return sum(self.dims.values())


def mor_homology(X: TypeD, Y: TypeD, band: int = 4, cap: int = 64,
                 strict: bool = True) -> HomologyTable:
    """Bigraded homology of Mor(X, Y).

    q-levels are scanned downward from the highest level carrying a basis
    element.  Below ``min(q(y) - q(x)) - 2`` composition with H identifies
    the level with the level two steps lower, so once ``band`` consecutive
    levels in that range carry no homology the remaining ones vanish too.
    The periodic tail is reported with ``stabilized=False`` when strict is
    off; otherwise it raises WindowNotStabilized.
    """
    if band < 2:
        raise ValueError("band must be at least 2")
    pairs = [(x, gx, y, gy) for x, gx in X.gens.items() for y, gy in Y.gens.items()]
    if not pairs:
        return HomologyTable({}, (0, 0))
    diffs = [gy.q - gx.q for _, gx, _, gy in pairs]
    top, periodic = max(diffs), min(diffs) - 2
    dims = {}
    Q = top
    quiet = 0
    while True:
        level = _level_homology(X, Y, Q, pairs)
        for d2, dim in level.items():
            dims[(Q, d2)] = dim
        if Q <= periodic:
            quiet = 0 if level else quiet + 1
            if quiet >= band:
                break
            if periodic - Q >= cap:
                if strict:
                    raise WindowNotStabilized(
                        f"homology persists below q={periodic} (window {top}..{Q})")
                return HomologyTable(dims, (top, Q), False)
        Q -= 1
    return HomologyTable(dims, (top, Q))


def homology_reps(X: TypeD, Y: TypeD, degree: tuple[int, int] = (0, 0)) -> list[Mor]:
    """Cycles of Mor(X, Y) in one degree whose classes form a homology basis."""
    lower, mid, upper, d_in, d_out = mor_complex(X, Y, degree)
    e = gf2.Eliminator()
    for c in d_in:
        e.add(c)
    reps = []
    # kernel combinations index the mid basis, so they are the cycles themselves
    for v in gf2.kernel(d_out):
        if e.add(v):
            reps.append(vector_to_mor(v, mid))
    return reps


def _classes(X: TypeD, Y: TypeD):
    """Degree-0 slice of Mor(X, Y) plus its boundary columns."""
    _, mid, _, d_in, _ = mor_complex(X, Y, (0, 0))
    return mid, d_in


def find_equivalence(X: TypeD, Y: TypeD, max_dim: int = 14):
    """Degree-0 chain maps (f, g) with g f ~ id and f g ~ id, or None.

    Classes f are enumerated; for each the conditions on g are linear and
    solved directly.  Raises ValueError when the search space exceeds
    2**max_dim.
    """
    if sorted(g.gr for g in X.gens.values()) != sorted(g.gr for g in Y.gens.values()):
        return None
    F, G = homology_reps(X, Y), homology_reps(Y, X)
    if len(F) > max_dim:
        raise ValueError(f"{len(F)}-dimensional morphism space is too large to search")
    if not F or not G:
        return (Mor({}, (0, 0)), Mor({}, (0, 0))) if not X.gens and not Y.gens else None
    mx, bx = _classes(X, X)
    my, by = _classes(Y, Y)
    shift = len(mx.basis)
    target = mor_to_vector(identity_mor(X), mx) | (mor_to_vector(identity_mor(Y), my) << shift)
    bcols = list(bx) + [c << shift for c in by]
    for mask in range(1, 1 << len(F)):
        f = Mor({}, (0, 0))
        for i in gf2.bits(mask):
            f = f + F[i]
        cols = [mor_to_vector(compose(g, f), mx) | (mor_to_vector(compose(f, g), my) << shift)
                for g in G]
        combo = gf2.solve(cols + bcols, target)
        if combo is None:
            continue
        g = Mor({}, (0, 0))
        for i in gf2.bits(combo & ((1 << len(G)) - 1)):
            g = g + G[i]
        return f, g
    return None


# ---------------------------------------------------------------- constructions

def cone(f: Mor, X: TypeD, shift0=(-1, 1)) -> TypeD:
    """Mapping cone of a chain map f: X -> X (first copy maps to second)."""
    if mor_differential(X, X, f):
        raise ValueError("cone of a non chain map")
    deg = f.degree
    if deg is None:
        raise ValueError("morphism degree required")
    shift1 = (shift0[0] - deg[0], shift0[1] - deg[1] - 2)
    t = TypeD()
    for gid, g in X.gens.items():
        t.add_gen(gid + "|0", Gen(g.idem, g.q + shift0[0], g.d2 + shift0[1]))
    for gid, g in X.gens.items():
        t.add_gen(gid + "|1", Gen(g.idem, g.q + shift1[0], g.d2 + shift1[1]))
    for s, lab, d in X.arrows():
        t.set_arrow(s + "|0", lab, d + "|0")
        t.set_arrow(s + "|1", lab, d + "|1")
    for (x, y), lab in f.entries.items():
        t.add_arrow(x + "|0", lab, y + "|1")
    return t


def dual(X: TypeD) -> TypeD:
    t = TypeD()
    for gid, g in X.gens.items():
        t.add_gen(gid, Gen(g.idem, -g.q, -g.d2))
    for s, lab, d in X.arrows():
        t.set_arrow(d, alg.reverse(lab), s)
    return t


# ---------------------------------------------------------------- bimodules
#
# Inputs to bimodule actions are written in the basis H^k, D*H^k, S*H^k.
# An element of that basis is (kind, k, right, left) with kind in
# {"H", "DH", "SH"}.

def hbasis(p: Path) -> list[tuple]:
    """Expand a basis path in the H-power basis."""
    if p.kind == "i":
        return [("H", 0, p.right, p.left)]
    if p.kind == "D":
        return [("DH", p.n - 1, p.right, p.left)]
    if p.n % 2:
        return [("SH", p.n // 2, p.right, p.left)]
    k = p.n // 2
    return [("H", k, p.right, p.left), ("DH", k - 1, p.right, p.left)]


def from_hbasis(kind: str, k: int, right: int) -> Elem:
    if kind == "H":
        return alg.H_at(right, k)
    if kind == "DH":
        return Elem([alg.D(k + 1, right)])
    if kind == "SH":
        return Elem([alg.S(2 * k + 1, right)])
    if kind == "S2H":
        return Elem([alg.S(2 * k + 2, right)])
    raise ValueError(kind)


@dataclass
class Rule:
    src: str
    dst: str
    inputs: tuple  # input kinds in chain order (first arrow first)
    out_kind: str | None  # None: output is the unit
    out_power: Callable  # tuple of input powers -> output power


@dataclass
class ADBimodule:
    """Type AD bimodule with actions taking at most two algebra inputs."""
    bgens: dict  # name -> (left_idem, right_idem, (q, d2) offset)
    rules: list
    name: str = ""
    inverse_of: "ADBimodule | None" = None

    def act(self, src: str, inputs: tuple):
        """Outputs (label, dst) of the action on (inputs..., src)."""
        kinds = tuple(i[0] for i in inputs)
        res = []
        for r in self.rules:
            if r.src != src or r.inputs != kinds:
                continue
            left = self.bgens[src][0]
            ok = True
            for inp in inputs:
                if inp[2] != left:
                    ok = False
                    break
                left = inp[3]
            if not ok or left != self.bgens[r.dst][0]:
                continue
            k = r.out_power(tuple(i[1] for i in inputs))
            res.append((from_hbasis(r.out_kind, k, self.bgens[src][1]), r.dst))
        return res


def _label_hterms(lab: Elem) -> list:
    out = []
    for p in lab:
        out.extend(hbasis(p))
    return out


def box_tensor(X: TypeD, B: ADBimodule) -> TypeD:
    """X box-tensored with B; an inverse bimodule is applied through duals."""
    if B.inverse_of is not None:
        return dual(box_tensor(dual(X), B.inverse_of))
    t = TypeD()
    pairs = []
    for x, g in X.gens.items():
        for m, (li, ri, off) in B.bgens.items():
            if li == g.idem:
                gid = f"{x}*{m}"
                t.add_gen(gid, Gen(ri, g.q + off[0], g.d2 + off[1]))
                pairs.append((x, m))
    hterms = {(s, d): _label_hterms(lab) for s, lab, d in X.arrows()}
    for x, m in pairs:
        src = f"{x}*{m}"
        for lab, m2 in B.act(m, ()):
            t.add_arrow(src, lab, f"{x}*{m2}")
        for x1 in X.out[x]:
            terms1 = hterms[(x, x1)]
            for a in terms1:
                for lab, m2 in B.act(m, (a,)):
                    t.add_arrow(src, lab, f"{x1}*{m2}")
            for x2 in X.out[x1]:
                terms2 = hterms[(x1, x2)]
                for a in terms1:
                    for b in terms2:
                        for lab, m2 in B.act(m, (a, b)):
                            t.add_arrow(src, lab, f"{x2}*{m2}")
    return t


def identity_bimodule() -> ADBimodule:
    bgens = {"..": (FILLED, FILLED, (0, 0)), "::": (HOLLOW, HOLLOW, (0, 0))}
    rules = [
        Rule("..", "..", ("H",), "H", lambda k: k[0]),
        Rule("..", "..", ("DH",), "DH", lambda k: k[0]),
        Rule("..", "::", ("SH",), "SH", lambda k: k[0]),
        Rule("::", "::", ("H",), "H", lambda k: k[0]),
        Rule("::", "::", ("DH",), "DH", lambda k: k[0]),
        Rule("::", "..", ("SH",), "SH", lambda k: k[0]),
    ]
    return ADBimodule(bgens, rules, "id")
