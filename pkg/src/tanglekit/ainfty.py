"""The A-infinity deformation of the quiver algebra and the extension solver.

Higher products are indexed by disk sequences: cyclic words built from the
four length-4 words by interposition.  A disk sequence (a1, ..., a2m) gives

    mu(a1, ..., a2m * b) = b      and      mu(b * a1, ..., a2m) = b

for b a unit or a positive power of S or D.  Inputs are in product order, so
a chain of arrows l1, l2, ..., lk (first arrow first) feeds mu(lk, ..., l1).

In the U-deformed algebra mu_k carries U^(k-2); gr(U) = (q -3, h -1), which in
(q, delta2) coordinates is (-3, -1).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from . import algebra as alg
from .algebra import Path, Elem, FILLED, HOLLOW
from .typed import TypeD, Gen, Mor, mor_basis, _diff_basis_elem, mor_to_vector, vector_to_mor
from . import gf2

U_GRADING = (-3, -1)

# ---------------------------------------------------------------- disk sequences


def _S_lr(n, left, right):
    p = alg.S(n, right)
    assert p.left == left
    return p


E4 = (
    (_S_lr(1, HOLLOW, FILLED), alg.D(1, FILLED), _S_lr(1, FILLED, HOLLOW), alg.D(1, HOLLOW)),
    (alg.D(1, FILLED), _S_lr(1, FILLED, HOLLOW), alg.D(1, HOLLOW), _S_lr(1, HOLLOW, FILLED)),
    (_S_lr(1, FILLED, HOLLOW), alg.D(1, HOLLOW), _S_lr(1, HOLLOW, FILLED), alg.D(1, FILLED)),
    (alg.D(1, HOLLOW), _S_lr(1, HOLLOW, FILLED), alg.D(1, FILLED), _S_lr(1, FILLED, HOLLOW)),
)


def _interpose(seq: tuple):
    """All words obtained by one interposition at a non-wrapping adjacent pair."""
    out = []
    for i in range(len(seq) - 1):
        a, b = seq[i], seq[i + 1]
        if a.kind == "D" and b.kind == "S":
            e = a.right  # D^k at e, S^l starting at e
            o = 1 - e
            new = (alg.D(a.n + 1, e), _S_lr(1, e, o), alg.D(1, o), alg.S(b.n + 1, b.right))
        elif a.kind == "S" and b.kind == "D":
            e = a.right  # S^k ending at e, D^l at e
            o = 1 - e
            new = (alg.S(a.n + 1, o), alg.D(1, o), _S_lr(1, o, e), alg.D(b.n + 1, e))
        else:
            continue
        out.append(seq[:i] + new + seq[i + 2:])
    return out


def _rotations(seq):
    return [seq[i:] + seq[:i] for i in range(len(seq))]


@lru_cache(maxsize=None)
def disk_sequences(max_len: int = 8) -> frozenset:
    """All disk sequences of length at most max_len (every rotation included)."""
    if max_len < 4 or max_len % 2:
        raise ValueError("max_len must be even and at least 4")
    level = set(E4)
    allseq = set(level)
    length = 4
    while length + 2 <= max_len:
        nxt = set()
        for s in level:
            for t in _interpose(s):
                nxt.update(_rotations(t))
        allseq |= nxt
        level = nxt
        length += 2
    return frozenset(allseq)


def canonical_rotation(seq):
    return min(_rotations(tuple(seq)), key=lambda s: [(p.kind, p.n, p.right) for p in s])


def is_alternating(seq) -> bool:
    """S- and D-blocks alternate around the cycle and idempotents chain up."""
    n = len(seq)
    for i in range(n):
        a, b = seq[i], seq[(i + 1) % n]
        if a.kind == b.kind or a.right != b.left:
            return False
    return True


# ---------------------------------------------------------------- products

def _split_right(x: Path, a: Path):
    """b with x = a * b (b a unit, S^n or D^n), else None."""
    if x.left != a.left or x.kind != a.kind or x.n < a.n:
        return None
    b = alg.S(x.n - a.n, x.right) if x.kind == "S" else alg.D(x.n - a.n, x.right)
    if b.left != a.right:
        return None
    return b


def _split_left(x: Path, a: Path):
    """b with x = b * a, else None."""
    if x.right != a.right or x.kind != a.kind or x.n < a.n:
        return None
    if x.kind == "S":
        b = alg.S_from(x.n - a.n, x.left)
    else:
        b = alg.D(x.n - a.n, x.left)
    if b.right != a.left:
        return None
    return b


class MuTable:
    """Higher products from a set of disk sequences."""

    def __init__(self, seqs=None, max_len: int = 8):
        self.seqs = frozenset(disk_sequences(max_len) if seqs is None else seqs)
        self.by_head: dict = {}
        self.by_tail: dict = {}
        for s in self.seqs:
            self.by_head.setdefault(s[:-1], []).append(s[-1])
            self.by_tail.setdefault(s[1:], []).append(s[0])
        self.max_len = max(len(s) for s in self.seqs) if self.seqs else 0

    def mu_paths(self, args) -> Elem:
        """mu on basis paths (arity >= 2), product order."""
        k = len(args)
        if k == 2:
            return alg.as_elem(alg.path_mul(args[0], args[1]) or alg.ZERO)
        if k % 2 or k > self.max_len:
            return alg.ZERO
        outs = set()
        args = tuple(args)
        for a in self.by_head.get(args[:-1], ()):
            b = _split_right(args[-1], a)
            if b is not None:
                outs.add((args[:-1] + (a,), b))
        for a in self.by_tail.get(args[1:], ()):
            b = _split_left(args[0], a)
            if b is not None:
                outs.add(((a,) + args[1:], b))
        return Elem(b for _, b in outs)

    def mu(self, args) -> Elem:
        """Multilinear extension to algebra elements."""
        args = [alg.as_elem(a) for a in args]
        acc = alg.ZERO
        for combo in itertools.product(*[sorted(a.terms) for a in args]):
            acc = acc + self.mu_paths(combo)
        return acc


_DEFAULT: MuTable | None = None


def default_table() -> MuTable:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = MuTable()
    return _DEFAULT


def mu(args) -> Elem:
    return default_table().mu(args)


# ---------------------------------------------------------------- U-deformed elements

class UElem:
    """Element of the deformed algebra: a set of (U exponent, path) terms."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc = set()
        for t in terms:
            acc ^= {t}
        self.terms = frozenset(acc)

    @classmethod
    def lift(cls, a, u: int = 0) -> "UElem":
        return cls((u, p) for p in alg.as_elem(a).terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "UElem") -> "UElem":
        r = UElem()
        r.terms = self.terms ^ other.terms
        return r

    def __eq__(self, other):
        return isinstance(other, UElem) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def at(self, u: int) -> Elem:
        return Elem(p for k, p in self.terms if k == u)

    def restrict0(self) -> Elem:
        return self.at(0)

    def powers(self):
        return sorted({k for k, _ in self.terms})

    def __str__(self):
        return to_text(self)

    __repr__ = __str__


def grading_u(u: int, p: Path) -> tuple[int, int]:
    q, d2 = alg.grading(p)
    return (q + u * U_GRADING[0], d2 + u * U_GRADING[1])


def to_text(a: UElem) -> str:
    if not a:
        return "0"
    parts = []
    for u, p in sorted(a.terms, key=lambda t: (t[0], "iSD".index(t[1].kind), t[1].n, t[1].right)):
        parts.append(f"U^{u}*{p}" if u else str(p))
    return "+".join(parts)


def from_text(s: str) -> UElem:
    s = s.strip()
    if s == "0":
        return UElem()
    terms = []
    for tok in s.split("+"):
        tok = tok.strip()
        u = 0
        if tok.startswith("U"):
            head, _, tok = tok.partition("*")
            u = int(head[2:]) if head.startswith("U^") else 1
        terms.append((u, alg.path_from_text(tok)))
    return UElem(terms)


def mu_U(args, table: MuTable | None = None) -> UElem:
    """mu_k on deformed elements: the undeformed product times U^(k-2+sum of exponents)."""
    table = table or default_table()
    args = list(args)
    k = len(args)
    acc = UElem()
    for combo in itertools.product(*[sorted(a.terms, key=lambda t: (t[0], t[1])) for a in args]):
        u = k - 2 + sum(c[0] for c in combo)
        out = table.mu_paths(tuple(c[1] for c in combo))
        if out:
            acc = acc + UElem.lift(out, u)
    return acc


# ---------------------------------------------------------------- relation checker

@dataclass
class AinftyReport:
    ok: bool
    checked: int
    witness: tuple | None = None
    mode: str = "exhaustive"
    seed: int | None = None


def _basis(max_path_len: int):
    return alg.basis_paths(max_path_len)


def stasheff(args, table: MuTable) -> Elem:
    """Left side of the A-infinity relation on a tuple of basis paths."""
    n = len(args)
    acc = alg.ZERO
    for j in range(2, n):  # inner arity (mu_1 = 0, outer arity >= 2)
        for i in range(0, n - j + 1):
            inner = table.mu_paths(tuple(args[i:i + j]))
            if not inner:
                continue
            for y in inner.terms:
                outer = tuple(args[:i]) + (y,) + tuple(args[i + j:])
                acc = acc + table.mu_paths(outer)
    return acc


def _nonzero_tuples(table: MuTable, k: int, slot_max: int):
    """Tuples of basis paths (lengths <= slot_max) on which mu_k is nonzero."""
    basis = _basis(slot_max)
    out = set()
    if k == 2:
        for a in basis:
            for b in basis:
                if alg.path_mul(a, b) is not None:
                    out.add((a, b))
        return out
    for s in table.seqs:
        if len(s) != k:
            continue
        for b in basis:
            x = alg.path_mul(s[-1], b)
            if x is not None and (b.kind == "i" or b.kind in "SD"):
                t = s[:-1] + (x,)
                if all(p.n <= slot_max for p in t):
                    out.add(t)
            x = alg.path_mul(b, s[0])
            if x is not None:
                t = (x,) + s[1:]
                if all(p.n <= slot_max for p in t):
                    out.add(t)
    return out


def check_ainfty(max_arity: int = 8, max_path_len: int = 4, table: MuTable | None = None,
                 sample_above: int | None = None, samples: int = 20000, seed: int = 0) -> AinftyReport:
    """Check the A-infinity relations for all products of arity <= max_arity.

    A relation on n inputs only involves mu_a(.., mu_b(..), ..) with
    a + b = n + 1, so n runs up to max_arity + 1.  Exhaustive mode only
    visits tuples where some composite term can be nonzero (inner tuple with
    nonzero mu_b and outer tuple with nonzero mu_a); every other tuple has
    all terms zero, so the check is complete.
    """
    table = table or MuTable(max_len=max_arity)
    L = max_path_len
    nz = {}
    for k in range(2, max_arity + 1):
        nz[k] = _nonzero_tuples(table, k, 2 * L + 2) if (k == 2 or k % 2 == 0) else set()
    # index outer tuples by (position, value)
    by_slot = {}
    for k, tuples in nz.items():
        for t in tuples:
            for i, v in enumerate(t):
                by_slot.setdefault((k, i, v), []).append(t)
    checked = 0
    seen = set()
    rng = random.Random(seed)
    for n in range(3, max_arity + 2):
        cands = set()
        for b in range(2, n):
            a = n + 1 - b
            if a < 2 or a > max_arity or b > max_arity:
                continue
            for inner in nz[b]:
                if any(p.n > L for p in inner):
                    continue
                outs = table.mu_paths(inner)
                for y in outs.terms:
                    for i in range(a):
                        for outer in by_slot.get((a, i, y), ()):
                            rest = outer[:i] + outer[i + 1:]
                            if any(p.n > L for p in rest):
                                continue
                            cands.add(outer[:i] + inner + outer[i + 1:])
        cands = sorted(cands, key=lambda t: [(p.kind, p.n, p.right) for p in t])
        mode = "exhaustive"
        if sample_above is not None and len(cands) > sample_above:
            cands = rng.sample(cands, min(samples, len(cands)))
            mode = "sampled"
        for t in cands:
            if t in seen:
                continue
            seen.add(t)
            checked += 1
            r = stasheff(t, table)
            if r:
                return AinftyReport(False, checked, (tuple(str(p) for p in t), str(r)), mode,
                                    seed if mode == "sampled" else None)
    return AinftyReport(True, checked, None, "exhaustive" if sample_above is None else "mixed",
                        seed if sample_above is not None else None)


# ---------------------------------------------------------------- extended type D structures

@dataclass
class ExtTypeD:
    gens: dict  # id -> Gen
    arrows: dict  # (src, dst) -> UElem

    @classmethod
    def from_typed(cls, X: TypeD) -> "ExtTypeD":
        return cls(dict(X.gens), {(s, d): UElem.lift(lab) for s, lab, d in X.arrows()})

    def restrict0(self) -> TypeD:
        t = TypeD()
        for g, gen in self.gens.items():
            t.add_gen(g, gen)
        for (s, d), lab in self.arrows.items():
            t.add_arrow(s, lab.restrict0(), d)
        return t

    def add(self, s, d, lab: UElem):
        cur = self.arrows.get((s, d), UElem()) + lab
        if cur:
            self.arrows[(s, d)] = cur
        else:
            self.arrows.pop((s, d), None)

    def u_arrows(self):
        """Arrows carrying positive U powers: list of (src, term text, dst)."""
        out = []
        for (s, d), lab in sorted(self.arrows.items()):
            for u, p in sorted(lab.terms, key=lambda t: (t[0], str(t[1]))):
                if u:
                    out.append((s, f"U^{u}*{p}", d))
        return out

    def to_json_obj(self) -> dict:
        return {
            "generators": [{"id": g, "idem": alg.IDEM_CHAR[x.idem], "q": x.q, "delta2": x.d2}
                           for g, x in self.gens.items()],
            "arrows": [{"src": s, "label": to_text(lab), "dst": d}
                       for (s, d), lab in sorted(self.arrows.items())],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "ExtTypeD":
        gens = {}
        for g in obj["generators"]:
            idem = g["idem"]
            idem = alg.CHAR_IDEM[idem] if isinstance(idem, str) else int(idem)
            gens[str(g["id"])] = Gen(idem, int(g["q"]), int(g["delta2"]))
        t = cls(gens, {})
        for a in obj["arrows"]:
            t.add(str(a["src"]), str(a["dst"]), from_text(a["label"]))
        return t


def ext_grading_issues(E: ExtTypeD) -> list:
    issues = []
    for (s, d), lab in E.arrows.items():
        gs, gd = E.gens[s], E.gens[d]
        for u, p in lab.terms:
            if p.right != gs.idem or p.left != gd.idem:
                issues.append(("idempotent", s, f"U^{u}*{p}", d))
            q, d2 = grading_u(u, p)
            if (q + gd.q - gs.q, d2 + gd.d2 - gs.d2) != (0, -2):
                issues.append(("grading", s, f"U^{u}*{p}", d))
    return issues


def _out_map(E: ExtTypeD):
    out = {}
    for (s, d), lab in E.arrows.items():
        out.setdefault(s, []).append((d, lab))
    return out


def compatibility(E: ExtTypeD, max_u: int | None = None, table: MuTable | None = None) -> dict:
    """Sum over arrow chains of mu applied to their labels: (src, dst) -> UElem.

    Only the terms with U exponent <= max_u are computed when given.
    """
    table = table or default_table()
    out = _out_map(E)
    res: dict = {}
    kmax = table.max_len

    def add(key, val):
        cur = res.get(key, UElem()) + val
        if cur:
            res[key] = cur
        else:
            res.pop(key, None)

    # DFS over chains carrying the list of (u, path) terms in arrow order;
    # minu is the smallest total U power the chain can still carry
    def dfs(start, node, terms, minu):
        k = len(terms)
        if k >= 2:
            for combo in itertools.product(*terms):
                u = k - 2 + sum(c[0] for c in combo)
                if max_u is not None and u > max_u:
                    continue
                val = table.mu_paths(tuple(c[1] for c in reversed(combo)))
                if val:
                    add((start, node), UElem.lift(val, u))
        if k >= kmax:
            return
        for d, lab in out.get(node, ()):
            ts = sorted(lab.terms, key=lambda t: (t[0], t[1]))
            if max_u is not None:
                ts = [t for t in ts if t[0] + minu + max(0, k - 1) <= max_u]
                if not ts:
                    continue
            dfs(start, d, terms + [ts], minu + min(t[0] for t in ts))

    for g in E.gens:
        dfs(g, g, [], 0)
    return res


def is_compatible(E: ExtTypeD, table: MuTable | None = None) -> tuple[bool, dict]:
    res = compatibility(E, table=table)
    return not res, res


# ---------------------------------------------------------------- extension solver

@dataclass
class Obstruction:
    order: int  # U exponent of the uncancelable term
    pair: tuple
    term: str
    certified: bool = True


@dataclass
class ExtensionResult:
    status: str  # "extended", "obstructed", "undecided"
    ext: ExtTypeD | None = None
    obstruction: Obstruction | None = None
    orders: int = 0
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "extended"


def _order_terms(E: ExtTypeD, u: int, table) -> dict:
    comp = compatibility(E, max_u=u, table=table)
    out = {}
    for key, val in comp.items():
        e = val.at(u)
        if e:
            out[key] = e
    return out


def extend(X: TypeD, max_u_order: int = 8, table: MuTable | None = None,
           backtrack_limit: int = 10) -> ExtensionResult:
    """Solve for U-corrections of the differential of X order by order.

    Corrections U^(2N) * delta_N are morphisms X -> X of degree (6N, 2N - 2);
    quantum parity rules out odd U powers.  At order N the compatibility
    equation reads d(delta_N) = R_N, where R_N collects all terms of U power
    2N built from lower orders.  When R_N is not a boundary, earlier choices
    are revisited if their solution spaces are small; an obstruction is
    certified only when every choice has been ruled out.
    """
    table = table or default_table()
    for (s, lab, d) in X.arrows():
        if any(p.kind == "i" for p in lab.terms):
            raise ValueError("extend expects a reduced complex")
    E0 = ExtTypeD.from_typed(X)
    if not X.gens:
        return ExtensionResult("extended", E0, orders=0)
    qs = [g.q for g in X.gens.values()]
    top = (max(qs) - min(qs)) // 6
    last = min(top, max_u_order // 2)

    def solve(E: ExtTypeD, N: int, budget: list):
        if N > last:
            return ("done", E)
        R = _order_terms(E, 2 * N, table)
        deg = (6 * N, 2 * N - 2)
        upper = mor_basis(X, X, deg)
        mid = mor_basis(X, X, (deg[0], deg[1] - 2))
        cols = []
        for b in upper.basis:
            v = 0
            for k in _diff_basis_elem(X, X, *b):
                v ^= 1 << mid.index[k]
            cols.append(v)
        if not R:
            target = 0
        else:
            f = Mor({k: v for k, v in R.items()}, None)
            try:
                target = mor_to_vector(f, mid)
            except ValueError:
                return ("fail", Obstruction(2 * N, next(iter(R)), str(next(iter(R.values()))),
                                            certified=(N == 1)))
        combo = gf2.solve(cols, target)
        if combo is None:
            key = next(iter(sorted(R)))
            return ("fail", Obstruction(2 * N, key, str(R[key]), certified=(N == 1)))
        kern = gf2.kernel(cols)
        # drop trivial dependencies: kernel vectors are combinations of columns
        options = [0]
        if N < last and kern:
            if len(kern) <= backtrack_limit:
                options = [0]
                for r in range(1, len(kern) + 1):
                    for sub in itertools.combinations(kern, r):
                        v = 0
                        for s in sub:
                            v ^= s
                        options.append(v)
            else:
                budget[0] = False
        result = None
        for opt in options:
            sol = vector_to_mor(combo ^ opt, upper)
            E2 = ExtTypeD(E.gens, dict(E.arrows))
            for (x, y), lab in sol.entries.items():
                E2.add(x, y, UElem.lift(lab, 2 * N))
            r = solve(E2, N + 1, budget)
            if r[0] == "done":
                return r
            result = r
        return result

    budget = [True]
    res = solve(E0, 1, budget)
    if res[0] == "done":
        ok, rem = is_compatible(res[1], table)
        if not ok and last < top:
            return ExtensionResult("undecided", res[1], orders=last,
                                   message=f"undecided up to U-order {2 * last}")
        if not ok:
            key = next(iter(sorted(rem)))
            return ExtensionResult("undecided", res[1], orders=last,
                                   message=f"residual terms beyond solved orders at {key}")
        return ExtensionResult("extended", res[1], orders=last)
    obs = res[1]
    if obs.order == 2 and obs.certified:
        return ExtensionResult("obstructed", None, obs, orders=1,
                               message="uncancelable term at U^2")
    if budget[0]:
        obs.certified = True
        return ExtensionResult("obstructed", None, obs, orders=obs.order // 2,
                               message=f"no choice of lower corrections cancels the U^{obs.order} term")
    return ExtensionResult("undecided", None, obs, orders=obs.order // 2,
                           message=f"undecided up to U-order {obs.order}")


def wrap_obstruction(X: TypeD, table: MuTable | None = None):
    """Look for arrow chains D, S, D, S (optionally followed by D) whose mu_4
    output has a unit term that nothing else can cancel.

    In a reduced complex the U^2 * unit part of the compatibility relation
    comes only from mu_4 on four consecutive arrows; if its coefficient at a
    pair of generators is odd, no extension exists.  Returns the generator
    chain of a witness (six generators when a trailing D arrow exists).
    """
    table = table or default_table()
    unit_count: dict = {}
    chains: dict = {}
    out = {s: list(X.out[s].items()) for s in X.gens}
    for x0 in X.gens:
        stack = [(x0, [x0], [])]
        while stack:
            node, path, labs = stack.pop()
            if len(labs) == 4:
                for combo in itertools.product(*[sorted(l.terms) for l in labs]):
                    val = table.mu_paths(tuple(reversed(combo)))
                    if any(p.kind == "i" for p in val.terms):
                        key = (x0, node)
                        unit_count[key] = unit_count.get(key, 0) ^ 1
                        chains.setdefault(key, []).append((path, combo))
                continue
            for d, lab in out[node]:
                stack.append((d, path + [d], labs + [lab]))
    for key in sorted(unit_count):
        if unit_count[key]:
            path, combo = chains[key][0]
            x4 = path[-1]
            tail = [d for d, lab in out[x4] if any(p.kind == "D" for p in lab.terms)]
            return path + tail[:1]
    return None
