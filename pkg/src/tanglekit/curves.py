"""Curve geography: normal-form complexes, twisting, classification, detection tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import networkx as nx

from . import algebra as alg
from .algebra import Elem, FILLED, HOLLOW
from .typed import (TypeD, Gen, ADBimodule, Rule, box_tensor, regrade, check_typed,
                    central_action, is_nullhomotopic)
from . import simplify

# ---------------------------------------------------------------- descriptors


@dataclass(frozen=True)
class Curve:
    kind: str  # "r" (rational) or "s" (special)
    n: int  # r_n, or s_2n
    p: int
    q: int

    def __post_init__(self):
        if gcd(self.p, self.q) != 1 or self.q < 0 or (self.q == 0 and self.p != 1):
            raise ValueError(f"slope {self.p}/{self.q} is not in canonical form")

    @property
    def slope(self):
        return None if self.q == 0 else Fraction(self.p, self.q)

    @property
    def slope_text(self) -> str:
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"

    def __str__(self):
        if self.kind == "r":
            return f"r_{self.n}({self.slope_text})"
        return f"s_{2 * self.n}({self.slope_text})"

    @classmethod
    def parse(cls, s: str) -> "Curve":
        s = s.strip()
        head, _, rest = s.partition("(")
        kind, _, n = head.partition("_")
        body = rest.rstrip(")").strip()
        if body in ("inf", "1/0", "∞"):
            p, q = "1", "0"
        else:
            p, _, q = body.partition("/")
            q = q or "1"
        n = int(n)
        if kind == "s":
            if n % 2:
                raise ValueError("special curves have even length")
            n //= 2
        return cls(kind, n, *canonical_slope(int(p), int(q)))


def canonical_slope(p: int, q: int) -> tuple[int, int]:
    if p == 0 and q == 0:
        raise ValueError("0/0 is not a slope")
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def slope_pair(s) -> tuple[int, int]:
    if s is None:
        return (1, 0)
    s = Fraction(s)
    return (s.numerator, s.denominator)


# ---------------------------------------------------------------- slope action
#
# A slope p/q is the line through the vector (q, p); matrices act on columns.

TAU_MATRIX = {
    "t1": ((1, 0), (-1, 1)),
    "T1": ((1, 0), (1, 1)),
    "t2": ((1, 1), (0, 1)),
    "T2": ((1, -1), (0, 1)),
}
LETTERS = ("t1", "T1", "t2", "T2")
# the diagram twist (side, sign) realizing each letter, see tangles.twist
DIAGRAM_TWIST = {"t1": ("east", -1), "T1": ("east", 1), "t2": ("south", 1), "T2": ("south", -1)}
INVERSE = {"t1": "T1", "T1": "t1", "t2": "T2", "T2": "t2"}


def slope_action(m, s: tuple[int, int]) -> tuple[int, int]:
    (a, b), (c, d) = m
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    p, q = s
    x, y = a * q + b * p, c * q + d * p
    return canonical_slope(y, x)


def word_action(word, s: tuple[int, int]) -> tuple[int, int]:
    """Apply the letters of word to a slope, first letter first."""
    for w in word:
        s = slope_action(TAU_MATRIX[w], s)
    return s


def parse_word(tokens) -> list[str]:
    names = {"t1": "t1", "t2": "t2", "t1-": "T1", "t2-": "T2", "T1": "T1", "T2": "T2",
             "t1^-1": "T1", "t2^-1": "T2", "tau1": "t1", "tau2": "t2"}
    out = []
    for tok in tokens:
        if tok not in names:
            raise ValueError(f"unknown twist letter {tok!r}")
        out.append(names[tok])
    return out


def word_for_slope(s) -> list[str]:
    """Letters taking slope 0 to s (first letter applied first)."""
    cur = slope_pair(s)
    undo = []  # letters taking s towards 0 or 1/0
    while cur not in ((0, 1), (1, 0)):
        p, q = cur
        best = min((word_action([w], cur) for w in LETTERS), key=lambda t: abs(t[0]) + t[1])
        letter = next(w for w in LETTERS if word_action([w], cur) == best)
        if abs(best[0]) + best[1] >= abs(p) + q:
            raise ValueError(f"cannot reduce slope {p}/{q}")
        undo.append(letter)
        cur = best
    word = [INVERSE[w] for w in reversed(undo)]
    if cur == (1, 0):
        word = ["T1", "T2"] + word
    return word


# ---------------------------------------------------------------- standard complexes

def standard_complex(c: Curve) -> TypeD:
    if c.q == 0:
        base = standard_complex(Curve(c.kind, c.n, 0, 1))
        return swap_idempotents(base)
    if c.p != 0:
        raise ValueError("standard complexes exist at slopes 0 and 1/0 only; use twist")
    X = TypeD()
    g = Gen(FILLED, 0, 0)
    D = Elem([alg.D(1, FILLED)])
    S2 = Elem([alg.S(2, FILLED)])
    if c.kind == "r":
        n = c.n
        if n == 1:
            X.add_gen("a0", g)
            X.add_gen("a1", g)
            X.add_arrow("a0", D + S2, "a1")
            return regrade(X)
        top = ["a0"] + [f"t{i}" for i in range(1, n)] + ["a1"]
        bot = ["a0"] + [f"b{i}" for i in range(1, n)] + ["a1"]
        for name in ["a0", "a1"] + top[1:-1] + bot[1:-1]:
            X.add_gen(name, g)
        for path, first in ((top, D), (bot, S2)):
            lab = first
            for s, d in zip(path, path[1:]):
                X.add_arrow(s, lab, d)
                lab = S2 if lab == D else D
        return regrade(X)
    # special s_2n
    n = c.n
    for row in ("t", "b"):
        X.add_gen(f"{row}L", Gen(HOLLOW, 0, 0))
        X.add_gen(f"{row}R", Gen(HOLLOW, 0, 0))
        for i in range(2 * n):
            X.add_gen(f"{row}{i}", g)
        X.add_arrow(f"{row}L", Elem([alg.S(1, HOLLOW)]), f"{row}0")
        lab = D
        for i in range(2 * n - 1):
            X.add_arrow(f"{row}{i}", lab, f"{row}{i + 1}")
            lab = S2 if lab == D else D
        X.add_arrow(f"{row}{2 * n - 1}", Elem([alg.S(1, FILLED)]), f"{row}R")
    X.add_arrow("tL", Elem([alg.D(1, HOLLOW)]), "bL")
    X.add_arrow("tR", Elem([alg.D(1, HOLLOW)]), "bR")
    return regrade(X)


def curve_complex(c: Curve) -> TypeD:
    """Reduced complex of a curve at any slope: the slope-0 model twisted into place."""
    if c.q == 0 or c.p == 0:
        return standard_complex(c)
    X = standard_complex(Curve(c.kind, c.n, 0, 1))
    return regrade(twist(X, word_for_slope(c.slope)))


def swap_idempotents(X: TypeD) -> TypeD:
    t = TypeD()
    for gid, g in X.gens.items():
        t.add_gen(gid, Gen(1 - g.idem, g.q, g.d2))
    for s, lab, d in X.arrows():
        t.set_arrow(s, Elem([alg.Path(p.kind, p.n, 1 - p.right) for p in lab.terms]), d)
    return t


# ---------------------------------------------------------------- twisting bimodules

def _tau1() -> ADBimodule:
    # bimodule generators: (A-side idempotent, D-side idempotent, grading offset)
    bgens = {
        "..": (FILLED, FILLED, (0, 0)),
        ".:": (FILLED, HOLLOW, (1, -1)),
        "::": (HOLLOW, HOLLOW, (2, 0)),
    }
    same = lambda k: k[0]
    rules = [
        Rule("..", ".:", (), "SH", lambda k: 0),
        Rule("..", "..", ("DH",), "DH", same),
        Rule("..", "..", ("H",), "H", same),
        Rule(".:", "..", ("SH", "SH"), "SH", lambda k: k[0] + k[1]),
        Rule(".:", "::", ("SH",), "DH", same),
        Rule(".:", ".:", ("H",), "H", same),
        # inputs are listed in the order the arrows are traversed
        Rule("::", "..", ("DH", "SH"), "SH", lambda k: k[0] + k[1]),
        Rule("::", ".:", ("SH",), "H", same),
        Rule("::", "::", ("H",), "H", same),
        Rule("::", "::", ("DH",), "S2H", same),
    ]
    return ADBimodule(bgens, rules, "t1")


def _swap_bimodule(B: ADBimodule, name: str) -> ADBimodule:
    bgens = {}
    ren = {}
    for m, (li, ri, off) in B.bgens.items():
        new = "".join(":" if ch == "." else "." for ch in m)
        ren[m] = new
        bgens[new] = (1 - li, 1 - ri, off)
    rules = [Rule(ren[r.src], ren[r.dst], r.inputs, r.out_kind, r.out_power) for r in B.rules]
    return ADBimodule(bgens, rules, name)


_CACHE: dict = {}


def tau_bimodule(which: str) -> ADBimodule:
    which = parse_word([which])[0] if which not in LETTERS else which
    if which not in _CACHE:
        t1 = _tau1()
        t2 = _swap_bimodule(t1, "t2")
        _CACHE.update({
            "t1": t1,
            "t2": t2,
            "T1": ADBimodule({}, [], "T1", inverse_of=t1),
            "T2": ADBimodule({}, [], "T2", inverse_of=t2),
        })
    return _CACHE[which]


def twist(X: TypeD, word) -> TypeD:
    """Box-tensor with each letter in turn, reducing after every step."""
    X = simplify.reduce(X)
    for w in word:
        X = simplify.reduce(box_tensor(X, tau_bimodule(w)))
    return X


# ---------------------------------------------------------------- classification

class GeographyViolation(RuntimeError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def _graph(X: TypeD) -> nx.DiGraph:
    G = nx.DiGraph()
    for gid, g in X.gens.items():
        G.add_node(gid, idem=g.idem)
    for s, lab, d in X.arrows():
        G.add_edge(s, d, label=alg.to_text(lab))
    return G


def isomorphic(X: TypeD, Y: TypeD) -> bool:
    """Isomorphic as labelled graphs with matching relative gradings."""
    if len(X) != len(Y) or X.n_arrows() != Y.n_arrows():
        return False
    GX, GY = _graph(X), _graph(Y)
    gm = nx.algorithms.isomorphism.DiGraphMatcher(
        GX, GY, node_match=lambda a, b: a["idem"] == b["idem"],
        edge_match=lambda a, b: a["label"] == b["label"])
    for m in gm.isomorphisms_iter():
        offs = {(X.gens[x].q - Y.gens[y].q, X.gens[x].d2 - Y.gens[y].d2) for x, y in m.items()}
        if len(offs) == 1:
            return True
    return False


def normal_form(X: TypeD):
    """Curve at slope 0 or 1/0 whose standard complex is isomorphic to X, else None."""
    n = len(X)
    idems = [g.idem for g in X.gens.values()]
    nf, nh = idems.count(FILLED), idems.count(HOLLOW)
    cands = []
    if nh == 0 and n % 2 == 0:
        cands.append(Curve("r", n // 2, 0, 1))
    if nf == 0 and n % 2 == 0:
        cands.append(Curve("r", n // 2, 1, 0))
    if nh == 4 and nf % 4 == 0 and nf:
        cands.append(Curve("s", nf // 4, 0, 1))
    if nf == 4 and nh % 4 == 0 and nh:
        cands.append(Curve("s", nh // 4, 1, 0))
    for c in cands:
        if isomorphic(X, standard_complex(c)):
            return c
    return None


@dataclass
class Classification:
    curves: list  # list of (Curve, word) pairs, word = letters applied to reach its normal form
    failure: str | None = None
    witness: object = None
    parts: list = field(default_factory=list)  # matched complex of each curve, in its twisted frame

    @property
    def ok(self) -> bool:
        return self.failure is None

    @property
    def curve(self):
        return self.curves[0][0] if len(self.curves) == 1 else None


def _word_key(word):
    return (len(word), [LETTERS.index(w) for w in word])


def _descent(X: TypeD, budget: int, simplifier):
    """Best-first search over twist words for a normal form or a splitting.

    Returns ("curve", (Curve, complex), word), ("split", parts, word) or ("fail", msg, None).
    Nodes are ordered by generator count, then word length, then letter order.
    """
    import heapq
    start = simplifier(X)
    parts = simplify.split_components(start)
    if len(parts) > 1:
        return "split", parts, []
    heap = [(len(start), _word_key([]), 0, [], start)]
    seen = set()
    tick = 0
    while heap and tick < budget:
        _, _, _, word, Y = heapq.heappop(heap)
        key = _shape_key(Y)
        if key in seen:
            continue
        seen.add(key)
        c = normal_form(Y)
        if c is not None:
            return "curve", (c, Y), word
        for w in LETTERS:
            if word and w == INVERSE[word[-1]]:
                continue
            tick += 1
            Z = simplifier(box_tensor(Y, tau_bimodule(w)))
            parts = simplify.split_components(Z)
            if len(parts) > 1:
                return "split", parts, word + [w]
            heapq.heappush(heap, (len(Z), _word_key(word + [w]), tick, word + [w], Z))
    return "fail", f"no normal form within {budget} twist steps", None


def _shape_key(X: TypeD):
    """Cheap isomorphism-invariant fingerprint used to prune repeated states."""
    h = nx.weisfeiler_lehman_graph_hash(
        nx.DiGraph(_graph(X)), node_attr="idem", edge_attr="label", iterations=3) \
        if len(X) else ""
    return (len(X), X.n_arrows(), h)


def classify(X: TypeD, budget: int = 400, simplifier=None) -> Classification:
    """Decompose a reduced complex into curves.

    Twist words are searched until the complex is isomorphic to a normal form
    (slope 0 or 1/0) or splits into several summands; summands are classified
    recursively.  A curve reached after applying word w has slope given by
    the inverse of w applied to the normal-form slope.
    """
    simplifier = simplifier or simplify.reduce
    out = []
    todo = [(X, [])]
    while todo:
        Y, prefix = todo.pop()
        if not len(Y):
            continue
        kind, val, word = _descent(Y, budget, simplifier)
        if kind == "fail":
            if simplifier is simplify.reduce:
                kind, val, word = _descent(Y, budget, simplify.tidy)
            if kind == "fail":
                out.sort(key=lambda t: _curve_key(t[0]))
                return Classification([t[:2] for t in out], val, Y, [t[2] for t in out])
        full = prefix + word
        if kind == "curve":
            c, Z = val
            inv = [INVERSE[w] for w in reversed(full)]
            p, q = word_action(inv, (c.p, c.q))
            out.append((Curve(c.kind, c.n, p, q), full, Z))
        else:
            for part in val:
                todo.append((part, full))
    out.sort(key=lambda t: _curve_key(t[0]))
    return Classification([t[:2] for t in out], parts=[t[2] for t in out])


def _curve_key(c: Curve):
    return (c.kind, c.n, c.q, c.p)


# ---------------------------------------------------------------- verifiers

def based_on(c: Curve) -> str:
    """Pair of punctures a rational curve is based on, from slope parities."""
    if c.kind != "r":
        raise ValueError("only rational curves are based on a puncture pair")
    pe, qe = c.p % 2 == 0, c.q % 2 == 0
    if pe and not qe:
        return "horizontal"
    if not pe and not qe:
        return "diagonal"
    return "vertical"


CONNECTIVITY_PAIR = {"Lo": "horizontal", "Li": "vertical", "X": "diagonal"}

# which central action is null-homotopic for each connectivity, and which
# two actions then agree up to homotopy without vanishing
CASES = {
    "Lo": ("D:", ("D.", "S2")),
    "X": ("S2", ("D.", "D:")),
    "Li": ("D.", ("D:", "S2")),
}


@dataclass
class NullPattern:
    null: dict  # action -> bool (null-homotopic)
    sums_null: dict  # (a, b) -> bool
    case: str | None
    witnesses: dict = field(default_factory=dict)

    def as_dict(self):
        return {"null": dict(self.null),
                "sums_null": {f"{a}+{b}": v for (a, b), v in self.sums_null.items()},
                "case": self.case}


def connectivity_tests(X: TypeD) -> NullPattern:
    acts = {z: central_action(z, X) for z in ("D:", "D.", "S2")}
    null, wit = {}, {}
    for z, f in acts.items():
        ok, w = is_nullhomotopic(f, X, X)
        null[z] = ok
        if ok:
            wit[z] = w
    sums = {}
    names = list(acts)
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = names[i], names[j]
            sums[(a, b)] = is_nullhomotopic(acts[a] + acts[b], X, X)[0]
    case = None
    for conn, (z, (a, b)) in CASES.items():
        pair = (a, b) if (a, b) in sums else (b, a)
        if null[z] and sums[pair] and not null[a]:
            case = conn
    return NullPattern(null, sums, case, wit)


def permute_pattern(pat: NullPattern, letter: str) -> NullPattern:
    """Expected pattern after twisting: t1 swaps S2 and D:, t2 swaps S2 and D."""
    perm = {"t1": {"S2": "D:", "D:": "S2", "D.": "D."},
            "t2": {"S2": "D.", "D.": "S2", "D:": "D:"}}[letter.lower()]
    null = {perm[z]: v for z, v in pat.null.items()}
    sums = {}
    for (a, b), v in pat.sums_null.items():
        pa, pb = perm[a], perm[b]
        key = (pa, pb) if (pa, pb) in pat.sums_null else (pb, pa)
        sums[key] = v
    case = None
    for conn, (z, (a, b)) in CASES.items():
        pair = (a, b) if (a, b) in sums else (b, a)
        if null[z] and sums[pair] and not null[a]:
            case = conn
    return NullPattern(null, sums, case)


def odd_count_check(curves) -> bool:
    """True when the number of odd-length rational components is odd."""
    return sum(1 for c in curves if c.kind == "r" and c.n % 2 == 1) % 2 == 1


@dataclass
class GeographyReport:
    ok: bool
    curves: list
    issues: list

    def as_dict(self):
        return {"ok": self.ok, "curves": [str(c) for c in self.curves], "issues": self.issues}


ALLOWED_LABELS = {("S", 1), ("S", 2), ("D", 1)}


def geography_check(X: TypeD, budget: int = 400) -> GeographyReport:
    """Label census, classification and trivial-local-system checks on a reduced complex."""
    issues = []
    rep = check_typed(X)
    if not rep.ok:
        issues.append({"check": "typed", "witness": [str(w) for w in rep.issues[0]]})
        return GeographyReport(False, [], issues)
    for s, lab, d in X.arrows():
        bad = [str(p) for p in lab.terms if (p.kind, p.n) not in ALLOWED_LABELS]
        if bad:
            issues.append({"check": "labels", "witness": [s, "+".join(bad), d]})
            break
    if issues:
        return GeographyReport(False, [], issues)
    cl = classify(X, budget=budget)
    if not cl.ok:
        w = cl.witness
        issues.append({"check": "classify", "message": cl.failure,
                       "witness": None if w is None else {"generators": len(w), "arrows": w.n_arrows()}})
    curves = [c for c, _ in cl.curves]
    return GeographyReport(not issues, curves, issues)
