"""Pointed four-ended tangle diagrams (and closed link diagrams).

A crossing is a 4-tuple of arc ids listed counterclockwise together with a
flag saying which opposite pair passes over: ``over=0`` for slots 0/2 and
``over=1`` for slots 1/3.  Slots sit at the corners SW, SE, NE, NW of a
small square, which fixes the sign convention.  Each arc has exactly two
endpoints, each either a crossing slot or one of the ends NW, NE, SE, SW.
Crossing-free closed loops are counted separately.

The 0-smoothing joins every under-slot to its counterclockwise neighbour, so
positive crossings have their oriented smoothing at 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

ENDS = ("NW", "NE", "SE", "SW")
SLOT_POS = {0: (-1, -1), 1: (1, -1), 2: (1, 1), 3: (-1, 1)}

LO, LI, XC = "Lo", "Li", "X"


class DiagramError(ValueError):
    pass


@dataclass
class Crossing:
    name: str
    arcs: tuple  # four arc ids, counterclockwise
    over: int  # 0: slots 0/2 over, 1: slots 1/3 over

    def under_slots(self):
        return (1, 3) if self.over == 0 else (0, 2)

    def smoothing(self, bit: int):
        """Pairs of slots joined by the chosen smoothing."""
        u1, u2 = self.under_slots()
        if bit == 0:
            return ((u1, (u1 + 1) % 4), (u2, (u2 + 1) % 4))
        return ((u1, (u1 - 1) % 4), (u2, (u2 - 1) % 4))


@dataclass
class Resolution:
    vertex: tuple
    comp: dict  # arc -> component key (smallest arc of the component)
    circles: list  # sorted component keys of closed components
    eps: int  # 0 for Lo, 1 for Li (None for closed diagrams)
    special: str | None  # key of the strand through NW
    open_keys: list


class Tangle:
    def __init__(self, crossings=(), ends=None, loops: int = 0, orient=None,
                 base: str | None = None, name: str = ""):
        self.crossings: list[Crossing] = list(crossings)
        self.ends: dict = dict(ends or {})
        self.loops = loops
        self.orient_hint: dict = dict(orient or {})  # arc -> head endpoint
        self.base = base
        self.name = name
        self._validate()
        self._orient = None

    # ------------------------------------------------------------ structure
    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def closed(self) -> bool:
        return not self.ends

    def endpoints(self) -> dict:
        inc: dict = {}
        for i, c in enumerate(self.crossings):
            for s, a in enumerate(c.arcs):
                inc.setdefault(a, []).append(("x", i, s))
        for e, a in self.ends.items():
            inc.setdefault(a, []).append(("e", e))
        return inc

    def arcs(self) -> list:
        return sorted(self.endpoints(), key=_arc_key)

    def _validate(self):
        if self.ends and set(self.ends) != set(ENDS):
            raise DiagramError(f"ends must be exactly {ENDS}, got {sorted(self.ends)}")
        names = [c.name for c in self.crossings]
        if len(set(names)) != len(names):
            raise DiagramError("duplicate crossing names")
        for c in self.crossings:
            if len(c.arcs) != 4 or c.over not in (0, 1):
                raise DiagramError(f"bad crossing record {c.name}")
        for a, eps in self.endpoints().items():
            if len(eps) != 2:
                raise DiagramError(f"arc {a!r} has {len(eps)} endpoints (need 2)")
        if self.closed and self.crossings and self.base is None:
            self.base = self.arcs()[0]
        if self.base is not None and self.base not in self.endpoints():
            raise DiagramError(f"basepoint arc {self.base!r} not in diagram")
        self._check_planar()

    def _check_planar(self):
        """Euler characteristic test on the rotation system.

        The diagram is capped off by a vertex at infinity carrying the four
        ends; seen from there their counterclockwise order is NW, NE, SE, SW.
        Faces are traced from the
        cyclic orders and V - E + F must be 2 for each connected piece.
        """
        if not self.crossings:
            return
        inc = self.endpoints()
        darts = {}  # (vertex, slot) -> (other vertex, other slot)
        for a, (p, q) in inc.items():
            darts[_vx(p)] = _vx(q)
            darts[_vx(q)] = _vx(p)
        degree = {}
        for v, s in darts:
            degree[v] = degree.get(v, 0) + 1
        seen = set()
        faces = 0
        for d in darts:
            if d in seen:
                continue
            faces += 1
            cur = d
            while cur not in seen:
                seen.add(cur)
                v, s = darts[cur]
                cur = (v, (s - 1) % degree[v])
        verts = len(degree)
        edges = len(darts) // 2
        # count connected pieces of the vertex graph
        parent = {v: v for v in degree}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (v, _), (w, _) in darts.items():
            parent[find(v)] = find(w)
        pieces = len({find(v) for v in degree})
        if verts - edges + faces != 2 * pieces:
            raise DiagramError("crossing records are not planar (Euler characteristic test failed)")

    # ------------------------------------------------------------ orientation
    def _next(self, ep):
        """Continue a strand through a crossing endpoint; None at an end."""
        if ep[0] == "e":
            return None
        _, i, s = ep
        s2 = (s + 2) % 4
        return self.crossings[i].arcs[s2], ("x", i, s2)

    def orientation(self) -> dict:
        """arc -> head endpoint, consistent along strands."""
        if self._orient is not None:
            return self._orient
        inc = self.endpoints()
        head: dict = {}

        def walk(arc, tail):
            while arc not in head:
                p, q = inc[arc]
                h = q if p == tail else p
                if p == q:
                    h = q
                head[arc] = h
                nxt = self._next(h)
                if nxt is None:
                    return
                arc, tail = nxt

        for arc, h in self.orient_hint.items():
            if arc in head:
                continue
            p, q = inc[arc]
            tail = q if h == p else p
            start, start_tail = arc, tail
            # walk backwards to the start of the strand to orient it wholly
            walk(start, start_tail)
            back = self._prev(start, start_tail, inc)
            for a, t in back:
                if a in head:
                    break
                p, q = inc[a]
                head[a] = q if p == t else p
        for e in ENDS:
            if e in self.ends:
                a = self.ends[e]
                if a not in head:
                    walk(a, ("e", e))
        for a in self.arcs():
            if a not in head:
                walk(a, inc[a][0])
        self._orient = head
        return head

    def _prev(self, arc, tail, inc):
        """Arcs before (arc, tail) along its strand, each with its tail."""
        out = []
        cur_tail = tail
        seen = {arc}
        while cur_tail[0] == "x":
            _, i, s = cur_tail
            s2 = (s + 2) % 4
            a = self.crossings[i].arcs[s2]
            if a in seen:
                break
            seen.add(a)
            p, q = inc[a]
            here = ("x", i, s2)
            t = q if p == here else p
            out.append((a, t))
            cur_tail = t
        return out

    def signs(self) -> list[int]:
        head = self.orientation()
        out = []
        for i, c in enumerate(self.crossings):
            vec = {}
            for s in (0, 1):
                a = c.arcs[s]
                if head[a] == ("x", i, s):
                    d = _sub(SLOT_POS[(s + 2) % 4], SLOT_POS[s])
                else:
                    d = _sub(SLOT_POS[s], SLOT_POS[(s + 2) % 4])
                vec[s] = d
            over = vec[c.over]
            under = vec[1 - c.over]
            cross = over[0] * under[1] - over[1] * under[0]
            out.append(1 if cross > 0 else -1)
        return out

    def writhe_data(self) -> tuple[int, int]:
        s = self.signs()
        return s.count(1), s.count(-1)

    # ------------------------------------------------------------ resolutions
    def resolve(self, vertex) -> Resolution:
        vertex = tuple(vertex)
        if len(vertex) != self.n:
            raise DiagramError("vertex length differs from crossing count")
        parent = {a: a for a in self.endpoints()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c, bit in zip(self.crossings, vertex):
            for s, t in c.smoothing(bit):
                ra, rb = find(c.arcs[s]), find(c.arcs[t])
                if ra != rb:
                    parent[ra] = rb
        groups: dict = {}
        for a in parent:
            groups.setdefault(find(a), []).append(a)
        comp = {}
        for members in groups.values():
            key = min(members, key=_arc_key)
            for a in members:
                comp[a] = key
        end_keys = {e: comp[a] for e, a in self.ends.items()}
        open_keys = sorted(set(end_keys.values()), key=_arc_key)
        circles = sorted({k for k in comp.values() if k not in open_keys}, key=_arc_key)
        eps = special = None
        if self.ends:
            special = end_keys["NW"]
            if end_keys["NE"] == special:
                eps = 0
            elif end_keys["SW"] == special:
                eps = 1
            else:
                raise DiagramError("resolution joins NW to SE; diagram is not planar")
        return Resolution(vertex, comp, circles, eps, special, open_keys)

    def connectivity(self) -> str:
        inc = self.endpoints()
        a = self.ends["NW"]
        tail = ("e", "NW")
        while True:
            p, q = inc[a]
            h = q if p == tail else p
            if h[0] == "e":
                return {"NE": LO, "SW": LI, "SE": XC}[h[1]]
            a, tail = self._next(h)

    def closed_components(self) -> int:
        """Closed components (including crossing-free loops)."""
        inc = self.endpoints()
        seen = set()
        for e in self.ends:
            a, tail = self.ends[e], ("e", e)
            while a not in seen:
                seen.add(a)
                p, q = inc[a]
                h = q if p == tail else p
                nxt = self._next(h)
                if nxt is None:
                    break
                a, tail = nxt
        count = self.loops
        for a0 in self.arcs():
            if a0 in seen:
                continue
            count += 1
            a, tail = a0, inc[a0][0]
            while a not in seen:
                seen.add(a)
                p, q = inc[a]
                h = q if p == tail else p
                a, tail = self._next(h)
        return count

    # ------------------------------------------------------------ text form
    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"# {self.name}")
        if self.ends:
            lines.append("ends " + " ".join(f"{e}={self.ends[e]}" for e in ENDS))
        for c in self.crossings:
            lines.append(f"x {c.name}: ({','.join(c.arcs)}) over={'ac' if c.over == 0 else 'bd'}")
        if self.loops:
            lines.append(f"loops {self.loops}")
        if self.base is not None and self.closed:
            lines.append(f"base {self.base}")
        head = self.orientation()
        done = set()
        for a in self.arcs():
            if a in done:
                continue
            # one orientation line per strand
            strand = self._strand_arcs(a)
            done.update(strand)
            lines.append(f"orient {a} -> {_ep_text(head[a], self)}")
        return "\n".join(lines) + "\n"

    def _strand_arcs(self, a0):
        inc = self.endpoints()
        head = self.orientation()
        out = {a0}
        a = a0
        while True:
            nxt = self._next(head[a])
            if nxt is None or nxt[0] in out:
                break
            a = nxt[0]
            out.add(a)
        a = a0
        while True:
            p, q = inc[a]
            tail = q if head[a] == p else p
            if tail[0] == "e":
                break
            _, i, s = tail
            b = self.crossings[i].arcs[(s + 2) % 4]
            if b in out:
                break
            out.add(b)
            a = b
        return out


def _arc_key(a):
    m = re.fullmatch(r"([A-Za-z_]*)(\d+)", str(a))
    if m:
        return (m.group(1), int(m.group(2)), "")
    return (str(a), -1, "")


def _vx(ep):
    if ep[0] == "e":
        return ("B", {"NW": 0, "NE": 1, "SE": 2, "SW": 3}[ep[1]])
    return (ep[1], ep[2])


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _ep_text(ep, T: Tangle) -> str:
    if ep[0] == "e":
        return ep[1]
    return f"{T.crossings[ep[1]].name}.{ep[2]}"


# ------------------------------------------------------------ parsing

_DECL = re.compile(r"x\s+(\S+)\s*:\s*\(([^)]*)\)\s*over\s*=\s*(\S+)")


def parse(text: str) -> Tangle:
    """Parse the line-oriented tangle format (see docs/tangle_format.md)."""
    ends = {}
    crossings = []
    orient_lines = []
    loops = 0
    base = None
    name = ""
    shorthand = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if raw.strip().startswith("#") and not name:
                name = raw.strip()[1:].strip()
            continue
        try:
            head = line.split()[0]
            if head == "ends":
                for tok in line.split()[1:]:
                    k, _, v = tok.partition("=")
                    if k not in ENDS or not v:
                        raise DiagramError(f"bad end assignment {tok!r}")
                    ends[k] = v
            elif head == "x":
                m = _DECL.fullmatch(line)
                if not m:
                    raise DiagramError("expected 'x NAME: (a,b,c,d) over=ARC'")
                cname, arcs, over = m.groups()
                arcs = tuple(a.strip() for a in arcs.split(","))
                if len(arcs) != 4 or not all(arcs):
                    raise DiagramError("a crossing needs four arcs")
                if over in ("ac", "0"):
                    ov = 0
                elif over in ("bd", "1"):
                    ov = 1
                elif over in arcs:
                    idx = [i for i, a in enumerate(arcs) if a == over]
                    if len({i % 2 for i in idx}) != 1:
                        raise DiagramError(f"over={over} is ambiguous; use over=ac or over=bd")
                    ov = idx[0] % 2
                else:
                    raise DiagramError(f"over={over} names no arc of the crossing")
                crossings.append(Crossing(cname, arcs, ov))
            elif head == "orient":
                orient_lines.append((lineno, line.split()[1:]))
            elif head == "loops":
                loops = int(line.split()[1])
            elif head == "base":
                base = line.split()[1]
            elif head in ("rational", "pretzel"):
                shorthand = (head, line.split()[1:])
            else:
                raise DiagramError(f"unknown declaration {head!r}")
        except (DiagramError, ValueError, IndexError) as exc:
            raise DiagramError(f"line {lineno}: {exc}") from None
    if shorthand is not None:
        kind, args = shorthand
        if kind == "rational":
            return rational(parse_slope(args[0]))
        return pretzel([int(a) for a in args])
    T = Tangle(crossings, ends, loops, base=base, name=name)
    hint = {}
    inc = T.endpoints()
    for lineno, toks in orient_lines:
        if not toks or toks[0] not in inc:
            raise DiagramError(f"line {lineno}: orient needs a known arc")
        a = toks[0]
        p, q = inc[a]
        if len(toks) == 2 and toks[1] in ("->", "<-"):
            ends_here = [e for e in (p, q) if e[0] == "e"]
            if not ends_here:
                raise DiagramError(f"line {lineno}: '{toks[1]}' without target only works on boundary arcs")
            e = ends_here[0]
            other = q if p == e else p
            hint[a] = other if toks[1] == "->" else e
        elif len(toks) == 3 and toks[1] == "->":
            tgt = toks[2]
            cands = []
            for ep in (p, q):
                if ep[0] == "e" and ep[1] == tgt:
                    cands.append(ep)
                elif ep[0] == "x":
                    cn = T.crossings[ep[1]].name
                    if tgt == cn or tgt == f"{cn}.{ep[2]}":
                        cands.append(ep)
            if len(cands) != 1:
                raise DiagramError(f"line {lineno}: cannot resolve orientation target {tgt!r}")
            hint[a] = cands[0]
        else:
            raise DiagramError(f"line {lineno}: expected 'orient ARC ->', 'orient ARC <-' or 'orient ARC -> TARGET'")
    T.orient_hint = hint
    T._orient = None
    _check_orientation(T)
    return T


def _check_orientation(T: Tangle):
    head = T.orientation()
    for a, h in T.orient_hint.items():
        if head[a] != h:
            raise DiagramError(f"orientation of arc {a!r} conflicts with another orient line")
    for i, c in enumerate(T.crossings):
        for s in range(2):
            a, b = c.arcs[s], c.arcs[s + 2]
            into_a = head[a] == ("x", i, s)
            into_b = head[b] == ("x", i, s + 2)
            if into_a == into_b:
                raise DiagramError(f"crossing {c.name}: strand {a}-{b} is not consistently oriented")


def parse_slope(s: str):
    s = s.strip()
    if s in ("inf", "oo", "1/0", "-1/0"):
        return None
    return Fraction(s)


# ------------------------------------------------------------ builders

class _Namer:
    def __init__(self):
        self.a = 0
        self.x = 0

    def arc(self):
        self.a += 1
        return f"a{self.a}"

    def cross(self):
        self.x += 1
        return f"c{self.x}"


def _relabel(T: Tangle, prefix: str) -> Tangle:
    amap = {a: f"{prefix}{a}" for a in T.endpoints()}
    cr = [Crossing(f"{prefix}{c.name}", tuple(amap[a] for a in c.arcs), c.over) for c in T.crossings]
    return Tangle(cr, {e: amap[a] for e, a in T.ends.items()}, T.loops, name=T.name)


def renumber(T: Tangle, name: str | None = None) -> Tangle:
    """Canonical arc names a1.. and crossing names c1.. in traversal order."""
    nm = _Namer()
    amap = {}
    for e in ENDS:
        if e in T.ends and T.ends[e] not in amap:
            amap[T.ends[e]] = nm.arc()
    for c in T.crossings:
        for a in c.arcs:
            if a not in amap:
                amap[a] = nm.arc()
    cr = [Crossing(nm.cross(), tuple(amap[a] for a in c.arcs), c.over) for c in T.crossings]
    base = amap.get(T.base) if T.base is not None else None
    return Tangle(cr, {e: amap[a] for e, a in T.ends.items()}, T.loops, base=base,
                  name=T.name if name is None else name)


def trivial(kind: str = "0") -> Tangle:
    """Q0 joins NW-NE and SW-SE; Qinf joins NW-SW and NE-SE."""
    if kind == "0":
        return Tangle([], {"NW": "a1", "NE": "a1", "SW": "a2", "SE": "a2"}, name="Q0")
    return Tangle([], {"NW": "a1", "SW": "a1", "NE": "a2", "SE": "a2"}, name="Qinf")


def _merge_arcs(crossings, ends, pairs, loops):
    """Identify arcs pairwise; returns (crossings, ends, loops)."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    extra_loops = 0
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            extra_loops += 1
        else:
            parent[rb] = ra
    cr = [Crossing(c.name, tuple(find(a) for a in c.arcs), c.over) for c in crossings]
    en = {e: find(a) for e, a in ends.items()}
    return cr, en, loops + extra_loops


def twist(T: Tangle, side: str, sign: int = 1) -> Tangle:
    """Add one crossing at the east (NE/SE) or south (SW/SE) ends.

    ``sign=+1`` puts the SW-NE diagonal of the new crossing on top; on
    fractions this is F -> F + 1 (east) and 1/F -> 1/F + 1 (south).
    """
    T = _relabel(T, "t")
    x = Crossing("new", ("p0", "p1", "p2", "p3"), 0 if sign > 0 else 1)
    ends = dict(T.ends)
    if side == "east":
        pairs = [(T.ends["NE"], "p3"), (T.ends["SE"], "p0")]
        ends["NE"], ends["SE"] = "p2", "p1"
    elif side == "south":
        pairs = [(T.ends["SW"], "p3"), (T.ends["SE"], "p2")]
        ends["SW"], ends["SE"] = "p0", "p1"
    else:
        raise ValueError(side)
    cr, en, loops = _merge_arcs(T.crossings + [x], ends, pairs, T.loops)
    return renumber(Tangle(cr, en, loops))


def tsum(A: Tangle, B: Tangle) -> Tangle:
    """Horizontal sum: A's east ends glued to B's west ends."""
    A, B = _relabel(A, "l"), _relabel(B, "r")
    pairs = [(A.ends["NE"], B.ends["NW"]), (A.ends["SE"], B.ends["SW"])]
    ends = {"NW": A.ends["NW"], "SW": A.ends["SW"], "NE": B.ends["NE"], "SE": B.ends["SE"]}
    cr, en, loops = _merge_arcs(A.crossings + B.crossings, ends, pairs, A.loops + B.loops)
    return renumber(Tangle(cr, en, loops))


def mirror(T: Tangle) -> Tangle:
    cr = [Crossing(c.name, c.arcs, 1 - c.over) for c in T.crossings]
    return Tangle(cr, T.ends, T.loops, base=T.base, name=(T.name + "*") if T.name else "")


def flip_vertical_axis(T: Tangle) -> Tangle:
    """Rotate by pi about the vertical axis in the page (an isotopy of the tangle
    in the ball, realised on the diagram by a left-right reflection plus
    crossing change)."""
    cr = []
    for c in T.crossings:
        a, b, cc, d = c.arcs
        # reflection reverses the cyclic order; keep slot 0 in place
        cr.append(Crossing(c.name, (a, d, cc, b), 1 - c.over if False else c.over))
    # reflection alone mirrors; slot pairs keep parity ((a,c) stays at 0/2),
    # so the over flag must flip to undo the mirror.
    cr = [Crossing(c.name, c.arcs, 1 - c.over) for c in cr]
    swap = {"NW": "NE", "NE": "NW", "SW": "SE", "SE": "SW"}
    ends = {swap[e]: a for e, a in T.ends.items()}
    return Tangle(cr, ends, T.loops, name=T.name)


def rational(F) -> Tangle:
    """Rational tangle with fraction F (a Fraction, int, or None for infinity)."""
    word = rational_word(F)
    if word and word[0][0] == "inf":
        T = trivial("inf")
        word = word[1:]
    else:
        T = trivial("0")
    for side, sign in word:
        T = twist(T, side, sign)
    T = renumber(T, name=f"rational {fraction_text(F)}")
    return T


def rational_word(F) -> list:
    """Twists turning Q0 (or Qinf, flagged by a leading ('inf', 0)) into Q_F."""
    if F is None:
        return [("inf", 0)]
    F = Fraction(F)
    if F == 0:
        return []
    n = int(F)  # truncation toward zero
    if n != 0:
        base = rational_word(F - n)
        return base + [("east", 1 if n > 0 else -1)] * abs(n)
    R = 1 / F
    m = int(R)
    rest = R - m
    base = rational_word(None if rest == 0 else 1 / rest)
    return base + [("south", 1 if m > 0 else -1)] * abs(m)


def fraction_text(F) -> str:
    if F is None:
        return "1/0"
    F = Fraction(F)
    return f"{F.numerator}/{F.denominator}"


def pretzel(ks) -> Tangle:
    """Sum of vertical twist columns 1/k for each k."""
    if not ks:
        raise DiagramError("pretzel needs at least one column")
    T = rational(Fraction(1, ks[0]) if ks[0] else None)
    for k in ks[1:]:
        T = tsum(T, rational(Fraction(1, k) if k else None))
    return renumber(T, name="pretzel " + " ".join(str(k) for k in ks))


def glue(T1: Tangle, T2: Tangle) -> Tangle:
    """Closed diagram T1 u T2: T2 turned about the vertical axis and placed on
    the other side of the Conway sphere, ends matched by name.  The basepoint
    sits on the arc at the NW end."""
    A = _relabel(T1, "u")
    B = _relabel(flip_vertical_axis(T2), "v")
    # after turning, B's end labelled X sits where T2's end X' = mirror(X) was;
    # the end named X of T2 is B's end swap(X).
    swap = {"NW": "NE", "NE": "NW", "SW": "SE", "SE": "SW"}
    pairs = [(A.ends[e], B.ends[swap[e]]) for e in ENDS]
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    loops = A.loops + B.loops
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            loops += 1
        else:
            parent[rb] = ra
    cr = [Crossing(c.name, tuple(find(a) for a in c.arcs), c.over) for c in A.crossings + B.crossings]
    base = find(A.ends["NW"])
    used = {a for c in cr for a in c.arcs}
    if base not in used:
        base = None
    L = Tangle(cr, {}, loops, base=base, name=f"{T1.name} u {T2.name}")
    return renumber(L)
