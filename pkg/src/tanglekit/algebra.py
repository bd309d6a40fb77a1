"""Arithmetic in the two-vertex quiver algebra over F2.

The algebra has two idempotents, written ``FILLED`` (0, printed ".") and
``HOLLOW`` (1, printed ":").  Basis elements are the two idempotents and the
paths S^n and D^n.  D-paths stay at one idempotent, S-paths alternate, and any
product mixing an S-path with a D-path vanishes.

Products follow ``a * b`` is defined when ``a.right == b.left``.
Gradings are stored as integer pairs ``(q, delta2)`` where delta2 = 2*delta.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

FILLED = 0
HOLLOW = 1
IDEM_CHAR = {FILLED: ".", HOLLOW: ":"}
CHAR_IDEM = {".": FILLED, ":": HOLLOW}


class Path(NamedTuple):
    kind: str  # "i", "S" or "D"
    n: int  # 0 for idempotents
    right: int

    @property
    def left(self) -> int:
        if self.kind == "S":
            return self.right ^ (self.n & 1)
        return self.right

    @property
    def gr(self) -> tuple[int, int]:
        return grading(self)

    def __str__(self) -> str:
        if self.kind == "i":
            return "i" + IDEM_CHAR[self.right]
        return f"{self.kind}^{self.n}{IDEM_CHAR[self.right]}"


def unit(e: int) -> Path:
    return Path("i", 0, e)


def S(n: int, right: int) -> Path:
    if n == 0:
        return unit(right)
    return Path("S", n, right)


def D(n: int, right: int) -> Path:
    if n == 0:
        return unit(right)
    return Path("D", n, right)


def S_from(n: int, left: int) -> Path:
    """S^n with prescribed left idempotent."""
    return S(n, left ^ (n & 1))


def grading(p: Path) -> tuple[int, int]:
    if p.kind == "S":
        return (-p.n, -p.n)
    if p.kind == "D":
        return (-2 * p.n, -2 * p.n)
    return (0, 0)


def path_mul(p: Path, q: Path) -> Path | None:
    if p.right != q.left:
        return None
    if p.kind == "i":
        return q
    if q.kind == "i":
        return p
    if p.kind != q.kind:
        return None
    return Path(p.kind, p.n + q.n, q.right)


def path_reverse(p: Path) -> Path:
    return Path(p.kind, p.n, p.left)


def _sort_key(p: Path):
    return ("iSD".index(p.kind), p.n, p.right)


class Elem:
    """Element of the algebra: a set of basis paths (coefficients in F2)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Path] = ()):
        acc: set[Path] = set()
        for t in terms:
            acc ^= {t}
        self.terms = frozenset(acc)
        self._hash = None

    @classmethod
    def _raw(cls, fs: frozenset) -> "Elem":
        e = cls.__new__(cls)
        e.terms = fs
        e._hash = None
        return e

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms, key=_sort_key))

    def __eq__(self, other) -> bool:
        if isinstance(other, Path):
            other = Elem([other])
        return isinstance(other, Elem) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __add__(self, other: "Elem | Path") -> "Elem":
        if isinstance(other, Path):
            return Elem._raw(self.terms ^ {other})
        return Elem._raw(self.terms ^ other.terms)

    __radd__ = __add__

    def __mul__(self, other: "Elem | Path") -> "Elem":
        return mul(self, other)

    def __rmul__(self, other: "Elem | Path") -> "Elem":
        return mul(other, self)

    def __repr__(self) -> str:
        return f"Elem({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)


ZERO = Elem()


def as_elem(x) -> Elem:
    if isinstance(x, Elem):
        return x
    if isinstance(x, Path):
        return Elem._raw(frozenset((x,)))
    if x == 0:
        return ZERO
    raise TypeError(f"cannot coerce {x!r} to an algebra element")


def mul(a, b) -> Elem:
    a, b = as_elem(a), as_elem(b)
    acc: set[Path] = set()
    for p in a.terms:
        for q in b.terms:
            r = path_mul(p, q)
            if r is not None:
                acc ^= {r}
    return Elem._raw(frozenset(acc))


def reverse(a) -> Elem:
    return Elem._raw(frozenset(path_reverse(p) for p in as_elem(a).terms))


def one() -> Elem:
    return Elem([unit(FILLED), unit(HOLLOW)])


def central_H() -> Elem:
    return Elem([D(1, FILLED), D(1, HOLLOW), S(2, FILLED), S(2, HOLLOW)])


def H_at(e: int, k: int = 1) -> Elem:
    """H^k projected to idempotent e."""
    if k == 0:
        return Elem([unit(e)])
    return Elem([D(k, e), S(2 * k, e)])


def project(a, left: int | None = None, right: int | None = None) -> Elem:
    a = as_elem(a)
    return Elem._raw(frozenset(p for p in a.terms
                               if (left is None or p.left == left)
                               and (right is None or p.right == right)))


def is_homogeneous(a) -> bool:
    return len({grading(p) for p in as_elem(a).terms}) <= 1


def basis_paths(max_len: int) -> list[Path]:
    """All basis paths of length at most max_len, in canonical order."""
    out = [unit(FILLED), unit(HOLLOW)]
    for kind in ("S", "D"):
        for n in range(1, max_len + 1):
            out.extend(Path(kind, n, e) for e in (FILLED, HOLLOW))
    return out


def path_from_text(tok: str) -> Path:
    tok = tok.strip()
    if not tok or tok[-1] not in CHAR_IDEM:
        raise ValueError(f"bad path token {tok!r}")
    e = CHAR_IDEM[tok[-1]]
    body = tok[:-1]
    if body == "i":
        return unit(e)
    kind, _, n = body.partition("^")
    if kind not in ("S", "D"):
        raise ValueError(f"bad path token {tok!r}")
    n = int(n) if n else 1
    if n < 1:
        raise ValueError(f"bad path exponent in {tok!r}")
    return Path(kind, n, e)


def from_text(s: str) -> Elem:
    s = s.strip()
    if s == "0":
        return ZERO
    return Elem(path_from_text(t) for t in s.split("+"))


def to_text(a) -> str:
    a = as_elem(a)
    if not a:
        return "0"
    return "+".join(str(p) for p in a)
