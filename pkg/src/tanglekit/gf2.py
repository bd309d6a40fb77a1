"""Linear algebra over F2 with vectors stored as Python int bitmasks."""
from __future__ import annotations


class Eliminator:
    """Incremental row echelon basis that remembers how each row was formed.

    Each stored row is a pair (vector, combination) where combination is a
    bitmask over the indices of the vectors fed in so far.
    """

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}  # pivot bit -> (vec, combo)
        self.count = 0

    def _reduce(self, vec: int, combo: int) -> tuple[int, int]:
        while vec:
            top = vec.bit_length() - 1
            row = self.rows.get(top)
            if row is None:
                break
            vec ^= row[0]
            combo ^= row[1]
        return vec, combo

    def add(self, vec: int) -> int:
        """Insert the next vector; return its residual (0 when dependent)."""
        idx = self.count
        self.count += 1
        vec, combo = self._reduce(vec, 1 << idx)
        if vec:
            self.rows[vec.bit_length() - 1] = (vec, combo)
        return vec

    def express(self, target: int) -> int | None:
        """Combination of inserted vectors summing to target, or None."""
        vec, combo = self._reduce(target, 0)
        return None if vec else combo

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors) -> int:
    e = Eliminator()
    for v in vectors:
        e.add(v)
    return e.rank


def solve(columns, target: int) -> int | None:
    """Find a subset of columns (as a bitmask of indices) XORing to target."""
    e = Eliminator()
    for c in columns:
        e.add(c)
    return e.express(target)


def kernel(columns) -> list[int]:
    """Basis of dependencies among the columns, as index bitmasks."""
    rows: dict[int, tuple[int, int]] = {}
    out = []
    for i, c in enumerate(columns):
        vec, combo = c, 1 << i
        while vec:
            top = vec.bit_length() - 1
            r = rows.get(top)
            if r is None:
                break
            vec ^= r[0]
            combo ^= r[1]
        if vec:
            rows[vec.bit_length() - 1] = (vec, combo)
        else:
            out.append(combo)
    return out


def bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1
