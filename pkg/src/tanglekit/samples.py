"""Seeded random valid complexes for property tests and the invariance harness."""
from __future__ import annotations

import random

from . import algebra as alg
from .curves import Curve, curve_complex
from .simplify import cleanup, cleanup_candidates
from .typed import Gen, TypeD, direct_sum

SLOPES = [(0, 1), (1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1)]


def random_curve(rng: random.Random, max_n: int = 2) -> Curve:
    p, q = rng.choice(SLOPES)
    return Curve(rng.choice("rs"), rng.randint(1, max_n), p, q)


def random_complex(seed, max_parts: int = 2, max_n: int = 2, cleanups: int = 3) -> TypeD:
    """Direct sum of curve complexes plus one contractible pair, mixed by clean-ups.

    The result is homotopy equivalent to the sum of the curve complexes but
    is generally neither reduced nor split.
    """
    rng = random.Random(seed)
    parts = [curve_complex(random_curve(rng, max_n)) for _ in range(rng.randint(1, max_parts))]
    X = direct_sum(*parts, prefixes=[f"p{i}_" for i in range(len(parts))])
    anchor = X.gens[rng.choice(sorted(X.gens))]
    e = anchor.idem
    X.add_gen("u", Gen(e, anchor.q, anchor.d2))
    X.add_gen("v", Gen(e, anchor.q, anchor.d2 - 2))
    X.add_arrow("u", alg.unit(e), "v")
    for _ in range(cleanups):
        cands = list(cleanup_candidates(X))
        if not cands:
            break
        X = cleanup(X, rng.choice(cands))
    return X
