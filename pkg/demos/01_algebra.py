"""
Arithmetic in the two-vertex path algebra
=========================================

Paths are S^n or D^n ending at a filled (.) or hollow (:) vertex.
"""

from tanglekit import algebra as alg
from tanglekit.algebra import FILLED, HOLLOW

# S alternates vertices, so two S steps compose to S^2 at the start vertex
a = alg.S(1, FILLED)  # hollow -> filled
b = alg.S(1, HOLLOW)  # filled -> hollow
print("S.S =", alg.mul(a, b))

# S and D never mix
print("D.S =", alg.mul(alg.D(1, FILLED), b))

###############################################################################
# H = D + S^2 is central and every element is graded by (q, delta2)

H = alg.central_H()
print("H =", H)
print("H.H =", alg.mul(H, H))
for p in (alg.S(1, FILLED), alg.S(2, HOLLOW), alg.D(1, FILLED)):
    print(p, "grading", alg.grading(p))

###############################################################################
# elements round-trip through their text form

e = alg.from_text("D^2.+S^3:")
print(e, alg.from_text(alg.to_text(e)) == e)
