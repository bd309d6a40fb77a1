"""
Gluing two tangles
==================

Pairing the curves of two tangles recovers the reduced Khovanov homology of
the closed-up link, which is checked against a direct cube computation.
"""

from tanglekit import pairing, tangles
from tanglekit.curves import Curve, curve_complex

a, b = tangles.rational(0), tangles.pretzel([2, -5])
rep = pairing.glue(a, b)
print("link:", rep.link.name, "with", rep.link.n, "crossings")
print("from the curves:")
print(rep.khr_direct.normalized().to_text())
print("from the oracle:")
print(rep.oracle.normalized().to_text())
print("with the extra V factor, total", rep.khr_times_V.total)
print("consistent:", rep.consistent)

###############################################################################
# the pairing itself is Mor-homology between curve complexes

X, Y = curve_complex(Curve.parse("r_1(0)")), curve_complex(Curve.parse("r_1(1/2)"))
print("HF(r_1(0), r_1(1/2)) total", pairing.hf(X, Y).total)
