"""
Higher products and the U-deformed extension
============================================

Check the A-infinity relations, then extend a complex over the U-deformed
algebra or find the obstruction that shows it wraps the special puncture.
"""

from tanglekit import ainfty, cube, simplify, tangles
from tanglekit.algebra import FILLED, HOLLOW, D, S
from tanglekit.library import ckmc_complex, zigzag_complex

rep = ainfty.check_ainfty(8, 4)
print("A-infinity relations:", rep.ok, rep.checked, "tuples", rep.mode)

args = [ainfty.UElem.lift(p) for p in (S(1, FILLED), D(1, FILLED), S(1, HOLLOW), D(1, HOLLOW))]
print("mu4(S,D,S,D) =", ainfty.to_text(ainfty.mu_U(args)))

###############################################################################
# a tangle invariant always extends

X = simplify.reduce(cube.build_DD1(tangles.pretzel([2, -3])))
res = ainfty.extend(X)
print("pretzel:", res.status, len(res.ext.u_arrows()), "U arrows")

res = ainfty.extend(ckmc_complex())
for arrow in res.ext.u_arrows():
    print("  ", *arrow)

###############################################################################
# an S,D,S,D zigzag cannot extend

res = ainfty.extend(zigzag_complex())
o = res.obstruction
print("zigzag:", res.status, "at U^%d" % o.order, "between", o.pair, "certified", o.certified)
print("wrapping chain:", ainfty.wrap_obstruction(zigzag_complex()))
