"""
Morphism spaces, central actions and connectivity
=================================================

The central elements act on every complex; which of those actions are
null-homotopic tells how the tangle's ends are connected.
"""

from tanglekit import cube, curves, simplify, tangles, typed

for name, T in [("Q0", tangles.rational(0)), ("Q1", tangles.rational(1)),
                ("P(2,-3)", tangles.pretzel([2, -3]))]:
    X = simplify.reduce(cube.build_DD1(T))
    pat = curves.connectivity_tests(X)
    print(f"{name:8} diagram {T.connectivity():2}  algebra {pat.case:2}  null:",
          pat.null)

###############################################################################
# bigraded homology of Mor(X, X) for the figure-eight curve

r = curves.standard_complex(curves.Curve.parse("r_1(0)"))
print(typed.mor_homology(r, r).dims)

###############################################################################
# an explicit homotopy equivalence after twisting back and forth

s = curves.standard_complex(curves.Curve.parse("s_2(0)"))
back = curves.twist(curves.twist(s, ["t1"]), ["T1"])
f, g = typed.find_equivalence(simplify.reduce(s), back)
print("equivalence found; f has", len(f.entries), "entries, g has", len(g.entries))
