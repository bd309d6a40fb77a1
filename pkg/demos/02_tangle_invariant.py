"""
From a tangle diagram to immersed curves
========================================

Build the cube complex of the (2,-3) pretzel tangle, take the cone of H,
cancel units, and read off the curves.
"""

from tanglekit import cube, curves, simplify, tangles

T = tangles.pretzel([2, -3])
print(T.name, "crossings:", T.n, "connectivity:", T.connectivity())

DD = cube.build_DD(T)
DD1 = cube.build_DD1(T, DD)
print("generators before reduction:", len(DD), len(DD1))

X = simplify.reduce(DD1)
print("after cancelling unit arrows:", len(X))

###############################################################################
# classify twists each summand into a normal form at slope 0 or 1/0

cl = curves.classify(X)
for c, word in cl.curves:
    print(c, "reached by", " ".join(word))

###############################################################################
# the geography check bundles the label census and the classification

rep = curves.geography_check(X)
print(rep.as_dict())
