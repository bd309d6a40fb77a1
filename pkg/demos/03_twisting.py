"""
Twisting tangles and twisting curves
====================================

Adding a crossing on the east or south side of a tangle acts on its curves
by the matching slope transformation.
"""

from fractions import Fraction

from tanglekit import cube, curves, simplify, tangles


def curve_names(X):
    return sorted(str(c) for c, _ in curves.classify(X).curves)


T = tangles.rational(Fraction(1, 2))
X = simplify.reduce(cube.build_DD1(T))
print("start:", curve_names(X))

for letter in curves.LETTERS:
    algebraic = curves.twist(X, [letter])
    diagram = tangles.twist(T, *curves.DIAGRAM_TWIST[letter])
    print(letter, curve_names(algebraic), curve_names(simplify.reduce(cube.build_DD1(diagram))))

###############################################################################
# a word for any slope: apply it to the slope-0 curve

word = curves.word_for_slope(Fraction(-3, 5))
print(word, curves.word_action(word, (0, 1)))
r = curves.standard_complex(curves.Curve.parse("r_1(0)"))
print(curve_names(curves.twist(r, word)))
