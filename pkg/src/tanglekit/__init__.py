"""Khovanov invariants of four-ended tangles as curves on the four-punctured sphere."""

__version__ = "0.1.0"

from .algebra import Path, Elem, FILLED, HOLLOW
from .typed import TypeD, Gen, Mor, mor_homology, check_typed
from .simplify import reduce, split_components
from .tangles import Tangle, parse, rational, pretzel, glue
from .cube import build_DD, build_DD1
from .curves import Curve, classify, twist, standard_complex, curve_complex, geography_check
from .ainfty import mu, check_ainfty, extend, wrap_obstruction, ExtTypeD
from .pairing import BigradedDims, hf, reduced_kh_oracle

__all__ = [
    "Path", "Elem", "FILLED", "HOLLOW", "TypeD", "Gen", "Mor", "mor_homology", "check_typed",
    "reduce", "split_components", "Tangle", "parse", "rational", "pretzel", "glue",
    "build_DD", "build_DD1", "Curve", "classify", "twist", "standard_complex", "curve_complex",
    "geography_check", "mu", "check_ainfty", "extend", "wrap_obstruction", "ExtTypeD",
    "BigradedDims", "hf", "reduced_kh_oracle",
]
