"""Report envelope: tool version and a hash of the grading and twist conventions."""
from __future__ import annotations

import hashlib
import json

from . import __version__
from . import algebra as alg
from . import ainfty
from . import curves
from . import pairing


def conventions() -> dict:
    """Everything a reader needs to interpret signs, gradings and slopes."""
    return {
        "arrow_degree": [0, -2],
        "grading_coords": "q, delta2 = q - 2h",
        "label_gradings": {str(p): list(alg.grading(p)) for p in
                           (alg.S(1, 0), alg.S(2, 0), alg.D(1, 0), alg.D(1, 1))},
        "u_grading": list(ainfty.U_GRADING),
        "tau_matrix": {k: [list(r) for r in v] for k, v in curves.TAU_MATRIX.items()},
        "diagram_twist": {k: list(v) for k, v in curves.DIAGRAM_TWIST.items()},
        "vspace": pairing.VSPACE.to_json_obj(),
        "cone_shift": [-1, 1],
        "basepoint": "NW",
    }


def calibration_hash() -> str:
    blob = json.dumps(conventions(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def envelope(command: str, body: dict, windows: dict | None = None) -> dict:
    return {
        "tool": "tanglekit",
        "version": __version__,
        "calibration": calibration_hash(),
        "command": command,
        "gradings": "relative",
        "windows": windows or {},
        **body,
    }
