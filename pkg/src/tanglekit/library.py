"""Bundled regression library: tangle diagrams plus hand-built complexes.

The library is a directory of ``*.tangle`` files (diagram format) and
``*.json`` files holding complexes.  ``TANGLEKIT_LIB`` points elsewhere.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path as FsPath

from . import algebra as alg
from . import tangles as tg
from .algebra import Elem, FILLED, HOLLOW
from .typed import TypeD, Gen, regrade
from .ainfty import ExtTypeD, UElem

DEFAULT_DIR = FsPath(__file__).with_name("data") / "library"

RATIONAL_SLOPES = ("0", "inf", "1", "-1", "1/2", "-1/2", "2/3", "-3/2")
PRETZELS = ((2, -3), (2, -5), (3, -2))


@dataclass
class Entry:
    name: str
    kind: str  # "tangle", "complex" or "extended"
    obj: object
    tags: list = field(default_factory=list)

    @property
    def tangle(self) -> tg.Tangle:
        if self.kind != "tangle":
            raise TypeError(f"{self.name} is not a tangle")
        return self.obj


def _slope_name(s: str) -> str:
    return s.replace("/", "_").replace("-", "m")


def builtin_tangles() -> dict:
    out = {}
    for s in RATIONAL_SLOPES:
        out[f"Q_{_slope_name(s)}"] = (tg.rational(tg.parse_slope(s)), ["rational"])
    for k in range(2, 7):
        out[f"east_twist_{k}"] = (tg.rational(k), ["twist-family"])
        out[f"south_twist_{k}"] = (tg.rational(Fraction(1, k)), ["twist-family"])
    for ks in PRETZELS:
        name = "pretzel_" + "_".join(str(k).replace("-", "m") for k in ks)
        out[name] = (tg.pretzel(list(ks)), ["pretzel"])
    return out


def _build(gens, arrows) -> TypeD:
    X = TypeD()
    for g, idem in gens.items():
        X.add_gen(g, Gen(idem, 0, 0))
    for s, lab, d in arrows:
        X.add_arrow(s, lab, d)
    return regrade(X)


def _S(n, src_idem):
    return Elem([alg.S(n, src_idem)])


def _D(idem):
    return Elem([alg.D(1, idem)])


B, C = FILLED, HOLLOW

# rows and columns follow the displayed grid; B filled, C hollow
_CKMC_GENS = {
    "r1c3": B, "r1c4": C, "r2c3": B, "r2c4": C,
    "r3c1": C, "r3c2": C, "r3c3": C, "r3c4": B, "r3c5": B,
    "r4c1": C, "r4c2": C, "r4c3": C, "r4c4": C, "r4c5": C,
    "r5c1": B, "r5c2": B, "r5c3": C, "r5c4": C,
    "r6c3": C, "r6c4": C, "r7c3": C, "r7c4": B, "r8c3": C, "r8c4": B,
}
_CKMC_ARROWS = [
    ("r1c3", "S", 1, "r1c4"), ("r1c4", "D", 1, "r2c4"), ("r2c3", "D", 1, "r1c3"),
    ("r3c1", "D", 1, "r4c1"), ("r3c2", "S", 2, "r3c1"), ("r3c3", "S", 3, "r2c3"),
    ("r3c3", "D", 1, "r3c2"), ("r3c4", "S", 1, "r2c4"), ("r3c4", "D", 1, "r3c5"),
    ("r3c5", "S", 1, "r4c5"), ("r4c1", "S", 1, "r5c1"), ("r4c2", "S", 1, "r5c2"),
    ("r4c3", "D", 1, "r4c2"), ("r4c5", "D", 1, "r4c4"), ("r5c1", "D", 1, "r5c2"),
    ("r5c3", "S", 2, "r4c3"), ("r5c3", "D", 1, "r6c3"), ("r5c4", "S", 2, "r4c4"),
    ("r5c4", "D", 1, "r6c4"), ("r6c3", "S", 2, "r7c3"), ("r6c4", "S", 1, "r7c4"),
    ("r7c3", "D", 1, "r8c3"), ("r8c3", "S", 1, "r8c4"), ("r8c4", "D", 1, "r7c4"),
]
# dotted arrows, all carrying U^2: (src, path kind, path length, dst)
CKMC_U_ARROWS = [
    ("r3c2", "i", 0, "r4c2"), ("r3c3", "S", 1, "r3c4"), ("r3c3", "i", 0, "r4c3"),
    ("r4c3", "i", 0, "r4c4"), ("r5c3", "i", 0, "r5c4"), ("r6c3", "i", 0, "r6c4"),
]


def ckmc_complex() -> TypeD:
    arrows = []
    for s, kind, n, d in _CKMC_ARROWS:
        idem = _CKMC_GENS[s]
        arrows.append((s, _S(n, idem) if kind == "S" else _D(idem), d))
    return _build(_CKMC_GENS, arrows)


def ckmc_extended() -> ExtTypeD:
    X = ckmc_complex()
    E = ExtTypeD.from_typed(X)
    for s, kind, n, d in CKMC_U_ARROWS:
        idem = _CKMC_GENS[s]
        p = alg.unit(idem) if kind == "i" else alg.S(n, idem)
        E.add(s, d, UElem([(2, p)]))
    return E


def zigzag_complex() -> TypeD:
    """Filled -D- filled -S- hollow -D- hollow -S- filled -D- filled."""
    gens = {"z0": B, "z1": B, "z2": C, "z3": C, "z4": B, "z5": B}
    arrows = [("z0", _D(B), "z1"), ("z1", _S(1, B), "z2"), ("z2", _D(C), "z3"),
              ("z3", _S(1, C), "z4"), ("z4", _D(B), "z5")]
    return _build(gens, arrows)


def d_squared_complex() -> TypeD:
    """Two generators joined by a lone D^2 arrow: not a linear curve."""
    return _build({"a": B, "b": B}, [("a", Elem([alg.D(2, B)]), "b")])


def builtin_complexes() -> dict:
    return {
        "ckmc": (ckmc_extended(), ["fixture", "extended"]),
        "violation_zigzag": (zigzag_complex(), ["violation", "wrapping"]),
        "violation_d2": (d_squared_complex(), ["violation", "labels"]),
    }


def write_library(path) -> None:
    """Write the builtin library as files (used to regenerate the bundled copy)."""
    path = FsPath(path)
    path.mkdir(parents=True, exist_ok=True)
    for name, (T, tags) in builtin_tangles().items():
        text = f"# tags {' '.join(tags)}\n" + T.to_text()
        (path / f"{name}.tangle").write_text(text)
    for name, (X, tags) in builtin_complexes().items():
        kind = "extended" if isinstance(X, ExtTypeD) else "complex"
        obj = {"name": name, "kind": kind, "tags": tags, "complex": X.to_json_obj()}
        (path / f"{name}.json").write_text(json.dumps(obj, indent=1, ensure_ascii=False) + "\n")


def library_dir():
    env = os.environ.get("TANGLEKIT_LIB")
    return FsPath(env) if env else DEFAULT_DIR


def load_library(path=None) -> dict:
    """Name -> Entry, sorted by name."""
    path = FsPath(path) if path is not None else library_dir()
    if not path.is_dir():
        raise FileNotFoundError(f"library directory {path} not found")
    out = {}
    for f in sorted(path.iterdir()):
        if f.suffix == ".tangle":
            text = f.read_text()
            tags = []
            for line in text.splitlines():
                if line.startswith("# tags"):
                    tags = line.split()[2:]
            T = tg.parse(text)
            T.name = f.stem
            out[f.stem] = Entry(f.stem, "tangle", T, tags)
        elif f.suffix == ".json":
            obj = json.loads(f.read_text())
            kind = obj.get("kind", "complex")
            X = (ExtTypeD.from_json_obj(obj["complex"]) if kind == "extended"
                 else TypeD.from_json_obj(obj["complex"]))
            out[f.stem] = Entry(f.stem, kind, X, obj.get("tags", []))
    return out


def tangles(path=None) -> dict:
    return {k: e for k, e in load_library(path).items() if e.kind == "tangle"}
