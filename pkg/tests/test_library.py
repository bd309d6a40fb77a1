import pytest

from tanglekit import library as lib, typed as ty
from tanglekit.ainfty import ExtTypeD


def test_bundled_matches_builtin(tmp_path):
    lib.write_library(tmp_path)
    fresh = sorted(p.name for p in tmp_path.iterdir())
    bundled = sorted(p.name for p in lib.DEFAULT_DIR.iterdir())
    assert fresh == bundled
    for name in fresh:
        assert (tmp_path / name).read_text() == (lib.DEFAULT_DIR / name).read_text()


def test_entry_kinds():
    entries = lib.load_library()
    kinds = {k: e.kind for k, e in entries.items()}
    assert kinds["ckmc"] == "extended"
    assert kinds["violation_zigzag"] == kinds["violation_d2"] == "complex"
    assert sum(k == "tangle" for k in kinds.values()) == len(lib.builtin_tangles())
    assert isinstance(entries["ckmc"].obj, ExtTypeD)


@pytest.mark.parametrize("name, tag", [
    ("Q_1_2", "rational"),
    ("east_twist_3", "twist-family"),
    ("pretzel_2_m3", "pretzel"),
    ("violation_zigzag", "wrapping"),
])
def test_tags(name, tag):
    assert tag in lib.load_library()[name].tags


def test_tangle_names_are_file_stems():
    for name, e in lib.tangles().items():
        assert e.tangle.name == name


def test_tangle_property_rejects_complex():
    with pytest.raises(TypeError):
        lib.load_library()["violation_d2"].tangle


def test_env_override(tmp_path, monkeypatch):
    (tmp_path / "only.tangle").write_text("rational 1/3\n")
    monkeypatch.setenv("TANGLEKIT_LIB", str(tmp_path))
    assert lib.library_dir() == tmp_path
    entries = lib.load_library()
    assert list(entries) == ["only"] and entries["only"].tangle.n == 3


def test_missing_dir(tmp_path):
    with pytest.raises(FileNotFoundError):
        lib.load_library(tmp_path / "nope")


def test_stored_complexes_valid():
    for name, e in lib.load_library().items():
        if e.kind == "complex":
            assert ty.check_typed(e.obj).ok, name
