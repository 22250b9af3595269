import json
import math

import pytest

import _hyperfol as hf


def expanded(spectrum):
    out = []
    for entry in spectrum:
        out.extend([entry["value"]] * entry["multiplicity"])
    return sorted(out)


def test_import():
    assert hf.__doc__


def test_catalog_names():
    names = hf.catalog_names()
    assert names == ["SL2R", "SL3R", "SL4R", "SL5R", "SL2C", "SU12"]


def test_describe():
    d = hf.describe("SL4R")
    assert d["root_type"] == "A"
    assert d["rank"] == 3
    assert d["multiplicities"] == {"short": 1}
    assert d["has_realization"]
    assert d["dim_n"] == 6
    assert d["simple_norm2"] == pytest.approx([0.25, 0.25, 0.25])
    with pytest.raises(ValueError):
        hf.describe("NOPE")


def test_orthogonal_subsets():
    subs = hf.orthogonal_subsets("SL4R")
    assert subs == [[], [0], [1], [2], [0, 2]]


def test_families():
    fams = hf.families("SL4R")
    assert len(fams) == 5
    assert fams[0]["phi"] == []
    assert fams[0]["dim_v_max"] == 2
    assert fams[0]["codim_max"] == 3
    assert fams[-1]["phi"] == [0, 2]
    assert fams[-1]["codim_min"] == 2


def test_verify_hyperpolar():
    v = hf.verify("SL4R", [0, 2])
    assert v["classification"] == "hyperpolar"
    assert v["is_subalgebra"]
    assert v["normal_space_abelian"]
    assert v["max_residual"] < 1e-10


def test_congruency():
    r = hf.congruency("SL4R", [0], {0: 1.0})
    assert r["ok"]
    assert r["residual"] < 1e-9


def test_spectrum_flat_horocycle():
    rep = hf.spectrum_flat("SL4R", [], [0, 1, 0], unit=False)
    assert rep["normal_kind"] == "a-type"
    assert rep["dim_leaf"] == 6
    assert expanded(rep["spectrum"]) == pytest.approx([0, 0, 1, 1, 1, 1])
    assert rep["trace"] == pytest.approx(4.0)
    assert rep["norm"] == pytest.approx(math.sqrt(8.0))
    assert all("exact_value" in e for e in rep["spectrum"])


def test_spectrum_flat_rank_one_unit():
    rep = hf.spectrum_flat("SL2R", [], [1])
    # unit-normalized horosphere curvature is the root length
    norm2 = hf.describe("SL2R")["simple_norm2"][0]
    assert expanded(rep["spectrum"]) == pytest.approx([math.sqrt(norm2)])


def test_spectrum_removed_trace_identity():
    d = hf.describe("SU12")
    n2 = d["simple_norm2"][0]
    m1 = d["multiplicities"]["short"]
    m2 = d["multiplicities"]["doubled"]
    for a in (-1.5, 0.0, 2.0):
        rep = hf.spectrum_removed("SU12", [0], 0, a={0: a}, unit=False)
        assert rep["trace"] == pytest.approx(a * n2 * (m1 + 2 * m2))
    with pytest.raises(ValueError):
        hf.spectrum_removed("SL4R", [0], 1)


def test_mean_curvature():
    h = hf.mean_curvature("SU12", [0])
    assert h["minimal"]
    assert h["flat_exact"] == ["0"]

    h = hf.mean_curvature("SL4R", [])
    assert not h["minimal"]
    assert h["flat_exact"] == ["1/4", "1/4", "1/4"]


def test_tube_matches_removed_spectrum_at_zero():
    tube = [
        v
        for t in hf.tube_curvatures("SU12", 0.0)
        for v in [t["value"]] * t["multiplicity"]
    ]
    rep = hf.spectrum_removed("SU12", [0], 0)
    assert sorted(tube) == pytest.approx(expanded(rep["spectrum"]))


def test_compare_tube_forms():
    cmp = hf.compare_tube_forms("SU12", 1.0)
    assert not cmp["multiplicities_agree"]
    assert cmp["max_value_gap"] > 1e-3
    assert cmp["note"]
    with pytest.raises(ValueError):
        hf.compare_tube_forms("SL4R", 1.0)


def test_identity_residuals():
    for name in ("SL2C", "SU12"):
        rep = hf.identity_residuals(name)
        assert rep["samples"] == 100
        assert rep["polarization_max"] < 1e-10
        assert rep["projection_max"] < 1e-10


def test_catalog_env_override(tmp_path, monkeypatch):
    path = tmp_path / "catalog.json"
    path.write_text(
        json.dumps(
            [
                {
                    "name": "G2SPLIT",
                    "root_type": "G2",
                    "rank": 2,
                    "multiplicities": {"short": 1, "long": 1},
                }
            ]
        )
    )
    monkeypatch.setenv("HYPERFOL_CATALOG", str(path))
    assert hf.catalog_names() == ["G2SPLIT"]
    assert hf.describe("G2SPLIT")["positive_roots"] == 6
    with pytest.raises(ValueError):
        hf.verify("SL4R", [])
