import json

import pytest

from period2 import serialization as ser
from period2.augmented_algebras import mu_eta
from period2.cli import main
from period2.coeff_rings import RingTower
from period2.filtered_modules import FilteredModule, s_module
from period2.group_schemes import solve_coaddition


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def mult_file(tmp_path):
    ring = RingTower(1, 1, 6)
    return _write(tmp_path / "mult.json", ser.module_to_json(s_module(ring.S, 1, "mult", ring)))


def test_build_and_verify(tmp_path, mult_file, capsys):
    out = tmp_path / "g.json"
    assert main(["build", mult_file, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["kind"] == "group_scheme"
    assert doc["algebra"]["exponents"] == [0]
    assert main(["verify-hopf", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["pass"]


def test_invalid_module_exit_2(tmp_path, capsys):
    bad = _write(tmp_path / "bad.json", {"kind": "filtered_module", "e": 1, "U": [[[0]]]})
    assert main(["build", bad]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "ValidationError"
    assert err["details"]["failures"] == ["det_nonzero"]


def test_needs_extension_exit_3(tmp_path, capsys):
    ring = RingTower(1, 1, 6)
    S = ring.S
    M = FilteredModule(S, 1, [[S.one(), S.one()], [S.zero(), S.one()]], ring)
    path = _write(tmp_path / "m.json", ser.module_to_json(M))
    assert main(["roundtrip", path]) == 3
    assert json.loads(capsys.readouterr().err)["error"] == "NeedsFieldExtension"


def test_hom_and_roundtrip(tmp_path, mult_file, capsys):
    ring = RingTower(1, 1, 6)
    et = _write(tmp_path / "et.json", ser.module_to_json(s_module(ring.S, 1, "et", ring)))
    assert main(["hom", mult_file, et, "--schemes"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"hom_count": 2, "hom_star_count": 1, "scheme_morphism_count": 1,
                   "agree": True}
    assert main(["roundtrip", et]) == 0


def test_classify_and_lt(capsys):
    assert main(["--e", "1", "classify-order2"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 2
    assert main(["classify-order2", "--e", "2"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 3
    assert main(["lt-coeffs", "--degree", "4", "--prec", "6"]) == 0
    law = json.loads(capsys.readouterr().out)["law"]
    assert law["(1,1)"] == 63


def test_ext_command(tmp_path, capsys):
    ring = RingTower(1, 1, 6)
    G = solve_coaddition(mu_eta(ring, 0))
    base = _write(tmp_path / "h.json", ser.group_scheme_to_json(G))
    f = _write(tmp_path / "f.json", ser.alg_element_to_json(G.algebra.var(0)))
    assert main(["ext", "--base", base, "--f", f, "--eta-r", "0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rank"] == 4 and doc["failures"] == []


def test_descend_command(tmp_path, capsys):
    ring = RingTower(1, 1, 6)
    good = _write(tmp_path / "good.json",
                  {"e": 2, "ring": ser.ring_to_json(ring), "U": [[[0, 0, 1]]]})
    assert main(["descend", good]) == 0
    assert json.loads(capsys.readouterr().out)["descent_check"]
    bad = _write(tmp_path / "bad.json", {"e": 2, "ring": ser.ring_to_json(ring), "U": [[[0, 1]]]})
    assert main(["descend", bad]) == 5
    assert json.loads(capsys.readouterr().err)["error"] == "NoDescent"


def test_config_file(tmp_path, monkeypatch, capsys):
    cfg = _write(tmp_path / "cfg.json", {"e": 2, "N": 8})
    monkeypatch.setenv("PERIOD2_CONFIG", cfg)
    assert main(["classify-order2"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 3
    bad = _write(tmp_path / "bad.json", {"colour": 1})
    monkeypatch.setenv("PERIOD2_CONFIG", bad)
    assert main(["classify-order2"]) == 2


def test_fleet_files_roundtrip(tmp_path, capsys):
    assert main(["fleet", str(tmp_path / "fl")]) == 0
    files = sorted((tmp_path / "fl").glob("m1_e1_*.json"))
    assert files
    for p in files:
        assert main(["roundtrip", str(p)]) == 0
