import json
import os
from pathlib import Path

import pytest

import hurwitz_strata as hs

DATA = Path(os.environ.get("HURWITZ_DATA_DIR", Path(__file__).resolve().parents[2] / "data" / "portraits"))


def test_degree3_counts():
    s = hs.Strata(DATA / "degree3.json")
    assert len(s) == 7
    assert s.num_components == 1
    assert sorted(s.codims) == [0] + [1] * 6


def test_degree4_components_and_pairs():
    s = hs.Strata(str(DATA / "degree4.json"), jobs=2)
    assert len(s) == 38
    assert s.num_components == 2
    assert len(s.cross_component_pairs()) > 0


def test_report_matches_cli():
    path = DATA / "degree3.json"
    code, out, err = hs.run("strata", path)
    assert code == 0 and err == ""
    cli = json.loads(out)
    # The CLI adds cover witnesses on top of the library report.
    assert cli.pop("same_cover_different_component") == []
    assert cli == hs.Strata(path).report()


def test_cover_and_tropical():
    s = hs.Strata(DATA / "degree3.json")
    boundary = [i for i, c in zip(s.ids, s.codims) if c == 1]
    cover = s.cover(boundary[0])
    lcm = cover["edges"][0]["L"]
    t = s.trop_target(boundary[0], ["1/2"])
    assert t is not None
    g = s.trop_source(boundary[0], [lcm])
    assert g is not None
    with pytest.raises(KeyError):
        s.cover("not-an-id")


def test_validate_and_errors():
    bad = json.loads((DATA / "degree3.json").read_text())
    bad["branch_profiles"]["b1"] = [3]
    assert any(kind == "riemann-hurwitz" for kind, _ in hs.validate(bad))
    assert hs.validate(DATA / "degree3.json") == []
    with pytest.raises(ValueError):
        hs.Strata(bad)
    code, _, _ = hs.run("validate", "/nonexistent.json")
    assert code == 2
