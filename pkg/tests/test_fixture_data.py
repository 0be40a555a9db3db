"""The checked-in fixture corpus must match what the constructors build, so
runs against the data files and against fresh constructions agree."""

import json
import pathlib

import pytest

from strathom import fixtures
from strathom.complexes import from_json_dict, to_json_dict
from strathom.perversity import Perversity

DATA = pathlib.Path(__file__).parent / "data"


@pytest.mark.parametrize("name", fixtures.all_fixture_names())
def test_corpus_matches_constructors(name):
    fx = fixtures.load_fixture(name)
    pair = fx["pair"]
    stored = json.loads((DATA / f"{name}.json").read_text())
    assert stored["fine"] == to_json_dict(pair.complex, stratification=pair.fine)
    assert stored["coarse"] == to_json_dict(pair.complex, stratification=pair.coarse)
    for key, p in fx.get("perversities", {}).items():
        assert stored["perversities"][key] == p.to_json_dict()


@pytest.mark.parametrize("name", fixtures.all_fixture_names())
def test_corpus_files_reingest(name):
    for side in ("fine", "coarse"):
        data = json.loads((DATA / f"{name}.{side}.json").read_text())
        cx, lev, strat = from_json_dict(data)
        assert strat is not None and strat.validate().ok
        assert to_json_dict(cx, stratification=strat) == data


def test_perversities_reingest():
    fx = fixtures.load_fixture("ejemplo-K")
    stored = json.loads((DATA / "ejemplo-K.json").read_text())
    for key, raw in stored["perversities"].items():
        p = Perversity.from_json_dict(fx["pair"].fine, raw)
        assert p.to_json_dict() == raw
