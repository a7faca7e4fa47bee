import json
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import rng_for, seeds
from opengames import gen, io
from opengames.errors import ValidationError
from opengames.examples import biased_coin_prior, education, prisoners_dilemma

DATA = __import__("pathlib").Path(__file__).parent / "data"


def write(tmp_path, obj, name="f.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_education_file_loads():
    g = io.parse_game(DATA / "education.json")
    assert g.prior[("*", "t")] == F(1, 10) and g.prior[("*", "nt")] == F(9, 10)
    assert io.games_equal(g, education())


def test_prisoners_dilemma_is_single_type():
    g = io.parse_game(DATA / "pd.json")
    assert all(len(t) == 1 for t in g.types)
    assert io.games_equal(g, prisoners_dilemma())


def test_prior_sum_error_names_prior(tmp_path):
    obj = io.game_to_json(education())
    obj["prior"] = [{"types": {"employer": "*", "applicant": "t"}, "p": "1/8"},
                    {"types": {"employer": "*", "applicant": "nt"}, "p": "15/16"}]
    with pytest.raises(ValidationError) as err:
        io.parse_game(write(tmp_path, obj))
    assert err.value.path == "prior"
    assert "17/16" in str(err.value)


def test_missing_prior_profiles_have_zero_mass(tmp_path):
    obj = io.game_to_json(education())
    obj["prior"] = [{"types": {"employer": "*", "applicant": "nt"}, "p": "1"}]
    g = io.parse_game(write(tmp_path, obj))
    assert g.prior[("*", "t")] == 0


def test_missing_utility_cell(tmp_path):
    obj = io.game_to_json(prisoners_dilemma())
    del obj["utilities"][2]
    with pytest.raises(ValidationError) as err:
        io.parse_game(write(tmp_path, obj))
    assert err.value.path == "utilities"


@pytest.mark.parametrize("mutate, path", [
    (lambda o: o["utilities"][0]["actions"].update(p1="X"), "utilities[0].actions.p1"),
    (lambda o: o["prior"][0]["types"].update(p2="?"), "prior[0].types.p2"),
    (lambda o: o["prior"][0].update(p="one"), "prior[0].p"),
    (lambda o: o["prior"][0].update(p="-1"), "prior[0].p"),
    (lambda o: o["types"].update(p3=["*"]), "types.p3"),
    (lambda o: o["utilities"][1]["u"].pop("p2"), "utilities[1].u.p2"),
    (lambda o: o.pop("players"), "players"),
])
def test_validation_paths(tmp_path, mutate, path):
    obj = io.game_to_json(prisoners_dilemma())
    mutate(obj)
    with pytest.raises(ValidationError) as err:
        io.parse_game(write(tmp_path, obj))
    assert err.value.path == path


def test_malformed_and_missing_files(tmp_path):
    with pytest.raises(ValidationError, match="malformed JSON"):
        io.parse_game(write(tmp_path, "{\"players\": ["))
    with pytest.raises(ValidationError, match="cannot read"):
        io.parse_game(tmp_path / "absent.json")


def test_profile_parsing():
    g = io.parse_game(DATA / "mp.json")
    s = io.parse_profile(DATA / "mp_uniform.json", g)
    assert all(k("*")["H"] == F(1, 2) for k in s)
    assert io.profile_to_json(g, s) == json.loads((DATA / "mp_uniform.json").read_text())


@pytest.mark.parametrize("profile, path", [
    ({"p1": {"*": {"H": "1/2"}}, "p2": {"*": {"T": "1"}}}, "p1.*"),
    ({"p1": {"*": {"Z": "1"}}, "p2": {"*": {"T": "1"}}}, "p1.*.Z"),
    ({"p1": {"*": {"H": "1"}}}, "p2"),
    ({"p1": {"*": {"H": "1"}, "x": {}}, "p2": {"*": {"T": "1"}}}, "p1.x"),
])
def test_profile_validation(profile, path):
    g = io.parse_game(DATA / "mp.json")
    with pytest.raises(ValidationError) as err:
        io.profile_from_json(profile, g)
    assert err.value.path == path


def test_prior_file():
    p = io.parse_prior(DATA / "biased_coins_prior.json")
    assert p == biased_coin_prior()
    assert p[("H", "H")] == F(5, 16) and p[("H", "T")] == F(3, 16)
    assert io.prior_from_json(io.prior_to_json(p)) == p


def test_prior_file_errors():
    with pytest.raises(ValidationError) as err:
        io.prior_from_json({"joint": {"H": {"H": "1/2"}}})
    assert err.value.path == "joint"
    with pytest.raises(ValidationError) as err:
        io.prior_from_json({"states": ["H"], "joint": {"T": {"H": "1"}}})
    assert err.value.path == "joint.T"


@given(seeds)
def test_game_roundtrip(seed):
    g = gen.bayesian_game(rng_for(seed))
    back = io.game_from_json(json.loads(io.serialize_game(g)))
    assert io.games_equal(back, g)
    assert io.serialize_game(back) == io.serialize_game(g)


@given(seeds)
def test_profile_roundtrip(seed):
    rng = rng_for(seed)
    g = gen.bayesian_game(rng)
    s = gen.mixed_profile(rng, g)
    assert io.profile_from_json(json.loads(io.dumps(io.profile_to_json(g, s))), g) == s
