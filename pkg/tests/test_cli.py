import json
from pathlib import Path

import pytest

from opengames import cli, examples
from opengames.errors import InvariantViolation

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_solve_prisoners_dilemma(capsys):
    out = run_json(capsys, "solve", DATA / "pd.json", "--pure")
    assert out["pure_equilibria"] == [{"p1": {"*": {"D": "1"}}, "p2": {"*": {"D": "1"}}}]
    assert out == json.loads((GOLDEN / "prisoners_dilemma.json").read_text())


def test_solve_education(capsys):
    out = run_json(capsys, "solve", DATA / "education.json", "--pure")
    assert out["pure_equilibria"] == [
        {"employer": {"*": {"l": "1"}}, "applicant": {"t": {"nu": "1"}, "nt": {"nu": "1"}}}
    ]


def test_check_matching_pennies_uniform(capsys):
    out = run_json(capsys, "check", DATA / "mp.json", "--profile", DATA / "mp_uniform.json")
    assert out == {"classical": True, "compositional": True, "agree": True}


@pytest.mark.parametrize("extra, expected", [
    (["--epistemic", "ante"], "0"),
    (["--epistemic", "interim", "--types", "*"], "0"),
    (["--epistemic", "post", "--types", "*", "*"], "0"),
    (["--epistemic", "post", "--types", "p1=*", "p2=*"], "0"),
])
def test_utility(capsys, extra, expected):
    out = run_json(capsys, "utility", DATA / "mp.json", "--profile", DATA / "mp_uniform.json",
                   "--player", "1", *extra)
    assert out == expected


def test_utility_by_name_on_pure_profile(capsys, tmp_path):
    prof = tmp_path / "cd.json"
    prof.write_text(json.dumps({"p1": {"*": {"C": "1"}}, "p2": {"*": {"D": "1"}}}))
    for player, expected in (("p1", "0"), ("p2", "3")):
        assert run_json(capsys, "utility", DATA / "pd.json", "--profile", prof,
                        "--player", player, "--epistemic", "ante") == expected


def test_update(capsys):
    out = run_json(capsys, "update", "--prior", DATA / "biased_coins_prior.json", "--observe", "H")
    assert out == {"H": "5/8", "T": "3/8"}


def test_update_unknown_observation(capsys):
    code, _, err = run(capsys, "update", "--prior", DATA / "biased_coins_prior.json", "--observe", "X")
    assert code == 1 and "--observe" in err


def test_examples_biased_coins(capsys):
    out = run_json(capsys, "examples", "biased-coins")
    assert out["posterior"] == {"H": "5/8", "T": "3/8"}
    assert out["optimal_strategies"] == ["copy"]


@pytest.mark.parametrize("name", sorted(examples.SCENARIOS))
def test_every_example_runs(capsys, name):
    assert run_json(capsys, "examples", name)["scenario"] == name


def test_example_goldens(capsys):
    mp = run_json(capsys, "examples", "matching-pennies")
    golden = json.loads((GOLDEN / "matching_pennies.json").read_text())
    assert {k: mp[k] for k in golden} == golden
    threat = run_json(capsys, "examples", "sequential-threat")
    golden = json.loads((GOLDEN / "sequential_threat.json").read_text())
    assert sorted(map(json.dumps, threat["pure_equilibria"])) == sorted(map(json.dumps, golden["pure_equilibria"]))
    assert threat["non_credible_threat"] == golden["non_credible_threat"]
    assert threat["non_credible_threat_is_equilibrium"] is True


def test_laws_deterministic(capsys):
    first = run(capsys, "laws", "--cases", "3", "--seed", "5")
    second = run(capsys, "laws", "--cases", "3", "--seed", "5")
    assert first[0] == 0 and first[1] == second[1]
    report = json.loads(first[1])
    assert {"monad", "lens_category", "monoidal", "localization"} <= set(report["families"])
    assert all(f["failed"] == 0 for f in report["families"].values())


@pytest.mark.parametrize("argv", [
    ["solve", "missing.json", "--pure"],
    ["solve"],
    ["frobnicate"],
    ["laws", "--cases", "0"],
    ["examples", "nope"],
])
def test_validation_exit_code(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_malformed_game_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "solve", bad, "--pure")
    assert code == 1 and "malformed JSON" in err


def test_unknown_player_exit_code(capsys):
    code, _, err = run(capsys, "utility", DATA / "mp.json", "--profile", DATA / "mp_uniform.json",
                       "--player", "7", "--epistemic", "ante")
    assert code == 1 and "--player" in err


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("OPENGAMES_BUDGET", "2")
    assert run(capsys, "solve", DATA / "pd.json", "--pure")[0] == 2
    monkeypatch.setenv("OPENGAMES_BUDGET", "lots")
    assert run(capsys, "solve", DATA / "pd.json", "--pure")[0] == 1


def test_disagreement_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "check_profile_both", lambda g, s: {"classical": True, "compositional": False, "agree": False})
    assert run(capsys, "check", DATA / "mp.json", "--profile", DATA / "mp_uniform.json")[0] == 3

    def broken(g):
        raise InvariantViolation("engines differ")

    monkeypatch.setattr(cli, "solve_pure", broken)
    assert run(capsys, "solve", DATA / "pd.json", "--pure")[0] == 3


def test_console_script_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "opengames.cli", "update", "--prior",
                           str(DATA / "biased_coins_prior.json"), "--observe", "T"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"H": "3/8", "T": "5/8"}
