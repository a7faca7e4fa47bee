"""Write the built-in classical games and the biased-coins prior as JSON files."""
import argparse
from pathlib import Path

from opengames import io
from opengames.examples import biased_coin_prior, education, matching_pennies, prisoners_dilemma, uniform_profile


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="tests/data")
    out = Path(ap.parse_args().outdir)
    out.mkdir(parents=True, exist_ok=True)
    games = {"pd": prisoners_dilemma(), "mp": matching_pennies(), "education": education()}
    for name, g in games.items():
        (out / f"{name}.json").write_text(io.serialize_game(g) + "\n", encoding="utf-8")
    mp = games["mp"]
    (out / "mp_uniform.json").write_text(io.dumps(io.profile_to_json(mp, uniform_profile(mp))) + "\n")
    (out / "biased_coins_prior.json").write_text(io.dumps(io.prior_to_json(biased_coin_prior())) + "\n")
    print(f"wrote {len(games) + 2} files to {out}")


if __name__ == "__main__":
    main()
