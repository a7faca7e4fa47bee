"""Walk through the biased-coins decision problem with exact numbers."""
from opengames.examples import COIN, biased_coin_prior, biased_coins, strategy_name
from opengames.game import expected_payoffs, is_equilibrium, pure_kernels
from opengames.prob import bayes_update, show_value


def main():
    prior = biased_coin_prior()
    print("joint law of (secret, observed):")
    for (s, x), p in prior.items():
        print(f"  {s} {x}  {show_value(p)}")
    agent, c = biased_coins()
    for x in COIN:
        post = bayes_update(prior, x)
        eu = expected_payoffs(c, x)
        print(f"observed {x}: posterior {dict((k, show_value(v)) for k, v in post.items())}, "
              f"expected payoff {dict((k, show_value(v)) for k, v in eu.items())}")
    for k in pure_kernels(COIN, COIN):
        verdict = "optimal" if is_equilibrium(agent, c, k) else "not optimal"
        print(f"  {strategy_name(k):<9} {verdict}")


if __name__ == "__main__":
    main()
