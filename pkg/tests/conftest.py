import numpy as np
import pytest

from tmixest.harness import ChainSpec, generate_chain

TWO_STATE = np.array([[0.75, 0.25], [0.25, 0.75]])
FUNNEL = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.5, 0.5, 0.0]])


def corpus_specs():
    """At least 20 ergodic chains with d in 2..8 across every family."""
    specs = [ChainSpec("random-dirichlet", d, (), seed) for d in range(2, 9) for seed in (1, 2)]
    specs += [ChainSpec("random-dirichlet", 5, (0.3,), 3), ChainSpec("random-dirichlet", 8, (0.5,), 4)]
    specs += [ChainSpec("lazy-cycle", d) for d in (2, 3, 5, 8)]
    specs += [ChainSpec("lazy-cycle", 4, (0.8,))]
    specs += [ChainSpec("biased-cycle", d) for d in (3, 4, 7)]
    specs += [ChainSpec("biased-cycle", 6, (0.9, 0.05))]
    specs += [ChainSpec("rank-one", d, (), 5) for d in (2, 4, 6)]
    specs += [ChainSpec("two-state", 2, p) for p in ((0.25, 0.25), (0.1, 0.3), (0.9, 0.6), (0.02, 0.05))]
    specs += [ChainSpec("three-state-funnel", 3)]
    return specs


@pytest.fixture(scope="session")
def corpus():
    return [generate_chain(s) for s in corpus_specs()]


def random_kernel(rng, d, sparse=False):
    P = rng.dirichlet(np.ones(d), size=d)
    if sparse:
        P[rng.random((d, d)) < 0.3] = 0.0
        P[np.arange(d), rng.integers(0, d, d)] += 1e-3
        P /= P.sum(axis=1, keepdims=True)
    return P


def random_distribution(rng, d):
    return rng.dirichlet(np.ones(d))
