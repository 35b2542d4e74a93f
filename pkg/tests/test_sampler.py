import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmixest import (
    ArgumentError,
    Trajectory,
    load_trajectory,
    sample_trajectory,
    save_trajectory,
    skip_subsample,
    stationary_distribution,
)
from tmixest.sampler import _cdf, make_rng

from conftest import TWO_STATE, random_kernel


def sequential_reference(M, mu, m, seed):
    """Step-by-step inverse-CDF loop consuming the same uniforms."""
    u = make_rng(seed).random(m)
    cdf_mu, cdf = _cdf(np.asarray(mu)), _cdf(np.asarray(M))
    x = [int(np.searchsorted(cdf_mu, u[0], side="right"))]
    for t in range(1, m):
        x.append(int(np.searchsorted(cdf[x[-1]], u[t], side="right")))
    return np.array(x)


def test_deterministic_alternation():
    traj = sample_trajectory([[0, 1], [1, 0]], [1, 0], 5, seed=123)
    assert traj.states.tolist() == [0, 1, 0, 1, 0]


def test_same_seed_same_output():
    a = sample_trajectory(TWO_STATE, [0.5, 0.5], 1000, seed=9)
    b = sample_trajectory(TWO_STATE, [0.5, 0.5], 1000, seed=9)
    assert a == b
    assert a != sample_trajectory(TWO_STATE, [0.5, 0.5], 1000, seed=10)


def test_sub_streams_differ():
    a = sample_trajectory(TWO_STATE, [0.5, 0.5], 200, seed=1, stream=(0,))
    b = sample_trajectory(TWO_STATE, [0.5, 0.5], 200, seed=1, stream=(1,))
    assert a != b


def test_stationary_frequency():
    traj = sample_trajectory(TWO_STATE, stationary_distribution(TWO_STATE), 10**5, seed=2024)
    assert abs((traj.states == 0).mean() - 0.5) < 0.01


@given(st.integers(0, 2**63), st.integers(2, 6), st.integers(2, 700), st.booleans())
@settings(max_examples=40, deadline=None)
def test_matches_sequential_loop(seed, d, m, sparse):
    rng = np.random.default_rng(seed % 2**32)
    M = random_kernel(rng, d, sparse)
    mu = rng.dirichlet(np.ones(d))
    traj = sample_trajectory(M, mu, m, seed)
    np.testing.assert_array_equal(traj.states, sequential_reference(M, mu, m, seed))


def test_never_takes_zero_probability_transition():
    M = np.array([[0.0, 0.3, 0.7, 0.0], [0.0, 0.0, 0.0, 1.0], [0.5, 0.0, 0.5, 0.0], [1 / 3, 1 / 3, 0, 1 / 3]])
    x = sample_trajectory(M, [0.25] * 4, 20000, seed=5).states
    assert np.all(M[x[:-1], x[1:]] > 0)


def test_rejects_short_trajectory():
    with pytest.raises(ArgumentError):
        sample_trajectory(TWO_STATE, [0.5, 0.5], 1, seed=0)


def test_rejects_dimension_mismatch():
    with pytest.raises(ArgumentError):
        sample_trajectory(TWO_STATE, [1 / 3] * 3, 10, seed=0)


def test_rejects_bad_seed():
    with pytest.raises(ArgumentError):
        sample_trajectory(TWO_STATE, [0.5, 0.5], 10, seed=-1)


class TestSkipSubsample:
    traj = Trajectory([0, 1, 1, 0, 1], 2)

    def test_identity(self):
        assert skip_subsample(self.traj, 1) == self.traj

    def test_skip_two(self):
        out = skip_subsample(self.traj, 2)
        assert out.states.tolist() == [0, 1, 1]

    def test_skip_three(self):
        assert skip_subsample(self.traj, 3).states.tolist() == [0, 0]

    @pytest.mark.parametrize("s", [0, 5, 2.5])
    def test_out_of_range(self, s):
        with pytest.raises(ArgumentError):
            skip_subsample(self.traj, s)

    @given(st.integers(2, 300), st.data())
    def test_length(self, m, data):
        s = data.draw(st.integers(1, m - 1))
        traj = Trajectory(np.zeros(m, dtype=int), 2)
        assert skip_subsample(traj, s).m == (m - 1) // s + 1


class TestTrajectoryType:
    def test_state_range(self):
        with pytest.raises(ArgumentError):
            Trajectory([0, 2], 2)

    def test_min_length(self):
        with pytest.raises(ArgumentError):
            Trajectory([0], 2)

    def test_file_roundtrip(self, tmp_path):
        traj = Trajectory([0, 2, 1, 1, 0], 3)
        path = tmp_path / "t.txt"
        save_trajectory(traj, path)
        assert path.read_text() == "d=3 m=5\n0 2 1 1 0\n"
        assert load_trajectory(path) == traj

    @pytest.mark.parametrize(
        "text",
        ["d=2\n0 1\n", "d=2 m=3\n0 1\n", "d=2 m=2\n0 x\n", "d=2 m=2\n0 5\n"],
    )
    def test_bad_files(self, tmp_path, text):
        path = tmp_path / "t.txt"
        path.write_text(text)
        with pytest.raises(ArgumentError):
            load_trajectory(path)
