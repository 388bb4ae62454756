"""Forward pass, gradient correctness, training behavior, committee rules."""

import numpy as np
import pytest

from subband_adpcm import mlp


def _weights_from_vec(vec):
    return mlp._unpack(np.asarray(vec, dtype=np.float64))


def _linear_frame(n=200):
    """Frame whose lagged pairs are an exactly linear, noiseless map."""
    x = np.zeros(n + 10)
    x[:10] = np.linspace(0.4, 1.0, 10)
    for i in range(10, n + 10):
        x[i] = -0.9 * x[i - 10]
    return x[10:]


class TestForward:
    def test_all_zero_weights(self):
        w = _weights_from_vec(np.zeros(25))
        assert mlp.mlp_forward(w, np.ones(10)) == 0.0

    def test_bias_only(self):
        w = mlp.MlpWeights(w1=np.zeros((2, 10)), b1=np.zeros(2),
                           w2=np.array([1.0, 1.0]), b2=0.5)
        assert mlp.mlp_forward(w, np.ones(10) * 3) == 0.5

    def test_linearization_for_small_inputs(self):
        rng = np.random.default_rng(0)
        w = _weights_from_vec(rng.uniform(-0.1, 0.1, 25))
        u = rng.uniform(-0.005, 0.005, 10)
        y = mlp.mlp_forward(w, u)
        linear = float(w.w2 @ (w.w1 @ u + w.b1) + w.b2)
        assert abs(y - linear) < 1e-4


class TestGradient:
    def test_matches_central_differences(self):
        rng = np.random.default_rng(1)
        X = rng.standard_normal((60, 10))
        t = rng.standard_normal(60)
        for _ in range(5):
            vec = rng.uniform(-0.5, 0.5, 25)
            alpha, beta = float(rng.uniform(0.01, 2)), float(rng.uniform(0.1, 5))
            g = mlp.cost_gradient(vec, X, t, alpha, beta)
            h = 1e-6
            for j in rng.choice(25, size=8, replace=False):
                vp, vm = vec.copy(), vec.copy()
                vp[j] += h
                vm[j] -= h
                fd = (mlp.regularized_cost(vp, X, t, alpha, beta)[0]
                      - mlp.regularized_cost(vm, X, t, alpha, beta)[0]) / (2 * h)
                assert abs(g[j] - fd) / max(abs(fd), 1e-8) <= 1e-4


class TestTraining:
    def test_noiseless_linear_target_fits_tightly(self):
        frame = _linear_frame()
        cfg = mlp.TrainConfig(max_iters=50)
        X, t = mlp.lagged_pairs(frame)
        for member in range(5):
            w = mlp.train_member(frame, mlp.member_seed(0, 0, member), cfg)
            e, _ = mlp._residuals(mlp._pack(w), X, t)
            assert e @ e <= 1e-6, f"member {member}: {e @ e}"

    def test_accepted_cost_sequence_non_increasing(self):
        rng = np.random.default_rng(2)
        for trial in range(10):
            frame = rng.standard_normal(200)
            trace = []
            mlp.train_member(frame, trial, mlp.TrainConfig(), trace=trace)
            for entry in trace:
                if entry["accepted"]:
                    assert entry["cost_after"] <= entry["cost_before"]

    def test_hyperparameters_stay_sane(self):
        rng = np.random.default_rng(3)
        for trial in range(10):
            frame = rng.standard_normal(200) * 10.0 ** rng.uniform(-2, 1)
            trace = []
            mlp.train_member(frame, trial, mlp.TrainConfig(), trace=trace)
            for entry in trace:
                assert entry["alpha"] > 0 and entry["beta"] > 0
                if "gamma" in entry:
                    assert -1e-9 <= entry["gamma"] <= mlp.N_PARAMS + 1e-9
                    assert entry["alpha_new"] > 0 and entry["beta_new"] > 0

    def test_training_is_deterministic(self):
        rng = np.random.default_rng(4)
        frame = rng.standard_normal(200) * 500.0
        a = mlp.train_committee(frame, 3, mlp.TrainConfig(seed_base=17))
        b = mlp.train_committee(frame, 3, mlp.TrainConfig(seed_base=17))
        assert a.scale == b.scale
        for wa, wb in zip(a.members, b.members):
            assert np.array_equal(wa.w1, wb.w1)
            assert np.array_equal(wa.b1, wb.b1)
            assert np.array_equal(wa.w2, wb.w2)
            assert wa.b2 == wb.b2

    def test_distinct_seeds_give_distinct_members(self):
        rng = np.random.default_rng(5)
        frame = rng.standard_normal(200)
        com = mlp.train_committee(frame, 0, mlp.TrainConfig())
        vecs = [mlp._pack(m) for m in com.members]
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                assert not np.array_equal(vecs[i], vecs[j])


class TestCommittee:
    def test_mean_combination(self):
        def constant_member(c):
            return mlp.MlpWeights(w1=np.zeros((2, 10)), b1=np.zeros(2),
                                  w2=np.zeros(2), b2=c)

        com = mlp.MlpCommittee([constant_member(c) for c in (0, 0, 0, 1, 1)], scale=3.0)
        assert mlp.committee_predict(com, np.zeros(10)) == pytest.approx(3.0 * 0.4)

    def test_identical_members_equal_single(self):
        rng = np.random.default_rng(6)
        w = _weights_from_vec(rng.uniform(-0.5, 0.5, 25))
        com = mlp.MlpCommittee([w] * 5, scale=1.0)
        u = rng.standard_normal(10) * 0.3
        assert mlp.committee_predict(com, u) == pytest.approx(mlp.mlp_forward(w, u))

    def test_positive_gain_on_matched_ar2_frames(self):
        rng = np.random.default_rng(7)
        w = rng.standard_normal(2400)
        x = np.zeros(2400)
        for i in range(2, 2400):
            x[i] = 1.4 * x[i - 1] - 0.6 * x[i - 2] + w[i]
        x *= 1000.0
        prev, cur = x[2000:2200], x[2200:2400]
        com = mlp.train_committee(prev, 0, mlp.TrainConfig())
        src = np.concatenate([prev[-10:], cur])
        preds = np.array(
            [mlp.committee_predict(com, src[i : i + 10][::-1]) for i in range(len(cur))]
        )
        d = cur - preds
        assert 10 * np.log10((cur @ cur) / (d @ d)) > 0.0


class TestDeterministicInit:
    def test_init_range_and_determinism(self):
        v1 = mlp.init_vector(123)
        v2 = mlp.init_vector(123)
        assert np.array_equal(v1, v2)
        assert (v1 >= -0.5).all() and (v1 < 0.5).all()
        assert not np.array_equal(v1, mlp.init_vector(124))

    def test_member_seed_spreads(self):
        seeds = {mlp.member_seed(0, f, m) for f in range(10) for m in range(5)}
        assert len(seeds) == 50
