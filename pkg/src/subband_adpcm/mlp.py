"""Nonlinear sample predictor: a committee of small feedforward nets.

Each member is a 10-2-1 perceptron (tanh hidden layer, linear output, 25
weights) trained on one frame of reconstructed samples by damped Gauss-Newton
steps with evidence-based reweighting of the data-error / weight-decay
trade-off. Five members start from distinct deterministic initializations and
their outputs are averaged at prediction time.

Everything here is a pure function of its arguments: no wall clock, no global
RNG. The decoder retrains the identical committee from the reconstructed
signal, so any hidden nondeterminism would break stream synchrony.
"""

import numpy as np
from dataclasses import dataclass

N_INPUTS = 10
N_HIDDEN = 2
N_PARAMS = N_INPUTS * N_HIDDEN + N_HIDDEN + N_HIDDEN + 1  # 25
COMMITTEE_SIZE = 5
# Amplitude normalization floor. Nets train on frames scaled to unit RMS
# (computed from reconstructed samples, hence identical at both ends); the
# floor keeps silent frames from dividing by zero.
SCALE_FLOOR = 1.0

_MASK64 = (1 << 64) - 1
_RETRY_SEED_OFFSET = 1 << 32


@dataclass(frozen=True)
class TrainConfig:
    """Per-member training budget and damping/regularization schedule."""

    max_iters: int = 12
    mu0: float = 1e-2
    mu_up: float = 10.0
    mu_down: float = 0.1
    seed_base: int = 0
    alpha0: float = 1e-2
    beta0: float = 1.0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.mu0 <= 0:
            raise ValueError("mu0 must be positive")
        if not self.mu_up > 1 > self.mu_down > 0:
            raise ValueError("require mu_up > 1 > mu_down > 0")


@dataclass(frozen=True)
class MlpWeights:
    w1: np.ndarray  # (2, 10) input-to-hidden
    b1: np.ndarray  # (2,) hidden biases
    w2: np.ndarray  # (2,) hidden-to-output
    b2: float


class MlpCommittee:
    """Five trained members plus the shared amplitude scale."""

    def __init__(self, members, scale=1.0):
        members = tuple(members)
        if len(members) != COMMITTEE_SIZE:
            raise ValueError(f"committee needs {COMMITTEE_SIZE} members, got {len(members)}")
        self.members = members
        self.scale = scale
        # stacked views for a single fused forward pass per sample
        self._w1 = np.vstack([m.w1 for m in members])              # (10, 10)
        self._b1 = np.concatenate([m.b1 for m in members])         # (10,)
        self._w2 = np.concatenate([m.w2 for m in members]) / COMMITTEE_SIZE
        self._b2 = sum(m.b2 for m in members) / COMMITTEE_SIZE


def mlp_forward(w: MlpWeights, u):
    """Single-member output for 10 normalized inputs."""
    return float(np.dot(w.w2, np.tanh(w.w1 @ u + w.b1)) + w.b2)


def committee_predict(committee: MlpCommittee, history):
    """Average member prediction, in signal amplitude units.

    `history` holds the last 10 reconstructed samples, newest first,
    in signal units; normalization and rescaling are internal.
    """
    u = np.asarray(history, dtype=np.float64) / committee.scale
    y = np.dot(committee._w2, np.tanh(committee._w1 @ u + committee._b1)) + committee._b2
    return committee.scale * y


# --- deterministic initialization -----------------------------------------

def _mix64(x):
    """SplitMix64 finalizer; the whole init chain reduces to this."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def _hash_pair(a, b):
    return _mix64(_mix64(a & _MASK64) ^ (b & _MASK64))


def member_seed(seed_base, frame_index, member):
    """Seed for one committee member; distinct per (frame, member)."""
    return (seed_base ^ _hash_pair(frame_index, member)) & _MASK64


def init_vector(seed):
    """Initial packed weights, each uniform in [-0.5, 0.5), keyed by (seed, index)."""
    return np.array(
        [_hash_pair(seed, j) / 2.0**64 - 0.5 for j in range(N_PARAMS)]
    )


# --- packed-vector helpers -------------------------------------------------
# packing order: w1 row-major (20), b1 (2), w2 (2), b2 (1)

def _unpack(vec) -> MlpWeights:
    w1 = vec[:20].reshape(N_HIDDEN, N_INPUTS).copy()
    b1 = vec[20:22].copy()
    w2 = vec[22:24].copy()
    return MlpWeights(w1=w1, b1=b1, w2=w2, b2=float(vec[24]))


def _pack(w: MlpWeights):
    return np.concatenate([w.w1.ravel(), w.b1, w.w2, [w.b2]])


def lagged_pairs(frame):
    """(inputs, targets) from one frame: 10 past samples, newest first, -> next."""
    frame = np.asarray(frame, dtype=np.float64)
    n = len(frame)
    if n < N_INPUTS + 1:
        raise ValueError(f"frame too short to form pairs: {n}")
    idx = np.arange(N_INPUTS, n)[:, None] - np.arange(1, N_INPUTS + 1)[None, :]
    return frame[idx], frame[N_INPUTS:]


def _residuals(vec, X, t):
    w1 = vec[:20].reshape(N_HIDDEN, N_INPUTS)
    z = np.tanh(X @ w1.T + vec[20:22])
    y = z @ vec[22:24] + vec[24]
    return y - t, z


def _jacobian(vec, X, z):
    """d(residual)/d(weights), shape (n_samples, 25)."""
    n = len(X)
    w2 = vec[22:24]
    dz = (1.0 - z * z) * w2  # (n, 2)
    J = np.empty((n, N_PARAMS))
    J[:, :20] = (dz[:, :, None] * X[:, None, :]).reshape(n, 20)
    J[:, 20:22] = dz
    J[:, 22:24] = z
    J[:, 24] = 1.0
    return J


def regularized_cost(vec, X, t, alpha, beta):
    """F = beta * sum(e^2) + alpha * sum(w^2); returns (F, e_sq, w_sq)."""
    e, _ = _residuals(vec, X, t)
    e_sq = float(e @ e)
    w_sq = float(vec @ vec)
    return beta * e_sq + alpha * w_sq, e_sq, w_sq


def cost_gradient(vec, X, t, alpha, beta):
    """Analytic gradient of the regularized cost."""
    e, z = _residuals(vec, X, t)
    J = _jacobian(vec, X, z)
    return 2.0 * (beta * (J.T @ e) + alpha * vec)


_MU_MAX = 1e10
_MU_MIN = 1e-12


def _train_lm(vec, X, t, cfg: TrainConfig, trace=None):
    """Damped Gauss-Newton minimization of the regularized cost.

    Returns (weights, ok). ok=False signals a non-finite cost or a singular
    system, which the caller handles by reinitializing. One iteration is one
    accepted update: the damping mu is raised on every rejected trial until
    a step lowers the cost (or the damping range is exhausted), then lowered
    again, and (alpha, beta) are re-estimated from the evidence
    approximation after each accepted step.
    """
    n_data = len(X)
    alpha, beta, mu = cfg.alpha0, cfg.beta0, cfg.mu0
    eye = np.eye(N_PARAMS)

    e, z = _residuals(vec, X, t)
    e_sq = float(e @ e)
    w_sq = float(vec @ vec)
    cost = beta * e_sq + alpha * w_sq
    if not np.isfinite(cost):
        return vec, False
    J = _jacobian(vec, X, z)

    for _ in range(cfg.max_iters):
        grad = 2.0 * (beta * (J.T @ e) + alpha * vec)
        hess = beta * (J.T @ J) + alpha * eye
        while True:
            try:
                delta = np.linalg.solve(hess + mu * eye, -grad)
            except np.linalg.LinAlgError:
                return vec, False
            trial = vec + delta
            e_try, z_try = _residuals(trial, X, t)
            e_sq_try = float(e_try @ e_try)
            w_sq_try = float(trial @ trial)
            cost_try = beta * e_sq_try + alpha * w_sq_try
            if not np.isfinite(cost_try):
                return vec, False
            accepted = cost_try < cost
            if trace is not None:
                trace.append(
                    {"cost_before": cost, "cost_after": cost_try,
                     "accepted": accepted, "alpha": alpha, "beta": beta, "mu": mu}
                )
            if accepted:
                break
            mu *= cfg.mu_up
            if mu > _MU_MAX:
                return vec, True  # damping exhausted: already at a minimum
        vec, e, z = trial, e_try, z_try
        e_sq, w_sq = e_sq_try, w_sq_try
        mu = max(mu * cfg.mu_down, _MU_MIN)
        J = _jacobian(vec, X, z)
        # evidence update: gamma is the effective number of parameters
        hess = beta * (J.T @ J) + alpha * eye
        gamma = N_PARAMS - alpha * np.trace(np.linalg.inv(hess))
        alpha = gamma / (2.0 * max(w_sq, 1e-30))
        beta = (n_data - gamma) / (2.0 * max(e_sq, 1e-30))
        cost = beta * e_sq + alpha * w_sq
        if trace is not None:
            trace[-1]["gamma"] = gamma
            trace[-1]["alpha_new"] = alpha
            trace[-1]["beta_new"] = beta
        if not np.isfinite(cost):
            return vec, False
    return vec, True


def train_member(frame, seed, cfg: TrainConfig, trace=None) -> MlpWeights:
    """Train one member on a frame of normalized samples.

    Deterministic in (frame, seed, cfg). A non-finite cost triggers one
    retry from a shifted seed; a second failure returns the initial weights.
    """
    X, t = lagged_pairs(frame)
    vec0 = init_vector(seed)
    vec, ok = _train_lm(vec0.copy(), X, t, cfg, trace=trace)
    if not ok:
        retry, ok = _train_lm(init_vector(seed + _RETRY_SEED_OFFSET), X, t, cfg)
        vec = retry if ok else vec0
    return _unpack(vec)


def train_committee(frame, frame_index, cfg: TrainConfig) -> MlpCommittee:
    """Train the full committee on one frame of raw (signal-unit) samples.

    The frame is scaled to unit RMS before training and the scale is kept on
    the committee, so prediction inputs and outputs stay in signal units.
    """
    frame = np.asarray(frame, dtype=np.float64)
    scale = max(float(np.sqrt(np.mean(frame * frame))), SCALE_FLOOR)
    normalized = frame / scale
    members = [
        train_member(normalized, member_seed(cfg.seed_base, frame_index, i), cfg)
        for i in range(COMMITTEE_SIZE)
    ]
    return MlpCommittee(members, scale=scale)
