"""
Boosting the acceptance probability of a one-sided-error machine.

The amplified machine runs the base machine, accepts if it accepts,
un-runs it, flips the sign of every non-initial configuration, and
repeats, for f+1 rounds in total. Starting from base acceptance
probability p the result accepts with probability

    1 - (1 - p) (1 - 2p)^(2f)

and never accepts when p = 0.

:func:`simulate_amplifier` checks this by running the rounds on an
explicit three-configuration model of the base machine (initial,
accepting, rejecting) with a real orthogonal evolution.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .errors import OutOfRange, Unreachable

MAX_REPETITIONS = 10**9

# basis of the model configuration space
INITIAL, ACCEPTING, REJECTING = 0, 1, 2


@dataclass(frozen=True)
class TwoLevelState:
    """Machine state right after a simulation step, before the accept check.

    ``a_acc`` and ``a_perp`` are the (unnormalized-run) amplitudes on the
    accepting configuration and on its orthogonal complement.
    """

    a_acc: float
    a_perp: float
    p: float

    @property
    def mass(self) -> float:
        return self.a_acc**2 + self.a_perp**2


class AmplifierRun(NamedTuple):
    total: float
    rounds: list[float]
    states: list[TwoLevelState]


@dataclass(frozen=True)
class AmplificationPlan:
    p: float
    f: int
    amplified: float
    target: float

    def to_dict(self) -> dict:
        return asdict(self)


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"probability must lie in [0, 1], got {p}")


def amplified_probability(p: float, f: int) -> float:
    _check_p(p)
    if f < 0:
        raise OutOfRange(f"repetition count must be nonnegative, got {f}")
    if f == 0 or p == 0.0:
        return float(p)
    # -expm1(log((1-p) (1-2p)^2f)) keeps precision when p is tiny
    log_rest = math.log1p(-p) if p < 1.0 else -math.inf
    r = abs(1.0 - 2.0 * p)
    log_r = math.log1p(-2.0 * p) if p < 0.5 else (math.log(r) if r > 0.0 else -math.inf)
    return -math.expm1(log_rest + 2 * f * log_r)


def round_acceptance(p: float, j: int) -> float:
    """Unconditional probability that round j (1-based) is the accepting one."""
    if j == 1:
        return p
    return p * (1.0 - 2.0 * p) ** (2 * (j - 2)) * (2.0 - 2.0 * p) ** 2


def _evolution(p: float) -> np.ndarray:
    # Householder reflection taking the initial configuration to
    # sqrt(p)|acc> + sqrt(1-p)|rej>; real, so <c0|E^T|psi_acc> = p holds.
    psi = np.array([0.0, np.sqrt(p), np.sqrt(1.0 - p)])
    w = np.eye(3)[INITIAL] - psi
    return np.eye(3) - 2.0 * np.outer(w, w) / (w @ w)


def simulate_amplifier(p: float, f: int) -> AmplifierRun:
    """Run f+1 rounds and record each round's unconditional acceptance probability.

    Acceptance removes amplitude from the state instead of renormalizing,
    so the per-round numbers add up to the total acceptance probability.
    """
    _check_p(p)
    if f < 0:
        raise OutOfRange(f"repetition count must be nonnegative, got {f}")
    e = _evolution(p)
    flip = -np.eye(3)
    flip[INITIAL, INITIAL] = 1.0

    state = np.eye(3)[INITIAL]
    rounds, states = [], []
    for j in range(f + 1):
        if j > 0:
            state = e @ (flip @ (e.T @ state))
        else:
            state = e @ state
        states.append(TwoLevelState(float(state[ACCEPTING]), float(state[REJECTING]), p))
        rounds.append(float(state[ACCEPTING] ** 2))
        state[ACCEPTING] = 0.0
    return AmplifierRun(sum(rounds), rounds, states)


def plan_repetitions(p: float, target: float) -> AmplificationPlan:
    """Smallest f with amplified_probability(p, f) >= target.

    The amplified probability is nondecreasing in f, so the search doubles
    an upper bracket and then bisects instead of inverting the closed form.
    """
    _check_p(p)
    if not 0.0 < target < 1.0:
        raise OutOfRange(f"target must lie in (0, 1), got {target}")
    if p == 0.0:
        raise Unreachable("a machine that never accepts cannot be amplified")

    def ok(f: int) -> bool:
        return amplified_probability(p, f) >= target

    if ok(0):
        return AmplificationPlan(p, 0, amplified_probability(p, 0), target)
    lo, hi = 0, 1
    while not ok(hi):
        if hi >= MAX_REPETITIONS:
            raise Unreachable(f"target {target} needs more than {MAX_REPETITIONS} repetitions at p={p}")
        lo, hi = hi, min(2 * hi, MAX_REPETITIONS)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return AmplificationPlan(p, hi, amplified_probability(p, hi), target)
