"""
Control policies mu(R, t) with |mu| <= epsilon.

Three families cover everything the solvers and simulators need:
a constant control, a time-threshold pulsing control that alternates
between +epsilon and -epsilon, and a feedback table looked up from a
solved value grid with nearest-node semantics.

Every policy exposes ``control(R, t)`` where ``R`` may be a scalar or an
array of reputations and ``t`` is a scalar time; the result broadcasts to
the shape of ``R``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

__all__ = ["ConstantPolicy", "PulsingPolicy", "FeedbackPolicy"]


@dataclass(frozen=True)
class ConstantPolicy:
    """mu(R, t) = mu for all states and times."""

    mu: float

    def control(self, R, t: float):
        if np.ndim(R) == 0:
            return self.mu
        return np.full(np.shape(R), self.mu)


@dataclass(frozen=True)
class PulsingPolicy:
    """Bang-bang control alternating between +epsilon and -epsilon.

    The sign starts at ``initial_sign`` and flips at each entry of
    ``switch_times``; a switch takes effect at the switch time itself
    (ties resolve to the post-switch sign).  An empty switch list gives a
    constant control of ``initial_sign * epsilon``.
    """

    epsilon: float
    switch_times: tuple = ()
    initial_sign: int = 1

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"epsilon: must lie in (0, 1), got {self.epsilon}")
        if self.initial_sign not in (+1, -1):
            raise ValueError(f"initial_sign: must be +1 or -1, got {self.initial_sign}")
        times = tuple(float(s) for s in self.switch_times)
        if any(s < 0.0 for s in times):
            raise ValueError("switch_times: must be nonnegative")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("switch_times: must be strictly increasing")
        object.__setattr__(self, "switch_times", times)

    def mu_at(self, t: float) -> float:
        flips = bisect_right(self.switch_times, t)
        sign = self.initial_sign * (-1) ** flips
        return sign * self.epsilon

    def control(self, R, t: float):
        mu = self.mu_at(t)
        if np.ndim(R) == 0:
            return mu
        return np.full(np.shape(R), mu)

    def segments(self) -> list[tuple[float, int]]:
        """(start time, sign) for each constant segment, starting at t = 0."""
        out = [(0.0, self.initial_sign)]
        sign = self.initial_sign
        for s in self.switch_times:
            sign = -sign
            out.append((s, sign))
        return out


@dataclass(frozen=True)
class FeedbackPolicy:
    """Grid feedback control: nearest-node lookup in a (R, t) table.

    ``mu_table`` has shape (len(r_nodes), len(t_nodes)) and holds the
    control (in {-epsilon, +epsilon}) extracted at each node.  Queries are
    accepted on [r_min*(1-slack), r_max*(1+slack)] x [0, T] and snapped to
    the nearest node; anything outside raises ``ValueError``.
    """

    r_nodes: np.ndarray
    t_nodes: np.ndarray
    mu_table: np.ndarray
    epsilon: float
    r_slack: float = field(default=1e-6)

    def __post_init__(self):
        r = np.asarray(self.r_nodes, dtype=float)
        t = np.asarray(self.t_nodes, dtype=float)
        mu = np.asarray(self.mu_table, dtype=float)
        if mu.shape != (r.size, t.size):
            raise ValueError(
                f"mu_table: shape {mu.shape} does not match "
                f"({r.size} nodes, {t.size} times)"
            )
        object.__setattr__(self, "r_nodes", r)
        object.__setattr__(self, "t_nodes", t)
        object.__setattr__(self, "mu_table", mu)

    def _time_index(self, t: float) -> int:
        t_lo, t_hi = self.t_nodes[0], self.t_nodes[-1]
        pad = 1e-12 * max(1.0, abs(t_hi))
        if t < t_lo - pad or t > t_hi + pad:
            raise ValueError(f"t: query {t} outside [{t_lo}, {t_hi}]")
        return int(np.argmin(np.abs(self.t_nodes - t)))

    def control(self, R, t: float):
        j = self._time_index(t)
        arr = np.asarray(R, dtype=float)
        lo = self.r_nodes[0] * (1.0 - self.r_slack)
        hi = self.r_nodes[-1] * (1.0 + self.r_slack)
        if np.any(arr < lo) or np.any(arr > hi):
            raise ValueError(f"R: query outside [{lo}, {hi}]")
        # Nearest node via the insertion point and its left neighbor.
        idx = np.searchsorted(self.r_nodes, arr)
        idx = np.clip(idx, 1, self.r_nodes.size - 1)
        left = self.r_nodes[idx - 1]
        right = self.r_nodes[idx]
        idx = np.where(arr - left <= right - arr, idx - 1, idx)
        out = self.mu_table[idx, j]
        return float(out) if arr.ndim == 0 else out
