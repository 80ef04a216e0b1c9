"""Uniformly sampled solution with displacement, velocity and acceleration channels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, GridMismatchError


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Samples at t0 + i*step, i = 0 .. n-1."""

    t0: float
    step: float
    u: np.ndarray
    du: np.ndarray
    d2u: np.ndarray

    def __post_init__(self):
        if not self.step > 0.0:
            raise ConfigError(f"grid step must be positive, got {self.step!r}")
        for name in ("u", "du", "d2u"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        n = len(self.u)
        if n < 2 or len(self.du) != n or len(self.d2u) != n:
            raise ConfigError("trajectory channels must have identical length >= 2")

    def __len__(self) -> int:
        return len(self.u)

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.step * np.arange(len(self.u))

    @property
    def t_end(self) -> float:
        return self.t0 + self.step * (len(self.u) - 1)

    def same_grid(self, other: "Trajectory", rtol: float = 1e-12) -> bool:
        return (len(self) == len(other)
                and abs(self.t0 - other.t0) <= rtol * max(1.0, abs(self.t0))
                and abs(self.step - other.step) <= rtol * self.step)

    def check_grid(self, other: "Trajectory") -> None:
        if not self.same_grid(other):
            raise GridMismatchError(
                f"grid mismatch: (t0={self.t0}, h={self.step}, n={len(self)}) vs "
                f"(t0={other.t0}, h={other.step}, n={len(other)})")


def uniform_grid(t_end: float, n_nodes: int) -> tuple[float, np.ndarray]:
    """Step and nodes of the grid [0, t_end] with ``n_nodes`` points."""
    if n_nodes < 2:
        raise ConfigError(f"need at least 2 nodes, got {n_nodes}")
    if not (t_end > 0.0 and np.isfinite(t_end)):
        raise ConfigError(f"t_end must be positive and finite, got {t_end!r}")
    step = t_end / (n_nodes - 1)
    return step, step * np.arange(n_nodes)
