"""Result records: Monte Carlo / quadrature estimates, discrete measures, line-sampler settings."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RepresentationError

METHODS = ("crofton-mc", "boundary", "radial-quadrature", "riesz-mc", "closed-form")
DETERMINISTIC = ("closed-form", "radial-quadrature", "boundary")


@dataclass(frozen=True)
class Estimate:
    value: float
    std_error: float
    n_samples: int
    seed: int
    method: str

    def __post_init__(self):
        if self.method not in METHODS:
            raise RepresentationError(f"unknown method {self.method!r}")
        if not np.isfinite(self.value):
            raise DomainError("estimate is not finite")
        if self.std_error < 0 or (self.method in DETERMINISTIC and self.std_error != 0):
            raise RepresentationError("deterministic methods carry zero standard error")
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "std_error", float(self.std_error))
        object.__setattr__(self, "n_samples", int(self.n_samples))
        object.__setattr__(self, "seed", int(self.seed))

    def to_dict(self):
        return {"value": self.value, "std_error": self.std_error, "n_samples": self.n_samples,
                "seed": self.seed, "method": self.method}

    @classmethod
    def from_dict(cls, d):
        return cls(float(d["value"]), float(d["std_error"]), int(d["n_samples"]),
                   int(d["seed"]), str(d["method"]))


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Nonnegative point masses at directions on the sphere."""
    directions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        U = np.atleast_2d(np.asarray(self.directions, float))
        w = np.asarray(self.weights, float).ravel()
        if U.shape[0] != w.size:
            raise RepresentationError("one weight per direction")
        if np.any(~np.isfinite(w)) or np.any(w < 0):
            raise DomainError("measure weights must be finite and nonnegative")
        U.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "directions", U)
        object.__setattr__(self, "weights", w)

    @property
    def total_mass(self):
        return float(self.weights.sum())

    def __len__(self):
        return len(self.weights)

    def scaled(self, t):
        return DiscreteMeasure(self.directions, t * self.weights)

    def evenness_error(self):
        """Max relative difference between weight(u) and weight(-u)."""
        U = self.directions
        j = np.argmin(np.linalg.norm(U[:, None, :] + U[None, :, :], axis=2), axis=1)
        scale = max(self.weights.max(), 1e-300)
        return float(np.abs(self.weights - self.weights[j]).max() / scale)

    def to_dict(self):
        return {"directions": self.directions, "weights": self.weights}

    @classmethod
    def from_dict(cls, d):
        return cls(np.array(d["directions"], float), np.array(d["weights"], float))


@dataclass(frozen=True)
class LineSamplerConfig:
    n_samples: int = 1_000_000
    seed: int = 0
    bounding_radius: float = None   # None: circumradius of the body

    def __post_init__(self):
        if self.n_samples <= 0:
            raise DomainError("n_samples must be positive")
        if self.bounding_radius is not None and not self.bounding_radius > 0:
            raise DomainError("bounding radius must be positive")
