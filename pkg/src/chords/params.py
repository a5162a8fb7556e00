"""Scalar parameter block of the problem and the anisotropic maps of the shrinking family."""

from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ProblemParams:
    n: int
    p: float
    q: float
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = None          # None: midpoint of the admissible window
    epsilon: float = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError("n must be an integer >= 2")
        if not self.p < 0:
            raise DomainError(f"p must be negative, got {self.p}")
        if not 0 < self.q <= self.n + 1:
            raise DomainError(f"q must lie in (0, n+1], got {self.q}")
        if self.epsilon is not None and not 0 < self.epsilon < 0.5:
            raise DomainError(f"epsilon must lie in (0, 1/2), got {self.epsilon}")
        object.__setattr__(self, "n", int(self.n))
        if self.gamma is None:
            object.__setattr__(self, "gamma", default_gamma(self.n, self.p, self.q))
        bad = self.variational_violations(check_q=False)
        if bad:
            raise DomainError("; ".join(bad))

    def with_epsilon(self, eps):
        return replace(self, epsilon=eps)

    # ------------------------------------------------------------ admissibility
    def variational_violations(self, check_q=True):
        n, p, q, a, b = self.n, self.p, self.q, self.alpha, self.beta
        out = []
        if check_q and not 1 <= q < n + 1:
            out.append(f"need 1 <= q < n+1 for the maximization problem, got q={q}")
        a_lo = max(1 - n, 1 - n + (2 - n - q) / (n + q - 1) * p)
        b_lo = max(-1.0, -1 - p / (n + q - 1))
        if not a > a_lo:
            out.append(f"alpha={a} must exceed {a_lo:.6g}")
        if not b > b_lo:
            out.append(f"beta={b} must exceed {b_lo:.6g}")
        return out

    def construction_violations(self):
        n, p, q = self.n, self.p, self.q
        out = self.variational_violations(check_q=False)
        if not 2 < q <= n + 1:
            out.append(f"construction needs 2 < q <= n+1, got q={q}")
        lo, hi = construction_window(n, p, q)
        if not lo < self.gamma < hi:
            out.append(f"construction needs {lo} < gamma < {hi:.6g}, got gamma={self.gamma}")
        if self.alpha < 0 or self.beta < 0:
            out.append("construction needs alpha, beta >= 0")
        return out

    def decay_violations(self):
        n, p, q = self.n, self.p, self.q
        out = []
        if q < 2 and not p < -(2 - q) * (n + q - 1) / q:
            out.append(f"for q < 2 the decay needs p < {-(2 - q) * (n + q - 1) / q:.6g}")
        lo, hi = decay_window(n, p, q)
        if not lo < self.gamma < hi:
            out.append(f"decay needs {lo} < gamma < {hi:.6g}, got gamma={self.gamma}")
        return out

    def require(self, stage):
        checks = {"variational": self.variational_violations,
                  "construction": self.construction_violations,
                  "decay": self.decay_violations}
        bad = checks[stage]()
        if bad:
            raise DomainError(f"{stage} parameters rejected: " + "; ".join(bad))
        return self

    def to_dict(self):
        return {"n": self.n, "p": self.p, "q": self.q, "alpha": self.alpha, "beta": self.beta,
                "gamma": self.gamma, "epsilon": self.epsilon}


def construction_window(n, p, q):
    return -1.0, -1 - p / (n + q - 1)


def decay_window(n, p, q):
    if q > 2:
        return -1.0, -2 * p / (n + q - 1) - 1
    if q == 2:
        return -1.0, -2 * p / (n + 1) - 1
    return -1.0, -q * p / (n + q - 1) + q - 3


def default_gamma(n, p, q):
    """Midpoint of the intersection of the construction and decay windows."""
    lo1, hi1 = construction_window(n, p, q)
    lo2, hi2 = decay_window(n, p, q)
    lo, hi = max(lo1, lo2), min(hi1, hi2)
    if not hi > lo:
        lo, hi = lo2, hi2
    return 0.5 * (lo + hi)


def height_exponent(params):
    """Power of epsilon that scales the constructed support function."""
    n, p, q, g = params.n, params.p, params.q, params.gamma
    return (n - p - 4 - g + q) / (n - p + q - 1)


def decay_exponent(params):
    n, p, q, g = params.n, params.p, params.q, params.gamma
    if q > 2:
        return 2 - (3 + g) / (n - p + q - 1) * (q + n - 1)
    if q == 2:
        return 2 - (3 + g) / (n - p + 1) * (n + 1)
    return q - (3 + g) / (n - p + q - 1) * (q + n - 1)


def decay_bound(params, eps):
    """Rate of the upper bound on I_q of the constructed body (up to a constant)."""
    e = decay_exponent(params)
    b = eps ** e
    if params.q == 2:
        b = b * abs(np.log(eps))
    return b


@dataclass(frozen=True, eq=False)
class EpsilonMaps:
    """M = diag(eps,..,eps,1), its inverse, and N = eps * M^{-1} = diag(1,..,1,eps)."""
    eps: float
    n: int

    def __post_init__(self):
        if not 0 < self.eps <= 1:
            raise DomainError("epsilon must lie in (0, 1]")

    @property
    def M(self):
        d = np.full(self.n, float(self.eps))
        d[-1] = 1.0
        return np.diag(d)

    @property
    def Minv(self):
        d = np.full(self.n, 1.0 / self.eps)
        d[-1] = 1.0
        return np.diag(d)

    @property
    def N(self):
        return self.eps * self.Minv
