"""Unit-ball volumes and the closed-form chord integral of a ball."""

import numpy as np
from scipy.special import gammaln

from .errors import DomainError


def omega(s):
    """Volume of the unit ball in dimension s, extended to real s >= 0 through Gamma."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise DomainError("omega needs s >= 0")
    out = np.exp(0.5 * s * np.log(np.pi) - gammaln(1 + 0.5 * s))
    return float(out) if out.ndim == 0 else out


def sphere_area(n):
    return n * omega(n)


def ball_chord_integral(n, q, radius=1.0):
    """I_q of a ball, 2^q omega_{n+q-1} / omega_q * r^{n+q-1}.

    This is the normalization consistent with I_1 = V and I_{n+1} = (n+1) V^2 / omega_n.
    """
    return 2.0 ** q * omega(n + q - 1) / omega(q) * radius ** (n + q - 1)


def ball_chord_integral_printed(n, q, radius=1.0):
    """The ball formula with the extra omega_n factor, as printed in the source text."""
    return omega(n) * ball_chord_integral(n, q, radius)
