"""Enclosing (Loewner) ellipsoids of origin-symmetric bodies, Khachiyan-style."""

from dataclasses import dataclass

import numpy as np

from .bodies import Ball, Ellipsoid, HPolytope, VPolytope, linear_image, support_many
from .errors import UnsupportedInputError

MAX_ITER = 500
TOL = 1e-8


@dataclass(frozen=True, eq=False)
class JohnDecomposition:
    ellipsoid: object          # Ellipsoid or Ball
    shrink_factor: float
    r: float = None
    a: float = None
    iterations: int = 0

    @property
    def axis_matrix(self):
        """diag(r a^{1/n}, ..., r a^{1/n}, r a^{(1-n)/n}) when the symmetric form is populated."""
        if self.r is None:
            return None
        n = self.ellipsoid.dim
        d = np.full(n, self.r * self.a ** (1 / n))
        d[-1] = self.r * self.a ** ((1 - n) / n)
        return np.diag(d)


def _khachiyan_centered(X, max_iter=MAX_ITER, tol=TOL):
    """Minimum-volume origin-centred ellipsoid {x: x^T Q^{-1} x <= 1} around the columns of X."""
    d, m = X.shape
    u = np.full(m, 1.0 / m)
    it = 0
    for it in range(1, max_iter + 1):
        S = (X * u) @ X.T
        M = np.einsum("ij,ji->i", X.T, np.linalg.solve(S, X))
        j = int(np.argmax(M))
        step = (M[j] - d) / (d * (M[j] - 1))
        if step < tol:
            break
        u *= 1 - step
        u[j] += step
    S = (X * u) @ X.T
    M = np.einsum("ij,ji->i", X.T, np.linalg.solve(S, X))
    Q = d * S * max(1.0, M.max() / d)       # exact containment of every point
    return Q, it


def _is_symmetric(body):
    if isinstance(body, (Ball, Ellipsoid)):
        return np.linalg.norm(body.center) <= 1e-12 * max(1.0, body.semi_axes.max())
    V = body.vertices
    sV = support_many(body, V / np.linalg.norm(V, axis=1)[:, None])
    sW = support_many(body, -V / np.linalg.norm(V, axis=1)[:, None])
    return np.abs(sV - sW).max() <= 1e-9 * np.abs(sV).max()


def _rot_params(E):
    n = E.dim
    A = E.matrix
    S = A @ A.T
    diag = np.diag(S)
    if np.abs(S - np.diag(diag)).max() > 1e-10 * diag.max():
        return None, None
    b = np.sqrt(diag)
    if np.ptp(b[:-1]) > 1e-10 * b.max():
        return None, None
    a = b[0] / b[-1]
    r = b[0] * a ** (-1 / n)
    return float(r), float(a)


def john_ellipsoid(body):
    """Enclosing ellipsoid E with K inside E and (1/n) E inside K (1/sqrt(n) at the optimum)."""
    if not _is_symmetric(body):
        raise UnsupportedInputError("John decomposition is implemented for origin-symmetric bodies")
    n = body.dim
    it = 0
    if isinstance(body, (Ball, Ellipsoid)):
        E = body
    else:
        V = body.vertices
        X = np.vstack([V, -V]).T
        Q, it = _khachiyan_centered(X)
        w, R = np.linalg.eigh(Q)
        E = linear_image(Ball(1.0, np.zeros(n)), R * np.sqrt(w)[None, :])
    r, a = _rot_params(E)
    return JohnDecomposition(E, 1.0 / n, r, a, it)
