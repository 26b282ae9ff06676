"""Dense matrix-pencil eigensolves backing the convergence diagnostics.

Solves L v = mu D v through the symmetric normalized form
D^{-1/2} L D^{-1/2}, back-transforming to a D-orthonormal eigenbasis.  The
relaxation spectrum follows as sigma_i = 1 - omega * mu_i, and the rate that
governs normalized-distance convergence is the second/third largest-magnitude
ratio theta.  Everything here is dense and meant for test-scale graphs.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .graph import Graph

__all__ = [
    "DENSE_CAP",
    "PencilEigen",
    "pencil_eigen",
    "theta_curve",
    "dense_eigen",
    "spectral_radius",
]

DENSE_CAP = 512

_DISCONNECT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PencilEigen:
    """Eigenpairs of the (Laplacian, degree) pencil.

    mu is ascending with mu[0] ~ 0; column i of vhat satisfies
    L vhat_i = mu_i D vhat_i, the columns are D-orthonormal
    (vhat.T @ D @ vhat = I), and each column's first nonvanishing component
    is positive.
    """

    mu: np.ndarray
    vhat: np.ndarray
    dweights: np.ndarray
    connected: bool

    @property
    def n(self) -> int:
        return self.mu.size

    def sigma(self, omega: float) -> np.ndarray:
        """Relaxation eigenvalues 1 - omega * mu, in pencil order."""
        return 1.0 - omega * self.mu

    def jor_eigs(self, omega: float) -> tuple[np.ndarray, np.ndarray]:
        """(sigma, vhat columns) sorted by |sigma| descending, stable."""
        sig = self.sigma(omega)
        order = np.argsort(-np.abs(sig), kind="stable")
        return sig[order], self.vhat[:, order]

    def sigma2(self, omega: float) -> float:
        """Second largest-magnitude relaxation eigenvalue (signed)."""
        if self.n < 2:
            raise ValueError("need at least two eigenvalues")
        return float(self.jor_eigs(omega)[0][1])

    def expand(self, x: np.ndarray) -> np.ndarray:
        """Coefficients of x in the D-orthonormal basis: vhat^T D x."""
        x = np.asarray(x, dtype=np.float64)
        return self.vhat.T @ (self.dweights * x)

    def cutting_point(self) -> float:
        """omega where the slow mode switches ends of the spectrum."""
        return 2.0 / (self.mu[1] + self.mu[-1])

    def ratio_limit_degenerate(self, rtol: float = 1e-9) -> bool:
        """True when mu_2 ~ mu_3 or mu_{n-1} ~ mu_n (no clean slow mode)."""
        if self.n < 3:
            return False
        scale = max(abs(self.mu[-1]), 1.0)
        lo = abs(self.mu[2] - self.mu[1]) <= rtol * scale
        hi = abs(self.mu[-1] - self.mu[-2]) <= rtol * scale
        return bool(lo or hi)


def pencil_eigen(g: Graph, max_n: int = DENSE_CAP) -> PencilEigen:
    """Full dense eigensolve of the (L, D) pencil.

    Raises on graphs above max_n vertices or with isolated vertices.  A
    disconnected graph is legal but flagged (connected=False) and warned
    about, since mu[1] ~ 0 then carries no rate information.
    """
    if g.n > max_n:
        raise ValueError(f"dense pencil solve limited to n <= {max_n}, got {g.n}")
    d = g.degree_weights
    if d.size == 0 or d.min() <= 0.0:
        raise ValueError("graph has an isolated vertex (zero weighted degree)")
    W = g.adj.toarray()
    inv_sqrt = 1.0 / np.sqrt(d)
    S = np.eye(g.n) - (W * inv_sqrt[:, None]) * inv_sqrt[None, :]
    S = 0.5 * (S + S.T)
    mu, U = scipy.linalg.eigh(S)
    vhat = U * inv_sqrt[:, None]
    # sign convention: first component of noticeable size is positive
    for col in range(vhat.shape[1]):
        v = vhat[:, col]
        nz = np.flatnonzero(np.abs(v) > 1e-12 * max(1.0, np.abs(v).max()))
        if nz.size and v[nz[0]] < 0.0:
            vhat[:, col] = -v
    connected = bool(g.n == 1 or mu[1] > _DISCONNECT_TOL * max(1.0, mu[-1]))
    if not connected:
        warnings.warn("graph appears disconnected: mu_2 ~ 0", stacklevel=2)
    return PencilEigen(mu=mu, vhat=vhat, dweights=d.copy(), connected=connected)


def theta_curve(eig: PencilEigen, omegas) -> list[tuple[float, float]]:
    """Convergence-rate ratio theta(omega) over a grid of damping factors.

    For each omega the relaxation magnitudes |1 - omega * mu_i| are sorted
    descending (the leader is always 1, from mu_1 = 0) and
    theta = third/second.  theta is NaN at the cutting point, where the two
    ends of the spectrum tie and the ratio limit is undefined.  Graphs whose
    mu_2 ~ mu_3 or mu_{n-1} ~ mu_n get a degeneracy warning; values are
    still returned.
    """
    if eig.n >= 3 and eig.ratio_limit_degenerate():
        warnings.warn(
            "pencil spectrum is degenerate for the ratio limit "
            "(mu_2 ~ mu_3 or mu_{n-1} ~ mu_n)", stacklevel=2)
    mu_max = eig.mu[-1]
    # a two-point spectrum has no end-switch, hence no cutting point
    cut = eig.cutting_point() if eig.n >= 3 else np.inf
    out: list[tuple[float, float]] = []
    for omega in np.atleast_1d(np.asarray(omegas, dtype=np.float64)):
        w = float(omega)
        if not (0.0 < w < 2.0 / mu_max):
            raise ValueError(
                f"omega must lie in (0, 2/mu_max) = (0, {2.0 / mu_max:.6g}), got {w}")
        if np.isfinite(cut) and abs(w - cut) <= 1e-12 * max(1.0, cut):
            out.append((w, float("nan")))
            continue
        mags = np.sort(np.abs(1.0 - w * eig.mu))[::-1]
        if eig.n < 3 or mags[1] == 0.0:
            out.append((w, 0.0))
        else:
            out.append((w, float(mags[2] / mags[1])))
    return out


def dense_eigen(m: np.ndarray) -> tuple[np.ndarray, np.ndarray | None]:
    """Eigendecomposition of a small dense matrix.

    Symmetric input gets the symmetric solver and returns (ascending
    eigenvalues, eigenvector columns); general input returns (complex
    eigenvalues sorted by real then imaginary part, None).
    """
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("m must be a square matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("m must be finite")
    scale = np.abs(a).max(initial=0.0)
    if np.allclose(a, a.T, rtol=1e-12, atol=1e-14 * max(scale, 1.0)):
        vals, vecs = scipy.linalg.eigh(a)
        return vals, vecs
    vals = np.sort_complex(np.linalg.eigvals(a))
    return vals, None


def spectral_radius(m: np.ndarray) -> float:
    """max |eigenvalue| of a small dense matrix."""
    vals, _ = dense_eigen(m)
    return float(np.abs(vals).max())
