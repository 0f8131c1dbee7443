"""Quadrature grids, weighted inner products and Gram matrices.

Composite Gauss-Legendre panels are used on the real line instead of a
Gauss-Hermite rule because the example weights are not Gaussian
(``e^{-x^2/2 - sin x}`` and friends); tail truncation is justified by the
decay certificates of the system module. Disk rules are polar products:
Gauss-Legendre in radius, trapezoid in angle, with the radial Jacobian and
the 1/pi prefactor of the coherent-state measure folded into the weights.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import wavefun
from .errors import (
    ContractViolationError,
    DegenerateNormalizerError,
)
from .system import decay_certificate

REAL_LINE = "real_line"
DISK = "disk"

DEFAULT_L = 12.0
DEFAULT_DENSITY = 32
DEFAULT_R = 6.0
DEFAULT_RADIAL = 40
DEFAULT_ANGULAR = 64


@dataclass(frozen=True)
class QuadratureGrid:
    kind: str
    nodes: np.ndarray  # real scalars (real_line) or complex (disk)
    weights: np.ndarray  # strictly positive
    truncation: float  # L or R


def real_line_grid(L=DEFAULT_L, points_per_unit=DEFAULT_DENSITY):
    """Composite Gauss-Legendre rule over [-L, L].

    Parameters
    ----------
    L : float
        Truncation radius, at least 5.
    points_per_unit : int
        Gauss-Legendre nodes per unit-length panel, at least 16.
    """
    if L < 5:
        raise ContractViolationError("real_line_grid requires L >= 5")
    if points_per_unit < 16:
        raise ContractViolationError("real_line_grid requires >= 16 points per unit")
    n_panels = int(np.ceil(2 * L))
    edges = np.linspace(-L, L, n_panels + 1)
    xs, ws = leggauss(int(points_per_unit))
    nodes = []
    weights = []
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        nodes.append(half * xs + 0.5 * (a + b))
        weights.append(half * ws)
    return QuadratureGrid(
        kind=REAL_LINE,
        nodes=np.concatenate(nodes),
        weights=np.concatenate(weights),
        truncation=float(L),
    )


def disk_grid(R=DEFAULT_R, radial_points=DEFAULT_RADIAL, angular_points=DEFAULT_ANGULAR):
    """Polar product rule on the disk |z| <= R.

    Weights include the radial Jacobian r and the 1/pi prefactor, so
    ``sum(w * F(z))`` approximates ``(1/pi) * integral_disk F(z) d^2z`` and
    the weights sum to R^2.
    """
    if R < 3:
        raise ContractViolationError("disk_grid requires R >= 3")
    if radial_points < 40:
        raise ContractViolationError("disk_grid requires >= 40 radial points")
    if angular_points < 64:
        raise ContractViolationError("disk_grid requires >= 64 angular points")
    xs, ws = leggauss(int(radial_points))
    r = 0.5 * R * (xs + 1.0)
    wr = 0.5 * R * ws
    theta = 2.0 * np.pi * np.arange(angular_points) / angular_points
    dtheta = 2.0 * np.pi / angular_points
    nodes = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = ((wr * r)[:, None] * np.full(angular_points, dtheta / np.pi)).ravel()
    return QuadratureGrid(
        kind=DISK, nodes=nodes, weights=weights, truncation=float(R)
    )


def inner_product(f_values, g_values, grid):
    """Weighted pairing sum(w * conj(f) * g), conjugate-linear in ``f``."""
    f = np.asarray(f_values)
    g = np.asarray(g_values)
    if f.shape != g.shape or f.shape[-1] != grid.nodes.size:
        raise ContractViolationError("sampled values do not match the grid")
    return complex(np.sum(grid.weights * np.conj(f) * g))


def norm(f_values, grid):
    """L2 norm of a grid function."""
    return float(np.sqrt(inner_product(f_values, f_values, grid).real))


def pairing_normalizer(system, grid):
    """The raw pairing <Psi_0, phi_0> on the grid.

    Its closed form is sqrt(pi) e^{alpha^2/4 - beta} for every family.
    """
    phi0 = wavefun.eval_wavefunction(wavefun.phi_n(system, 0), grid.nodes)
    psi0 = wavefun.eval_wavefunction(wavefun.psi_n(system, 0), grid.nodes)
    value = inner_product(psi0, phi0, grid)
    if abs(value) < 1e-12:
        raise DegenerateNormalizerError(f"<Psi_0, phi_0> = {value!r}")
    return value


def gram_matrix(system, n_max, grid):
    """Normalized biorthogonality matrix G[n, m] = <Psi_n, phi_m>/<Psi_0, phi_0>.

    Decay certificates for both sides are required first (they control the
    truncation error of the window); their absence raises DecayError.

    Returns
    -------
    (G, normalizer) : (numpy.ndarray, complex)
        The normalized matrix and the raw pairing <Psi_0, phi_0>.
    """
    decay_certificate(system, "a", grid.truncation)
    decay_certificate(system, "b", grid.truncation)
    phi = wavefun.family_values(system, "phi", n_max, grid.nodes)
    psi = wavefun.family_values(system, "psi", n_max, grid.nodes)
    raw = (np.conj(psi) * grid.weights) @ phi.T
    normalizer = complex(raw[0, 0])
    if abs(normalizer) < 1e-12:
        raise DegenerateNormalizerError(f"<Psi_0, phi_0> = {normalizer!r}")
    return raw / normalizer, normalizer
