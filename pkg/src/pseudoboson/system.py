"""Superpotential pairs and the built-in example families.

A system is a pair of superpotentials constrained by
``W_a(x) + W_b(x) = 2x + alpha`` together with their antiderivatives
``w_a, w_b`` satisfying ``w_a(x) + w_b(x) = x^2 + alpha x + beta``.

Integration-constant convention: ``w_a(0) = w_b(0) = 0``, hence ``beta = 0``
for every built-in family. The free constants of the individual examples are
absorbed into the wavefunction normalization, where they cancel.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolationError, DecayError, ParameterError

GAUSSIAN = "gaussian"
COSINE = "cosine"
BOUNDED_PHI = "bounded_phi"
SHIFTED = "shifted"

FAMILIES = (GAUSSIAN, COSINE, BOUNDED_PHI, SHIFTED)

# named bounded perturbations for the bounded_phi family: value, derivative,
# lower bound, upper bound
BOUNDED_PHI_REGISTRY = {
    "tanh": (np.tanh, lambda x: 1.0 / np.cosh(x) ** 2, -1.0, 1.0),
    "arctan": (np.arctan, lambda x: 1.0 / (1.0 + x**2), -math.pi / 2, math.pi / 2),
}


@dataclass(frozen=True)
class SuperpotentialSystem:
    family_id: str
    alpha: complex
    beta: complex
    W_a: object
    W_b: object
    w_a: object
    w_b: object
    phi_params: dict = field(default_factory=dict)
    is_complex: bool = False

    def __hash__(self):
        return hash((self.family_id, self.alpha, self.beta, id(self.W_a)))


@dataclass(frozen=True)
class DecayCertificate:
    """Certified bound |e^{-w_side(x)}| <= C e^{-delta |x|} on the window."""

    side: str
    C: float
    delta: float
    verified_domain: tuple


def _check_alpha(alpha):
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise ParameterError("alpha must be finite")
    return alpha


def make_system(family_id, alpha, params=None):
    """Construct a built-in superpotential system.

    Parameters
    ----------
    family_id : str
        One of ``gaussian``, ``cosine``, ``bounded_phi``, ``shifted``.
    alpha : complex
        Integration constant of the superpotential constraint.
    params : dict, optional
        For ``bounded_phi``: either ``{"phi_name": <registry key>}`` or
        explicit ``{"phi": f, "dphi": f', "phi_min": m, "phi_max": M}``.
        Declared bounds are enforced by sampling.
    """
    alpha = _check_alpha(alpha)
    params = dict(params or {})
    beta = 0.0 + 0.0j
    is_complex = alpha.imag != 0.0

    if family_id == GAUSSIAN:
        W_a = lambda x: np.asarray(x, dtype=np.complex128)
        W_b = lambda x: np.asarray(x, dtype=np.complex128) + alpha
        w_a = lambda x: np.asarray(x, dtype=np.complex128) ** 2 / 2.0
        w_b = lambda x: np.asarray(x, dtype=np.complex128) ** 2 / 2.0 + alpha * x
        phi_params = {}
    elif family_id == COSINE:
        W_a = lambda x: x + np.cos(x) + 0.0j
        W_b = lambda x: x - np.cos(x) + alpha
        w_a = lambda x: x**2 / 2.0 + np.sin(x) + 0.0j
        w_b = lambda x: x**2 / 2.0 - np.sin(x) + alpha * x
        phi_params = {}
    elif family_id == BOUNDED_PHI:
        phi, dphi, phi_min, phi_max = _resolve_bounded_phi(params)
        phi0 = float(phi(0.0))
        W_a = lambda x: x + dphi(x) + 0.0j
        W_b = lambda x: x - dphi(x) + alpha
        w_a = lambda x: x**2 / 2.0 + (phi(x) - phi0) + 0.0j
        w_b = lambda x: x**2 / 2.0 - (phi(x) - phi0) + alpha * x
        phi_params = {"phi": phi, "dphi": dphi, "phi_min": phi_min, "phi_max": phi_max}
    elif family_id == SHIFTED:
        # Phi(x) = alpha x / 2, which collapses both superpotentials onto
        # x + alpha/2: the shifted harmonic oscillator.
        W_a = lambda x: np.asarray(x, dtype=np.complex128) + alpha / 2.0
        W_b = W_a
        w_a = lambda x: np.asarray(x, dtype=np.complex128) ** 2 / 2.0 + alpha * x / 2.0
        w_b = w_a
        phi_params = {}
    else:
        raise ParameterError(f"unknown family {family_id!r}")

    return SuperpotentialSystem(
        family_id=family_id,
        alpha=alpha,
        beta=beta,
        W_a=W_a,
        W_b=W_b,
        w_a=w_a,
        w_b=w_b,
        phi_params=phi_params,
        is_complex=is_complex,
    )


def _resolve_bounded_phi(params):
    if "phi" in params:
        phi = params["phi"]
        dphi = params.get("dphi")
        if dphi is None:
            raise ParameterError("bounded_phi with explicit phi requires dphi")
        try:
            phi_min = float(params["phi_min"])
            phi_max = float(params["phi_max"])
        except KeyError as exc:
            raise ParameterError("bounded_phi requires phi_min and phi_max") from exc
    else:
        name = params.get("phi_name", "tanh")
        try:
            phi, dphi, phi_min, phi_max = BOUNDED_PHI_REGISTRY[name]
        except KeyError as exc:
            raise ParameterError(f"unknown bounded phi {name!r}") from exc
    x = np.linspace(-20.0, 20.0, 2001)
    vals = np.asarray(phi(x), dtype=float)
    if np.any(vals < phi_min - 1e-12) or np.any(vals > phi_max + 1e-12):
        raise ParameterError("sampled phi violates its declared bounds")
    return phi, dphi, phi_min, phi_max


def decay_certificate(system, side, L):
    """Certify Gaussian-dominated decay ``|e^{-w}| <= C e^{-|x|}`` on [-L, L].

    The constant is the grid supremum of ``|e^{-w(x)}| e^{|x|}``. The
    certificate is issued only when that supremum sits strictly inside the
    window and exceeds both endpoint values by a factor of two, i.e. decay
    has visibly set in before the truncation radius. Used as the
    sufficient-condition check behind completeness of the families.

    Raises
    ------
    DecayError
        When decay cannot be established on the window.
    """
    if L < 5:
        raise ContractViolationError("decay window requires L >= 5")
    if side not in ("a", "b"):
        raise ContractViolationError("side must be 'a' or 'b'")
    w = system.w_a if side == "a" else system.w_b
    x = np.linspace(-L, L, max(64 * int(math.ceil(L)), 512) + 1)
    log_g = np.abs(x) - np.real(w(x))
    k = int(np.argmax(log_g))
    if k == 0 or k == x.size - 1:
        raise DecayError(f"supremum at endpoint x={x[k]:g}; decay not established")
    margin = math.log(2.0)
    if log_g[k] < log_g[0] + margin or log_g[k] < log_g[-1] + margin:
        raise DecayError("endpoint values too close to the supremum")
    return DecayCertificate(
        side=side, C=float(np.exp(log_g[k])), delta=1.0, verified_domain=(-L, L)
    )
