"""Closed-form eigenfamilies and exact ladder-operator actions.

Every wavefunction here is (scale) * (polynomial) * (exponential factor),
with the exponential factor one of

* ``TAG_PHI``: ``exp(-w_a(x))`` carrying the lowering-side family phi_n,
* ``TAG_PSI``: ``exp(-conj(w_b(x)))`` carrying the dual family Psi_n,
* ``TAG_HAT``: ``exp(-(x^2+alpha x)/2)`` carrying the orthonormalized family.

Normalization convention: phi_0(0) e^{w_a(0)} = Psi_0(0) e^{conj(w_b(0))} = 1,
so phi_0 = e^{-w_a} and scale_n = 1/sqrt(n! 2^n) on both sides.

Operator application stays inside the polynomial-times-exponential class and
is exact at coefficient level:

    a (p e^{-w_a})        = p'/sqrt(2) e^{-w_a}
    b (p e^{-w_a})        = (-p' + (2x+alpha) p)/sqrt(2) e^{-w_a}
    b_dag (q e^{-wb_bar}) = q'/sqrt(2) e^{-wb_bar}
    a_dag (q e^{-wb_bar}) = (-q' + (2x+conj(alpha)) q)/sqrt(2) e^{-wb_bar}

with N = b a and N_dag = a_dag b_dag.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels, poly
from .errors import ContractViolationError, UnboundedMultiplierError

TAG_PHI = "exp_wa"
TAG_PSI = "exp_wb_bar"
TAG_HAT = "exp_half_gauss"

OPS = ("a", "b", "a_dag", "b_dag", "N", "N_dag")
_LOWER_SIDE = {"a", "b", "N"}
_RAISE_SIDE = {"a_dag", "b_dag", "N_dag"}

# |multiplier| beyond e^690 overflows double precision
_LOG_OVERFLOW = 690.0


@dataclass(frozen=True)
class WaveFunction:
    poly: np.ndarray
    exp_tag: str
    scale: complex
    system: object


def _norm_scale(n):
    # 1/sqrt(n! 2^n), via lgamma to stay finite for large n
    return math.exp(-0.5 * (math.lgamma(n + 1) + n * math.log(2.0)))


def phi_n(system, n):
    """n-th lowering-side eigenfunction phi_n = p_n e^{-w_a}/sqrt(n! 2^n)."""
    if n < 0:
        raise ContractViolationError("n must be nonnegative")
    p = poly.build_pn_family(system.alpha, n)[n]
    return WaveFunction(poly=p, exp_tag=TAG_PHI, scale=_norm_scale(n), system=system)


def psi_n(system, n):
    """n-th dual eigenfunction, conjugate-coefficient polynomial times e^{-conj(w_b)}."""
    if n < 0:
        raise ContractViolationError("n must be nonnegative")
    p = poly.build_pn_family(np.conj(system.alpha), n)[n]
    return WaveFunction(poly=p, exp_tag=TAG_PSI, scale=_norm_scale(n), system=system)


def hat_phi_n(system, n):
    """Orthonormalized family member p_n e^{-(x^2+alpha x)/2} (real alpha only).

    The constant is fixed by the unit-pairing convention and makes the family
    orthonormal under the plain L2 inner product.
    """
    if system.is_complex:
        raise ContractViolationError(
            "orthonormalized family is only available for real alpha"
        )
    if n < 0:
        raise ContractViolationError("n must be nonnegative")
    alpha = system.alpha.real
    p = poly.build_pn_family(alpha, n)[n]
    scale = _norm_scale(n) * math.pi ** (-0.25) * math.exp(-(alpha**2) / 8.0)
    return WaveFunction(poly=p, exp_tag=TAG_HAT, scale=scale, system=system)


def zero_like(wf):
    return WaveFunction(
        poly=np.zeros(1, dtype=np.complex128),
        exp_tag=wf.exp_tag,
        scale=wf.scale,
        system=wf.system,
    )


def apply_op(op, wf):
    """Apply a ladder or number operator exactly at polynomial level."""
    if op not in OPS:
        raise ContractViolationError(f"unknown operator {op!r}")
    if op == "N":
        return apply_op("b", apply_op("a", wf))
    if op == "N_dag":
        return apply_op("a_dag", apply_op("b_dag", wf))
    if op in _LOWER_SIDE and wf.exp_tag != TAG_PHI:
        raise ContractViolationError(f"{op} acts on {TAG_PHI} functions only")
    if op in _RAISE_SIDE and wf.exp_tag != TAG_PSI:
        raise ContractViolationError(f"{op} acts on {TAG_PSI} functions only")

    p = wf.poly
    dp = poly.poly_derivative(p)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    if op in ("a", "b_dag"):
        new = dp * inv_sqrt2
    else:
        alpha = wf.system.alpha if op == "b" else np.conj(wf.system.alpha)
        lead = poly._shift_times_linear(p, alpha)
        lead[: dp.size] -= dp
        new = lead * inv_sqrt2
    return WaveFunction(
        poly=poly.trim(new), exp_tag=wf.exp_tag, scale=wf.scale, system=wf.system
    )


def total_coeffs(wf, length=None):
    """Scale-folded coefficient vector, zero-padded to ``length`` if given."""
    c = wf.scale * wf.poly
    if length is None:
        return c
    out = np.zeros(length, dtype=np.complex128)
    out[: c.size] = c[:length] if c.size > length else c
    return out


def exp_factor(system, tag, x):
    """Exponential factor of the given class evaluated on real nodes."""
    x = np.asarray(x)
    if tag == TAG_PHI:
        return np.exp(-system.w_a(x))
    if tag == TAG_PSI:
        return np.exp(-np.conj(system.w_b(x)))
    if tag == TAG_HAT:
        return np.exp(-(x**2 + system.alpha * x) / 2.0)
    raise ContractViolationError(f"unknown exponential tag {tag!r}")


def eval_wavefunction(wf, x):
    """Evaluate scale * poly(x) * exponential-factor(x) at real ``x``."""
    vals = wf.scale * poly.poly_eval(wf.poly, x) * exp_factor(wf.system, wf.exp_tag, x)
    return vals


def family_values(system, side, n_max, x):
    """Values of phi_0..phi_n or Psi_0..Psi_n (or the hat family) on nodes.

    Uses the normalized three-term recurrence, so the (n_max+1, len(x))
    result is stable up to n of order one hundred.
    """
    x = np.asarray(x, dtype=float)
    if side == "phi":
        r = kernels.family_values(x, system.alpha, n_max)
        return r * exp_factor(system, TAG_PHI, x)[None, :]
    if side == "psi":
        r = kernels.family_values(x, np.conj(system.alpha), n_max)
        return r * exp_factor(system, TAG_PSI, x)[None, :]
    if side == "hat":
        if system.is_complex:
            raise ContractViolationError(
                "orthonormalized family is only available for real alpha"
            )
        alpha = system.alpha.real
        r = kernels.family_values(x, alpha, n_max)
        c = math.pi ** (-0.25) * math.exp(-(alpha**2) / 8.0)
        return c * r * exp_factor(system, TAG_HAT, x)[None, :]
    raise ContractViolationError(f"unknown family side {side!r}")


def apply_S(system, f_values, x, direction="S"):
    """Map between the two families: S phi_n = Psi_n, S_inv Psi_n = phi_n.

    Realized as a pointwise multiplication fixed by S phi_0 = Psi_0 exactly:
    the forward multiplier is Psi_0/phi_0 for real systems. For complex
    systems the map is antilinear (conjugation followed by multiplication
    with Psi_0/conj(phi_0)), per the conjugation-operator form of the map.

    Raises
    ------
    UnboundedMultiplierError
        If the multiplier modulus exceeds the double range at some node.
    """
    if direction not in ("S", "S_inv"):
        raise ContractViolationError("direction must be 'S' or 'S_inv'")
    x = np.asarray(x, dtype=float)
    f_values = np.asarray(f_values, dtype=np.complex128)
    if f_values.shape[-1] != x.size:
        raise ContractViolationError("f_values and nodes have mismatched lengths")
    delta = system.w_a(x) - system.w_b(x)
    if system.is_complex:
        # S f = exp(conj(delta)) conj(f); S_inv f = exp(-delta) conj(f)
        log_m = np.conj(delta) if direction == "S" else -delta
    else:
        log_m = delta if direction == "S" else -delta
    log_mag = np.real(log_m)
    worst = int(np.argmax(log_mag))
    if log_mag[worst] > _LOG_OVERFLOW:
        raise UnboundedMultiplierError(x[worst], float(log_mag[worst]))
    if system.is_complex:
        return np.exp(log_m) * np.conj(f_values)
    return np.exp(log_m) * f_values
