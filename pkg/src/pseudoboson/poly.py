"""Complex-coefficient polynomials and the deformed Hermite-type family.

Polynomials are dense numpy vectors of complex coefficients in ascending
powers: ``p[k]`` multiplies ``x**k``. The canonical form is trimmed, with the
identically-zero polynomial represented as ``[0]``.

The central object is the family ``p_0 = 1``,
``p_{n+1}(x) = (2x + alpha) p_n(x) - p_n'(x)``, which shifts the physicists'
Hermite polynomials: ``p_n(x) = H_n(x + alpha/2)``. The same family has a
Rodrigues-type representation
``p_n(x) = (-1)^n e^{x^2+alpha x} d^n/dx^n e^{-(x^2+alpha x)}``
used here as an independent cross-check.
"""

from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npoly

# absolute threshold below which a coefficient counts as accumulation noise
TRIM_TOL = 1e-14


def trim(coeffs):
    """Canonical trimmed copy of a coefficient vector.

    Parameters
    ----------
    coeffs : array_like
        Ascending-power complex coefficients.

    Returns
    -------
    numpy.ndarray
        Complex vector with a nonzero leading coefficient, or ``[0]`` for
        the zero polynomial. Trailing coefficients with absolute value
        below ``TRIM_TOL`` are dropped.
    """
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    keep = np.nonzero(np.abs(c) > TRIM_TOL)[0]
    if keep.size == 0:
        return np.zeros(1, dtype=np.complex128)
    return c[: keep[-1] + 1].copy()


def degree(coeffs):
    """Degree of the trimmed polynomial; -1 for the zero polynomial."""
    c = trim(coeffs)
    if c.size == 1 and c[0] == 0:
        return -1
    return c.size - 1


def poly_eval(p, x):
    """Evaluate ``p`` at ``x`` (scalar or array) by Horner accumulation."""
    c = np.asarray(p, dtype=np.complex128)
    return npoly.polyval(x, c)


def poly_derivative(p):
    """Coefficient-wise derivative, trimmed."""
    c = np.asarray(p, dtype=np.complex128)
    if c.size <= 1:
        return np.zeros(1, dtype=np.complex128)
    return trim(c[1:] * np.arange(1, c.size))


def _shift_times_linear(p, alpha):
    """(2x + alpha) * p, without trimming."""
    c = np.asarray(p, dtype=np.complex128)
    out = np.zeros(c.size + 1, dtype=np.complex128)
    out[1:] += 2.0 * c
    out[:-1] += alpha * c
    return out


@lru_cache(maxsize=128)
def _family_cached(alpha, n_max):
    polys = [np.ones(1, dtype=np.complex128)]
    for n in range(n_max):
        p = polys[n]
        nxt = _shift_times_linear(p, alpha)
        dp = poly_derivative(p)
        nxt[: dp.size] -= dp
        polys.append(nxt)
    for p in polys:
        p.flags.writeable = False
    return tuple(polys)


def build_pn_family(alpha, n_max):
    """Build ``[p_0, ..., p_n_max]`` by the defining recursion.

    Parameters
    ----------
    alpha : complex
        Deformation constant of the linear term.
    n_max : int
        Highest family index, ``n_max >= 0``.

    Returns
    -------
    list of numpy.ndarray
        Ascending-power coefficient vectors; ``p_n`` has degree n and
        leading coefficient ``2**n``.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return [p.copy() for p in _family_cached(complex(alpha), int(n_max))]


def pn_rodrigues(alpha, n):
    """Rodrigues-form construction of ``p_n``.

    Differentiates ``e^{-(x^2+alpha x)}`` symbolically: with
    ``d^n/dx^n e^{-(x^2+alpha x)} = q_n(x) e^{-(x^2+alpha x)}`` the cofactor
    obeys ``q_{k+1} = q_k' - (2x+alpha) q_k`` and ``p_n = (-1)^n q_n``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    alpha = complex(alpha)
    q = np.ones(1, dtype=np.complex128)
    for _ in range(n):
        lead = _shift_times_linear(q, alpha)
        dq = poly_derivative(q)
        nxt = -lead
        nxt[: dq.size] += dq
        q = nxt
    return trim((-1.0) ** n * q)
