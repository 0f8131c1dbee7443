"""Hot numeric kernels, jitted with numba when available.

Backend selection happens once at import time through the environment
variable ``PSEUDOBOSON_NUMBA``:

* ``PSEUDOBOSON_NUMBA=0`` forces the pure-numpy implementations,
* ``PSEUDOBOSON_NUMBA=1`` requires numba (ImportError if missing),
* unset/auto: numba is used when it can be imported.

Every kernel has a vectorized numpy twin with identical semantics; the
benchmark in ``benchmarks/bench_kernels.py`` times both. Reductions are
sequential and deterministic within a backend.
"""

import cmath
import math
import os

import numpy as np

_QUARTER_PI = math.pi ** (-0.25)


def _want_numba():
    flag = os.environ.get("PSEUDOBOSON_NUMBA", "").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return False
    if flag in ("1", "true", "on", "yes"):
        return True
    return None  # auto


_choice = _want_numba()
if _choice is False:
    HAVE_NUMBA = False
    njit = None
else:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        if _choice is True:
            raise
        HAVE_NUMBA = False
        njit = None

USE_NUMBA = HAVE_NUMBA and _choice is not False


def backend():
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# normalized polynomial family on a grid
#
# r_n(x) = p_n(x) / sqrt(n! 2^n) with p_0 = 1, p_{n+1} = (2x+a)p_n - p_n',
# evaluated through the equivalent three-term recurrence
#   r_{n+1} = (2x+a) r_n / sqrt(2(n+1)) - sqrt(n/(n+1)) r_{n-1},
# which keeps magnitudes at Hermite-function scale.
# ---------------------------------------------------------------------------


def _family_values_numpy(x, alpha, n_max):
    r = np.empty((n_max + 1, x.size), dtype=np.complex128)
    r[0] = 1.0
    if n_max >= 1:
        r[1] = (2.0 * x + alpha) / math.sqrt(2.0)
    for n in range(1, n_max):
        r[n + 1] = (2.0 * x + alpha) * r[n] / math.sqrt(2.0 * (n + 1)) - math.sqrt(
            n / (n + 1)
        ) * r[n - 1]
    return r


def _family_values_loops(x, alpha, n_max):
    m = x.size
    r = np.empty((n_max + 1, m), dtype=np.complex128)
    for i in range(m):
        r[0, i] = 1.0 + 0.0j
    if n_max >= 1:
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        for i in range(m):
            r[1, i] = (2.0 * x[i] + alpha) * inv_sqrt2
    for n in range(1, n_max):
        c1 = 1.0 / math.sqrt(2.0 * (n + 1))
        c2 = math.sqrt(n / (n + 1))
        for i in range(m):
            r[n + 1, i] = (2.0 * x[i] + alpha) * r[n, i] * c1 - c2 * r[n - 1, i]
    return r


# ---------------------------------------------------------------------------
# coherent-series weights c_n(z) = exp(-|z|^2/2) z^n / sqrt(n!)
# ---------------------------------------------------------------------------


def _coherent_weights_numpy(z, n_max):
    c = np.empty((z.size, n_max + 1), dtype=np.complex128)
    c[:, 0] = np.exp(-0.5 * np.abs(z) ** 2)
    for n in range(n_max):
        c[:, n + 1] = c[:, n] * z / math.sqrt(n + 1)
    return c


def _coherent_weights_loops(z, n_max):
    m = z.size
    c = np.empty((m, n_max + 1), dtype=np.complex128)
    for j in range(m):
        c[j, 0] = cmath.exp(-0.5 * (z[j].real ** 2 + z[j].imag ** 2))
        for n in range(n_max):
            c[j, n + 1] = c[j, n] * z[j] / math.sqrt(n + 1)
    return c


# ---------------------------------------------------------------------------
# mixed coherent-dyad disk integral (position representation)
#
# eta(x; u) = pi^{-1/4} exp(-x^2/2 + sqrt(2) u x - Re(u)^2)
# result = sum_j wz_j [sum_i wf_i eta(x_i; z_j+sa)] [sum_i conj(eta(x_i; z_j+sb)) wg_i]
# with wf = w * conj(f) and wg = w * g premultiplied by the caller.
# ---------------------------------------------------------------------------


def _mixed_overlap_numpy(z, wz, x, wf, wg, shift_a, shift_b):
    total = 0.0 + 0.0j
    block = 256
    sqrt2 = math.sqrt(2.0)
    xx = -0.5 * x**2
    for start in range(0, z.size, block):
        zb = z[start : start + block]
        ua = zb[:, None] + shift_a
        ub = zb[:, None] + shift_b
        ea = _QUARTER_PI * np.exp(xx + sqrt2 * ua * x - ua.real**2)
        eb = _QUARTER_PI * np.exp(xx + sqrt2 * ub * x - ub.real**2)
        total += np.sum(wz[start : start + block] * (ea @ wf) * (np.conj(eb) @ wg))
    return total


def _mixed_overlap_loops(z, wz, x, wf, wg, shift_a, shift_b):
    total = 0.0 + 0.0j
    sqrt2 = math.sqrt(2.0)
    for j in range(z.size):
        ua = z[j] + shift_a
        ub = z[j] + shift_b
        ca = cmath.exp(-ua.real**2)
        cb = cmath.exp(-ub.real**2)
        s1 = 0.0 + 0.0j
        s2 = 0.0 + 0.0j
        for i in range(x.size):
            base = -0.5 * x[i] * x[i]
            ea = cmath.exp(base + sqrt2 * ua * x[i]) * ca
            eb = cmath.exp(base + sqrt2 * ub * x[i]) * cb
            s1 += wf[i] * ea
            s2 += eb.conjugate() * wg[i]
        total += wz[j] * s1 * s2 * (_QUARTER_PI * _QUARTER_PI)
    return total


# ---------------------------------------------------------------------------
# dense matrix exponential: scaled-and-squared Taylor series
# ---------------------------------------------------------------------------


def _expm_impl(m):
    dim = m.shape[0]
    norm1 = 0.0
    for j in range(dim):
        col = 0.0
        for i in range(dim):
            col += abs(m[i, j])
        if col > norm1:
            norm1 = col
    s = 0
    if norm1 > 0.5:
        s = int(math.ceil(math.log(norm1 / 0.5) / math.log(2.0)))
    t = m / (2.0**s)
    result = np.eye(dim, dtype=np.complex128)
    term = np.eye(dim, dtype=np.complex128)
    for k in range(1, 40):
        term = np.dot(term, t) / k
        result = result + term
        tmax = 0.0
        rmax = 0.0
        for i in range(dim):
            for j in range(dim):
                ta = abs(term[i, j])
                ra = abs(result[i, j])
                if ta > tmax:
                    tmax = ta
                if ra > rmax:
                    rmax = ra
        if tmax <= 1e-17 * rmax:
            break
    for _ in range(s):
        result = np.dot(result, result)
    return result


def _expm_numpy(m):
    norm1 = np.abs(m).sum(axis=0).max()
    s = 0
    if norm1 > 0.5:
        s = int(math.ceil(math.log2(norm1 / 0.5)))
    t = m / (2.0**s)
    dim = m.shape[0]
    result = np.eye(dim, dtype=np.complex128)
    term = np.eye(dim, dtype=np.complex128)
    for k in range(1, 40):
        term = term @ t / k
        result = result + term
        if np.abs(term).max() <= 1e-17 * np.abs(result).max():
            break
    for _ in range(s):
        result = result @ result
    return result


# e^{+M} and e^{-M} together: the scaled Taylor sums share all powers
# (even sum +/- odd sum), then each factor is squared separately.


def _expm_pair_impl(m):
    dim = m.shape[0]
    norm1 = 0.0
    for j in range(dim):
        col = 0.0
        for i in range(dim):
            col += abs(m[i, j])
        if col > norm1:
            norm1 = col
    s = 0
    if norm1 > 0.5:
        s = int(math.ceil(math.log(norm1 / 0.5) / math.log(2.0)))
    t = m / (2.0**s)
    plus = np.eye(dim, dtype=np.complex128)
    minus = np.eye(dim, dtype=np.complex128)
    term = np.eye(dim, dtype=np.complex128)
    sign = 1.0
    for k in range(1, 40):
        term = np.dot(term, t) / k
        sign = -sign
        plus = plus + term
        minus = minus + sign * term
        tmax = 0.0
        pmax = 0.0
        for i in range(dim):
            for j in range(dim):
                ta = abs(term[i, j])
                pa = abs(plus[i, j])
                if ta > tmax:
                    tmax = ta
                if pa > pmax:
                    pmax = pa
        if tmax <= 1e-17 * pmax:
            break
    for _ in range(s):
        plus = np.dot(plus, plus)
        minus = np.dot(minus, minus)
    return plus, minus


def _expm_pair_numpy(m):
    norm1 = np.abs(m).sum(axis=0).max()
    s = 0
    if norm1 > 0.5:
        s = int(math.ceil(math.log2(norm1 / 0.5)))
    t = m / (2.0**s)
    dim = m.shape[0]
    plus = np.eye(dim, dtype=np.complex128)
    minus = np.eye(dim, dtype=np.complex128)
    term = np.eye(dim, dtype=np.complex128)
    sign = 1.0
    for k in range(1, 40):
        term = term @ t / k
        sign = -sign
        plus = plus + term
        minus = minus + sign * term
        if np.abs(term).max() <= 1e-17 * np.abs(plus).max():
            break
    for _ in range(s):
        plus = plus @ plus
        minus = minus @ minus
    return plus, minus


# ---------------------------------------------------------------------------
# backend dispatch
# ---------------------------------------------------------------------------

if HAVE_NUMBA:
    _family_values_numba = njit(cache=True)(_family_values_loops)
    _coherent_weights_numba = njit(cache=True)(_coherent_weights_loops)
    _mixed_overlap_numba = njit(cache=True)(_mixed_overlap_loops)
    _expm_numba = njit(cache=True)(_expm_impl)
    _expm_pair_numba = njit(cache=True)(_expm_pair_impl)
else:
    _family_values_numba = None
    _coherent_weights_numba = None
    _mixed_overlap_numba = None
    _expm_numba = None
    _expm_pair_numba = None

if USE_NUMBA:
    _family_values = _family_values_numba
    _coherent_weights = _coherent_weights_numba
    _mixed_overlap = _mixed_overlap_numba
    _expm = _expm_numba
    _expm_pair = _expm_pair_numba
else:
    _family_values = _family_values_numpy
    _coherent_weights = _coherent_weights_numpy
    _mixed_overlap = _mixed_overlap_numpy
    _expm = _expm_numpy
    _expm_pair = _expm_pair_numpy


def family_values(x, alpha, n_max):
    """Normalized polynomial family p_n/sqrt(n! 2^n) on the nodes ``x``.

    Returns a complex (n_max+1, len(x)) matrix; row n holds the values of
    the degree-n family member. No exponential factor is applied here.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    return _family_values(x, complex(alpha), int(n_max))


def coherent_weights(z, n_max):
    """Series weights exp(-|z|^2/2) z^n/sqrt(n!) for each z, shape (len(z), n_max+1)."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    return _coherent_weights(z, int(n_max))


def mixed_overlap(z, wz, x, w, f, g, shift_a, shift_b):
    """Disk integral of <f, eta(.; z+shift_a)> <eta(.; z+shift_b), g>.

    The disk weights ``wz`` are expected to carry the 1/pi prefactor and the
    radial Jacobian already.
    """
    z = np.ascontiguousarray(z, dtype=np.complex128)
    wz = np.ascontiguousarray(wz, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    wf = np.ascontiguousarray(w * np.conj(f), dtype=np.complex128)
    wg = np.ascontiguousarray(w * np.asarray(g, dtype=np.complex128))
    return complex(_mixed_overlap(z, wz, x, wf, wg, complex(shift_a), complex(shift_b)))


def expm(m):
    """Matrix exponential by scaled-and-squared Taylor series."""
    m = np.ascontiguousarray(m, dtype=np.complex128)
    return _expm(m)


def expm_pair(m):
    """(e^{+M}, e^{-M}) from one shared Taylor series."""
    m = np.ascontiguousarray(m, dtype=np.complex128)
    return _expm_pair(m)


# both implementations of each kernel, for benchmarking and cross-checks
IMPLEMENTATIONS = {
    "family_values": {"numpy": _family_values_numpy, "numba": _family_values_numba},
    "coherent_weights": {
        "numpy": _coherent_weights_numpy,
        "numba": _coherent_weights_numba,
    },
    "mixed_overlap": {"numpy": _mixed_overlap_numpy, "numba": _mixed_overlap_numba},
    "expm": {"numpy": _expm_numpy, "numba": _expm_numba},
    "expm_pair": {"numpy": _expm_pair_numpy, "numba": _expm_pair_numba},
}
