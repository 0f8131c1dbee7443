"""Truncated Fock-space models: displaced ladder pairs and linear deformations.

All operators live on a dim-dimensional truncation of the boson Fock space.
Truncation artifacts are confined to the highest levels, so operator
identities are asserted on top-left blocks and every constructed vector is
watched by a leakage monitor on its top-quarter coefficients.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ContractViolationError, ParameterError, TruncationError

_LEAK_TOL = 1e-8


@dataclass(frozen=True)
class DisplacedSystem:
    """Pair A = a - alpha, B = a_dag - beta with coherent-state vacua."""

    alpha: complex
    beta: complex
    dim: int
    A: np.ndarray
    B: np.ndarray
    phi0: np.ndarray  # vacuum of A: coherent state with amplitude alpha
    psi0: np.ndarray  # vacuum of B_dag: coherent state with amplitude conj(beta)


@dataclass(frozen=True)
class LinearDeformation:
    """Linear combinations of c, c_dag with unit commutator."""

    choice: int
    params: tuple
    dim: int
    A: np.ndarray
    B: np.ndarray


def fock_ladders(dim):
    """Truncated annihilation/creation matrices (a, a_dag)."""
    if dim < 2:
        raise ContractViolationError("fock_ladders requires dim >= 2")
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(np.complex128)
    return a, a.conj().T


def coherent_vector(amplitude, dim):
    """Normalized coherent state sum_n e^{-|u|^2/2} u^n/sqrt(n!) e_n."""
    return kernels.coherent_weights(np.array([amplitude], dtype=complex), dim - 1)[0]


def displaced_system(alpha, beta, dim):
    """Build the displaced pair with its biorthogonal vacua.

    The truncation guard dim >= 16 + 10 max(|alpha|, |beta|)^2 keeps the
    coherent vacua essentially supported inside the model space.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    guard = 16 + 10.0 * max(abs(alpha), abs(beta)) ** 2
    if dim < guard:
        raise TruncationError(f"dim={dim} below the guard {guard:.1f}")
    a, adag = fock_ladders(dim)
    eye = np.eye(dim, dtype=np.complex128)
    return DisplacedSystem(
        alpha=alpha,
        beta=beta,
        dim=dim,
        A=a - alpha * eye,
        B=adag - beta * eye,
        phi0=coherent_vector(alpha, dim),
        psi0=coherent_vector(np.conj(beta), dim),
    )


def _check_leakage(v, dim, label, leak_tol=_LEAK_TOL):
    head = np.linalg.norm(v) ** 2
    tail = np.linalg.norm(v[3 * dim // 4 :]) ** 2
    if head > 0 and tail / head > leak_tol:
        raise TruncationError(
            f"{label}: top-quarter mass {tail / head:.3e} exceeds {leak_tol:g}"
        )


def displaced_vectors(sys, n_max, leak_tol=_LEAK_TOL):
    """Families phi_n = B^n phi0/sqrt(n!) and Psi_n = (A_dag)^n psi0/sqrt(n!).

    ``leak_tol`` bounds the admissible relative top-quarter mass; checks that
    only need the low coefficient block (pairings against compactly supported
    duals, lower-bound norm checks) may relax it explicitly.
    """
    if n_max > sys.dim // 2:
        raise ContractViolationError("n_max must leave headroom: n_max <= dim/2")
    Adag = sys.A.conj().T
    phis = [sys.phi0]
    psis = [sys.psi0]
    for n in range(1, n_max + 1):
        phis.append(sys.B @ phis[-1] / math.sqrt(n))
        psis.append(Adag @ psis[-1] / math.sqrt(n))
        _check_leakage(phis[-1], sys.dim, f"phi_{n}", leak_tol)
        _check_leakage(psis[-1], sys.dim, f"psi_{n}", leak_tol)
    return np.array(phis), np.array(psis)


def displaced_gram(sys, n_max, leak_tol=_LEAK_TOL):
    """Pairing matrix G[n, m] = <phi_n, Psi_m>.

    Equals delta_{nm} exp(conj(alpha) conj(beta) - (|alpha|^2 + |beta|^2)/2);
    the scalar shows that biorthonormality holds only up to normalization.
    """
    phis, psis = displaced_vectors(sys, n_max, leak_tol)
    return np.conj(phis) @ psis.T


def gram_scalar(alpha, beta):
    """The closed-form pairing factor of the displaced family."""
    alpha, beta = complex(alpha), complex(beta)
    return np.exp(
        np.conj(alpha) * np.conj(beta) - 0.5 * (abs(alpha) ** 2 + abs(beta) ** 2)
    )


def norm_growth_check(sys, n_max, leak_tol=_LEAK_TOL):
    """Measured ||phi_n||^2 against the lower bound 1 + n |conj(alpha)-beta|^2.

    Returns a list of (n, measured, bound). Uniform boundedness of these
    norms is necessary for a Riesz basis, so growth here certifies the
    obstruction.
    """
    phis, _ = displaced_vectors(sys, n_max, leak_tol)
    gap = abs(np.conj(sys.alpha) - sys.beta) ** 2
    out = []
    for n, v in enumerate(phis):
        measured = float(np.linalg.norm(v) ** 2)
        out.append((n, measured, 1.0 + n * gap))
    return out


def v_operator_identity(sys, block=None):
    """Residual of V_Psi_dag V_phi = exp(alpha beta - (|alpha|^2+|beta|^2)/2).

    V_phi = e^{-|alpha|^2/2} e^{alpha a_dag} e^{-beta a} maps the Fock basis
    onto the displaced family, V_Psi mirrors it; both are built here from
    scaled-and-squared Taylor exponentials. The identity is checked on the
    top-left block (default dim/2) where truncation does not intrude.
    """
    dim = sys.dim
    if block is None:
        block = dim // 2
    if block > dim:
        raise ContractViolationError("block exceeds dim")
    a, adag = fock_ladders(dim)
    alpha, beta = sys.alpha, sys.beta
    v_phi = (
        math.exp(-0.5 * abs(alpha) ** 2)
        * kernels.expm(alpha * adag)
        @ kernels.expm(-beta * a)
    )
    v_psi = (
        math.exp(-0.5 * abs(beta) ** 2)
        * kernels.expm(np.conj(beta) * adag)
        @ kernels.expm(-np.conj(alpha) * a)
    )
    k = np.exp(alpha * beta - 0.5 * (abs(alpha) ** 2 + abs(beta) ** 2))
    resid = v_psi.conj().T @ v_phi - k * np.eye(dim, dtype=np.complex128)
    return float(np.linalg.norm(resid[:block, :block]))


def v_phi_matrix(sys):
    """The mapping operator V_phi as a dense truncated matrix."""
    a, adag = fock_ladders(sys.dim)
    return (
        math.exp(-0.5 * abs(sys.alpha) ** 2)
        * kernels.expm(sys.alpha * adag)
        @ kernels.expm(-sys.beta * a)
    )


def linear_deformation_system(choice, params, dim):
    """Linear ladder deformations with unit commutator.

    choice 2: A = c + s c_dag, B = s c + (1+s^2) c_dag for real |s| < 1.
    choice 3: A = p c + (p/mu) c_dag, B = mu (p^2-1)/p c + p c_dag for
    p > 1 and 1 < mu < 1 + 1/(p^2-1).
    """
    a, adag = fock_ladders(dim)
    if choice == 2:
        (s,) = params
        s = float(s)
        if not -1.0 < s < 1.0:
            raise ParameterError("choice 2 requires -1 < s < 1")
        A = a + s * adag
        B = s * a + (1.0 + s**2) * adag
        return LinearDeformation(choice=2, params=(s,), dim=dim, A=A, B=B)
    if choice == 3:
        p, mu = params
        p, mu = float(p), float(mu)
        if not p > 1.0:
            raise ParameterError("choice 3 requires p > 1")
        if not 1.0 < mu < 1.0 + 1.0 / (p**2 - 1.0):
            raise ParameterError("choice 3 requires 1 < mu < 1 + 1/(p^2-1)")
        A = p * a + (p / mu) * adag
        B = mu * (p**2 - 1.0) / p * a + p * adag
        return LinearDeformation(choice=3, params=(p, mu), dim=dim, A=A, B=B)
    raise ParameterError(f"unknown deformation choice {choice!r}")


def position_coherent(shift, z, x):
    """Position-representation coherent state eta(x; z + shift).

    eta(x; u) = pi^{-1/4} exp(-x^2/2 + sqrt(2) u x - Re(u)^2) is the
    normalized eigenfunction of (x + d/dx)/sqrt(2) with eigenvalue u, up to
    a fixed phase choice. For the displaced pair the A-eigenstate with
    eigenvalue z is eta(x; z + alpha) and the B_dag-eigenstate is
    eta(x; z + conj(beta)).
    """
    u = complex(z) + complex(shift)
    x = np.asarray(x, dtype=float)
    return math.pi ** (-0.25) * np.exp(-0.5 * x**2 + math.sqrt(2.0) * u * x - u.real**2)


def mixed_resolution_scalar(sys, f_values, g_values, grid, disk):
    """Both sides of the mixed coherent-dyad matrix element.

    Left: (1/pi) integral <f, eta(.; z+alpha)> <eta(.; z+conj(beta)), g> d^2z
    by disk-times-line quadrature. Right: the closed form
    e^{-(alpha_r-beta_r)^2/2} integral conj(f) g e^{i sqrt(2)(alpha_i+beta_i) x} dx.
    The two agree for square-integrable f, g; the prefactor shows the
    identity is recovered only in the collapse case beta = conj(alpha).

    Returns
    -------
    (lhs, rhs) : pair of complex
    """
    f = np.asarray(f_values, dtype=complex)
    g = np.asarray(g_values, dtype=complex)
    lhs = kernels.mixed_overlap(
        disk.nodes,
        disk.weights,
        grid.nodes,
        grid.weights,
        f,
        g,
        sys.alpha,
        np.conj(sys.beta),
    )
    ar, ai = sys.alpha.real, sys.alpha.imag
    br, bi = sys.beta.real, sys.beta.imag
    phase = np.exp(1j * math.sqrt(2.0) * (ai + bi) * grid.nodes)
    rhs = math.exp(-0.5 * (ar - br) ** 2) * complex(
        np.sum(grid.weights * np.conj(f) * g * phase)
    )
    return lhs, rhs


def ladder_vacuum(M):
    """Normalized numerical null vector of a truncated lowering operator.

    Computed as the right singular vector of the smallest singular value;
    raises TruncationError when the candidate is not annihilated to within
    truncation accuracy.
    """
    _, s, vh = np.linalg.svd(M)
    v = vh[-1].conj()
    resid = float(np.linalg.norm(M @ v))
    if resid > 1e-8:
        raise TruncationError(f"no normalizable vacuum: residual {resid:.3e}")
    return v


def proposition_resolution_check(basis_pair, f, g, disk, leak_tol=_LEAK_TOL):
    """Coherent-dyad resolution test for a deformed ladder pair.

    Builds tilde-coherent vectors exp(z B - conj(z) A) phi_0 and
    exp(z A_dag - conj(z) B_dag) Psi_0 through truncated matrix
    exponentials, seeded from the vacua of A and B_dag, and evaluates
    (1/pi) integral <f, phi~(z)> <Psi~(z), g> d^2z. For a Riesz-basis
    biorthogonal pair this reproduces <f, g>; the displaced pair with
    beta != conj(alpha) is the designed negative control.

    The second exponent is the negated adjoint of the first
    (z A_dag - conj(z) B_dag = -(z B - conj(z) A)^dag), so both factors
    come from one shared-series exponential pair per node.
    """
    A, B, dim = basis_pair.A, basis_pair.B, basis_pair.dim
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if f.size != dim or g.size != dim:
        raise ContractViolationError("f, g must be Fock coefficient vectors")
    if hasattr(basis_pair, "phi0"):
        phi0, psi0 = basis_pair.phi0, basis_pair.psi0
    else:
        phi0 = ladder_vacuum(A)
        psi0 = ladder_vacuum(B.conj().T)
    total = 0.0 + 0.0j
    for z, w in zip(disk.nodes, disk.weights):
        plus, minus = kernels.expm_pair(z * B - np.conj(z) * A)
        u = plus @ phi0
        v = minus.conj().T @ psi0  # e^{z A_dag - conj(z) B_dag} psi0
        _check_leakage(u, dim, f"tilde-phi({z:.2f})", leak_tol)
        _check_leakage(v, dim, f"tilde-psi({z:.2f})", leak_tol)
        total += w * np.vdot(f, u) * np.vdot(v, g)
    return complex(total)
