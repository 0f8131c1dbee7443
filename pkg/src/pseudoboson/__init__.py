"""Pseudo-boson systems from superpotential pairs, with numerical verification.

The package builds ladder-operator pairs (a, b) with [a, b] = 1 from
superpotential pairs on the real line, constructs their biorthogonal
eigenfamilies in closed form, and checks the structural claims numerically:
commutation and ladder relations, biorthogonality, Riesz-basis sufficiency,
intertwining, bi-coherent resolutions of the identity, and the displaced-pair
obstruction on truncated Fock spaces.
"""

from .coherent import (
    BiCoherentPair,
    Z_LATTICE,
    bicoherent_state,
    eigen_residual,
    resolution_check,
)
from .diagnostics import (
    INCONCLUSIVE,
    NOT_RIESZ,
    RIESZ_SUFFICIENT,
    RieszVerdict,
    bessel_partial_sums,
    expand,
    frame_apply,
    reconstruct,
    riesz_ratio_sup,
)
from .fock import (
    DisplacedSystem,
    LinearDeformation,
    displaced_gram,
    displaced_system,
    displaced_vectors,
    fock_ladders,
    gram_scalar,
    linear_deformation_system,
    mixed_resolution_scalar,
    norm_growth_check,
    position_coherent,
    proposition_resolution_check,
    v_operator_identity,
)
from .poly import build_pn_family, pn_rodrigues, poly_derivative, poly_eval
from .quad import (
    QuadratureGrid,
    disk_grid,
    gram_matrix,
    inner_product,
    pairing_normalizer,
    real_line_grid,
)
from .system import (
    DecayCertificate,
    SuperpotentialSystem,
    decay_certificate,
    make_system,
)
from .wavefun import (
    WaveFunction,
    apply_S,
    apply_op,
    eval_wavefunction,
    family_values,
    hat_phi_n,
    phi_n,
    psi_n,
)

__version__ = "0.1.0"
