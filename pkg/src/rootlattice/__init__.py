"""Exact root-system lattices, the groups Delta and Delta_dual, the map rho
between them and the pairing it induces.
"""

from .center import (
    FiniteAbelianGroup,
    GroupHom,
    PairingTable,
    QmodZ,
    coweight_quotient,
    duality_pairing,
    induced_pairing,
    rho,
    rho_kernel_class,
    weight_quotient,
)
from .reduction import build_maps, claim_check, partition, verify_lemma2
from .rootsys import (
    LatticeMap,
    RootSystem,
    TypeLabel,
    build,
    check_phi_properties,
    fundamental_coweights,
    fundamental_weights,
    phi,
    phi_dual,
    product,
)
from .zlinalg import IntMatrix, RatMatrix, hnf, invert_rational, snf, solve_in_lattice

__version__ = "0.1.0"
