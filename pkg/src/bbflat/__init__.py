"""Exact-arithmetic toolkit for even integral lattices: monodromy invariants
of primitive isotropic classes, associated K3 lattices, and period-domain
density certificates over real quadratic fields."""

from .classify import (
    MukaiSetup,
    OrbitInvariant,
    brute_force_orbit_count,
    classify_isotropic,
    construct_alpha,
    enumerate_orbit_reps,
    mukai_example,
    nu,
    reduce_gram_to_Lnd,
    stabilized_orbit_count,
)
from .density import DensityCertificate, density_approximate, reverify_certificate
from .k3assoc import (
    Embedding,
    K3Association,
    associate_k3,
    find_gamma,
    sigma_gamma,
    standard_embedding,
    tau_tilde_gamma,
)
from .lattice import (
    IntLattice,
    LatticeVec,
    SnfDecomposition,
    SublatticeBasis,
    direct_sum,
    discriminant_group,
    divisibility,
    is_primitive,
    orthogonal_complement,
    pairing,
    quotient_group_order,
    quotient_mod_isotropic,
    reflection,
    saturation,
    signature,
    smith_normal_form,
    standard_lattice,
)
from .periods import (
    Period,
    g_act,
    is_special,
    make_period,
    periods_projectively_equal,
    q_project,
    sample_nonspecial_period,
    tau_section,
    tilde_g,
)
from .quadfield import QuadScalar

__version__ = "0.1.0"

__all__ = [
    "DensityCertificate", "Embedding", "IntLattice", "K3Association",
    "LatticeVec", "MukaiSetup", "OrbitInvariant", "Period", "QuadScalar",
    "SnfDecomposition", "SublatticeBasis", "associate_k3",
    "brute_force_orbit_count", "classify_isotropic", "construct_alpha",
    "density_approximate", "direct_sum", "discriminant_group", "divisibility",
    "enumerate_orbit_reps", "find_gamma", "g_act", "is_primitive",
    "is_special", "make_period", "mukai_example", "nu",
    "orthogonal_complement", "pairing", "periods_projectively_equal",
    "q_project", "quotient_group_order", "quotient_mod_isotropic",
    "reduce_gram_to_Lnd", "reflection", "reverify_certificate",
    "sample_nonspecial_period", "saturation", "sigma_gamma", "signature",
    "smith_normal_form", "stabilized_orbit_count", "standard_embedding",
    "standard_lattice", "tau_section", "tau_tilde_gamma", "tilde_g",
]
