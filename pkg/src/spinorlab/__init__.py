"""Clifford representations, twisted partially pure spinors and their symmetry groups."""

from spinorlab.clifford import (
    AntilinearStructure,
    CliffordRep,
    basis_spinor,
    build_rep,
    chirality,
    clifford_form,
    clifford_vector,
    structure_gamma,
)
from spinorlab.errors import (
    DimensionCapError,
    InconsistencyError,
    PreconditionError,
    SpinorLabError,
    UnsupportedError,
)
from spinorlab.group import (
    LieCRElement,
    SpinCRElement,
    act,
    branching_check,
    cover,
    embed_product,
    exp_lie,
    lift_rotation,
    lift_unitary,
    same_triple,
    stabilizer_algebra,
    transporter,
    transporter_spinc_r,
)
from spinorlab.pure import (
    OrientedTriple,
    PurityReport,
    extract_triple,
    is_partially_pure,
    isotropic_subspace,
    kernel_check,
    parity_sign,
    recover_coframe,
    so_r_structure,
    standard_spinor,
)
from spinorlab.twisted import (
    TwistedSpace,
    TwistedSpinor,
    TwoForm,
    act_twist_pair,
    act_vector,
    eta_form,
    twisted_space,
    verify_vanishing_identities,
)

__version__ = "0.1.0"
