"""Exact construction and verification of Leibniz algebras with nilradical L2(n)."""

from .core import (
    IdentityViolation,
    LinearMap,
    StructureTensor,
    basis_vector,
    bracket,
    check_left_leibniz,
    check_leibniz,
    check_lie,
    check_right_leibniz,
    derivation_defects,
    is_derivation,
    left_mult,
    operator_law_defects,
    right_mult,
    transform_basis,
)
from .derivations import (
    DerivationSpace,
    TracePencil,
    derivation_space,
    inner_derivations,
    is_nilpotent_map,
    nil_independent_pair,
    trace_pencil,
)
from .errors import DescriptorError, InvalidTransformError, LeibnizError, PreconditionError, UsageError
from .families import AlgebraDescriptor, DerivedCoefficient, build, expected_invariants, sample_params
from .kernels import BACKEND
from .quotients import (
    IdealCertificate,
    ideal_closure,
    quotient_algebra,
    squares_ideal,
    verify_nilradical_certificate,
)
from .series import (
    SeriesResult,
    Subspace,
    center,
    derived_series,
    is_nilpotent,
    is_quasi_filiform,
    is_solvable,
    lower_central_series,
    nil_index,
    product_space,
)
from .transforms import ShapePattern, TransformStep, absorption_step, iso_witness_check, verify_chain

__version__ = "0.1.0"
