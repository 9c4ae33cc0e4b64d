"""Twisted conjugacy invariants and growth of virtually abelian groups."""
from .group import (
    Endomorphism,
    GroupElement,
    VAGroupData,
    apply_endo,
    inverse,
    multiply,
    twist_data,
    twisted_conjugate,
    validate_endo,
    validate_group,
)
from .kernels import BACKEND
from .tc import (
    ClassCanonicalForm,
    ReidemeisterCount,
    canonical_form,
    are_twisted_conjugate,
    class_support_and_degree,
    coset_lattices,
    predicted_degrees,
    quotient_canonical_form,
    quotient_reidemeister,
    quotient_reidemeister_bruteforce,
    reidemeister_number,
)

__version__ = "0.1.0"
