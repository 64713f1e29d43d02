"""quathom: Schur scalars of quaternionic Hodge projections, truncated
power-series rings, homogenizing automorphisms, and plane-union germ models."""

__version__ = "0.1.0"

from .errors import QuathomError
from .gaussian import GaussianRational
from .quatlin import (
    InducedComplexStructure,
    Quaternion,
    QuaternionModule,
    hodge_frame,
    make_structure,
    phi_endomorphism,
    scalar_of_phi,
    su2_commutation_check,
)
from .series import Ideal, SeriesRing, SubstitutionMap, TruncatedSeries
from .homog import (
    HomogenizingCertificate,
    LocalRingPresentation,
    check_homogenizing,
    eigen_coordinates,
    homogeneous_presentation,
    lhs_certificate_check,
    solve_shifted_eigen,
)
from .germ import (
    GermChart,
    PlaneUnionModel,
    homogenize_model,
    make_chart,
    make_plane_union,
    normalization_report,
    plane_union_ideal,
    psi_endomorphism,
    verify_psi_invariance,
)

__all__ = [
    "GaussianRational",
    "GermChart",
    "HomogenizingCertificate",
    "Ideal",
    "InducedComplexStructure",
    "LocalRingPresentation",
    "PlaneUnionModel",
    "Quaternion",
    "QuaternionModule",
    "QuathomError",
    "SeriesRing",
    "SubstitutionMap",
    "TruncatedSeries",
    "check_homogenizing",
    "eigen_coordinates",
    "hodge_frame",
    "homogeneous_presentation",
    "homogenize_model",
    "lhs_certificate_check",
    "make_chart",
    "make_plane_union",
    "make_structure",
    "normalization_report",
    "phi_endomorphism",
    "plane_union_ideal",
    "psi_endomorphism",
    "scalar_of_phi",
    "solve_shifted_eigen",
    "su2_commutation_check",
    "verify_psi_invariance",
]
