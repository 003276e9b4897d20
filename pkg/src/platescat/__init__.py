"""Boundary-integral toolkit for flexural-wave scattering from clamped cavities.

Solves the two-dimensional fourth-order plate-wave scattering problem for a
clamped cavity by a Nystrom boundary integral method, provides an analytic
circle oracle, and ships executable checks for the representation, far-field,
reciprocity, symmetry, translation, and phaseless-data identities.
"""

from .geometry import Curve, DiscreteBoundary, contains_point, discretize, make_shape, translate
from .incident import (
    BoundaryData,
    EntireModifiedField,
    EntirePlaneField,
    PlaneWave,
    PointSourceBiharmonic,
    PointSourceHelmholtz,
    PointSourceModified,
    SuperpositionBiharmonic,
    boundary_data,
    eval_incident,
    interior_test_traces,
)
from .oracle import MieSolution, mie_farfield, mie_field, mie_solve
from .representation import CauchyData4, asymptotic_extract, displacement_layer, moment_layer
from .solver import (
    BoundaryOperators,
    FarField,
    ResonanceError,
    ScatteredField,
    TraceSolution,
    assemble_operators,
    eval_scattered,
    farfield_biharmonic,
    farfield_helmholtz,
    solve_traces,
)
from .verify import CheckReport, DEFAULT_TOLERANCES

__version__ = "0.1.0"
