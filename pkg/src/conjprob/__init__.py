"""Conjunction probabilities of smooth stationary Gaussian fields.

Asymptotic coefficients, the Euler-characteristic prediction, the
ball-intersection volume polynomial, and Monte Carlo checks for each.
"""
from .asymptotics import (
    AsymptoticCoefficient,
    conjunction_probability_asymptotic,
    proposition1_coefficient,
    theorem1_coefficient,
)
from .ec import (
    EcDensities,
    RMatrix,
    b_constants,
    ec_densities,
    ec_prediction,
    ec_volume_term,
    ec_volume_term_coefficient,
    identity_check,
)
from .exceptions import (
    ConjprobError,
    DomainError,
    InhomogeneousPolynomialError,
    SizeError,
    UnsupportedCaseError,
)
from .geometry import (
    BallConfiguration,
    DomainSpec,
    VolumePolynomial,
    ball_minkowski,
    balls_intersect,
    box_minkowski,
    coefficient_symmetric_form,
    intersection_volume_closed,
    intersection_volume_mc,
    intersection_volume_polynomial,
    intersection_volume_special,
    tube_volume_mc,
    weyl_tube_volume,
)
from .kernels import BACKEND
from .montecarlo import EstimateWithCI
from .simulation import (
    FieldModel,
    FieldSampler,
    PickandsPlan,
    SimulationPlan,
    compare_asymptotic,
    estimate_conjunction_probability,
    estimate_pickands,
    sample_field,
)
from .special import (
    flag_coefficient,
    gaussian_pdf,
    gaussian_tail,
    hermite,
    log_gamma,
    unit_ball_volume,
)

__version__ = "0.1.0"
