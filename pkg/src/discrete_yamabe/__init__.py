"""Discrete conformal factors on closed triangulated surfaces.

Extended curvature, the convex conformal energy, the extended discrete
Yamabe flow, a Newton solver for constant or prescribed curvature, and
the combinatorial subset test for existence of constant curvature.
"""

from .angles import GeneralizedAngles, extended_angles, generalized_angles
from .curvature import average_curvature, extended_curvatures
from .energy import (
    EnergyValue,
    HessianMatrix,
    TargetCurvature,
    energy_gradient,
    energy_hessian,
    total_energy,
    triangle_potential,
)
from .errors import DiscreteYamabeError
from .flow import FlowParams, FlowResult, estimate_decay_rate, integrate_flow
from .lobachevsky import lobachevsky
from .obstruction import ObstructionReport, check_luo_condition
from .solver import SolveParams, SolveResult, minimize_energy
from .surface import (
    DomainReport,
    PLMetric,
    Triangulation,
    build_triangulation,
    conformal_scale,
    in_conformal_domain,
)

__version__ = "0.1.0"

__all__ = [
    "DiscreteYamabeError",
    "DomainReport",
    "EnergyValue",
    "FlowParams",
    "FlowResult",
    "GeneralizedAngles",
    "HessianMatrix",
    "ObstructionReport",
    "PLMetric",
    "SolveParams",
    "SolveResult",
    "TargetCurvature",
    "Triangulation",
    "average_curvature",
    "build_triangulation",
    "check_luo_condition",
    "conformal_scale",
    "energy_gradient",
    "energy_hessian",
    "estimate_decay_rate",
    "extended_angles",
    "extended_curvatures",
    "generalized_angles",
    "in_conformal_domain",
    "integrate_flow",
    "lobachevsky",
    "minimize_energy",
    "total_energy",
    "triangle_potential",
]
