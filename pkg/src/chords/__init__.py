"""Chord integrals, chord measures and the L_p chord Minkowski problem."""

from .special import omega, ball_chord_integral, ball_chord_integral_printed
from .bodies import (Ball, Ellipsoid, HPolytope, VPolytope, ball, cube, support_eval, radial_eval,
                     xray, linear_image)
from .grids import SphericalGrid, SupportVector, circle_grid, sphere_grid
from .estimates import Estimate, DiscreteMeasure, LineSamplerConfig
from .polytope import wulff_shape, volume_and_facet_data
from .john import john_ellipsoid
from .dual import dual_quermass
from .integral import (chord_integral_crofton, chord_integral_boundary, chord_measure_polytope,
                       lp_chord_measure)
from .params import ProblemParams, EpsilonMaps

__version__ = "0.1.0"

__all__ = [
    "omega", "ball_chord_integral", "ball_chord_integral_printed",
    "Ball", "Ellipsoid", "HPolytope", "VPolytope", "ball", "cube", "support_eval", "radial_eval", "xray", "linear_image",
    "SphericalGrid", "SupportVector", "circle_grid", "sphere_grid",
    "Estimate", "DiscreteMeasure", "LineSamplerConfig",
    "wulff_shape", "volume_and_facet_data", "john_ellipsoid", "dual_quermass",
    "chord_integral_crofton", "chord_integral_boundary", "chord_measure_polytope", "lp_chord_measure",
    "ProblemParams", "EpsilonMaps",
]
