"""Exact localization formulas and Seiberg-Witten wall crossing."""
from .graded_algebra import (Algebra, AlgebraError, AlgebraSpec, Element,
                             GeneratorSpec, exterior_algebra, homogeneous_part,
                             integrate_top, make_algebra, point)
from .equivariant import (FixedComponent, HypothesisError, LaurentElement,
                          LineSummand, euler_class, fixed_point_contribution,
                          invert_euler, localize_star, localize_star_star)
from .seiberg_witten import (ManifoldData, WallCrossingResult, c1_ind, chern_ind,
                             expected_dimension, index_component, index_rank,
                             mu_class, pfaffian, torus, wall_crossing_general,
                             wall_crossing_simple, wall_crossing_via_localization)

__version__ = "0.1.0"
