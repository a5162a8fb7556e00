"""Numerical tolerances shared by every module."""

MEMBERSHIP_TOL = 1e-10      # point-in-body tests
DEGENERACY_TOL = 1e-14      # volume below this is a degenerate body
UNIT_TOL = 1e-12            # |u| = 1 precondition
ORTHO_TOL = 1e-12           # rotation matrices
SINGULAR_TOL = 1e-12        # |det M| for linear images
RHO_TOL = 1e-12             # boundary convention: directions with rho <= this are dropped
RIESZ_CUTOFF = 1e-12        # samples this close to z are discarded in the Riesz estimator
GRID_MASS_RTOL = 1e-10      # sum of grid weights vs sphere area
EVEN_RTOL = 1e-8
CLOSURE_RTOL = 1e-10
SOLVER_BOX = (1e-4, 1e4)
FLOAT_DIGITS = 17
