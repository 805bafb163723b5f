# Relative tolerance for the symmetry check of the internal coupling u.
SYMMETRY_RTOL = 1e-12

# |phi^T phi| / (phi^H phi) below which a state counts as sitting at a branch point.
SELF_ORTHOGONALITY_TOL = 1e-6

# Off-diagonal c-product residual above which eigenvectors are re-biorthonormalized.
BIORTHOGONALITY_TOL = 1e-12

# Minimal |phi_prev^T phi_new| for an eigenvector to count as the continuation of a branch.
BRANCH_OVERLAP_MIN = 0.5

# Fixed-point convergence: |E - Re z(E)| <= FIXED_POINT_RTOL * max(1, |E|).
FIXED_POINT_RTOL = 1e-12

# Exceptional point accepted when sqrt(min gap^2) <= EP_RESIDUAL_RTOL * scale.
EP_RESIDUAL_RTOL = 1e-6

# Population / norm values below this are reported as underflow instead of producing NaN.
UNDERFLOW_THRESHOLD = 1e-300

# Condition number of (E - H_eff) above which the resolvent is treated as singular.
SINGULAR_CONDITION = 1e14

# Direct propagation step bound: h <= RK4_STEP_FACTOR * hbar / ||H||.
RK4_STEP_FACTOR = 0.01

# Minimal number of bins per channel for the discretized full-space model.
MIN_BINS = 100

# Significant digits for CSV floats (exact binary round-trip).
CSV_FLOAT_FORMAT = ".17g"
