#pragma once

// Quadrature and comparison operations on masked planar fields.
//
// Area integrals use the midpoint rule per cell (the bilinear value at a
// cell center is the mean of its four corner nodes) with boundary cells
// weighted by the exact circle/cell overlap for disk masks and by 4x4
// bilinear subsampling for level-set masks. Boundary integrals parametrize
// the mask circle and apply the periodic trapezoid rule, which converges
// spectrally for smooth integrands.
//
// The source term of a field v is f = Delta v + e^{w v} (w = 1 for EXP_U,
// w = 2 for EXP_2V); exact solutions have f = 0 and the hypotheses of the
// covering inequalities ask for f2 >= f1 >= 0. Finite differences resolve
// f only to O(h^2), so every hypothesis check carries an explicit slack.

#include "scov/grid.hpp"

#include <stdexcept>
#include <vector>

namespace scov {

struct UnsupportedDomainError : std::runtime_error {
    explicit UnsupportedDomainError(const std::string& what)
        : std::runtime_error(what) {}
};

// Integral of e^{w v} over the mask region; weight_exponent w is 1 or 2.
double area_integral(const PlanarField& fld, int weight_exponent);

// Integral of e^{w v} over an explicit disk region (region must sit inside
// the grid; the field mask is ignored, the caller guarantees the region
// lies inside the domain of validity of the values).
double disk_area_integral(const PlanarField& fld, const DiskSpec& region,
                          int weight_exponent);

// max over masked nodes of v2 - v1; grids and masks must match.
double max_difference(const PlanarField& v1, const PlanarField& v2);

struct GapCheckReport {
    bool boundary_pass = false;
    bool interior_pass = false;
    bool pass = false;
    double c = 0.0;
    double tol = 0.0;
    // worst |(v2 - v1) - c| over boundary nodes of the mask
    double worst_boundary_dev = 0.0;
    double worst_boundary_x = 0.0;
    double worst_boundary_y = 0.0;
    // worst c - (v2 - v1) over interior nodes (positive = violation)
    double worst_interior_violation = 0.0;
    double worst_interior_x = 0.0;
    double worst_interior_y = 0.0;
    std::size_t boundary_nodes = 0;
    std::size_t interior_nodes = 0;
};

// Verifies v2 - v1 = c on the mask boundary (within tol) and
// v2 >= v1 + c - tol on interior nodes.
GapCheckReport boundary_gap_check(const PlanarField& v1, const PlanarField& v2,
                                  double c, double tol);

// Integral of e^{v/2} (half = true) or e^{v} over the boundary circle of a
// disk mask, periodic trapezoid rule with npoints samples.
double boundary_weighted_length(const PlanarField& fld, bool half,
                                int npoints = 2048);

// Same, over an explicit circle inside the grid.
double circle_weighted_length(const PlanarField& fld, const DiskSpec& circle,
                              bool half, int npoints = 2048);

struct RestrictedMask {
    std::vector<std::uint8_t> mask;
    std::vector<double> gap; // v2 - v1 at every node
    double level = 0.0;
    std::size_t count = 0;
    bool empty = true;
    bool connected = true;
};

// Sub-mask {v2 - v1 > c} of the common mask; connectedness re-checked.
// An empty result is signalled through the `empty` flag (caller treats it
// as M <= c).
RestrictedMask restrict_mask(const PlanarField& v1, const PlanarField& v2,
                             double c);

// Rebuilds a field using the restricted mask (LEVEL_SET kind carrying the
// gap table for boundary-cell subsampling). Throws if the restriction is
// disconnected.
PlanarField apply_restriction(const PlanarField& base,
                              const RestrictedMask& r);

// Source term f = Delta_h v + e^{w v} at interior masked nodes (all four
// neighbors masked); NaN elsewhere. w follows the field normalization.
std::vector<double> source_table(const PlanarField& fld);

// max |f| over interior masked nodes; 0 if there are none.
double max_interior_residual(const PlanarField& fld);

// Suggested slack for source-sign checks at this resolution: the O(h^2)
// finite-difference truncation scale 8 h^2 (1 + max_mask e^{w v}).
double source_check_slack(const PlanarField& fld);

// Suggested slack for boundary-gap checks: boundary nodes sit up to one
// cell off the true curve, so 4 h max |grad_h (v2 - v1)| over the mask.
double gap_check_slack(const PlanarField& v1, const PlanarField& v2);

// Exact rescaling between exponent conventions: e^{u} with u solving
// Delta u + e^u = f and e^{2v} with v(y) = u(sqrt(2) y) / 2. Grid
// coordinates shrink by sqrt(2), values halve (EXP_U -> EXP_2V); inverse
// for the other direction. Throws if fld.norm != from.
PlanarField convert_normalization(const PlanarField& fld, Normalization from,
                                  Normalization to);

// One quadrature sample of the pair (gap, weighted mass): full cells are
// split 2x2, boundary cells 4x4 with per-subcell coverage fractions, and
// gap / weight values are interpolated bilinearly at subcell centers.
// Deterministic row-major order. Used by the distribution function and
// the rearrangement.
struct WeightedSample {
    double gap = 0.0;  // v2 - v1 at the sample point
    double mass = 0.0; // e^{w v1} x covered subcell area
};

std::vector<WeightedSample> gap_mass_samples(const PlanarField& v1,
                                             const PlanarField& v2,
                                             int weight_exponent);

} // namespace scov
