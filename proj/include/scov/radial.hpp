#pragma once

// Radial integration of the Liouville equation with nonnegative source,
//
//     u'' + u'/r + e^u = f(r),   u(0) = v0,  u'(0) = 0,
//
// together with the per-radius quantities the comparison principle is built
// from: the boundary flux 2 pi r |u'(r)|, the enclosed mass
// int_{B_r} e^u dy, the supersolution inequality
//
//     int_{partial B_r} |grad psi| ds  <=  int_{B_r} e^psi dy,
//
// and the certification that any strictly decreasing radial Lipschitz psi
// satisfying it with psi(0) = 2 ln b dominates the bubble U_b in mass at
// every radius.
//
// The integrator is a classical 4th-order one-step scheme with fixed step
// h = R/n. The u'/r term is regular-singular at the origin, so the first
// step is taken by the series
//
//     u(r) = v0 + c2 r^2 + c3 r^3 + c4 r^4,
//     c2 = (f(0) - e^{v0})/4,  c3 = f'(0)/9,
//     c4 = (f''(0)/2 - e^{v0} c2)/16,
//
// whose r^3/r^4 terms keep the launch error at the same 4th order as the
// marching scheme even when f'(0) != 0.
//
// Inequality checks carry a self-calibrated slack eps_disc, estimated by
// re-evaluating the discretized quantity on the half grid (every other
// node) and taking twice the observed difference.

#include "scov/bubbles.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace scov {

struct RadialProfile {
    std::vector<double> radius_nodes;     // strictly increasing, starts at 0
    std::vector<double> values;
    std::vector<double> derivative_values; // derivative 0 at the origin node
    bool strictly_decreasing = false;
    Normalization norm = Normalization::EXP_U;

    std::size_t size() const { return radius_nodes.size(); }
};

// Validates the node structure (>= 3 nodes, first node exactly 0 with zero
// derivative, strictly increasing radii), fills the monotonicity flag.
RadialProfile make_profile(std::vector<double> radii,
                           std::vector<double> values,
                           std::vector<double> derivatives,
                           Normalization norm = Normalization::EXP_U);

// Exact bubble U_lambda sampled on a uniform grid of n intervals over [0, R].
RadialProfile bubble_profile(double lambda, double R, int n);

// Nonnegative radial source term. All three kinds carry analytic first and
// second derivatives for the series launch and for quadrature correction.
struct SourceSpec {
    enum class Kind { ZERO, CONSTANT, GAUSSIAN_BUMP };

    Kind kind = Kind::ZERO;
    double value = 0.0;      // CONSTANT
    double amplitude = 0.0;  // GAUSSIAN_BUMP
    double center = 0.0;
    double width = 1.0;

    static SourceSpec zero();
    static SourceSpec constant(double value);
    static SourceSpec gaussian_bump(double amplitude, double center,
                                    double width);

    double operator()(double r) const;
    double derivative(double r) const;
    double second_derivative(double r) const;
};

// Integration aborted because the solution exceeded the overflow guard
// (u > 50); carries the last radius at which the solution was still valid.
struct BlowUpError : std::runtime_error {
    double last_valid_radius;
    explicit BlowUpError(double r)
        : std::runtime_error("radial solution blow-up at r = "
                             + std::to_string(r)),
          last_valid_radius(r) {}
};

// Integrate the radial equation on [0, R] with n >= 64 intervals.
RadialProfile solve_radial(const SourceSpec& f, double v0, double R, int n);

// 2 pi r |u'(r)| at a node radius. Requires a strictly decreasing profile
// (so the integrand |grad u| on the circle is -u').
double radial_flux(const RadialProfile& p, double r);

// int_{B_r} e^{w u} dy at a node radius (w = 1 for EXP_U, 2 for EXP_2V),
// by derivative-corrected trapezoid quadrature on the node grid (4th order).
double enclosed_mass(const RadialProfile& p, double r);

// Cumulative enclosed mass at every node, same quadrature.
std::vector<double> enclosed_mass_table(const RadialProfile& p);

// Self-calibrated discretization slack for mass-based inequality checks:
// twice the largest difference between the mass table and its half-grid
// re-evaluation, taken over the shared nodes.
double mass_discretization_slack(const RadialProfile& p);

// Green-identity residual 2 pi r u'(r) + int_{B_r} (e^u - f) at every node;
// zero for exact solutions, O(h^4) for solved ones.
std::vector<double> green_identity_residuals(const RadialProfile& p,
                                             const SourceSpec& f);

struct SupersolutionReport {
    std::vector<double> radii;    // interior nodes
    std::vector<double> margins;  // enclosed mass - flux
    double min_margin = 0.0;
    double argmin_radius = 0.0;
    double eps_disc = 0.0;        // radial half-grid slack
    double extra_slack = 0.0;     // caller-supplied slack (e.g. 2D sampling)
    bool pass = false;
};

// Per-node supersolution margins for a strictly decreasing EXP_U profile;
// passes iff margin >= -(eps_disc + extra_slack) at every interior node.
// The optional extra_slack lets callers add error budgets the radial grid
// cannot see, such as the 2D sampling error behind a rearranged profile.
// Inequality failures are reported, not thrown.
SupersolutionReport check_supersolution(const RadialProfile& p,
                                        double extra_slack = 0.0);

struct ComparisonReport {
    bool precondition_ok = false;
    std::string refusal;          // nonempty iff certification was refused
    double center_gap = 0.0;      // psi(0) - 2 ln b
    double lipschitz_constant = 0.0; // max discrete slope magnitude
    double slope_ratio = 0.0;        // max slope / median slope
    SupersolutionReport supersolution;
    std::vector<double> radii;
    std::vector<double> margins;  // mass_psi(r) - bubble_area(b, r)
    double min_margin = 0.0;
    double argmin_radius = 0.0;
    double eps_disc = 0.0;
    double extra_slack = 0.0;
    bool pass = false;
};

// Comparison principle: requires psi(0) = 2 ln b within 1e-9, a discrete
// Lipschitz bound (slope ratios <= 1e6), and a passing supersolution check;
// then certifies mass_psi(r) >= bubble_area(b, r) - eps_disc at every node.
// extra_slack widens both the supersolution gate and the final judgement,
// for callers whose profiles carry error sources beyond the radial grid.
// When a precondition fails the report refuses to certify (margins left
// empty, refusal set) rather than claiming anything.
ComparisonReport comparison_check(const RadialProfile& psi, double b,
                                  double extra_slack = 0.0);

// EXP_U <-> EXP_2V change of normalization, v(s) = u(sqrt(2) s)/2. Exact on
// nodes (radii scale by 1/sqrt(2), values halve, derivatives scale by
// 1/sqrt(2)); enclosed masses halve. Involution up to rounding.
RadialProfile convert_normalization(const RadialProfile& p,
                                    Normalization from, Normalization to);

} // namespace scov
