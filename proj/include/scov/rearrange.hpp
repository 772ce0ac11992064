#pragma once

// Weighted equimeasurable symmetrization onto a model bubble disk.
//
// Given a pair v1, v2 on omega with gap g = v2 - v1, the distribution
// function beta(t) measures the superlevel sets {g > t} with the weight
// e^{v1}. The rearrangement transplants g onto a centered disk B_{R_a}
// carrying the model weight e^{U_a}, where R_a is fixed by matching the
// total weighted mass: bubble_area(a, R_a) = int_omega e^{v1}. The radial
// profile phi is the generalized inverse
//
//   phi(s) = sup { t : radius_for_mass(a, beta(t)) > s },
//
// nonincreasing, with phi(0) <= max gap and phi(R_a) >= the boundary gap.
// By construction the weighted measures match level by level (Cavalieri),
// so int_{B_{R_a}} e^{U_a + phi} reproduces int_omega e^{v2} up to the
// equimeasurability residual reported alongside phi.
//
// Numerically, beta comes from one sort of per-subcell samples with prefix
// sums; phi is recovered as a mass-bin average of the sample quantile
// (which converges where a pointwise generalized inverse would oscillate),
// floored at the declared boundary gap and made monotone; node derivatives
// are least-squares slopes over windows holding a fixed weighted mass, so
// they stay stable where the quantile has plateaus. The residual is the
// sup over a measure-uniform threshold grid of the mismatch between the
// model measure of {phi > t} and beta(t).
//
// The model scale a is tuned by choose_scale_a: the invariant K = a^2
// R_a^2 is kept while a grows until bubbles at scales a and a + M differ
// by less than eps in the mass they put on B_{R_a}, the numerical
// counterpart of the proof's freedom to push the model scale up.

#include "scov/field_ops.hpp"
#include "scov/radial.hpp"

#include <limits>
#include <vector>

namespace scov {

struct DistributionTable {
    std::vector<double> thresholds; // ascending in t (measure decreasing)
    std::vector<double> beta;       // weighted measure of {v2 - v1 > t}
    double total_mass = 0.0;        // weighted measure of all of omega
};

// Closed-form inverse of bubble_area: R with bubble_area(lambda, R) = m.
// Requires 0 <= m < 8 pi (the whole-plane bubble mass).
double radius_for_mass(double lambda, double m);

// Smallest scale a (up to the 2x doubling contract) such that
//   8 pi [ s/(8+s) - K/(8+K) ] < eps,  s = (a+M)^2 K / a^2,
// i.e. the bubbles at scales a and a + M put nearly the same mass on the
// model disk of invariant K = a^2 R_a^2. Monotone in a; found by doubling
// then bisection. eps >= 8 pi is vacuous and returns the minimal scale 1.
double choose_scale_a(double M, double K, double eps);

// Threshold grid with `levels` values uniformly spaced in measure (equal
// beta decrements), clamped below at floor_t. Duplicates from measure
// plateaus are collapsed; the result is ascending in t.
std::vector<double> measure_uniform_thresholds(const PlanarField& v1,
                                               const PlanarField& v2,
                                               double floor_t,
                                               int levels = 512);

// beta(t) at the given thresholds; one sort + prefix sums, strict
// superlevel sets. Below the sampled gap range beta is the total mass, at
// or above the top it is zero. The fields must share grid, mask, and
// normalization; thresholds must be finite.
DistributionTable distribution_beta(const PlanarField& v1,
                                    const PlanarField& v2,
                                    const std::vector<double>& thresholds);

struct RearrangementResult {
    double a = 0.0;          // model bubble scale
    double R_a = 0.0;        // model disk radius
    RadialProfile phi;       // rearranged gap profile on [0, R_a]
    double residual = 0.0;   // equimeasurability defect, sup over thresholds
    double mass = 0.0;       // sampled int_omega e^{v1}
    double phi_center = 0.0; // phi(0)
    double phi_edge = 0.0;   // phi(R_a); >= floor_level by construction
    bool edge_atom = false;  // beta carries an atom at the floor level
    double floor_level = 0.0;
};

// Rearranges the gap of (v1, v2) onto the model disk of scale a. The
// boundary floor defaults to the smallest sampled gap; passing the declared
// boundary constant c pins phi(R_a) >= c exactly (the sup convention, with
// any boundary atom flagged rather than resolved). radial_nodes defaults to
// 8x the planar cell count. EXP_U fields only; total mass must be < 8 pi.
RearrangementResult symmetrize(
    const PlanarField& v1, const PlanarField& v2, double a,
    double boundary_floor = std::numeric_limits<double>::quiet_NaN(),
    int radial_nodes = 0);

// psi = U_a + phi on phi's radial grid. Requires phi nonincreasing; the
// result is strictly decreasing and carries psi(0) = 2 ln a + phi(0).
RadialProfile compose_psi(double a, const RadialProfile& phi);

} // namespace scov
