#pragma once

// Closed-form objects of the planar Liouville equation
//
//     Delta u + e^u = 0   on R^2,
//
// whose radial solutions ("bubbles") are
//
//     U_lambda(r) = -2 ln(1 + lambda^2 r^2 / 8) + 2 ln(lambda),
//
// the conformal factors of spherical-cap metrics. The weighted area of a
// centered disk under e^{U_lambda} has the rational closed form
//
//     int_{B_R} e^{U_lambda} dy = 8 pi lambda^2 R^2 / (8 + lambda^2 R^2),
//
// increasing to the total mass 8 pi. Everything in this header is an exact
// formula (no discretization): bubble values, areas, the two-bubble gap on a
// circle, the matching radius where the gap equals a prescribed constant,
// the summed cap masses of a matched pair, and the deficit function
//
//     f(x, k) = (x^{2-k} - x^k)/(x^2 - 1) + k - 1,   x > 1, k in [0, 1],
//
// which is <= 0 there and encodes the sharp lower bound
//
//     int_{B_x}(e^{U_a} + e^{U_b}) >= 8 k pi      (x the matching radius),
//
// with equality exactly at k = 1 (complementary spherical caps). These
// formulas are the analytical oracles against which every discretized
// computation in the library is certified.
//
// Numerical care: f has a removable singularity at x = 1 where the direct
// quotient loses all significant digits; evaluation switches to a series in
// eps = x - 1 below eps = 1e-4. Logs of ratios use log1p/expm1 so that
// sweeps with b/a up to 1e3 and matched radii near degeneracy stay accurate.

#include <stdexcept>

namespace scov {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double four_pi = 4.0 * pi;
inline constexpr double eight_pi = 8.0 * pi;

// Which exponential normalization a field or profile lives in:
//   EXP_U:  Delta u + e^u  = f, masses int e^u,  sharp constant 8 pi
//   EXP_2V: Delta v + e^2v = f, masses int e^2v, sharp constant 4 pi
// The conversion EXP_U -> EXP_2V is v(y) = u(sqrt(2) y) / 2: halving the
// amplitude alone would change the nonlinearity coefficient, so the sqrt(2)
// coordinate dilation is analytically forced. Masses halve; the gap ratio
// c/M of a pair is invariant.
enum class Normalization { EXP_U, EXP_2V };

// Parameters of a two-bubble gap configuration: scales a < b, the matching
// fraction k in [0,1], the boundary gap c >= 0 and interior max gap M > 0.
// For concentric bubbles M = 2 ln(b/a) and c = 2(1-k) ln(b/a), so k = 1 - c/M.
struct GapParams {
    double a = 1.0;
    double b = 2.0;
    double k = 1.0;
    double c = 0.0;
    double M = 0.0;

    static GapParams from_bubbles(double a, double b, double k);
    static GapParams from_gaps(double a, double b, double c, double M);
};

// U_lambda(r); strictly decreasing in r, value 2 ln(lambda) at the origin.
double bubble_value(double lambda, double r);

// d/dr U_lambda(r) = -lambda^2 r / (2 (1 + lambda^2 r^2 / 8)).
double bubble_derivative(double lambda, double r);

// Centered-difference check that U_lambda solves the equation: returns
//   [u(r-h) - 2u(r) + u(r+h)]/h^2 + [u(r+h) - u(r-h)]/(2hr) + e^{u(r)},
// which is O(h^2). Requires r > h > 0.
double bubble_pde_residual(double lambda, double r, double h);

// int_{B_R} e^{U_lambda} = 8 pi lambda^2 R^2 / (8 + lambda^2 R^2) in [0, 8pi).
double bubble_area(double lambda, double R);

// The deficit function f(x,k) above. Requires x > 1 (the x -> 1+ limit is 0
// and is reached through the series branch); k in [0,1]. Returns a value
// <= 0, strictly negative for k in (0,1), identically 0 at k in {0,1}.
double cap_deficit(double x, double k);

// U_b(R) - U_a(R) = 2 ln(b/a) - 2 ln((8 + b^2 R^2)/(8 + a^2 R^2)).
// Strictly decreasing in R from 2 ln(b/a) at R = 0 to -2 ln(b/a).
double gap_on_circle(double a, double b, double R);

// The unique x > 0 with (8 + b^2 x^2)/(8 + a^2 x^2) = (b/a)^k, equivalently
// gap_on_circle(a, b, x) = 2(1-k) ln(b/a):
//     x^2 = 8 ((b/a)^k - 1) / (b^2 - (b/a)^k a^2).
// Requires b > a > 0 and k in (0, 1]; k <= 0 degenerates to x = 0 and is
// rejected, k > 1 is outside the certified range of the bound.
double matching_radius(double a, double b, double k);

// Summed normalized cap masses at radius x:
//   a^2 x^2/(8 + a^2 x^2) + b^2 x^2/(8 + b^2 x^2)  in [0, 2).
// Multiplying by 8 pi gives int_{B_x}(e^{U_a} + e^{U_b}).
double cap_sum(double a, double b, double x);

// cap_sum evaluated at the matching radius, in closed form:
//   1 - ((b/a)^{2-k} - (b/a)^k) / ((b/a)^2 - 1) = k - cap_deficit(b/a, k).
// Defined for b > a and k in [0, 2); for k > 1 it drops strictly below k,
// which is exactly how the sharp bound fails beyond k = 1.
double cap_sum_closed_form(double a, double b, double k);

// Sharpness margin of the matched two-cap mass against the 8 k pi bound:
//   bubble_area(a, x) + bubble_area(b, x) - 8 k pi,  x = matching_radius.
// Equals -8 pi cap_deficit(b/a, k): >= 0 always, = 0 only at k = 1.
double matched_cap_margin(double a, double b, double k);

// Sharp total-mass lower bound for a gap pair: 8 (1 - c/M) pi under EXP_U,
// 4 (1 - c/M) pi under EXP_2V.
double sci_bound(double c, double M, Normalization norm);

} // namespace scov
