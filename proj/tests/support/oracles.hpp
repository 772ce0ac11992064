#pragma once

// Independent oracles for the test suites.
//
// The closed forms in the library are certified against two kinds of
// reference values kept here:
//
//   * an adaptive Simpson quadrature, written against the raw integrands
//     (never against the library's own area formulas), used to confirm
//     weighted areas and margins by direct integration;
//
//   * constants frozen from a 50-digit extended-precision evaluation of the
//     defining formulas, recorded to full double precision.
//
// Both were produced before the library code and are not derived from it.

#include <cmath>
#include <functional>

namespace oracle {

// Frozen 50-digit evaluations, rounded to double.
// deficit f(2, 0.5) = (2^1.5 - 2^0.5)/3 - 0.5
inline constexpr double deficit_2_half = -0.028595479208968317066;
// matching radius squared for (a,b,k) = (1,2,0.5)
inline constexpr double match_x2_1_2_half = 1.2815089640681629408;
inline constexpr double match_x_1_2_half = 1.1320375276766061967;
// cap_sum_closed_form(1, 2, 0.5)
inline constexpr double cap_sum_cf_1_2_half = 0.52859547920896831707;
// cap_sum_closed_form(1, 2, 1.5): the bound fails beyond k = 1
inline constexpr double cap_sum_cf_1_2_k15 = 1.4714045207910316829;
// matched_cap_margin(1, 2, 0.5) = -8 pi f(2, 0.5)
inline constexpr double margin_1_2_half = 0.71868277927019629514;
// bubble values: U_1(4) = -2 ln 3, U_2(0) = 2 ln 2
inline constexpr double u1_at_4 = -2.1972245773362193828;
inline constexpr double u2_at_0 = 1.3862943611198906188;
// d f / d k at (x, k) = (2, 1): rate constant of the small-c margin
inline constexpr double deficit_dk_at_2_1 = 0.07580375925340625411;

// Adaptive Simpson with interval-doubling error control. Plain recursive
// scheme; tolerances are absolute.
namespace detail {
inline double simpson(const std::function<double(double)>&,
                      double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f,
                    double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
         + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

inline double integrate(const std::function<double(double)>& f,
                        double a, double b, double tol = 1e-12) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adapt(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Weighted area of a centered disk by direct integration of the raw
// integrand 2 pi r exp(u(r)); the reference for bubble_area.
inline double disk_mass_by_quadrature(double lambda, double R,
                                      double tol = 1e-12) {
    return integrate(
        [lambda](double r) {
            const double s = lambda * r;
            const double u = -2.0 * std::log1p(s * s / 8.0)
                           + 2.0 * std::log(lambda);
            return 2.0 * 3.14159265358979323846 * r * std::exp(u);
        },
        0.0, R, tol);
}

} // namespace oracle
