#include "scov/bubbles.hpp"

#include <cmath>

namespace scov {

namespace {

// Series branch of the deficit function near its removable singularity.
// With eps = x - 1 and P = k (k-1) (k-2),
//   f(1 + eps, k) = P [ -eps^2/6 + eps^3/6
//                       - (k^2 - 2k + 17) eps^4 / 120
//                       + (k^2 - 2k + 7)  eps^5 / 60 ] + O(eps^6).
// At the switch point eps = 1e-4 the truncation error is below 1e-24 in
// absolute value while the direct quotient already carries ~1e-12 of
// cancellation noise; the seam mismatch is at the last-bit level.
double cap_deficit_series(double eps, double k) {
    const double P = k * (k - 1.0) * (k - 2.0);
    const double q = k * k - 2.0 * k;
    const double e2 = eps * eps;
    return P * e2 * (-1.0 / 6.0 + eps * (1.0 / 6.0
                     + eps * (-(q + 17.0) / 120.0
                     + eps * ((q + 7.0) / 60.0))));
}

// Direct form of the deficit function, stable away from x = 1:
//   f = x^k (x^{2-2k} - 1)/(x^2 - 1) + k - 1
// with the powers taken through expm1(log) so the two differences keep
// full relative accuracy even for x near 1 or up to 1e3.
double cap_deficit_direct(double x, double k) {
    const double L = std::log(x);
    const double num = std::exp(k * L) * std::expm1(2.0 * (1.0 - k) * L);
    const double den = std::expm1(2.0 * L);
    return num / den + k - 1.0;
}

void require_positive_scales(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("bubble scales must be positive");
    if (!(b > a))
        throw std::domain_error("gap pair requires b > a");
}

} // namespace

GapParams GapParams::from_bubbles(double a, double b, double k) {
    require_positive_scales(a, b);
    if (!(k >= 0.0) || !(k <= 1.0))
        throw std::domain_error("matching fraction k must lie in [0,1]");
    GapParams g;
    g.a = a;
    g.b = b;
    g.k = k;
    g.M = 2.0 * (std::log(b) - std::log(a));
    g.c = (1.0 - k) * g.M;
    return g;
}

GapParams GapParams::from_gaps(double a, double b, double c, double M) {
    require_positive_scales(a, b);
    if (!(M > 0.0) || !(c >= 0.0) || !(c <= M))
        throw std::domain_error("gaps must satisfy 0 <= c <= M, M > 0");
    GapParams g;
    g.a = a;
    g.b = b;
    g.c = c;
    g.M = M;
    g.k = 1.0 - c / M;
    return g;
}

double bubble_value(double lambda, double r) {
    if (!(lambda > 0.0))
        throw std::domain_error("bubble_value: lambda must be positive");
    if (!(r >= 0.0))
        throw std::domain_error("bubble_value: radius must be nonnegative");
    const double s = lambda * r;
    return -2.0 * std::log1p(s * s / 8.0) + 2.0 * std::log(lambda);
}

double bubble_derivative(double lambda, double r) {
    if (!(lambda > 0.0))
        throw std::domain_error("bubble_derivative: lambda must be positive");
    const double s2 = lambda * lambda * r * r;
    return -lambda * lambda * r / (2.0 * (1.0 + s2 / 8.0));
}

double bubble_pde_residual(double lambda, double r, double h) {
    if (!(h > 0.0) || !(r > h))
        throw std::invalid_argument("bubble_pde_residual: requires r > h > 0");
    const double um = bubble_value(lambda, r - h);
    const double u0 = bubble_value(lambda, r);
    const double up = bubble_value(lambda, r + h);
    const double lap = (up - 2.0 * u0 + um) / (h * h) + (up - um) / (2.0 * h * r);
    return lap + std::exp(u0);
}

double bubble_area(double lambda, double R) {
    if (!(lambda > 0.0))
        throw std::domain_error("bubble_area: lambda must be positive");
    if (!(R >= 0.0))
        throw std::domain_error("bubble_area: radius must be nonnegative");
    const double s = lambda * lambda * R * R;
    if (s > 1.0)
        return eight_pi / (1.0 + 8.0 / s);
    return eight_pi * s / (8.0 + s);
}

double cap_deficit(double x, double k) {
    if (!(x > 1.0))
        throw std::domain_error("cap_deficit: requires x > 1");
    if (!(k >= 0.0) || !(k <= 1.0))
        throw std::domain_error("cap_deficit: requires k in [0,1]");
    const double eps = x - 1.0;
    if (eps < 1e-4)
        return cap_deficit_series(eps, k);
    return cap_deficit_direct(x, k);
}

double gap_on_circle(double a, double b, double R) {
    require_positive_scales(a, b);
    const double sa = a * a * R * R / 8.0;
    const double sb = b * b * R * R / 8.0;
    return 2.0 * (std::log(b) - std::log(a))
         - 2.0 * (std::log1p(sb) - std::log1p(sa));
}

double matching_radius(double a, double b, double k) {
    require_positive_scales(a, b);
    if (!(k > 0.0))
        throw std::domain_error("matching_radius: k <= 0 degenerates to x = 0");
    if (!(k <= 1.0))
        throw std::domain_error("matching_radius: k > 1 is outside the sharp range");
    const double L = std::log(b) - std::log(a);
    // x^2 = 8 ((b/a)^k - 1) / (b^2 - (b/a)^k a^2); the denominator equals
    // a^2 (b/a)^k ((b/a)^{2-k} - 1), provably positive for k < 2.
    const double growth = std::expm1((2.0 - k) * L);
    const double den = a * a * std::exp(k * L) * growth;
    if (!(den > 1e-14 * b * b))
        throw std::domain_error("matching_radius: denominator vanishes");
    const double x2 = 8.0 * std::expm1(k * L) / den;
    return std::sqrt(x2);
}

double cap_sum(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("cap_sum: scales must be positive");
    if (!(x >= 0.0))
        throw std::domain_error("cap_sum: radius must be nonnegative");
    return bubble_area(a, x) / eight_pi + bubble_area(b, x) / eight_pi;
}

double cap_sum_closed_form(double a, double b, double k) {
    require_positive_scales(a, b);
    if (!(k >= 0.0) || !(k < 2.0))
        throw std::domain_error("cap_sum_closed_form: requires k in [0, 2)");
    const double L = std::log(b) - std::log(a);
    const double x = b / a;
    if (x - 1.0 < 1e-4) {
        // Same cancellation as the deficit function; the series branch is
        // valid for all k in [0, 2).
        return k - cap_deficit_series(x - 1.0, k);
    }
    const double num = std::exp(k * L) * std::expm1(2.0 * (1.0 - k) * L);
    return 1.0 - num / std::expm1(2.0 * L);
}

double matched_cap_margin(double a, double b, double k) {
    // Validate the configuration through the matching radius (same domain
    // and error behavior), then evaluate through the deficit identity
    //   area(a,x) + area(b,x) - 8 k pi = -8 pi f(b/a, k),
    // which is exact at the k = 1 equality case where the two-area route
    // leaves rounding noise of either sign.
    (void)matching_radius(a, b, k);
    return -eight_pi * cap_deficit(b / a, k);
}

double sci_bound(double c, double M, Normalization norm) {
    if (!(M > 0.0) || !(c >= 0.0))
        throw std::domain_error("sci_bound: requires M > 0 and c >= 0");
    const double base = (norm == Normalization::EXP_U) ? eight_pi : four_pi;
    return base * (1.0 - c / M);
}

} // namespace scov
