#include "scov/inequalities.hpp"

#include "scov/bubbles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scov {

namespace {

void require_exp_u(Normalization norm, const char* who) {
    if (norm != Normalization::EXP_U)
        throw std::invalid_argument(std::string(who) +
                                    ": EXP_U inputs only; convert first");
}

BolReport assemble_bol(double area, double length) {
    BolReport rep;
    rep.area = area;
    rep.length_sq = length * length;
    rep.rhs = 0.5 * area * (eight_pi - area);
    rep.margin = rep.length_sq - rep.rhs;
    return rep;
}

} // namespace

BolReport bol_check(const RadialProfile& u, double cap_radius, int npoints) {
    require_exp_u(u.norm, "bol_check");
    if (npoints < 16)
        throw std::invalid_argument("bol_check: need at least 16 points");
    if (!(cap_radius > 0.0) || cap_radius > u.radius_nodes.back())
        throw UnsupportedDomainError(
            "bol_check: cap radius outside the profile");
    const auto& rs = u.radius_nodes;
    auto it = std::lower_bound(rs.begin(), rs.end(), cap_radius);
    std::size_t i = static_cast<std::size_t>(it - rs.begin());
    if (i == rs.size()) i = rs.size() - 1;
    if (i > 0 && std::fabs(rs[i - 1] - cap_radius) <
                     std::fabs(rs[i] - cap_radius))
        --i;
    if (std::fabs(rs[i] - cap_radius) > 1e-9 * std::max(1.0, rs.back()))
        throw UnsupportedDomainError(
            "bol_check: cap radius is not a node radius of the profile");
    const double area = enclosed_mass(u, rs[i]);
    // the integrand e^{u/2} is constant on the circle; the npoints sum is
    // kept literal so both sides use declared quadratures
    const double value = u.values[i];
    const double dtheta = two_pi / npoints;
    double length = 0.0;
    for (int i = 0; i < npoints; ++i)
        length += std::exp(0.5 * value) * cap_radius * dtheta;
    return assemble_bol(area, length);
}

BolReport bol_check(const PlanarField& u, const DiskSpec& region,
                    int npoints) {
    require_exp_u(u.norm, "bol_check");
    const Grid2D& g = u.grid;
    const double eps = 1e-12 * std::max({1.0, g.width, g.height});
    if (!(region.R > 0.0) || region.cx - region.R < g.x0 - eps ||
        region.cx + region.R > g.x0 + g.width + eps ||
        region.cy - region.R < g.y0 - eps ||
        region.cy + region.R > g.y0 + g.height + eps)
        throw UnsupportedDomainError(
            "bol_check: region disk is not inside the grid");
    const double area = disk_area_integral(u, region, 1);
    const double length = circle_weighted_length(u, region, true, npoints);
    return assemble_bol(area, length);
}

SciReport sci_check(const PlanarField& v1, const PlanarField& v2, double c,
                    Normalization norm) {
    if (v1.norm != norm || v2.norm != norm)
        throw std::invalid_argument(
            "sci_check: fields do not carry the claimed normalization");
    if (!(c >= 0.0))
        throw std::invalid_argument("sci_check: c must be >= 0");
    const int w = (norm == Normalization::EXP_U) ? 1 : 2;

    SciReport rep;
    rep.c = c;

    // gap hypotheses: boundary equality and interior one-sidedness, with
    // an O(h) slack scaled by the discrete gap gradient
    rep.gap_tol = gap_check_slack(v1, v2);
    const GapCheckReport gap = boundary_gap_check(v1, v2, c, rep.gap_tol);
    rep.boundary_gap_ok = gap.boundary_pass;
    rep.interior_gap_ok = gap.interior_pass;

    // source ordering f2 >= f1 >= 0, with the O(h^2) Laplacian slack
    const std::vector<double> f1 = source_table(v1);
    const std::vector<double> f2 = source_table(v2);
    rep.source_tol = source_check_slack(v1) + source_check_slack(v2);
    double worst = 0.0;
    bool any_interior = false;
    for (std::size_t i = 0; i < f1.size(); ++i) {
        if (std::isnan(f1[i])) continue;
        any_interior = true;
        worst = std::min(worst, std::min(f1[i], f2[i] - f1[i]));
    }
    rep.worst_source = worst;
    rep.source_ordering_ok = any_interior && worst >= -rep.source_tol;

    rep.connectivity_ok = mask_connected(v1.grid, v1.mask);
    rep.hypotheses_ok = rep.source_ordering_ok && rep.interior_gap_ok &&
                        rep.boundary_gap_ok && rep.connectivity_ok;

    rep.M = max_difference(v1, v2);
    rep.total = area_integral(v1, w) + area_integral(v2, w);
    rep.total_original = rep.total;
    const double base = (w == 1) ? eight_pi : 4.0 * pi;
    if (rep.M > 0.0)
        rep.bound = base * (1.0 - c / rep.M);
    else
        rep.bound = (c > 0.0) ? 0.0 : base;
    rep.margin = rep.total - rep.bound;
    return rep;
}

SciReport sci_check_restricted(const PlanarField& v1, const PlanarField& v2,
                               double c, Normalization norm) {
    if (v1.norm != norm || v2.norm != norm)
        throw std::invalid_argument(
            "sci_check_restricted: fields do not carry the claimed "
            "normalization");
    if (!(c >= 0.0))
        throw std::invalid_argument("sci_check_restricted: c must be >= 0");
    const int w = (norm == Normalization::EXP_U) ? 1 : 2;
    const double total_original =
        area_integral(v1, w) + area_integral(v2, w);

    const RestrictedMask rm = restrict_mask(v1, v2, c);
    if (rm.empty) {
        SciReport rep;
        rep.restriction_nonempty = false;
        rep.c = c;
        rep.M = max_difference(v1, v2);
        rep.total = 0.0;
        rep.total_original = total_original;
        rep.bound = 0.0;
        rep.margin = 0.0;
        return rep;
    }
    const PlanarField r1 = apply_restriction(v1, rm);
    const PlanarField r2 = apply_restriction(v2, rm);
    SciReport rep = sci_check(r1, r2, c, norm);
    rep.total_original = total_original;
    return rep;
}

std::vector<ScanRow> sharpness_scan(const std::vector<double>& a_values,
                                    const std::vector<double>& k_values) {
    for (double a : a_values)
        if (!(a > 0.0))
            throw std::invalid_argument(
                "sharpness_scan: scales must be positive");
    for (double k : k_values)
        if (!(k > 0.0) || k > 1.6)
            throw std::invalid_argument(
                "sharpness_scan: k must lie in (0, 1.6]");
    std::vector<ScanRow> rows;
    rows.reserve(a_values.size() * k_values.size());
    for (double a : a_values) {
        for (double k : k_values) {
            ScanRow row;
            row.a = a;
            row.b = 2.0 * a;
            row.k = k;
            row.M = 2.0 * std::log(row.b / row.a);
            row.c = (1.0 - k) * row.M;
            row.bound = eight_pi * k;
            row.total = eight_pi * cap_sum_closed_form(row.a, row.b, k);
            // Margin in closed form, exactly zero at k = 1. Past k = 1 no
            // admissible matched pair exists (the row's c is negative), so
            // the margin is the raw cap-sum shortfall instead.
            row.margin = k <= 1.0 ? matched_cap_margin(row.a, row.b, k)
                                  : row.total - row.bound;
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace scov
