#include "scov/radial.hpp"

#include <algorithm>
#include <cmath>

namespace scov {

namespace {

constexpr double overflow_guard = 50.0;

int weight_exponent(Normalization norm) {
    return norm == Normalization::EXP_U ? 1 : 2;
}

// Locate a node index for a query radius; the grid is the ground truth and
// queries must land on it (within a relative fuzz), not between nodes.
std::size_t node_index(const RadialProfile& p, double r) {
    const auto& rs = p.radius_nodes;
    auto it = std::lower_bound(rs.begin(), rs.end(), r);
    std::size_t i = static_cast<std::size_t>(it - rs.begin());
    if (i == rs.size()) i = rs.size() - 1;
    if (i > 0 && std::fabs(rs[i - 1] - r) < std::fabs(rs[i] - r)) --i;
    const double fuzz = 1e-9 * std::max(1.0, rs.back());
    if (std::fabs(rs[i] - r) > fuzz)
        throw std::invalid_argument("radius is not a grid node");
    return i;
}

// Derivative-corrected trapezoid (Euler-Maclaurin to the h^4 term) for the
// cumulative integral of g with g and g' known at the nodes.
std::vector<double> cumulative_corrected_trapezoid(
    const std::vector<double>& x, const std::vector<double>& g,
    const std::vector<double>& gp) {
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double h = x[i] - x[i - 1];
        out[i] = out[i - 1]
               + 0.5 * h * (g[i - 1] + g[i])
               + h * h / 12.0 * (gp[i - 1] - gp[i]);
    }
    return out;
}

// Mass integrand and its radial derivative for weight exponent w:
//   g(s) = 2 pi s e^{w u(s)},  g'(s) = 2 pi e^{w u} (1 + w s u').
std::vector<double> mass_table_for(const std::vector<double>& r,
                                   const std::vector<double>& u,
                                   const std::vector<double>& du, int w) {
    const std::size_t n = r.size();
    std::vector<double> g(n), gp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(w * u[i]);
        g[i] = two_pi * r[i] * e;
        gp[i] = two_pi * e * (1.0 + w * r[i] * du[i]);
    }
    return cumulative_corrected_trapezoid(r, g, gp);
}

// Every-other-node subsample (keeps node 0 and, when the count is odd, the
// last node), used by the self-calibrating slack estimates.
RadialProfile half_grid(const RadialProfile& p) {
    RadialProfile q;
    q.norm = p.norm;
    q.strictly_decreasing = p.strictly_decreasing;
    for (std::size_t i = 0; i < p.size(); i += 2) {
        q.radius_nodes.push_back(p.radius_nodes[i]);
        q.values.push_back(p.values[i]);
        q.derivative_values.push_back(p.derivative_values[i]);
    }
    return q;
}

struct SlopeStats {
    double max_slope = 0.0;
    double ratio = 0.0; // max slope / median slope
};

SlopeStats slope_stats(const RadialProfile& p) {
    std::vector<double> slopes;
    slopes.reserve(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        const double dr = p.radius_nodes[i] - p.radius_nodes[i - 1];
        slopes.push_back(std::fabs(p.values[i] - p.values[i - 1]) / dr);
    }
    SlopeStats s;
    s.max_slope = *std::max_element(slopes.begin(), slopes.end());
    std::nth_element(slopes.begin(), slopes.begin() + slopes.size() / 2,
                     slopes.end());
    const double median = slopes[slopes.size() / 2];
    s.ratio = s.max_slope / std::max(1e-12, median);
    return s;
}

} // namespace

RadialProfile make_profile(std::vector<double> radii,
                           std::vector<double> values,
                           std::vector<double> derivatives,
                           Normalization norm) {
    if (radii.size() < 3)
        throw std::invalid_argument("profile needs at least 3 nodes");
    if (radii.size() != values.size() || radii.size() != derivatives.size())
        throw std::invalid_argument("profile arrays must have equal length");
    if (radii.front() != 0.0)
        throw std::invalid_argument("first node must be exactly 0");
    if (derivatives.front() != 0.0)
        throw std::invalid_argument("derivative at the origin must be 0");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw std::invalid_argument("radii must increase strictly");
    RadialProfile p;
    p.radius_nodes = std::move(radii);
    p.values = std::move(values);
    p.derivative_values = std::move(derivatives);
    p.norm = norm;
    p.strictly_decreasing = true;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (!(p.values[i] < p.values[i - 1])) {
            p.strictly_decreasing = false;
            break;
        }
    return p;
}

RadialProfile bubble_profile(double lambda, double R, int n) {
    if (!(R > 0.0) || n < 2)
        throw std::invalid_argument("bubble_profile: bad grid");
    std::vector<double> r(n + 1), u(n + 1), du(n + 1);
    const double h = R / n;
    for (int i = 0; i <= n; ++i) {
        r[i] = i * h;
        u[i] = bubble_value(lambda, r[i]);
        du[i] = bubble_derivative(lambda, r[i]);
    }
    r[0] = 0.0;
    du[0] = 0.0;
    return make_profile(std::move(r), std::move(u), std::move(du));
}

SourceSpec SourceSpec::zero() { return SourceSpec{}; }

SourceSpec SourceSpec::constant(double value) {
    if (!(value >= 0.0))
        throw std::domain_error("source must be nonnegative");
    SourceSpec s;
    s.kind = Kind::CONSTANT;
    s.value = value;
    return s;
}

SourceSpec SourceSpec::gaussian_bump(double amplitude, double center,
                                     double width) {
    if (!(amplitude >= 0.0) || !(center >= 0.0) || !(width > 0.0))
        throw std::domain_error(
            "gaussian bump requires amplitude >= 0, center >= 0, width > 0");
    SourceSpec s;
    s.kind = Kind::GAUSSIAN_BUMP;
    s.amplitude = amplitude;
    s.center = center;
    s.width = width;
    return s;
}

double SourceSpec::operator()(double r) const {
    switch (kind) {
    case Kind::ZERO: return 0.0;
    case Kind::CONSTANT: return value;
    case Kind::GAUSSIAN_BUMP: {
        const double t = (r - center) / width;
        return amplitude * std::exp(-0.5 * t * t);
    }
    }
    return 0.0;
}

double SourceSpec::derivative(double r) const {
    if (kind != Kind::GAUSSIAN_BUMP) return 0.0;
    const double t = (r - center) / width;
    return -amplitude * t / width * std::exp(-0.5 * t * t);
}

double SourceSpec::second_derivative(double r) const {
    if (kind != Kind::GAUSSIAN_BUMP) return 0.0;
    const double t = (r - center) / width;
    return amplitude / (width * width) * (t * t - 1.0) * std::exp(-0.5 * t * t);
}

RadialProfile solve_radial(const SourceSpec& f, double v0, double R, int n) {
    if (!(R > 0.0))
        throw std::invalid_argument("solve_radial: R must be positive");
    if (n < 64)
        throw std::invalid_argument("solve_radial: need at least 64 intervals");
    if (v0 > overflow_guard)
        throw BlowUpError(0.0);

    const double h = R / n;
    std::vector<double> r(n + 1), u(n + 1), w(n + 1);
    r[0] = 0.0;
    u[0] = v0;
    w[0] = 0.0;

    // series launch across the regular-singular origin
    const double ev0 = std::exp(v0);
    const double c2 = (f(0.0) - ev0) / 4.0;
    const double c3 = f.derivative(0.0) / 9.0;
    const double c4 = (f.second_derivative(0.0) / 2.0 - ev0 * c2) / 16.0;
    r[1] = h;
    u[1] = v0 + h * h * (c2 + h * (c3 + h * c4));
    w[1] = h * (2.0 * c2 + h * (3.0 * c3 + h * 4.0 * c4));
    if (u[1] > overflow_guard) throw BlowUpError(0.0);

    // classical 4th-order marching on (u, w),  w' = f - e^u - w/r
    auto du = [](double /*rr*/, double /*uu*/, double ww) { return ww; };
    auto dw = [&f](double rr, double uu, double ww) {
        return f(rr) - std::exp(uu) - ww / rr;
    };
    for (int i = 1; i < n; ++i) {
        const double ri = r[i];
        const double ui = u[i];
        const double wi = w[i];
        const double k1u = du(ri, ui, wi);
        const double k1w = dw(ri, ui, wi);
        const double k2u = du(ri + 0.5 * h, ui + 0.5 * h * k1u, wi + 0.5 * h * k1w);
        const double k2w = dw(ri + 0.5 * h, ui + 0.5 * h * k1u, wi + 0.5 * h * k1w);
        const double k3u = du(ri + 0.5 * h, ui + 0.5 * h * k2u, wi + 0.5 * h * k2w);
        const double k3w = dw(ri + 0.5 * h, ui + 0.5 * h * k2u, wi + 0.5 * h * k2w);
        const double k4u = du(ri + h, ui + h * k3u, wi + h * k3w);
        const double k4w = dw(ri + h, ui + h * k3u, wi + h * k3w);
        r[i + 1] = (i + 1) * h;
        u[i + 1] = ui + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        w[i + 1] = wi + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        if (!std::isfinite(u[i + 1]) || !std::isfinite(w[i + 1])
            || u[i + 1] > overflow_guard)
            throw BlowUpError(ri);
    }
    return make_profile(std::move(r), std::move(u), std::move(w));
}

double radial_flux(const RadialProfile& p, double r) {
    if (!p.strictly_decreasing)
        throw std::invalid_argument(
            "radial_flux: profile must be strictly decreasing");
    const std::size_t i = node_index(p, r);
    return two_pi * p.radius_nodes[i] * std::fabs(p.derivative_values[i]);
}

std::vector<double> enclosed_mass_table(const RadialProfile& p) {
    return mass_table_for(p.radius_nodes, p.values, p.derivative_values,
                          weight_exponent(p.norm));
}

double enclosed_mass(const RadialProfile& p, double r) {
    const std::size_t i = node_index(p, r);
    return enclosed_mass_table(p)[i];
}

double mass_discretization_slack(const RadialProfile& p) {
    const std::vector<double> fine = enclosed_mass_table(p);
    const RadialProfile coarse = half_grid(p);
    const std::vector<double> half = enclosed_mass_table(coarse);
    double worst = 0.0;
    for (std::size_t j = 0; j < coarse.size(); ++j) {
        const double d = std::fabs(half[j] - fine[2 * j]);
        worst = std::max(worst, d);
    }
    return 2.0 * worst + 1e-14;
}

std::vector<double> green_identity_residuals(const RadialProfile& p,
                                             const SourceSpec& f) {
    const std::size_t n = p.size();
    const std::vector<double> mass = enclosed_mass_table(p);
    // int_{B_r} f dy with the same corrected-trapezoid rule
    std::vector<double> g(n), gp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = p.radius_nodes[i];
        g[i] = two_pi * r * f(r);
        gp[i] = two_pi * (f(r) + r * f.derivative(r));
    }
    const std::vector<double> fmass = cumulative_corrected_trapezoid(
        p.radius_nodes, g, gp);
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) {
        resid[i] = two_pi * p.radius_nodes[i] * p.derivative_values[i]
                 + mass[i] - fmass[i];
    }
    return resid;
}

SupersolutionReport check_supersolution(const RadialProfile& p,
                                        double extra_slack) {
    if (p.norm != Normalization::EXP_U)
        throw std::invalid_argument(
            "check_supersolution: profile must be in the EXP_U normalization");
    if (!p.strictly_decreasing)
        throw std::invalid_argument(
            "check_supersolution: profile must be strictly decreasing");
    if (!(extra_slack >= 0.0))
        throw std::invalid_argument(
            "check_supersolution: extra_slack must be >= 0");

    auto margins_of = [](const RadialProfile& q) {
        const std::vector<double> mass = enclosed_mass_table(q);
        std::vector<double> m(q.size(), 0.0);
        for (std::size_t i = 1; i < q.size(); ++i) {
            const double flux = two_pi * q.radius_nodes[i]
                              * std::fabs(q.derivative_values[i]);
            m[i] = mass[i] - flux;
        }
        return m;
    };

    const std::vector<double> fine = margins_of(p);
    const RadialProfile coarse = half_grid(p);
    const std::vector<double> half = margins_of(coarse);

    SupersolutionReport rep;
    double slack = 0.0;
    for (std::size_t j = 1; j < coarse.size(); ++j)
        slack = std::max(slack, std::fabs(half[j] - fine[2 * j]));
    rep.eps_disc = 2.0 * slack + 1e-14;
    rep.extra_slack = extra_slack;

    rep.min_margin = fine.back();
    rep.argmin_radius = p.radius_nodes.back();
    for (std::size_t i = 1; i < p.size(); ++i) {
        rep.radii.push_back(p.radius_nodes[i]);
        rep.margins.push_back(fine[i]);
        if (fine[i] < rep.min_margin) {
            rep.min_margin = fine[i];
            rep.argmin_radius = p.radius_nodes[i];
        }
    }
    rep.pass = rep.min_margin >= -(rep.eps_disc + rep.extra_slack);
    return rep;
}

ComparisonReport comparison_check(const RadialProfile& psi, double b,
                                  double extra_slack) {
    if (!(b > 0.0))
        throw std::domain_error("comparison_check: b must be positive");
    if (!(extra_slack >= 0.0))
        throw std::invalid_argument(
            "comparison_check: extra_slack must be >= 0");
    if (psi.norm != Normalization::EXP_U)
        throw std::invalid_argument(
            "comparison_check: profile must be in the EXP_U normalization");
    if (!psi.strictly_decreasing)
        throw std::invalid_argument(
            "comparison_check: profile must be strictly decreasing");

    ComparisonReport rep;
    rep.center_gap = psi.values[0] - 2.0 * std::log(b);

    const SlopeStats ss = slope_stats(psi);
    rep.lipschitz_constant = ss.max_slope;
    rep.slope_ratio = ss.ratio;

    if (std::fabs(rep.center_gap) > 1e-9) {
        rep.refusal = "center value does not match 2 ln b";
        return rep;
    }
    if (ss.ratio > 1e6) {
        rep.refusal = "discrete slope ratio exceeds the Lipschitz gate";
        return rep;
    }
    rep.supersolution = check_supersolution(psi, extra_slack);
    if (!rep.supersolution.pass) {
        rep.refusal = "supersolution inequality fails";
        return rep;
    }

    rep.precondition_ok = true;
    rep.extra_slack = extra_slack;
    const std::vector<double> mass = enclosed_mass_table(psi);
    rep.eps_disc = mass_discretization_slack(psi);
    rep.min_margin = 0.0;
    rep.argmin_radius = 0.0;
    bool first = true;
    for (std::size_t i = 1; i < psi.size(); ++i) {
        const double r = psi.radius_nodes[i];
        const double margin = mass[i] - bubble_area(b, r);
        rep.radii.push_back(r);
        rep.margins.push_back(margin);
        if (first || margin < rep.min_margin) {
            rep.min_margin = margin;
            rep.argmin_radius = r;
            first = false;
        }
    }
    rep.pass = rep.min_margin >= -(rep.eps_disc + rep.extra_slack);
    return rep;
}

RadialProfile convert_normalization(const RadialProfile& p,
                                    Normalization from, Normalization to) {
    if (p.norm != from)
        throw std::invalid_argument(
            "convert_normalization: profile is not in the declared normalization");
    if (from == to) return p;
    RadialProfile q = p;
    q.norm = to;
    const bool down = (from == Normalization::EXP_U); // EXP_U -> EXP_2V
    const double rscale = down ? 1.0 / std::sqrt(2.0) : std::sqrt(2.0);
    const double vscale = down ? 0.5 : 2.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        q.radius_nodes[i] = p.radius_nodes[i] * rscale;
        q.values[i] = p.values[i] * vscale;
        q.derivative_values[i] = p.derivative_values[i] * (vscale / rscale);
    }
    return q;
}

} // namespace scov
