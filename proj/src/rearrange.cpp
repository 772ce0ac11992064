#include "scov/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scov {

namespace {

struct SortedSamples {
    std::vector<double> gaps;   // descending
    std::vector<double> prefix; // prefix[i] = mass of the first i samples
    double total = 0.0;
    double median_mass = 0.0;
};

SortedSamples sort_samples(std::vector<WeightedSample> samples) {
    std::sort(samples.begin(), samples.end(),
              [](const WeightedSample& a, const WeightedSample& b) {
                  if (a.gap != b.gap) return a.gap > b.gap;
                  return a.mass > b.mass;
              });
    SortedSamples s;
    s.gaps.reserve(samples.size());
    s.prefix.reserve(samples.size() + 1);
    s.prefix.push_back(0.0);
    for (const auto& w : samples) {
        s.gaps.push_back(w.gap);
        s.prefix.push_back(s.prefix.back() + w.mass);
    }
    s.total = s.prefix.back();
    if (!samples.empty()) {
        std::vector<double> masses(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            masses[i] = samples[i].mass;
        auto mid = masses.begin() + masses.size() / 2;
        std::nth_element(masses.begin(), mid, masses.end());
        s.median_mass = *mid;
    }
    return s;
}

// weighted measure of {gap > t} from the sorted arrays
double beta_of(const SortedSamples& s, double t) {
    const auto it = std::lower_bound(s.gaps.begin(), s.gaps.end(), t,
                                     [](double g, double v) { return g > v; });
    return s.prefix[static_cast<std::size_t>(it - s.gaps.begin())];
}

void require_exp_u(const PlanarField& f, const char* who) {
    if (f.norm != Normalization::EXP_U)
        throw std::invalid_argument(std::string(who) +
                                    ": EXP_U fields only; convert first");
}

} // namespace

double radius_for_mass(double lambda, double m) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("radius_for_mass: lambda must be > 0");
    if (!(m >= 0.0) || m >= eight_pi)
        throw std::out_of_range(
            "radius_for_mass: mass must lie in [0, 8 pi)");
    return std::sqrt(8.0 * m / (lambda * lambda * (eight_pi - m)));
}

double choose_scale_a(double M, double K, double eps) {
    if (!(M > 0.0) || !(K > 0.0) || !(eps > 0.0))
        throw std::invalid_argument(
            "choose_scale_a: M, K, eps must be positive");
    const auto defect = [M, K](double a) {
        // 8 pi [s/(8+s) - K/(8+K)] with s = K (1+M/a)^2, written without
        // the cancelling subtraction: s - K = K (2M/a + (M/a)^2).
        const double r = M / a;
        const double s = K * (1.0 + r) * (1.0 + r);
        return eight_pi * 8.0 * K * r * (2.0 + r) / ((8.0 + s) * (8.0 + K));
    };
    const double a_min = 1.0;
    if (eps >= eight_pi || defect(a_min) < eps) return a_min;
    double lo = a_min;
    double hi = 2.0 * a_min;
    int guard = 0;
    while (defect(hi) >= eps) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 400)
            throw std::runtime_error("choose_scale_a: doubling ran away");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (defect(mid) < eps)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::vector<double> measure_uniform_thresholds(const PlanarField& v1,
                                               const PlanarField& v2,
                                               double floor_t, int levels) {
    require_exp_u(v1, "measure_uniform_thresholds");
    if (levels < 2)
        throw std::invalid_argument(
            "measure_uniform_thresholds: need at least 2 levels");
    auto raw = gap_mass_samples(v1, v2, 1);
    if (raw.empty())
        throw std::invalid_argument(
            "measure_uniform_thresholds: empty domain");
    for (auto& s : raw) s.gap = std::max(s.gap, floor_t);
    const SortedSamples sorted = sort_samples(std::move(raw));

    std::vector<double> out;
    out.reserve(levels);
    for (int i = levels - 1; i >= 0; --i) {
        // the 0.37 offset keeps targets away from exact class boundaries
        const double target = sorted.total * (i + 0.37) / levels;
        const auto it = std::upper_bound(sorted.prefix.begin(),
                                         sorted.prefix.end(), target);
        std::size_t idx = static_cast<std::size_t>(
            it - sorted.prefix.begin());
        if (idx == 0) idx = 1;
        if (idx > sorted.gaps.size()) idx = sorted.gaps.size();
        const double t = sorted.gaps[idx - 1];
        if (out.empty() || t > out.back()) out.push_back(t);
    }
    return out;
}

DistributionTable distribution_beta(const PlanarField& v1,
                                    const PlanarField& v2,
                                    const std::vector<double>& thresholds) {
    require_exp_u(v1, "distribution_beta");
    if (thresholds.empty())
        throw std::invalid_argument("distribution_beta: no thresholds");
    const SortedSamples sorted = sort_samples(gap_mass_samples(v1, v2, 1));
    if (sorted.gaps.empty())
        throw std::invalid_argument("distribution_beta: empty domain");
    DistributionTable table;
    table.thresholds = thresholds;
    table.beta.reserve(thresholds.size());
    table.total_mass = sorted.total;
    for (double t : thresholds) {
        if (!std::isfinite(t))
            throw std::invalid_argument(
                "distribution_beta: thresholds must be finite");
        table.beta.push_back(beta_of(sorted, t));
    }
    return table;
}

RearrangementResult symmetrize(const PlanarField& v1, const PlanarField& v2,
                               double a, double boundary_floor,
                               int radial_nodes) {
    require_exp_u(v1, "symmetrize");
    require_exp_u(v2, "symmetrize");
    if (!(a > 0.0))
        throw std::invalid_argument("symmetrize: scale a must be > 0");

    auto raw = gap_mass_samples(v1, v2, 1);
    if (raw.empty()) throw std::invalid_argument("symmetrize: empty domain");

    double floor_level = boundary_floor;
    if (std::isnan(floor_level)) {
        floor_level = raw.front().gap;
        for (const auto& s : raw) floor_level = std::min(floor_level, s.gap);
    }
    for (auto& s : raw) s.gap = std::max(s.gap, floor_level);

    const SortedSamples sorted = sort_samples(std::move(raw));
    const double m1 = sorted.total;
    if (!(m1 > 0.0)) throw std::invalid_argument("symmetrize: zero mass");
    if (m1 >= eight_pi)
        throw std::invalid_argument(
            "symmetrize: weighted mass reaches 8 pi; the model disk cannot "
            "hold it");

    // distinct-gap classes: (gap value, cumulative mass through the class).
    // Ties are taken up to an ulp-scale tolerance of the class value, so a
    // constant gap stays a single atom despite per-node rounding noise.
    const double tie_tol =
        1e-12 * (1.0 + (sorted.gaps.front() - sorted.gaps.back()));
    std::vector<double> cls_t;
    std::vector<double> cls_m;
    for (std::size_t i = 0; i < sorted.gaps.size(); ++i) {
        const double g = sorted.gaps[i];
        const double cum = sorted.prefix[i + 1];
        if (!cls_t.empty() && g >= cls_t.back() - tie_tol)
            cls_m.back() = cum;
        else {
            cls_t.push_back(g);
            cls_m.push_back(cum);
        }
    }
    // class-level distribution function and step quantile; the residual is
    // judged against these so thresholds and beta see the same atoms
    const auto beta_cls = [&](double t) {
        const auto it =
            std::lower_bound(cls_t.begin(), cls_t.end(), t,
                             [](double g, double v) { return g > v; });
        const std::size_t idx =
            static_cast<std::size_t>(it - cls_t.begin());
        return idx == 0 ? 0.0 : cls_m[idx - 1];
    };
    const auto quantile_cls = [&](double target) {
        const auto it = std::upper_bound(cls_m.begin(), cls_m.end(), target);
        std::size_t idx = static_cast<std::size_t>(it - cls_m.begin());
        if (idx >= cls_t.size()) idx = cls_t.size() - 1;
        return cls_t[idx];
    };
    // quantile anchors: (mass km, value kt), km ascending, kt nonincreasing
    std::vector<double> km(1, 0.0);
    std::vector<double> kt(1, cls_t.front());
    km.insert(km.end(), cls_m.begin(), cls_m.end());
    kt.insert(kt.end(), cls_t.begin(), cls_t.end());

    // integral of the piecewise-linear quantile over a mass interval
    const auto quantile_integral = [&](double mlo, double mhi) {
        mlo = std::clamp(mlo, 0.0, m1);
        mhi = std::clamp(mhi, 0.0, m1);
        if (mhi <= mlo) return 0.0;
        const auto seg_of = [&](double m) {
            const auto it = std::upper_bound(km.begin(), km.end(), m);
            return static_cast<std::size_t>(
                std::max<std::ptrdiff_t>(0, it - km.begin() - 1));
        };
        double total = 0.0;
        const std::size_t last = km.size() - 2;
        for (std::size_t i = seg_of(mlo); i <= std::min(seg_of(mhi), last);
             ++i) {
            const double a0 = km[i], a1 = km[i + 1];
            const double t0 = kt[i], t1 = kt[i + 1];
            const double lo = std::max(a0, mlo);
            const double hi = std::min(a1, mhi);
            if (hi > lo && a1 > a0) {
                const double mid = 0.5 * (lo + hi);
                const double tm = t0 + (t1 - t0) * (mid - a0) / (a1 - a0);
                total += tm * (hi - lo);
            }
        }
        return total;
    };

    const double R_a = radius_for_mass(a, m1);
    const int n = radial_nodes > 0 ? radial_nodes : 8 * v1.grid.nx;
    if (n < 8) throw std::invalid_argument("symmetrize: too few radial nodes");
    const double hs = R_a / n;

    std::vector<double> s_nodes(n + 1), marea(n + 1);
    for (int j = 0; j <= n; ++j) {
        s_nodes[j] = hs * j;
        marea[j] = bubble_area(a, s_nodes[j]);
    }

    // node values: mass-bin averages of the quantile
    std::vector<double> phi(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double mlo = (j > 0) ? 0.5 * (marea[j - 1] + marea[j]) : 0.0;
        const double mhi = (j < n) ? 0.5 * (marea[j] + marea[j + 1]) : m1;
        if (mhi <= mlo)
            phi[j] = (j > 0) ? phi[j - 1] : kt.front();
        else
            phi[j] = quantile_integral(mlo, mhi) / (mhi - mlo);
    }
    // clamp into [floor, max gap]: both are identities for the exact
    // quantile, and they stop rounding noise from leaking past the range
    for (double& p : phi) p = std::clamp(p, floor_level, kt.front());
    for (int j = 1; j <= n; ++j) phi[j] = std::min(phi[j], phi[j - 1]);

    // derivatives: least-squares slope over windows of fixed weighted mass
    const double w_mass =
        m1 * std::pow(std::max(sorted.median_mass, 1e-300) / m1, 0.3);
    std::vector<double> dphi(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        int W = 1;
        while (true) {
            const int jl = std::max(0, j - W);
            const int jr = std::min(n, j + W);
            if (marea[jr] - marea[jl] >= w_mass || (jl == 0 && jr == n)) break;
            ++W;
        }
        const int jl = std::max(0, j - W);
        const int jr = std::min(n, j + W);
        const int cnt = jr - jl + 1;
        double sbar = 0.0, pbar = 0.0;
        for (int q = jl; q <= jr; ++q) {
            sbar += s_nodes[q];
            pbar += phi[q];
        }
        sbar /= cnt;
        pbar /= cnt;
        double num = 0.0, den = 0.0;
        for (int q = jl; q <= jr; ++q) {
            num += (s_nodes[q] - sbar) * (phi[q] - pbar);
            den += (s_nodes[q] - sbar) * (s_nodes[q] - sbar);
        }
        dphi[j] = den > 0.0 ? num / den : 0.0;
    }
    dphi[0] = 0.0; // radial symmetry at the center

    RearrangementResult res;
    res.a = a;
    res.R_a = R_a;
    res.mass = m1;
    res.floor_level = floor_level;
    res.phi = make_profile(s_nodes, phi, dphi, Normalization::EXP_U);
    res.phi_center = phi.front();
    res.phi_edge = phi.back();
    const double atom =
        cls_m.size() > 1 ? cls_m.back() - cls_m[cls_m.size() - 2]
                         : cls_m.back();
    res.edge_atom = cls_t.back() <= floor_level + tie_tol &&
                    atom > 1e-9 * m1;

    // equimeasurability residual over a measure-uniform threshold grid
    double residual = 0.0;
    const int levels = 512;
    for (int i = 1; i < levels; ++i) {
        const double target = m1 * (i + 0.37) / levels;
        const double t = quantile_cls(target);
        if (t >= phi.front()) continue;
        // crossing radius of phi at level t (phi is nonincreasing)
        int lo = 0, hi = n;
        while (lo < hi) {
            const int mid = (lo + hi + 1) / 2;
            if (phi[mid] > t)
                lo = mid;
            else
                hi = mid - 1;
        }
        double s_cross = s_nodes[lo];
        if (lo < n && phi[lo] > t && t >= phi[lo + 1] &&
            phi[lo] > phi[lo + 1]) {
            const double fr = (phi[lo] - t) / (phi[lo] - phi[lo + 1]);
            s_cross = s_nodes[lo] + fr * hs;
        }
        residual = std::max(
            residual, std::fabs(bubble_area(a, s_cross) - beta_cls(t)));
    }
    res.residual = residual;
    return res;
}

RadialProfile compose_psi(double a, const RadialProfile& phi) {
    if (!(a > 0.0))
        throw std::invalid_argument("compose_psi: scale a must be > 0");
    if (phi.norm != Normalization::EXP_U)
        throw std::invalid_argument("compose_psi: EXP_U profiles only");
    for (std::size_t j = 1; j < phi.size(); ++j)
        if (phi.values[j] > phi.values[j - 1])
            throw std::invalid_argument(
                "compose_psi: phi must be nonincreasing");

    std::vector<double> values(phi.size()), derivs(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) {
        const double r = phi.radius_nodes[j];
        values[j] = bubble_value(a, r) + phi.values[j];
        derivs[j] = bubble_derivative(a, r) + phi.derivative_values[j];
    }
    derivs[0] = 0.0;
    return make_profile(phi.radius_nodes, values, derivs,
                        Normalization::EXP_U);
}

} // namespace scov
