#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scov/radial.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <vector>

using namespace scov;

namespace {

double max_node_error_vs_bubble(const RadialProfile& p, double lambda) {
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double err = std::fabs(p.values[i]
                                   - bubble_value(lambda, p.radius_nodes[i]));
        worst = std::max(worst, err);
    }
    return worst;
}

// A strictly decreasing profile equal to the bubble inside r0 whose tail
// slope is tripled beyond r0: the boundary flux jumps while the enclosed
// mass stays continuous, so the supersolution inequality must fail there.
RadialProfile steepened_tail_profile(double lambda, double r0, double R, int n) {
    std::vector<double> r(n + 1), u(n + 1), du(n + 1);
    const double h = R / n;
    const double u0 = bubble_value(lambda, r0);
    for (int i = 0; i <= n; ++i) {
        r[i] = i * h;
        if (r[i] <= r0) {
            u[i] = bubble_value(lambda, r[i]);
            du[i] = bubble_derivative(lambda, r[i]);
        } else {
            u[i] = u0 + 3.0 * (bubble_value(lambda, r[i]) - u0);
            du[i] = 3.0 * bubble_derivative(lambda, r[i]);
        }
    }
    du[0] = 0.0;
    return make_profile(std::move(r), std::move(u), std::move(du));
}

} // namespace

TEST_CASE("zero-source shooting reproduces the bubble") {
    const RadialProfile p = solve_radial(SourceSpec::zero(), 0.0, 4.0, 512);
    CHECK(p.strictly_decreasing);
    CHECK(p.values.back() == doctest::Approx(oracle::u1_at_4).epsilon(1e-10));
    CHECK(max_node_error_vs_bubble(p, 1.0) < 1e-7);

    const RadialProfile q = solve_radial(SourceSpec::zero(),
                                         2.0 * std::log(2.0), 4.0, 512);
    CHECK(max_node_error_vs_bubble(q, 2.0) < 1e-6);
}

TEST_CASE("constant source balancing the nonlinearity gives u identically 0") {
    const RadialProfile p = solve_radial(SourceSpec::constant(1.0), 0.0,
                                         5.0, 128);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(std::fabs(p.values[i]) <= 1e-14);
        CHECK(std::fabs(p.derivative_values[i]) <= 1e-14);
    }
}

TEST_CASE("grid halving shows 4th-order convergence") {
    for (double lambda : {1.0, 2.0}) {
        const double v0 = 2.0 * std::log(lambda);
        const double e256 =
            max_node_error_vs_bubble(solve_radial(SourceSpec::zero(), v0, 4.0, 256), lambda);
        const double e512 =
            max_node_error_vs_bubble(solve_radial(SourceSpec::zero(), v0, 4.0, 512), lambda);
        const double e1024 =
            max_node_error_vs_bubble(solve_radial(SourceSpec::zero(), v0, 4.0, 1024), lambda);
        CHECK(e256 / e512 > 12.0);
        CHECK(e256 / e512 < 20.0);
        CHECK(e512 / e1024 > 12.0);
        CHECK(e512 / e1024 < 20.0);
    }
}

TEST_CASE("flux identity: 2 pi r |u'| equals the bubble cap area") {
    for (double lambda : {1.0, 2.0}) {
        const RadialProfile p = solve_radial(SourceSpec::zero(),
                                             2.0 * std::log(lambda), 4.0, 512);
        double prev = 0.0;
        for (std::size_t i = 1; i < p.size(); ++i) {
            const double r = p.radius_nodes[i];
            const double flux = radial_flux(p, r);
            const double area = bubble_area(lambda, r);
            CHECK(std::fabs(flux - area) <= 1e-8 * area);
            CHECK(flux > prev);
            prev = flux;
        }
        CHECK(radial_flux(p, 0.0) == 0.0);
    }
}

TEST_CASE("flux rejects non-monotone profiles and off-node radii") {
    RadialProfile p = bubble_profile(1.0, 2.0, 64);
    CHECK_THROWS_AS(radial_flux(p, 0.7771), std::invalid_argument);
    p.values[10] = p.values[9] + 1.0;
    const RadialProfile q = make_profile(p.radius_nodes, p.values,
                                         p.derivative_values);
    CHECK_FALSE(q.strictly_decreasing);
    CHECK_THROWS_AS(radial_flux(q, q.radius_nodes[5]), std::invalid_argument);
}

TEST_CASE("enclosed mass matches the closed form at every node") {
    const double R = std::sqrt(8.0);
    const RadialProfile p = bubble_profile(1.0, R, 512);
    const std::vector<double> mass = enclosed_mass_table(p);
    CHECK(mass.back() == doctest::Approx(four_pi).epsilon(1e-8));
    double prev = -1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double closed = bubble_area(1.0, p.radius_nodes[i]);
        CHECK(std::fabs(mass[i] - closed) <= 1e-8 * closed + 1e-12);
        CHECK(mass[i] > prev - 1e-15);
        prev = mass[i];
    }
    CHECK(enclosed_mass(p, R) == doctest::Approx(four_pi).epsilon(1e-8));
}

TEST_CASE("solved profiles satisfy the Green identity within slack") {
    struct Case { SourceSpec f; double v0; double R; };
    const Case cases[] = {
        {SourceSpec::gaussian_bump(0.8, 1.0, 0.4), 0.3, 3.0},
        {SourceSpec::constant(2.0), -1.0, 3.0},
        {SourceSpec::zero(), 0.5, 3.0},
    };
    for (const auto& c : cases) {
        const RadialProfile fine = solve_radial(c.f, c.v0, c.R, 512);
        const RadialProfile coarse = solve_radial(c.f, c.v0, c.R, 256);
        const std::vector<double> rf = green_identity_residuals(fine, c.f);
        const std::vector<double> rc = green_identity_residuals(coarse, c.f);
        double slack = 0.0;
        for (std::size_t j = 0; j < rc.size(); ++j)
            slack = std::max(slack, std::fabs(rc[j] - rf[2 * j]));
        slack = 2.0 * slack + 1e-13;
        for (double v : rf) CHECK(std::fabs(v) <= slack);
    }
}

TEST_CASE("supersolution check: bubbles sit at the equality case") {
    const RadialProfile p = bubble_profile(1.3, 4.0, 256);
    const SupersolutionReport rep = check_supersolution(p);
    CHECK(rep.pass);
    CHECK(rep.min_margin >= -rep.eps_disc);
    // equality case: margins are pure discretization noise
    for (double m : rep.margins) CHECK(std::fabs(m) < 1e-6);
}

TEST_CASE("supersolution check detects a steepened tail") {
    const RadialProfile p = steepened_tail_profile(1.0, 2.0, 4.0, 512);
    CHECK(p.strictly_decreasing);
    const SupersolutionReport rep = check_supersolution(p);
    CHECK_FALSE(rep.pass);
    CHECK(rep.min_margin < -rep.eps_disc);
    CHECK(rep.argmin_radius > 2.0);
}

TEST_CASE("comparison principle certifies bubbles against themselves") {
    for (bool solved : {false, true}) {
        const RadialProfile psi =
            solved ? solve_radial(SourceSpec::zero(), 2.0 * std::log(2.0), 3.0, 256)
                   : bubble_profile(2.0, 3.0, 256);
        const ComparisonReport rep = comparison_check(psi, 2.0);
        CHECK(rep.precondition_ok);
        CHECK(rep.refusal.empty());
        CHECK(rep.pass);
        CHECK(rep.min_margin >= -rep.eps_disc);
        CHECK(std::fabs(rep.center_gap) <= 1e-12);
    }
}

TEST_CASE("comparison principle refuses on violated preconditions") {
    // wrong center value
    {
        const RadialProfile psi = bubble_profile(2.0, 3.0, 128);
        const ComparisonReport rep = comparison_check(psi, 3.0);
        CHECK_FALSE(rep.precondition_ok);
        CHECK_FALSE(rep.pass);
        CHECK(rep.refusal.find("center") != std::string::npos);
        CHECK(rep.margins.empty());
    }
    // failing supersolution inequality
    {
        const RadialProfile psi = steepened_tail_profile(1.0, 2.0, 4.0, 256);
        const ComparisonReport rep = comparison_check(psi, 1.0);
        CHECK_FALSE(rep.precondition_ok);
        CHECK(rep.refusal.find("supersolution") != std::string::npos);
    }
    // discrete Lipschitz gate: one cliff among flat slopes
    {
        const int n = 200;
        std::vector<double> r(n + 1), u(n + 1), du(n + 1, 0.0);
        for (int i = 0; i <= n; ++i) {
            r[i] = i / double(n);
            u[i] = -1e-6 * i + (i >= 100 ? -1000.0 : 0.0);
        }
        const RadialProfile psi = make_profile(std::move(r), std::move(u),
                                               std::move(du));
        const ComparisonReport rep = comparison_check(psi, 1.0);
        CHECK_FALSE(rep.precondition_ok);
        CHECK(rep.refusal.find("slope") != std::string::npos);
        CHECK(rep.slope_ratio > 1e6);
    }
}

TEST_CASE("blow-up guard reports the last valid radius") {
    CHECK_THROWS_AS(solve_radial(SourceSpec::constant(1e30), 0.0, 1.0, 64),
                    BlowUpError);
    try {
        solve_radial(SourceSpec::constant(1e30), 0.0, 1.0, 64);
    } catch (const BlowUpError& e) {
        CHECK(e.last_valid_radius >= 0.0);
        CHECK(e.last_valid_radius < 1.0);
    }
    CHECK_THROWS_AS(solve_radial(SourceSpec::zero(), 60.0, 1.0, 64),
                    BlowUpError);
}

TEST_CASE("normalization conversion halves masses and round-trips") {
    const RadialProfile p = bubble_profile(1.5, 4.0, 128);
    const RadialProfile q = convert_normalization(p, Normalization::EXP_U,
                                                  Normalization::EXP_2V);
    CHECK(q.norm == Normalization::EXP_2V);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(q.values[i] == doctest::Approx(0.5 * p.values[i]).epsilon(1e-15));
        CHECK(q.radius_nodes[i]
              == doctest::Approx(p.radius_nodes[i] / std::sqrt(2.0))
                     .epsilon(1e-15));
    }
    const double full = enclosed_mass(p, p.radius_nodes.back());
    const double half = enclosed_mass(q, q.radius_nodes.back());
    CHECK(half == doctest::Approx(0.5 * full).epsilon(1e-12));

    const RadialProfile back = convert_normalization(q, Normalization::EXP_2V,
                                                     Normalization::EXP_U);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(back.values[i] == doctest::Approx(p.values[i]).epsilon(1e-12));
        CHECK(back.radius_nodes[i]
              == doctest::Approx(p.radius_nodes[i]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(convert_normalization(p, Normalization::EXP_2V,
                                          Normalization::EXP_U),
                    std::invalid_argument);
}

TEST_CASE("profile construction validates its node contract") {
    CHECK_THROWS_AS(make_profile({0.0, 1.0}, {1.0, 0.0}, {0.0, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_profile({0.1, 1.0, 2.0}, {2.0, 1.0, 0.0},
                                 {0.0, -1.0, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_profile({0.0, 1.0, 2.0}, {2.0, 1.0, 0.0},
                                 {0.5, -1.0, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_profile({0.0, 1.0, 1.0}, {2.0, 1.0, 0.0},
                                 {0.0, -1.0, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_radial(SourceSpec::zero(), 0.0, 4.0, 32),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_radial(SourceSpec::zero(), 0.0, -1.0, 128),
                    std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::constant(-1.0), std::domain_error);
    CHECK_THROWS_AS(SourceSpec::gaussian_bump(1.0, 0.0, -0.1),
                    std::domain_error);
}
