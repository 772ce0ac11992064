#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scov/bubbles.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <random>

using namespace scov;

TEST_CASE("bubble values at reference points") {
    CHECK(bubble_value(1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(bubble_value(2.0, 0.0)
          == doctest::Approx(oracle::u2_at_0).epsilon(1e-15));
    CHECK(bubble_value(1.0, std::sqrt(8.0))
          == doctest::Approx(-oracle::u2_at_0).epsilon(1e-15));
    CHECK(bubble_value(1.0, 4.0)
          == doctest::Approx(oracle::u1_at_4).epsilon(1e-15));
    CHECK_THROWS_AS(bubble_value(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bubble_value(-1.0, 1.0), std::domain_error);
}

TEST_CASE("bubble values decrease strictly in radius") {
    for (double lambda : {0.5, 1.0, 3.0, 50.0}) {
        double prev = bubble_value(lambda, 0.0);
        for (int i = 1; i <= 64; ++i) {
            const double r = 0.25 * i;
            const double v = bubble_value(lambda, r);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("bubble derivative matches finite differences") {
    const double h = 1e-6;
    for (double lambda : {0.7, 1.0, 2.5}) {
        for (double r : {0.3, 1.0, 2.7, 6.0}) {
            const double fd = (bubble_value(lambda, r + h)
                             - bubble_value(lambda, r - h)) / (2.0 * h);
            CHECK(bubble_derivative(lambda, r)
                  == doctest::Approx(fd).epsilon(1e-8));
        }
    }
}

TEST_CASE("pde residual is O(h^2) and halving gives ratio near 4") {
    CHECK(std::fabs(bubble_pde_residual(1.0, 1.0, 1e-3)) < 1e-5);
    CHECK(std::fabs(bubble_pde_residual(2.0, 0.5, 1e-3)) < 1e-5);

    for (double lambda : {1.0, 2.0}) {
        for (double r : {0.5, 1.0, 2.0}) {
            const double c = bubble_pde_residual(lambda, r, 2e-3);
            const double f = bubble_pde_residual(lambda, r, 1e-3);
            const double ratio = std::fabs(c) / std::fabs(f);
            CHECK(ratio > 3.2);
            CHECK(ratio < 4.8);
        }
    }
    CHECK_THROWS_AS(bubble_pde_residual(1.0, 1e-3, 1e-3),
                    std::invalid_argument);
}

TEST_CASE("bubble area closed form against adaptive quadrature") {
    CHECK(bubble_area(1.0, 0.0) == 0.0);
    CHECK(bubble_area(1.0, std::sqrt(8.0))
          == doctest::Approx(four_pi).epsilon(1e-14));
    CHECK(bubble_area(1.0, std::sqrt(8.0))
          == doctest::Approx(oracle::disk_mass_by_quadrature(1.0, std::sqrt(8.0)))
                 .epsilon(1e-10));
    CHECK(bubble_area(1.0, 1e12) == doctest::Approx(eight_pi).epsilon(1e-12));

    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> logl(-1.5, 1.5);
    std::uniform_real_distribution<double> logr(-1.0, 1.3);
    for (int i = 0; i < 100; ++i) {
        const double lambda = std::pow(10.0, logl(rng));
        const double R = std::pow(10.0, logr(rng));
        const double closed = bubble_area(lambda, R);
        const double quad = oracle::disk_mass_by_quadrature(lambda, R, 1e-13);
        CHECK(std::fabs(closed - quad) <= 1e-8 * std::fabs(quad) + 1e-14);
    }
}

TEST_CASE("bubble area is strictly increasing and bounded by 8 pi") {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double R = 0.05 * i;
        const double A = bubble_area(2.0, R);
        CHECK(A > prev);
        CHECK(A < eight_pi);
        prev = A;
    }
}

TEST_CASE("deficit function vanishes identically at k = 0 and k = 1") {
    for (double x : {1.0000001, 1.01, 2.0, 37.0, 1000.0}) {
        CHECK(std::fabs(cap_deficit(x, 0.0)) <= 1e-12);
        CHECK(std::fabs(cap_deficit(x, 1.0)) <= 1e-12);
    }
}

TEST_CASE("deficit function frozen value and sign structure") {
    CHECK(cap_deficit(2.0, 0.5)
          == doctest::Approx(oracle::deficit_2_half).epsilon(1e-13));

    // limit x -> 1+ is 0, approached through the series branch
    CHECK(std::fabs(cap_deficit(1.0 + 1e-9, 0.5)) < 1e-17);
    CHECK(std::fabs(cap_deficit(1.0 + 1e-6, 0.5)) < 1e-11);

    // nonpositive on a log-spaced grid, strictly negative inside
    for (int i = 1; i <= 200; ++i) {
        const double x = std::pow(10.0, 3.0 * i / 200.0);
        for (int j = 0; j <= 100; ++j) {
            const double k = j / 100.0;
            CHECK(cap_deficit(x, k) <= 1e-12);
        }
    }
    for (double x : {1.1, 1.5, 2.0, 10.0, 500.0}) {
        for (double k : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            CHECK(cap_deficit(x, k) <= -1e-6);
        }
    }
    CHECK_THROWS_AS(cap_deficit(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(cap_deficit(0.5, 0.5), std::domain_error);
}

TEST_CASE("deficit series and direct branches agree at the seam") {
    for (double k : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        // straddle the 1e-4 switch; both branches carry >= 12 digits there
        const double below = cap_deficit(1.0 + 0.99e-4, k);
        const double above = cap_deficit(1.0 + 1.01e-4, k);
        // f ~ -k(k-1)(k-2) eps^2/6, so the two values differ by ~4% of
        // themselves through the eps^2 factor; remove it before comparing
        const double scale_b = 0.99e-4 * 0.99e-4;
        const double scale_a = 1.01e-4 * 1.01e-4;
        CHECK(below / scale_b
              == doctest::Approx(above / scale_a).epsilon(1e-6));
    }
}

TEST_CASE("matching radius closed form and back substitution") {
    CHECK(matching_radius(1.0, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(matching_radius(1.0, 2.0, 0.5)
          == doctest::Approx(oracle::match_x_1_2_half).epsilon(1e-14));

    std::mt19937 rng(77031u);
    std::uniform_real_distribution<double> logratio(0.0, 3.0);
    std::uniform_real_distribution<double> loga(-1.0, 1.0);
    std::uniform_real_distribution<double> kdist(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double ratio = std::pow(10.0, logratio(rng));
        if (ratio <= 1.0) continue;
        const double a = std::pow(10.0, loga(rng));
        const double b = a * ratio;
        double k = kdist(rng);
        if (k <= 0.0) k = 0.5;
        const double x = matching_radius(a, b, k);
        const double lhs = (8.0 + b * b * x * x) / (8.0 + a * a * x * x);
        const double rhs = std::pow(ratio, k);
        CHECK(std::fabs(lhs - rhs) < 1e-12 * std::max(1.0, rhs));
    }

    CHECK_THROWS_AS(matching_radius(2.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(matching_radius(1.0, 2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(matching_radius(1.0, 2.0, -0.2), std::domain_error);
    CHECK_THROWS_AS(matching_radius(1.0, 2.0, 1.2), std::domain_error);
}

TEST_CASE("cap sum at reference radii") {
    CHECK(cap_sum(1.0, 2.0, 0.0) == 0.0);
    // at the k = 1 matching radius the caps are complementary: 1/3 + 2/3
    CHECK(cap_sum(1.0, 2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cap_sum(1.0, 2.0, std::sqrt(oracle::match_x2_1_2_half))
          == doctest::Approx(oracle::cap_sum_cf_1_2_half).epsilon(1e-13));
}

TEST_CASE("closed-form cap sum: frozen values and consistency") {
    CHECK(cap_sum_closed_form(1.0, 2.0, 1.0)
          == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cap_sum_closed_form(1.0, 2.0, 0.5)
          == doctest::Approx(oracle::cap_sum_cf_1_2_half).epsilon(1e-13));
    CHECK(cap_sum_closed_form(1.0, 2.0, 1.5)
          == doctest::Approx(oracle::cap_sum_cf_1_2_k15).epsilon(1e-13));
    CHECK(cap_sum_closed_form(1.0, 2.0, 1.5) < 1.5);

    std::mt19937 rng(5150u);
    std::uniform_real_distribution<double> logratio(1e-6, 3.0);
    std::uniform_real_distribution<double> kdist(1e-3, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double ratio = std::pow(10.0, logratio(rng));
        const double k = kdist(rng);
        const double a = 0.7;
        const double b = a * ratio;
        const double cf = cap_sum_closed_form(a, b, k);
        // agreement with evaluation at the matching radius
        const double x = matching_radius(a, b, k);
        CHECK(std::fabs(cap_sum(a, b, x) - cf) < 1e-12);
        // the algebraic identity behind the sharp bound
        CHECK(std::fabs(cap_sum(a, b, x) - k + cap_deficit(ratio, k)) < 1e-10);
        // closed form is k minus the deficit
        CHECK(cf == doctest::Approx(k - cap_deficit(ratio, k)).epsilon(1e-12));
    }

    // beyond k = 1 the sum falls strictly below k
    for (double k : {1.1, 1.3, 1.5, 1.9}) {
        CHECK(cap_sum_closed_form(1.0, 2.0, k) < k - 1e-3);
    }
    CHECK_THROWS_AS(cap_sum_closed_form(2.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(cap_sum_closed_form(1.0, 2.0, 2.0), std::domain_error);
}

TEST_CASE("gap on circle endpoints and matched value") {
    const double l2 = 2.0 * std::log(2.0);
    CHECK(gap_on_circle(1.0, 2.0, 0.0) == doctest::Approx(l2).epsilon(1e-14));
    CHECK(gap_on_circle(1.0, 2.0, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(gap_on_circle(1.0, 2.0, 1e9) == doctest::Approx(-l2).epsilon(1e-9));

    std::mt19937 rng(99181u);
    std::uniform_real_distribution<double> logratio(0.01, 3.0);
    std::uniform_real_distribution<double> kdist(0.05, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double ratio = std::pow(10.0, logratio(rng));
        const double k = kdist(rng);
        const double a = 1.3;
        const double b = a * ratio;
        const double x = matching_radius(a, b, k);
        const double expected = 2.0 * (1.0 - k) * std::log(ratio);
        CHECK(std::fabs(gap_on_circle(a, b, x) - expected)
              < 1e-10 * std::max(1.0, std::fabs(expected)));
    }

    // strictly decreasing in R
    double prev = gap_on_circle(1.0, 3.0, 0.0);
    for (int i = 1; i <= 100; ++i) {
        const double g = gap_on_circle(1.0, 3.0, 0.1 * i);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("matched cap margin: frozen value, sign, and quadrature check") {
    CHECK(std::fabs(matched_cap_margin(1.0, 2.0, 1.0)) < 1e-10);
    CHECK(matched_cap_margin(1.0, 2.0, 0.5)
          == doctest::Approx(oracle::margin_1_2_half).epsilon(1e-12));
    CHECK(matched_cap_margin(1.0, 2.0, 0.9) > 0.0);

    // the deficit identity agrees with summing the two cap areas directly
    for (double ratio : {1.001, 1.7, 40.0}) {
        for (double k : {0.2, 0.5, 0.8, 1.0}) {
            const double x = matching_radius(1.0, ratio, k);
            const double via_areas =
                bubble_area(1.0, x) + bubble_area(ratio, x) - eight_pi * k;
            CHECK(matched_cap_margin(1.0, ratio, k)
                  == doctest::Approx(via_areas).epsilon(1e-10));
        }
    }

    // verify one margin by direct quadrature of both cap masses
    {
        const double x = matching_radius(1.0, 2.0, 0.5);
        const double total = oracle::disk_mass_by_quadrature(1.0, x, 1e-13)
                           + oracle::disk_mass_by_quadrature(2.0, x, 1e-13);
        CHECK(matched_cap_margin(1.0, 2.0, 0.5)
              == doctest::Approx(total - eight_pi * 0.5).epsilon(1e-9));
    }

    // nonnegative over a scan
    for (double ratio : {1.001, 1.1, 2.0, 10.0, 100.0}) {
        for (double k : {0.05, 0.25, 0.5, 0.75, 0.95, 1.0}) {
            CHECK(matched_cap_margin(1.0, ratio, k) >= 0.0);
        }
    }

    // k -> 0+ limit: bound and caps both collapse, margin -> 0 from above
    double prev = matched_cap_margin(1.0, 2.0, 0.1);
    for (double k : {0.03, 0.01, 0.003, 0.001, 1e-5}) {
        const double m = matched_cap_margin(1.0, 2.0, k);
        CHECK(m >= 0.0);
        CHECK(m < prev);
        prev = m;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("gap parameter construction and sci bound constants") {
    const GapParams g = GapParams::from_bubbles(1.0, 2.0, 0.7);
    CHECK(g.M == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(g.c == doctest::Approx(0.3 * 2.0 * std::log(2.0)).epsilon(1e-12));

    const GapParams h = GapParams::from_gaps(1.0, 2.0, g.c, g.M);
    CHECK(h.k == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_AS(GapParams::from_bubbles(2.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(GapParams::from_bubbles(1.0, 2.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(GapParams::from_gaps(1.0, 2.0, 2.0, 1.0), std::domain_error);

    CHECK(sci_bound(0.0, 1.0, Normalization::EXP_U) == eight_pi);
    CHECK(sci_bound(0.5, 1.0, Normalization::EXP_U)
          == doctest::Approx(four_pi).epsilon(1e-15));
    CHECK(sci_bound(0.0, 1.0, Normalization::EXP_2V) == four_pi);
    CHECK(sci_bound(0.5, 1.0, Normalization::EXP_2V)
          == doctest::Approx(two_pi).epsilon(1e-15));
}
