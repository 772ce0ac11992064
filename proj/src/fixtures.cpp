// Fixture construction. All pairs derive from the two-bubble family at
// scales 1 and 2: the matching radius R for exponent k makes the cap
// masses sum to 8 k pi, the center gap is M = 2 ln 2, and the boundary
// gap is c = U_2(R) - U_1(R) = (1 - k) M. For k = 1 the caps are exactly
// complementary, R = 2, and c vanishes. Mobius variants transport the
// same pair through a disk automorphism, which preserves the boundary
// gap, the masses, and every mass distribution function.

#include "scov/fixtures.hpp"

#include "scov/bubbles.hpp"
#include "scov/mobius.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace scov {

namespace {

std::string trimmed(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

Grid2D disk_grid(double R, int nx) {
    return Grid2D::centered_square(0.0, 0.0, 2.0 * 1.05 * R, nx);
}

void validate(const FixtureSpec& spec, int nx) {
    if (!(spec.k > 0.0) || !(spec.k <= 1.0))
        throw std::invalid_argument("fixture exponent k must lie in (0, 1]");
    const double z0 = std::hypot(spec.z0x, spec.z0y);
    if (!(z0 < 1.0))
        throw std::invalid_argument("fixture automorphism center needs |z0| < 1");
    if (!std::isfinite(spec.theta))
        throw std::invalid_argument("fixture rotation must be finite");
    if (nx < 32)
        throw std::invalid_argument("fixture resolution below 32 cells");
}

} // namespace

std::string FixtureSpec::label() const {
    switch (kind) {
    case FixtureKind::CONCENTRIC_PAIR:
        return "concentric-k" + trimmed(k);
    case FixtureKind::MOBIUS_PAIR:
        return "mobius-k" + trimmed(k) + "-z" + trimmed(z0x) + "," +
               trimmed(z0y) + "-t" + trimmed(theta);
    case FixtureKind::COMPLEMENTARY_PAIR:
        return "complementary-z" + trimmed(z0x) + "," + trimmed(z0y);
    case FixtureKind::DENTED_SOURCE:
        return "dented-source-k" + trimmed(k);
    case FixtureKind::OVERSIZED_CROSSING:
        return "oversized-crossing";
    }
    return "fixture";
}

Fixture build_fixture(const FixtureSpec& spec, int nx_override) {
    const int nx = nx_override > 0 ? nx_override : spec.nx;
    validate(spec, nx);

    Fixture fx;
    fx.name = spec.label();

    const double k_eff =
        spec.kind == FixtureKind::COMPLEMENTARY_PAIR ||
                spec.kind == FixtureKind::OVERSIZED_CROSSING
            ? 1.0
            : spec.k;
    const double R = matching_radius(1.0, 2.0, k_eff);
    // at k = 1 the gap vanishes identically; keep it exact rather than
    // letting logarithm rounding leave a signed 1 ulp remainder
    const double gap_R =
        k_eff == 1.0 ? 0.0 : bubble_value(2.0, R) - bubble_value(1.0, R);

    switch (spec.kind) {
    case FixtureKind::CONCENTRIC_PAIR: {
        const Grid2D g = disk_grid(R, nx);
        fx.v1 = bubble_field(1.0, R, g);
        fx.v2 = bubble_field(2.0, R, g);
        fx.c = gap_R;
        break;
    }
    case FixtureKind::MOBIUS_PAIR: {
        const Grid2D g = disk_grid(R, nx);
        const MobiusParams mp{spec.z0x, spec.z0y, spec.theta, R};
        fx.v1 = mobius_pullback_bubble(1.0, mp, g);
        fx.v2 = mobius_pullback_bubble(2.0, mp, g);
        fx.c = gap_R; // the boundary gap survives the automorphism
        break;
    }
    case FixtureKind::COMPLEMENTARY_PAIR: {
        // k = 1: R = 2 and the boundary gap is exactly zero.
        const Grid2D g = disk_grid(R, nx);
        const MobiusParams mp{spec.z0x, spec.z0y, spec.theta, R};
        fx.v1 = mobius_pullback_bubble(1.0, mp, g);
        fx.v2 = mobius_pullback_bubble(2.0, mp, g);
        fx.c = 0.0;
        break;
    }
    case FixtureKind::DENTED_SOURCE: {
        const Grid2D g = disk_grid(R, nx);
        fx.v1 = bubble_field(1.0, R, g);
        fx.v2 = bubble_field(2.0, R, g);
        // Carve a Gaussian dent out of v2. The dent drives Delta v2 + e^{v2}
        // well below Delta v1 + e^{v1} near (0.3, 0), so the source-ordering
        // hypothesis fails by an O(1) amount.
        for (int j = 0; j < g.nodes_y(); ++j) {
            for (int i = 0; i < g.nodes_x(); ++i) {
                const double x = g.node_x(i) - 0.3;
                const double y = g.node_y(j);
                fx.v2.values[g.node_id(i, j)] -=
                    0.8 * std::exp(-(x * x + y * y) / 0.04);
            }
        }
        fx.c = gap_R;
        break;
    }
    case FixtureKind::OVERSIZED_CROSSING: {
        // The k = 1 pair on a disk 15% larger than the matching radius:
        // the gap is positive inside r = 2, zero there, negative outside.
        const double R_dom = 1.15 * R;
        const Grid2D g = disk_grid(R_dom, nx);
        fx.v1 = bubble_field(1.0, R_dom, g);
        fx.v2 = bubble_field(2.0, R_dom, g);
        fx.c = 0.0;
        break;
    }
    }
    if (!std::isnan(spec.c_override)) {
        if (!(spec.c_override >= 0.0))
            throw std::invalid_argument(
                "fixture gap override must be nonnegative");
        fx.c = spec.c_override;
    }
    return fx;
}

std::vector<FixtureSpec> shipped_fixtures() {
    std::vector<FixtureSpec> out;
    out.push_back({FixtureKind::CONCENTRIC_PAIR, 0.7, 0.0, 0.0, 0.0, 256});
    out.push_back({FixtureKind::CONCENTRIC_PAIR, 0.4, 0.0, 0.0, 0.0, 256});
    out.push_back({FixtureKind::MOBIUS_PAIR, 0.7, 0.3, 0.0, 0.5, 256});
    out.push_back({FixtureKind::COMPLEMENTARY_PAIR, 1.0, 0.3, 0.0, 0.5, 256});
    return out;
}

} // namespace scov
