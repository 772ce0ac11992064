#pragma once

// Exact-solution fixtures for the covering-inequality pipeline. Each one
// is a pair (v1, v2) of Liouville solutions on a disk with a declared
// boundary gap c:
//
//   CONCENTRIC_PAIR    bubbles at scales 1 and 2 restricted to the disk
//                      where their cap masses sum to 8 k pi; the gap
//                      v2 - v1 is radial, equal to c on the boundary and
//                      to M = 2 ln 2 at the center.
//   MOBIUS_PAIR        the same pair pushed through a disk automorphism
//                      (gap invariant, weights transported), so nothing
//                      is radial but every distribution function matches.
//   COMPLEMENTARY_PAIR the k = 1 Mobius pair: boundary gap exactly zero
//                      and total mass exactly 8 pi (complementary caps).
//   DENTED_SOURCE      concentric pair with a Gaussian dent carved out of
//                      v2, violating the source ordering f2 >= f1.
//   OVERSIZED_CROSSING the k = 1 pair on a strictly larger disk, so the
//                      gap crosses zero on an interior circle; used to
//                      exercise the restricted covering check there.
//
// Fixtures are built at a requested grid resolution; the builder is the
// unit the pipeline reruns at half resolution to calibrate tolerances.

#include "scov/grid.hpp"

#include <limits>
#include <string>
#include <vector>

namespace scov {

enum class FixtureKind {
    CONCENTRIC_PAIR,
    MOBIUS_PAIR,
    COMPLEMENTARY_PAIR,
    DENTED_SOURCE,
    OVERSIZED_CROSSING,
};

struct FixtureSpec {
    FixtureKind kind = FixtureKind::CONCENTRIC_PAIR;
    double k = 0.7;     // mass exponent of the matched pair, in (0, 1]
    double z0x = 0.0;   // automorphism center (MOBIUS / COMPLEMENTARY)
    double z0y = 0.0;
    double theta = 0.0; // automorphism rotation
    int nx = 256;       // planar cells per side
    // declared boundary gap override; NaN keeps the exact matched value.
    // Declaring a wrong gap is the supported way to build a fixture whose
    // boundary hypothesis fails on purpose.
    double c_override = std::numeric_limits<double>::quiet_NaN();

    std::string label() const;
};

struct Fixture {
    std::string name;
    PlanarField v1;
    PlanarField v2;
    double c = 0.0; // declared boundary gap
};

// Materializes the fixture, overriding the resolution when nx_override > 0.
Fixture build_fixture(const FixtureSpec& spec, int nx_override = 0);

// The valid pairs exercised end to end by tests and the CLI: concentric
// k = 0.7 and k = 0.4, a Mobius image, and the complementary k = 1 pair.
std::vector<FixtureSpec> shipped_fixtures();

} // namespace scov
