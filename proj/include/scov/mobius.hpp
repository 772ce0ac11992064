#pragma once

// Disk automorphisms and conformal pullbacks of bubble metrics.
//
// For the model disk B_R the automorphism determined by (z0, theta) is
//
//   Phi(y) = R m(y / R),   m(z) = e^{i theta} (z - z0) / (1 - conj(z0) z),
//
// with |z0| < 1. Its conformal stretch is |Phi'(y)| =
// (1 - |z0|^2) / |1 - conj(z0) y / R|^2, independent of theta. Pulling a
// bubble metric back through Phi,
//
//   u(y) = U_lambda(|Phi(y)|) + 2 ln |Phi'(y)|,
//
// again solves Delta u + e^u = 0, and every metric quantity matches: the
// e^u area of Phi^{-1}(E) equals the e^{U_lambda} area of E, and boundary
// lengths correspond likewise. Preimages of centered disks B_r (r < R) are
// round disks with
//
//   center = R z0 (1 - rho^2) / (1 - rho^2 |z0|^2),
//   radius = R rho (1 - |z0|^2) / (1 - rho^2 |z0|^2),   rho = r / R,
//
// which keeps cap regions exactly circular and lets quadrature use exact
// circle/cell overlap weights.

#include "scov/grid.hpp"

#include <complex>

namespace scov {

struct MobiusParams {
    double z0x = 0.0;   // automorphism parameter, |z0| < 1
    double z0y = 0.0;
    double theta = 0.0; // boundary rotation
    double R = 1.0;     // model disk radius
};

// Phi(y) for y = (x, y) in physical coordinates.
std::complex<double> mobius_map(const MobiusParams& m, double x, double y);

// |Phi'(y)| (conformal stretch factor).
double mobius_stretch(const MobiusParams& m, double x, double y);

// Preimage Phi^{-1}(B_r) of a centered disk of radius r < R.
DiskSpec mobius_preimage_disk(const MobiusParams& m, double r);

// Pullback of the bubble exponent through Phi on the given grid. Values are
// filled at every grid node (the formula is smooth past the disk edge);
// the mask is the model disk B_R centered at the origin. The grid must
// contain B_R and stay clear of the pole of Phi at R / conj(z0).
PlanarField mobius_pullback_bubble(double lambda, const MobiusParams& m,
                                   const Grid2D& g);

// Centered bubble exponent sampled on a grid, masked to the disk B_R.
PlanarField bubble_field(double lambda, double R, const Grid2D& g);

} // namespace scov
