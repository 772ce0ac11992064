#pragma once

// Certification layer for the covering inequalities.
//
// Bol's inequality, for a cap B carrying a conformal factor e^u with
// -Delta u <= e^u on a simply connected domain (area A = int_B e^u):
//
//   (int_{dB} e^{u/2} ds)^2  >=  A (8 pi - A) / 2,
//
// with equality exactly on bubble caps. bol_check evaluates both sides
// with matched quadrature: on radial profiles the area comes from the
// node mass table and the boundary term from an npoints circle sum of the
// node values; on planar fields the area is the masked disk quadrature
// and the boundary term the interpolated circle integral.
//
// The generalized sphere covering inequality, for a pair v1 <= v2 with
// sources f_i = Delta v_i + e^{w v_i} ordered f2 >= f1 >= 0, boundary gap
// v2 - v1 = c on the edge of a simply connected omega, and interior max
// gap M = max (v2 - v1):
//
//   int_omega (e^{v1} + e^{v2})  >=  8 (1 - c/M) pi      (EXP_U, w = 1)
//   int_omega (e^{2v1} + e^{2v2}) >= 4 (1 - c/M) pi      (EXP_2V, w = 2)
//
// sci_check verifies every hypothesis with self-calibrated finite
// difference slacks and reports the two sides; a report with any failed
// hypothesis flag carries no inequality claim. sci_check_restricted runs
// the same check on the strict-gap region {v2 - v1 > c}, the weakest
// domain on which the inequality still applies, and also reports the
// integral over the original domain (which dominates the restricted one).
//
// sharpness_scan sweeps the matched concentric-cap family: for each scale
// a and exponent k (cap masses summing to 8 k pi at the matching radius),
// the margin is the closed-form total minus the bound. It is zero exactly
// at k = 1 (complementary caps), strictly positive for k in (0, 1), and
// strictly negative for k > 1, exhibiting the failure of the k > 1
// extension.

#include "scov/field_ops.hpp"
#include "scov/radial.hpp"

#include <vector>

namespace scov {

struct BolReport {
    double area = 0.0;      // A = int_B e^u
    double length_sq = 0.0; // squared weighted boundary length L^2
    double rhs = 0.0;       // A (8 pi - A) / 2
    double margin = 0.0;    // L^2 - rhs; >= -eps_disc for admissible caps
};

// Radial route: cap of the profile at a node radius. The boundary term is
// an npoints trapezoid sum of the node value around the circle. EXP_U
// profiles only; a cap radius off the node grid or outside the profile
// raises UnsupportedDomainError.
BolReport bol_check(const RadialProfile& u, double cap_radius,
                    int npoints = 1024);

// Planar route: explicit disk region inside the grid (and inside the
// field's domain of validity, which the caller guarantees). EXP_U only.
BolReport bol_check(const PlanarField& u, const DiskSpec& region,
                    int npoints = 2048);

struct SciReport {
    bool source_ordering_ok = false; // f2 >= f1 >= 0 up to FD slack
    bool interior_gap_ok = false;    // v2 >= v1 + c - tol on the domain
    bool boundary_gap_ok = false;    // |(v2 - v1) - c| <= tol on its edge
    bool connectivity_ok = false;    // masked domain is connected
    bool hypotheses_ok = false;      // all of the above
    bool restriction_nonempty = true; // false iff a restricted run got {}
    double c = 0.0;
    double M = 0.0;              // max of v2 - v1 over the domain
    double total = 0.0;          // int (e^{w v1} + e^{w v2}) over the domain
    double total_original = 0.0; // same integral over the pre-restriction
                                 // domain; equals total for plain checks
    double bound = 0.0;          // (8 or 4)(1 - c/M) pi by normalization
    double margin = 0.0;         // total - bound
    double gap_tol = 0.0;        // slack used by the gap checks
    double source_tol = 0.0;     // slack used by the source checks
    double worst_source = 0.0;   // min over (f1, f2 - f1) at interior nodes
};

// Hypothesis checks plus both sides of the covering inequality. The norm
// argument states the claimed normalization; both fields must carry it
// and share grid and mask. c must be >= 0. Hypothesis failures are
// reported, never thrown.
SciReport sci_check(const PlanarField& v1, const PlanarField& v2, double c,
                    Normalization norm);

// The same check on the strict-gap region {v2 - v1 > c}. An empty region
// is reported through restriction_nonempty = false with every hypothesis
// flag down. Nested restrictions (level-set bases) are unsupported.
SciReport sci_check_restricted(const PlanarField& v1, const PlanarField& v2,
                               double c, Normalization norm);

struct ScanRow {
    double a = 0.0;      // inner cap scale
    double b = 0.0;      // outer cap scale, fixed ratio b = 2a
    double k = 0.0;      // mass exponent: caps sum to 8 k pi when matched
    double c = 0.0;      // boundary gap of the matched pair, (1 - k) M
    double M = 0.0;      // center gap, 2 ln(b/a)
    double total = 0.0;  // 8 pi cap_sum_closed_form(a, b, k)
    double bound = 0.0;  // 8 k pi
    double margin = 0.0; // matched_cap_margin(a, b, k) = total - bound
};

// Sharpness sweep over the matched-cap family, b = 2a. Requires positive
// a values and k values in (0, 1.6]. Rows in a-major, k-minor order.
std::vector<ScanRow> sharpness_scan(const std::vector<double>& a_values,
                                    const std::vector<double>& k_values);

} // namespace scov
