#include "scov/field_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scov {

namespace {

void require_weight(int w) {
    if (w != 1 && w != 2)
        throw std::invalid_argument("weight_exponent must be 1 or 2");
}

void require_same_domain(const PlanarField& a, const PlanarField& b) {
    if (!a.grid.same_layout(b.grid))
        throw std::invalid_argument("fields live on different grids");
    if (a.mask != b.mask)
        throw std::invalid_argument("fields carry different masks");
}

// nearest / farthest distance from the cell box to a disk center
void cell_distance_range(const Grid2D& g, int ci, int cj, const DiskSpec& d,
                         double& dmin, double& dmax) {
    const double bx0 = g.node_x(ci), bx1 = g.node_x(ci + 1);
    const double by0 = g.node_y(cj), by1 = g.node_y(cj + 1);
    const double nx = std::max({bx0 - d.cx, d.cx - bx1, 0.0});
    const double ny = std::max({by0 - d.cy, d.cy - by1, 0.0});
    dmin = std::hypot(nx, ny);
    const double fx = std::max(d.cx - bx0, bx1 - d.cx);
    const double fy = std::max(d.cy - by0, by1 - d.cy);
    dmax = std::hypot(fx, fy);
}

int cell_corner_mask_count(const PlanarField& f, int ci, int cj) {
    const Grid2D& g = f.grid;
    return f.mask[g.node_id(ci, cj)] + f.mask[g.node_id(ci + 1, cj)] +
           f.mask[g.node_id(ci, cj + 1)] + f.mask[g.node_id(ci + 1, cj + 1)];
}

bool in_disk(const DiskSpec& d, double x, double y) {
    const double dx = x - d.cx;
    const double dy = y - d.cy;
    return dx * dx + dy * dy <= d.R * d.R;
}

// membership test for level-set masks at off-node points
bool level_set_member(const PlanarField& f, double x, double y) {
    if (f.base_is_disk && !in_disk(f.base_disk, x, y)) return false;
    return table_value_at(f.grid, f.level_gap, x, y) > f.level;
}

void require_circle_inside(const Grid2D& g, const DiskSpec& d) {
    const double eps = 1e-9 * g.h;
    if (d.cx - d.R < g.x0 - eps || d.cx + d.R > g.x0 + g.width + eps ||
        d.cy - d.R < g.y0 - eps || d.cy + d.R > g.y0 + g.height + eps)
        throw std::invalid_argument("circle leaves the grid rectangle");
}

bool node_on_mask_boundary(const PlanarField& f, int i, int j) {
    const Grid2D& g = f.grid;
    if (!f.mask[g.node_id(i, j)]) return false;
    if (i == 0 || j == 0 || i == g.nx || j == g.ny) return true;
    return !f.mask[g.node_id(i - 1, j)] || !f.mask[g.node_id(i + 1, j)] ||
           !f.mask[g.node_id(i, j - 1)] || !f.mask[g.node_id(i, j + 1)];
}

} // namespace

double disk_area_integral(const PlanarField& fld, const DiskSpec& region,
                          int weight_exponent) {
    require_weight(weight_exponent);
    validate_field(fld);
    if (!(region.R > 0.0))
        throw std::invalid_argument("disk_area_integral: radius must be > 0");
    require_circle_inside(fld.grid, region);
    const Grid2D& g = fld.grid;
    const double w = weight_exponent;
    double total = 0.0;
    for (int cj = 0; cj < g.ny; ++cj) {
        for (int ci = 0; ci < g.nx; ++ci) {
            double dmin, dmax;
            cell_distance_range(g, ci, cj, region, dmin, dmax);
            if (dmin >= region.R) continue;
            const double bx0 = g.node_x(ci);
            const double by0 = g.node_y(cj);
            if (dmax <= region.R) {
                // interior cell: midpoint rule on the 2x2 quadrants
                const double hq = 0.5 * g.h;
                for (int jj = 0; jj < 2; ++jj)
                    for (int ii = 0; ii < 2; ++ii)
                        total += hq * hq *
                                 std::exp(w * field_value_at(
                                                  fld, bx0 + (ii + 0.5) * hq,
                                                  by0 + (jj + 0.5) * hq));
            } else {
                // boundary cell: 4x4 subcells, each with its exact overlap
                const double hs = 0.25 * g.h;
                for (int jj = 0; jj < 4; ++jj) {
                    for (int ii = 0; ii < 4; ++ii) {
                        const double sx0 = bx0 + ii * hs;
                        const double sy0 = by0 + jj * hs;
                        const double weight =
                            circle_box_area(sx0, sx0 + hs, sy0, sy0 + hs,
                                            region.cx, region.cy, region.R);
                        if (weight <= 0.0) continue;
                        total += weight *
                                 std::exp(w * field_value_at(fld,
                                                             sx0 + 0.5 * hs,
                                                             sy0 + 0.5 * hs));
                    }
                }
            }
        }
    }
    return total;
}

double area_integral(const PlanarField& fld, int weight_exponent) {
    require_weight(weight_exponent);
    validate_field(fld);
    if (fld.mask_kind == MaskKind::DISK)
        return disk_area_integral(fld, fld.disk, weight_exponent);

    const Grid2D& g = fld.grid;
    const double w = weight_exponent;
    double total = 0.0;
    for (int cj = 0; cj < g.ny; ++cj) {
        for (int ci = 0; ci < g.nx; ++ci) {
            const int corners = cell_corner_mask_count(fld, ci, cj);
            if (corners == 0) continue;
            const double bx0 = g.node_x(ci);
            const double by0 = g.node_y(cj);
            if (corners == 4) {
                const double hq = 0.5 * g.h;
                for (int jj = 0; jj < 2; ++jj)
                    for (int ii = 0; ii < 2; ++ii)
                        total += hq * hq *
                                 std::exp(w * field_value_at(
                                                  fld, bx0 + (ii + 0.5) * hq,
                                                  by0 + (jj + 0.5) * hq));
                continue;
            }
            if (fld.mask_kind != MaskKind::LEVEL_SET)
                continue; // rectangle masks have no partial cells
            // partial level-set cell: 4x4 bilinear subsampling
            const double hsub = g.h / 4.0;
            for (int jj = 0; jj < 4; ++jj) {
                for (int ii = 0; ii < 4; ++ii) {
                    const double px = bx0 + (ii + 0.5) * hsub;
                    const double py = by0 + (jj + 0.5) * hsub;
                    if (!level_set_member(fld, px, py)) continue;
                    total += hsub * hsub *
                             std::exp(w * field_value_at(fld, px, py));
                }
            }
        }
    }
    return total;
}

double max_difference(const PlanarField& v1, const PlanarField& v2) {
    require_same_domain(v1, v2);
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t n = 0; n < v1.mask.size(); ++n) {
        if (!v1.mask[n]) continue;
        best = std::max(best, v2.values[n] - v1.values[n]);
        any = true;
    }
    if (!any) throw std::invalid_argument("max_difference: empty mask");
    return best;
}

GapCheckReport boundary_gap_check(const PlanarField& v1, const PlanarField& v2,
                                  double c, double tol) {
    require_same_domain(v1, v2);
    if (!(c >= 0.0))
        throw std::invalid_argument("boundary_gap_check: c must be >= 0");
    if (!(tol >= 0.0))
        throw std::invalid_argument("boundary_gap_check: tol must be >= 0");
    const Grid2D& g = v1.grid;
    GapCheckReport rep;
    rep.c = c;
    rep.tol = tol;
    for (int j = 0; j <= g.ny; ++j) {
        for (int i = 0; i <= g.nx; ++i) {
            const std::size_t n = g.node_id(i, j);
            if (!v1.mask[n]) continue;
            const double gap = v2.values[n] - v1.values[n];
            if (node_on_mask_boundary(v1, i, j)) {
                ++rep.boundary_nodes;
                const double dev = std::fabs(gap - c);
                if (dev > rep.worst_boundary_dev) {
                    rep.worst_boundary_dev = dev;
                    rep.worst_boundary_x = g.node_x(i);
                    rep.worst_boundary_y = g.node_y(j);
                }
            } else {
                ++rep.interior_nodes;
                const double violation = c - gap;
                if (violation > rep.worst_interior_violation) {
                    rep.worst_interior_violation = violation;
                    rep.worst_interior_x = g.node_x(i);
                    rep.worst_interior_y = g.node_y(j);
                }
            }
        }
    }
    rep.boundary_pass = rep.worst_boundary_dev <= tol;
    rep.interior_pass = rep.worst_interior_violation <= tol;
    rep.pass = rep.boundary_pass && rep.interior_pass;
    return rep;
}

double circle_weighted_length(const PlanarField& fld, const DiskSpec& circle,
                              bool half, int npoints) {
    validate_field(fld);
    if (npoints < 16)
        throw std::invalid_argument(
            "circle_weighted_length: need at least 16 points");
    if (!(circle.R > 0.0))
        throw std::invalid_argument("circle_weighted_length: radius > 0");
    require_circle_inside(fld.grid, circle);
    const double factor = half ? 0.5 : 1.0;
    const double dtheta = two_pi / npoints;
    double sum = 0.0;
    for (int m = 0; m < npoints; ++m) {
        const double t = m * dtheta;
        const double x = circle.cx + circle.R * std::cos(t);
        const double y = circle.cy + circle.R * std::sin(t);
        sum += std::exp(factor * field_value_at(fld, x, y));
    }
    return sum * circle.R * dtheta;
}

double boundary_weighted_length(const PlanarField& fld, bool half,
                                int npoints) {
    if (fld.mask_kind != MaskKind::DISK)
        throw UnsupportedDomainError(
            "boundary_weighted_length: mask boundary is not a parametrized "
            "circle");
    return circle_weighted_length(fld, fld.disk, half, npoints);
}

RestrictedMask restrict_mask(const PlanarField& v1, const PlanarField& v2,
                             double c) {
    if (!v1.grid.same_layout(v2.grid))
        throw std::invalid_argument("restrict_mask: grids differ");
    if (v1.values.size() != v1.grid.node_count() ||
        v2.values.size() != v2.grid.node_count())
        throw std::invalid_argument("restrict_mask: bad field layout");
    RestrictedMask r;
    r.level = c;
    r.gap.resize(v1.values.size());
    r.mask.assign(v1.values.size(), 0);
    for (std::size_t n = 0; n < v1.values.size(); ++n) {
        r.gap[n] = v2.values[n] - v1.values[n];
        const bool base = v1.mask[n] && v2.mask[n];
        if (base && r.gap[n] > c) {
            r.mask[n] = 1;
            ++r.count;
        }
    }
    r.empty = (r.count == 0);
    r.connected = mask_connected(v1.grid, r.mask);
    return r;
}

PlanarField apply_restriction(const PlanarField& base,
                              const RestrictedMask& r) {
    if (base.mask_kind == MaskKind::LEVEL_SET)
        throw UnsupportedDomainError(
            "apply_restriction: nested level-set restriction not supported");
    if (r.mask.size() != base.grid.node_count())
        throw std::invalid_argument("apply_restriction: mask size mismatch");
    PlanarField f = base;
    f.mask = r.mask;
    f.mask_kind = MaskKind::LEVEL_SET;
    f.level_gap = r.gap;
    f.level = r.level;
    f.base_is_disk = (base.mask_kind == MaskKind::DISK);
    f.base_disk = base.disk;
    validate_field(f);
    return f;
}

std::vector<double> source_table(const PlanarField& fld) {
    validate_field(fld);
    const Grid2D& g = fld.grid;
    const double w = (fld.norm == Normalization::EXP_U) ? 1.0 : 2.0;
    const double h2 = g.h * g.h;
    std::vector<double> f(g.node_count(),
                          std::numeric_limits<double>::quiet_NaN());
    for (int j = 1; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i) {
            const std::size_t n = g.node_id(i, j);
            if (!fld.mask[n] || !fld.mask[g.node_id(i - 1, j)] ||
                !fld.mask[g.node_id(i + 1, j)] ||
                !fld.mask[g.node_id(i, j - 1)] ||
                !fld.mask[g.node_id(i, j + 1)])
                continue;
            const double lap =
                (fld.values[g.node_id(i - 1, j)] +
                 fld.values[g.node_id(i + 1, j)] +
                 fld.values[g.node_id(i, j - 1)] +
                 fld.values[g.node_id(i, j + 1)] - 4.0 * fld.values[n]) /
                h2;
            f[n] = lap + std::exp(w * fld.values[n]);
        }
    }
    return f;
}

double max_interior_residual(const PlanarField& fld) {
    const std::vector<double> f = source_table(fld);
    double worst = 0.0;
    for (double v : f)
        if (std::isfinite(v)) worst = std::max(worst, std::fabs(v));
    return worst;
}

double source_check_slack(const PlanarField& fld) {
    const double w = (fld.norm == Normalization::EXP_U) ? 1.0 : 2.0;
    double vmax = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < fld.values.size(); ++n)
        if (fld.mask[n]) vmax = std::max(vmax, fld.values[n]);
    if (!std::isfinite(vmax)) return 0.0;
    return 8.0 * fld.grid.h * fld.grid.h * (1.0 + std::exp(w * vmax));
}

double gap_check_slack(const PlanarField& v1, const PlanarField& v2) {
    require_same_domain(v1, v2);
    const Grid2D& g = v1.grid;
    double grad = 0.0;
    for (int j = 0; j <= g.ny; ++j) {
        for (int i = 0; i <= g.nx; ++i) {
            const std::size_t n = g.node_id(i, j);
            if (!v1.mask[n]) continue;
            const double gap = v2.values[n] - v1.values[n];
            if (i < g.nx && v1.mask[g.node_id(i + 1, j)]) {
                const std::size_t m = g.node_id(i + 1, j);
                grad = std::max(
                    grad, std::fabs((v2.values[m] - v1.values[m]) - gap));
            }
            if (j < g.ny && v1.mask[g.node_id(i, j + 1)]) {
                const std::size_t m = g.node_id(i, j + 1);
                grad = std::max(
                    grad, std::fabs((v2.values[m] - v1.values[m]) - gap));
            }
        }
    }
    return 4.0 * grad; // 4h * (grad / h)
}

PlanarField convert_normalization(const PlanarField& fld, Normalization from,
                                  Normalization to) {
    if (fld.norm != from)
        throw std::invalid_argument(
            "convert_normalization: field is not in the stated convention");
    if (from == to) return fld;
    const double rscale =
        (from == Normalization::EXP_U) ? 1.0 / std::sqrt(2.0) : std::sqrt(2.0);
    const double vscale = (from == Normalization::EXP_U) ? 0.5 : 2.0;
    PlanarField out = fld;
    out.grid = Grid2D(fld.grid.x0 * rscale, fld.grid.y0 * rscale,
                      fld.grid.width * rscale, fld.grid.height * rscale,
                      fld.grid.nx, fld.grid.ny);
    for (double& v : out.values) v *= vscale;
    out.disk = DiskSpec{fld.disk.cx * rscale, fld.disk.cy * rscale,
                        fld.disk.R * rscale};
    if (!out.level_gap.empty())
        for (double& v : out.level_gap) v *= vscale;
    out.level = fld.level * vscale;
    out.base_disk = DiskSpec{fld.base_disk.cx * rscale,
                             fld.base_disk.cy * rscale,
                             fld.base_disk.R * rscale};
    out.norm = to;
    return out;
}

std::vector<WeightedSample> gap_mass_samples(const PlanarField& v1,
                                             const PlanarField& v2,
                                             int weight_exponent) {
    require_weight(weight_exponent);
    require_same_domain(v1, v2);
    if (v1.norm != v2.norm)
        throw std::invalid_argument(
            "gap_mass_samples: mixed normalizations");
    validate_field(v1);
    validate_field(v2);

    const Grid2D& g = v1.grid;
    const double w = weight_exponent;
    std::vector<double> gap(v1.values.size());
    for (std::size_t n = 0; n < gap.size(); ++n)
        gap[n] = v2.values[n] - v1.values[n];

    // membership test used for partial-cell coverage fractions
    const auto member = [&](double x, double y) -> bool {
        switch (v1.mask_kind) {
        case MaskKind::DISK:
            return in_disk(v1.disk, x, y);
        case MaskKind::LEVEL_SET:
            return level_set_member(v1, x, y);
        case MaskKind::FULL_RECT:
        default:
            return true;
        }
    };

    std::vector<WeightedSample> out;
    out.reserve(static_cast<std::size_t>(g.nx) * g.ny * 4);
    for (int cj = 0; cj < g.ny; ++cj) {
        for (int ci = 0; ci < g.nx; ++ci) {
            bool full, cut;
            if (v1.mask_kind == MaskKind::DISK) {
                double dmin, dmax;
                cell_distance_range(g, ci, cj, v1.disk, dmin, dmax);
                if (dmin > v1.disk.R) continue;
                cut = dmax > v1.disk.R;
                full = !cut;
            } else {
                const int corners = cell_corner_mask_count(v1, ci, cj);
                if (corners == 0) continue;
                full = (corners == 4) &&
                       (v1.mask_kind == MaskKind::FULL_RECT ||
                        v1.mask_kind == MaskKind::LEVEL_SET);
                cut = !full;
            }
            const int sub = cut ? 4 : 2;
            const double hsub = g.h / sub;
            const double bx0 = g.node_x(ci);
            const double by0 = g.node_y(cj);
            for (int jj = 0; jj < sub; ++jj) {
                for (int ii = 0; ii < sub; ++ii) {
                    const double px = bx0 + (ii + 0.5) * hsub;
                    const double py = by0 + (jj + 0.5) * hsub;
                    double wfrac = 1.0;
                    if (cut) {
                        int cnt = 0;
                        const double hq = hsub / 4.0;
                        for (int qq = 0; qq < 4; ++qq)
                            for (int pp = 0; pp < 4; ++pp)
                                if (member(px - 0.5 * hsub + (pp + 0.5) * hq,
                                           py - 0.5 * hsub + (qq + 0.5) * hq))
                                    ++cnt;
                        if (cnt == 0) continue;
                        wfrac = cnt / 16.0;
                    }
                    WeightedSample s;
                    s.gap = table_value_at(g, gap, px, py);
                    s.mass = std::exp(w * field_value_at(v1, px, py)) * hsub *
                             hsub * wfrac;
                    out.push_back(s);
                }
            }
        }
    }
    return out;
}

} // namespace scov
