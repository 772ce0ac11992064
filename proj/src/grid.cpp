#include "scov/grid.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace scov {

Grid2D::Grid2D(double x0_, double y0_, double width_, double height_,
               int nx_, int ny_)
    : x0(x0_), y0(y0_), width(width_), height(height_), nx(nx_), ny(ny_) {
    if (nx < 32 || ny < 32)
        throw std::invalid_argument("Grid2D: need at least 32 cells per axis");
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("Grid2D: extents must be positive");
    const double hx = width / nx;
    const double hy = height / ny;
    if (std::fabs(hx - hy) > 1e-12 * std::max(hx, hy))
        throw std::invalid_argument("Grid2D: cells must be square");
    h = hx;
}

Grid2D Grid2D::centered_square(double cx, double cy, double size, int n) {
    return Grid2D(cx - 0.5 * size, cy - 0.5 * size, size, size, n, n);
}

bool Grid2D::same_layout(const Grid2D& o) const {
    return nx == o.nx && ny == o.ny &&
           std::fabs(x0 - o.x0) <= 1e-12 * std::max(1.0, std::fabs(x0)) &&
           std::fabs(y0 - o.y0) <= 1e-12 * std::max(1.0, std::fabs(y0)) &&
           std::fabs(width - o.width) <= 1e-12 * width &&
           std::fabs(height - o.height) <= 1e-12 * height;
}

double circle_box_area(double bx0, double bx1, double by0, double by1,
                       double cx, double cy, double R) {
    if (!(R > 0.0) || bx1 <= bx0 || by1 <= by0) return 0.0;
    // translate so the circle sits at the origin, clip x to [-R, R]
    const double y0 = by0 - cy;
    const double y1 = by1 - cy;
    double x0 = std::clamp(bx0 - cx, -R, R);
    double x1 = std::clamp(bx1 - cx, -R, R);
    if (x1 <= x0) return 0.0;
    if (y0 >= R || y1 <= -R) return 0.0;

    // antiderivative of sqrt(R^2 - x^2)
    const auto S = [R](double x) {
        const double c = std::clamp(x / R, -1.0, 1.0);
        const double s2 = std::max(0.0, (R - x) * (R + x));
        return 0.5 * (x * std::sqrt(s2) + R * R * std::asin(c));
    };

    // Strip breakpoints: where the chord height sqrt(R^2 - x^2) crosses the
    // horizontal box edges. Between consecutive breakpoints the integrand
    //   len(x) = max(0, min(y1, s(x)) - max(y0, -s(x)))
    // keeps one analytic form, decided at the strip midpoint.
    double bp[6];
    int nbp = 0;
    bp[nbp++] = x0;
    bp[nbp++] = x1;
    const auto add = [&](double v) {
        if (v > x0 && v < x1) bp[nbp++] = v;
    };
    if (std::fabs(y0) < R) {
        const double t = std::sqrt((R - y0) * (R + y0));
        add(-t);
        add(t);
    }
    if (std::fabs(y1) < R) {
        const double t = std::sqrt((R - y1) * (R + y1));
        add(-t);
        add(t);
    }
    std::sort(bp, bp + nbp);

    double area = 0.0;
    for (int i = 1; i < nbp; ++i) {
        const double a = bp[i - 1];
        const double b = bp[i];
        if (b <= a) continue;
        const double xm = 0.5 * (a + b);
        const double s = std::sqrt(std::max(0.0, (R - xm) * (R + xm)));
        const bool top_flat = y1 < s;   // upper limit is the box edge
        const bool bot_flat = y0 > -s;  // lower limit is the box edge
        const double up = top_flat ? y1 : s;
        const double lo = bot_flat ? y0 : -s;
        if (up <= lo) continue;
        if (top_flat && bot_flat)
            area += (y1 - y0) * (b - a);
        else if (top_flat)
            area += y1 * (b - a) + (S(b) - S(a));
        else if (bot_flat)
            area += (S(b) - S(a)) - y0 * (b - a);
        else
            area += 2.0 * (S(b) - S(a));
    }
    return std::max(0.0, area);
}

std::vector<std::uint8_t> disk_node_mask(const Grid2D& g, const DiskSpec& d) {
    std::vector<std::uint8_t> m(g.node_count(), 0);
    const double r2 = d.R * d.R;
    for (int j = 0; j < g.nodes_y(); ++j) {
        const double dy = g.node_y(j) - d.cy;
        for (int i = 0; i < g.nodes_x(); ++i) {
            const double dx = g.node_x(i) - d.cx;
            if (dx * dx + dy * dy <= r2) m[g.node_id(i, j)] = 1;
        }
    }
    return m;
}

std::size_t mask_size(const std::vector<std::uint8_t>& mask) {
    std::size_t n = 0;
    for (auto b : mask) n += (b != 0);
    return n;
}

bool mask_connected(const Grid2D& g, const std::vector<std::uint8_t>& mask) {
    if (mask.size() != g.node_count())
        throw std::invalid_argument("mask_connected: mask size mismatch");
    const std::size_t total = mask_size(mask);
    if (total == 0) return true;

    std::size_t seed = 0;
    while (seed < mask.size() && !mask[seed]) ++seed;

    std::vector<std::uint8_t> seen(mask.size(), 0);
    std::queue<std::size_t> q;
    seen[seed] = 1;
    q.push(seed);
    std::size_t reached = 0;
    const int nxp = g.nodes_x();
    while (!q.empty()) {
        const std::size_t id = q.front();
        q.pop();
        ++reached;
        const int i = static_cast<int>(id % nxp);
        const int j = static_cast<int>(id / nxp);
        const auto visit = [&](int ii, int jj) {
            if (ii < 0 || jj < 0 || ii >= nxp || jj >= g.nodes_y()) return;
            const std::size_t nid = g.node_id(ii, jj);
            if (mask[nid] && !seen[nid]) {
                seen[nid] = 1;
                q.push(nid);
            }
        };
        visit(i - 1, j);
        visit(i + 1, j);
        visit(i, j - 1);
        visit(i, j + 1);
    }
    return reached == total;
}

void validate_field(const PlanarField& f) {
    if (f.values.size() != f.grid.node_count())
        throw std::invalid_argument("PlanarField: values size mismatch");
    if (f.mask.size() != f.grid.node_count())
        throw std::invalid_argument("PlanarField: mask size mismatch");
    for (std::size_t n = 0; n < f.values.size(); ++n)
        if (f.mask[n] && !std::isfinite(f.values[n]))
            throw std::invalid_argument(
                "PlanarField: non-finite value on the mask");
    if (f.mask_kind == MaskKind::LEVEL_SET &&
        f.level_gap.size() != f.grid.node_count())
        throw std::invalid_argument("PlanarField: level_gap size mismatch");
    if (!mask_connected(f.grid, f.mask))
        throw std::invalid_argument("PlanarField: mask is not connected");
}

double table_value_at(const Grid2D& g, const std::vector<double>& values,
                      double x, double y) {
    if (values.size() != g.node_count())
        throw std::invalid_argument("table_value_at: table size mismatch");
    const double eps = 1e-12 * std::max({1.0, g.width, g.height});
    if (x < g.x0 - eps || x > g.x0 + g.width + eps || y < g.y0 - eps ||
        y > g.y0 + g.height + eps)
        throw std::invalid_argument("table_value_at: point outside the grid");
    double sx = (x - g.x0) / g.h;
    double sy = (y - g.y0) / g.h;
    int ci = std::min(g.nx - 1, std::max(0, static_cast<int>(std::floor(sx))));
    int cj = std::min(g.ny - 1, std::max(0, static_cast<int>(std::floor(sy))));
    const double tx = std::clamp(sx - ci, 0.0, 1.0);
    const double ty = std::clamp(sy - cj, 0.0, 1.0);
    const double v00 = values[g.node_id(ci, cj)];
    const double v10 = values[g.node_id(ci + 1, cj)];
    const double v01 = values[g.node_id(ci, cj + 1)];
    const double v11 = values[g.node_id(ci + 1, cj + 1)];
    // incremental form: exact on constant tables (the deltas vanish)
    const double vx0 = v00 + tx * (v10 - v00);
    const double vx1 = v01 + tx * (v11 - v01);
    return vx0 + ty * (vx1 - vx0);
}

double field_value_at(const PlanarField& f, double x, double y) {
    return table_value_at(f.grid, f.values, x, y);
}

} // namespace scov
