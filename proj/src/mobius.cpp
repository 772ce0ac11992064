#include "scov/mobius.hpp"

#include <cmath>
#include <stdexcept>

namespace scov {

namespace {

std::complex<double> z0_of(const MobiusParams& m) {
    return {m.z0x, m.z0y};
}

void require_params(const MobiusParams& m) {
    const double n = std::hypot(m.z0x, m.z0y);
    if (!(n < 1.0))
        throw std::invalid_argument("mobius: |z0| must be < 1");
    if (!(m.R > 0.0))
        throw std::invalid_argument("mobius: model radius must be positive");
    if (!std::isfinite(m.theta))
        throw std::invalid_argument("mobius: theta must be finite");
}

} // namespace

std::complex<double> mobius_map(const MobiusParams& m, double x, double y) {
    require_params(m);
    const std::complex<double> z(x / m.R, y / m.R);
    const std::complex<double> z0 = z0_of(m);
    const std::complex<double> rot = std::polar(1.0, m.theta);
    const std::complex<double> den = 1.0 - std::conj(z0) * z;
    return m.R * rot * (z - z0) / den;
}

double mobius_stretch(const MobiusParams& m, double x, double y) {
    require_params(m);
    const std::complex<double> z(x / m.R, y / m.R);
    const std::complex<double> z0 = z0_of(m);
    const double den = std::norm(1.0 - std::conj(z0) * z);
    return (1.0 - std::norm(z0)) / den;
}

DiskSpec mobius_preimage_disk(const MobiusParams& m, double r) {
    require_params(m);
    if (!(r > 0.0) || !(r <= m.R))
        throw std::invalid_argument(
            "mobius_preimage_disk: need 0 < r <= model radius");
    const double rho = r / m.R;
    const double n2 = m.z0x * m.z0x + m.z0y * m.z0y;
    const double den = 1.0 - rho * rho * n2;
    DiskSpec d;
    d.cx = m.R * m.z0x * (1.0 - rho * rho) / den;
    d.cy = m.R * m.z0y * (1.0 - rho * rho) / den;
    d.R = m.R * rho * (1.0 - n2) / den;
    return d;
}

PlanarField mobius_pullback_bubble(double lambda, const MobiusParams& m,
                                   const Grid2D& g) {
    require_params(m);
    if (!(lambda > 0.0))
        throw std::invalid_argument("mobius_pullback_bubble: lambda > 0");

    // The map has a pole at y* = R / conj(z0); refuse grids that reach it.
    const double n = std::hypot(m.z0x, m.z0y);
    if (n > 0.0) {
        const double px = m.R * m.z0x / (n * n);
        const double py = m.R * m.z0y / (n * n);
        const double margin = 2.0 * g.h;
        if (px > g.x0 - margin && px < g.x0 + g.width + margin &&
            py > g.y0 - margin && py < g.y0 + g.height + margin)
            throw std::invalid_argument(
                "mobius_pullback_bubble: grid reaches the pole of the map");
    }

    PlanarField f;
    f.grid = g;
    f.values.resize(g.node_count());
    for (int j = 0; j < g.nodes_y(); ++j) {
        const double y = g.node_y(j);
        for (int i = 0; i < g.nodes_x(); ++i) {
            const double x = g.node_x(i);
            const std::complex<double> w = mobius_map(m, x, y);
            const double stretch = mobius_stretch(m, x, y);
            f.values[g.node_id(i, j)] =
                bubble_value(lambda, std::abs(w)) + 2.0 * std::log(stretch);
        }
    }
    f.disk = DiskSpec{0.0, 0.0, m.R};
    f.mask = disk_node_mask(g, f.disk);
    f.mask_kind = MaskKind::DISK;
    f.norm = Normalization::EXP_U;
    validate_field(f);
    return f;
}

PlanarField bubble_field(double lambda, double R, const Grid2D& g) {
    if (!(lambda > 0.0) || !(R > 0.0))
        throw std::invalid_argument("bubble_field: lambda > 0 and R > 0");
    PlanarField f;
    f.grid = g;
    f.values.resize(g.node_count());
    for (int j = 0; j < g.nodes_y(); ++j) {
        const double y = g.node_y(j);
        for (int i = 0; i < g.nodes_x(); ++i) {
            const double x = g.node_x(i);
            f.values[g.node_id(i, j)] = bubble_value(lambda, std::hypot(x, y));
        }
    }
    f.disk = DiskSpec{0.0, 0.0, R};
    f.mask = disk_node_mask(g, f.disk);
    f.mask_kind = MaskKind::DISK;
    f.norm = Normalization::EXP_U;
    validate_field(f);
    return f;
}

} // namespace scov
