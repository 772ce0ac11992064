#pragma once

// Masked square-cell grids for planar conformal-factor exponents.
//
// Values live on nodes ((nx+1) x (ny+1) points); quadrature walks cells and
// evaluates at cell centers (the bilinear value there is the mean of the
// four corners). A field carries its domain omega as a node mask plus a
// geometric descriptor of the mask boundary:
//
//   FULL_RECT: the whole grid rectangle;
//   DISK:      a round domain, boundary cells weighted by the exact
//              circle/cell overlap area (closed-form circular segments);
//   LEVEL_SET: a superlevel set {gap > c} of a stored gap field, boundary
//              cells weighted by 4x4 bilinear subsampling.
//
// Domains are required to be connected (flood fill over 4-neighbors);
// simply connected domains are what the covering inequalities speak about,
// and disks, Mobius images of disks, and superlevel sets of the radial-gap
// fixtures all are.

#include "scov/bubbles.hpp"

#include <cstdint>
#include <vector>

namespace scov {

struct Grid2D {
    double x0 = 0.0;
    double y0 = 0.0;
    double width = 0.0;
    double height = 0.0;
    int nx = 0; // cell counts
    int ny = 0;
    double h = 0.0; // square cell size, width/nx = height/ny

    Grid2D() = default;
    Grid2D(double x0, double y0, double width, double height, int nx, int ny);

    // centered square grid of side `size` around (cx, cy)
    static Grid2D centered_square(double cx, double cy, double size, int n);

    int nodes_x() const { return nx + 1; }
    int nodes_y() const { return ny + 1; }
    std::size_t node_count() const {
        return static_cast<std::size_t>(nodes_x()) * nodes_y();
    }
    std::size_t node_id(int i, int j) const {
        return static_cast<std::size_t>(j) * nodes_x() + i;
    }
    double node_x(int i) const { return x0 + i * h; }
    double node_y(int j) const { return y0 + j * h; }

    bool same_layout(const Grid2D& o) const;
};

struct DiskSpec {
    double cx = 0.0;
    double cy = 0.0;
    double R = 0.0;
};

enum class MaskKind { FULL_RECT, DISK, LEVEL_SET };

// Exact area of the intersection of the disk (cx, cy, R) with the axis
// aligned box [bx0, bx1] x [by0, by1]; closed-form strip integration.
double circle_box_area(double bx0, double bx1, double by0, double by1,
                       double cx, double cy, double R);

struct PlanarField {
    Grid2D grid;
    std::vector<double> values;  // one per node, row-major (j outer)
    std::vector<std::uint8_t> mask; // node membership in omega
    MaskKind mask_kind = MaskKind::FULL_RECT;
    DiskSpec disk;               // valid when mask_kind == DISK
    // valid when mask_kind == LEVEL_SET: the restricted region is
    // {gap > level} intersected with the base disk (if base_is_disk)
    std::vector<double> level_gap;
    double level = 0.0;
    bool base_is_disk = false;
    DiskSpec base_disk;
    Normalization norm = Normalization::EXP_U;
};

// Node mask of a disk on a grid (closed disk membership).
std::vector<std::uint8_t> disk_node_mask(const Grid2D& g, const DiskSpec& d);

// True iff the masked nodes form one 4-connected component (or the mask is
// empty).
bool mask_connected(const Grid2D& g, const std::vector<std::uint8_t>& mask);

// Number of masked nodes.
std::size_t mask_size(const std::vector<std::uint8_t>& mask);

// Validates the field invariants: layout sizes, finite values on the mask,
// connected mask. Throws std::invalid_argument on violation.
void validate_field(const PlanarField& f);

// Bilinear interpolation of the node values at an arbitrary point inside
// the grid rectangle.
double field_value_at(const PlanarField& f, double x, double y);

// Bilinear interpolation within an arbitrary node table of the same layout.
double table_value_at(const Grid2D& g, const std::vector<double>& values,
                      double x, double y);

} // namespace scov
