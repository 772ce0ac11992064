#pragma once

// Text snapshots of planar fields: a self-describing header (grid origin,
// extent, cell counts, mask geometry, normalization) followed by row-major
// node values and mask bits. Values are written with max_digits10 so a
// save/load round trip is bit-exact.

#include "scov/grid.hpp"

#include <iosfwd>
#include <string>

namespace scov {

void save_field(std::ostream& os, const PlanarField& f);
void save_field_file(const std::string& path, const PlanarField& f);

PlanarField load_field(std::istream& is);
PlanarField load_field_file(const std::string& path);

} // namespace scov
