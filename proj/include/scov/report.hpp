#pragma once

// Serialization of the check reports: JSON objects with stable key order
// for machine consumption, aligned text tables for the terminal, and the
// frozen-column CSV for sweep output. The CSV schema is versioned in its
// leading comment; the column set (a, b, k, c, M, total, bound, margin)
// does not change between versions that share a major number. All numbers
// are printed with enough digits to round-trip, so byte-identical output
// certifies bit-identical results.

#include "scov/inequalities.hpp"
#include "scov/pipeline.hpp"
#include "scov/radial.hpp"
#include "scov/rearrange.hpp"

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace scov {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const BolReport& r);
ordered_json to_json(const SciReport& r);
ordered_json to_json(const ScanRow& r);
ordered_json to_json(const ChainLink& l);
ordered_json to_json(const ChainReport& r);
ordered_json to_json(const SupersolutionReport& r); // summary, no arrays
ordered_json to_json(const ComparisonReport& r);    // summary, no arrays
ordered_json to_json(const RearrangementResult& r); // summary, no arrays

// Frozen sweep schema: one comment line naming the schema version, any
// caller comment lines (prefixed "# "), the header row, then one row per
// scan entry with %.12g formatting.
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows,
                    const std::vector<std::string>& comments = {});

std::string render_text(const SciReport& r);
std::string render_text(const ChainReport& r);

} // namespace scov
