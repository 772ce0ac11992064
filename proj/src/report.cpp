#include "scov/report.hpp"

#include <cstdio>

namespace scov {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

ordered_json to_json(const BolReport& r) {
    return ordered_json{{"area", r.area},
                        {"length_sq", r.length_sq},
                        {"rhs", r.rhs},
                        {"margin", r.margin}};
}

ordered_json to_json(const SciReport& r) {
    return ordered_json{
        {"hypotheses",
         {{"source_ordering", r.source_ordering_ok},
          {"interior_gap", r.interior_gap_ok},
          {"boundary_gap", r.boundary_gap_ok},
          {"connectivity", r.connectivity_ok},
          {"all", r.hypotheses_ok}}},
        {"restriction_nonempty", r.restriction_nonempty},
        {"c", r.c},
        {"M", r.M},
        {"total", r.total},
        {"total_original", r.total_original},
        {"bound", r.bound},
        {"margin", r.margin},
        {"gap_tol", r.gap_tol},
        {"source_tol", r.source_tol},
        {"worst_source", r.worst_source}};
}

ordered_json to_json(const ScanRow& r) {
    return ordered_json{{"a", r.a},         {"b", r.b},
                        {"k", r.k},         {"c", r.c},
                        {"M", r.M},         {"total", r.total},
                        {"bound", r.bound}, {"margin", r.margin}};
}

ordered_json to_json(const ChainLink& l) {
    return ordered_json{{"name", l.name},
                        {"lhs", l.lhs},
                        {"rhs", l.rhs},
                        {"margin", l.margin},
                        {"tolerance", l.tolerance},
                        {"two_sided", l.two_sided},
                        {"pass", l.pass}};
}

ordered_json to_json(const ChainReport& r) {
    ordered_json links = ordered_json::array();
    for (const ChainLink& l : r.links)
        links.push_back(to_json(l));
    ordered_json j{{"fixture", r.fixture},
                   {"branch", r.branch},
                   {"pass", r.pass},
                   {"halted", r.halted},
                   {"links", links},
                   {"eps", r.eps},
                   {"c", r.c},
                   {"M", r.M},
                   {"m1", r.m1},
                   {"m2", r.m2},
                   {"total", r.total},
                   {"bound", r.bound},
                   {"bound_assembled", r.bound_assembled},
                   {"final_margin", r.final_margin},
                   {"route_gap", r.route_gap},
                   {"direct", to_json(r.sci)}};
    if (r.halted) {
        j["halted_at"] = r.halted_at;
        j["halted_reason"] = r.halted_reason;
    }
    if (r.branch == "rearrangement") {
        j["a"] = r.a;
        j["b_eff"] = r.b_eff;
        j["R_a"] = r.R_a;
        j["residual"] = r.residual;
    }
    return j;
}

ordered_json to_json(const SupersolutionReport& r) {
    return ordered_json{{"min_margin", r.min_margin},
                        {"argmin_radius", r.argmin_radius},
                        {"eps_disc", r.eps_disc},
                        {"extra_slack", r.extra_slack},
                        {"nodes", r.radii.size()},
                        {"pass", r.pass}};
}

ordered_json to_json(const ComparisonReport& r) {
    return ordered_json{{"precondition_ok", r.precondition_ok},
                        {"refusal", r.refusal},
                        {"center_gap", r.center_gap},
                        {"lipschitz_constant", r.lipschitz_constant},
                        {"min_margin", r.min_margin},
                        {"argmin_radius", r.argmin_radius},
                        {"eps_disc", r.eps_disc},
                        {"extra_slack", r.extra_slack},
                        {"pass", r.pass}};
}

ordered_json to_json(const RearrangementResult& r) {
    return ordered_json{{"a", r.a},
                        {"R_a", r.R_a},
                        {"mass", r.mass},
                        {"residual", r.residual},
                        {"phi_center", r.phi_center},
                        {"phi_edge", r.phi_edge},
                        {"floor_level", r.floor_level},
                        {"edge_atom", r.edge_atom},
                        {"nodes", r.phi.size()}};
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows,
                    const std::vector<std::string>& comments) {
    os << "# matched-cap sweep schema v1\n";
    for (const std::string& line : comments)
        os << "# " << line << "\n";
    os << "a,b,k,c,M,total,bound,margin\n";
    for (const ScanRow& r : rows) {
        os << fmt("%.12g", r.a) << ',' << fmt("%.12g", r.b) << ','
           << fmt("%.12g", r.k) << ',' << fmt("%.12g", r.c) << ','
           << fmt("%.12g", r.M) << ',' << fmt("%.12g", r.total) << ','
           << fmt("%.12g", r.bound) << ',' << fmt("%.12g", r.margin)
           << '\n';
    }
}

std::string render_text(const SciReport& r) {
    std::string s;
    auto flag = [](bool b) { return b ? "pass" : "FAIL"; };
    s += "hypotheses: source ordering " +
         std::string(flag(r.source_ordering_ok)) + ", interior gap " +
         flag(r.interior_gap_ok) + ", boundary gap " +
         flag(r.boundary_gap_ok) + ", connectivity " +
         flag(r.connectivity_ok) + "\n";
    if (!r.restriction_nonempty)
        s += "restriction: empty level set, nothing to check\n";
    s += "c = " + fmt("%.12g", r.c) + "  M = " + fmt("%.12g", r.M) + "\n";
    s += "total = " + fmt("%.12g", r.total) +
         "  bound = " + fmt("%.12g", r.bound) +
         "  margin = " + fmt("%.12g", r.margin) + "\n";
    return s;
}

std::string render_text(const ChainReport& r) {
    std::string s =
        r.fixture +
        (r.branch.empty() ? "" : ": branch " + r.branch) +
        (r.pass ? " [pass]" : " [FAIL]") + "\n";
    char line[256];
    for (const ChainLink& l : r.links) {
        std::snprintf(line, sizeof line,
                      "  %-18s lhs % .6e  rhs % .6e  margin % .3e  tol "
                      "%.3e  %s\n",
                      l.name.c_str(), l.lhs, l.rhs, l.margin, l.tolerance,
                      l.pass ? "pass" : "FAIL");
        s += line;
    }
    if (r.halted)
        s += "halted at " + r.halted_at + ": " + r.halted_reason + "\n";
    std::snprintf(line, sizeof line,
                  "total %.9g  bound %.9g  assembled %.9g  margin %.9g\n",
                  r.total, r.bound, r.bound_assembled, r.final_margin);
    s += line;
    return s;
}

} // namespace scov
