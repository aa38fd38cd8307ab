#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "logconv/extremal.hpp"
#include "logconv/reinhardt.hpp"

namespace logconv {

using json = nlohmann::json;

// Parsers throw input_error with a JSON-path-prefixed message on any schema
// or rational-syntax problem. Rationals travel as strings "p" / "p/q"
// (decimal literals are accepted on input); coordinate indices are 1-based
// on the wire and 0-based in memory.

Rat parse_rat(const json& j, const std::string& where);
RatVec parse_point(const json& j, const std::string& where);
HPolytope parse_hpolytope(const json& j, const std::string& where);
Cell parse_cell(const json& j, const std::string& where);
ExtremalProblem parse_extremal_problem(const json& j, const std::string& where);
CrossSpec parse_cross_spec(const json& j, const std::string& where);

// truncation bounds the cells generated from "polydisc" shorthand domains.
ReinhardtDomain parse_reinhardt_domain(const json& j, const std::string& where,
                                       const Rat& truncation);
ReinhardtCross parse_reinhardt_cross(const json& j, const std::string& where,
                                     const Rat& truncation);

std::vector<RatVec> parse_points_file(const json& j, const std::string& where);
std::vector<LogPoint> parse_log_points_file(const json& j, const std::string& where);

json rat_json(const Rat& r);
json point_json(const RatVec& v);
json vdata_json(const VData& vd);
json hpolytope_json(const HPolytope& poly);
json cell_json(const Cell& cell);
json phi_identities_json(const PhiIdentityReport& rep);
json cross_report_json(const CrossReport& rep);
json reinhardt_report_json(const ReinhardtCrossReport& rep);
json doh_json(const DohResult& res);
json envelope_json(const EnvelopeResult& res);

json load_json_file(const std::string& path);  // input_error on I/O or syntax

}  // namespace logconv
