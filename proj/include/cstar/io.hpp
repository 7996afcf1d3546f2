#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include "json.hpp"

#include "cstar/atiyah.hpp"
#include "cstar/drum.hpp"
#include "cstar/fan.hpp"
#include "cstar/homog.hpp"
#include "cstar/tflow.hpp"

// JSON forms of everything the CLI reads or writes. Field names are listed in
// schemas/*.schema.json and do not change between releases. Every loader throws
// ParseError on malformed input and the library's own errors on invalid data.
namespace cstar::io {

using Json = nlohmann::json;

// integers that fit in a long are numbers, larger ones decimal strings
Json to_json(const exactlat::Int& x);
exactlat::Int int_from_json(const Json& j);
// "p/q", or a number when integral
Json to_json(const exactlat::Rat& x);
exactlat::Rat rat_from_json(const Json& j);

Json to_json(const exactlat::LatticeVector& x);
exactlat::LatticeVector vector_from_json(const Json& j);
// "1,-1,0" or "(1,-1,0)"
exactlat::LatticeVector parse_vector(const std::string& text);

// { "rank", "rays", "max_cones" [, "labels"] }; rays are divided by their content
Json to_json(const fan::Fan& f);
fan::Fan fan_from_json(const Json& j);

// { "coeffs" }, checked against the fan's ray count when one is given
Json to_json(const fan::TDivisor& d);
fan::TDivisor divisor_from_json(const Json& j, const fan::Fan* f = nullptr);

// { "rank", "vertices" }
Json to_json(const drum::LatticePolytope& p);
drum::LatticePolytope polytope_from_json(const Json& j);

// the report together with the fan it was computed on
Json to_json(const tflow::BBReport& r, const fan::Fan& f);
std::pair<fan::Fan, tflow::BBReport> bb_report_from_json(const Json& j);

Json to_json(const atiyah::Report& r);
atiyah::Report atiyah_report_from_json(const Json& j);

Json to_json(const homog::ActionReport& r);
Json to_json(const homog::AdjointActionReport& r);
Json to_json(const homog::Bw3Certificate& c);
homog::Bw3Certificate bw3_certificate_from_json(const Json& j);
// same layout as tests/fixtures/adjoint_tables.json
Json to_json(const std::vector<homog::TableRow>& tables);

Json read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const Json& j);
std::string dump(const Json& j);  // two-space indent, trailing newline

// one fan file per suite fan plus manifest.json naming them
void export_suite(const atiyah::AtiyahSuite& s, const std::filesystem::path& dir);

}  // namespace cstar::io
