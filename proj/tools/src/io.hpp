#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mcpoly/aifv.hpp"
#include "mcpoly/solvers.hpp"

namespace mcpoly::cli {

using json = nlohmann::ordered_json;

/// Whole file as a string. Throws ParseError when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
/// Parses JSON text, reporting syntax errors as ParseError.
json parse_json(const std::string& text, const std::string& what);

Rational rational_from_json(const json& j, const std::string& where);
json to_json(const Rational& r);
json to_json(const Vector& v);

/// { "m", "families": [[{ "label", "cost", "transitions" }]] }
StateFamilies families_from_json(const json& j);
json families_to_json(const StateFamilies& fams);

json state_to_json(const State& s);
json report_to_json(const SolveReport& r);
json trace_to_json(const SolveReport& r);

/// One "p/q" per line ('#' starts a comment), or a JSON SourceSpec
/// { "probabilities": [...], "names": [...] } or a bare JSON array.
aifv::SourceSpec source_from_text(const std::string& text);
json source_to_json(const aifv::SourceSpec& src);

/// { "m", "source", "trees": [canonical strings] }
aifv::Code code_from_json(const json& j);
json code_to_json(const aifv::Code& code);

/// "a,b,c" into m-1 rationals.
PointX parse_point(const std::string& text, std::size_t m);

}  // namespace mcpoly::cli
