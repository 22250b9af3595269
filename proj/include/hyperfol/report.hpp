// report.hpp -- machine-readable command reports.
//
// Reports are ordered JSON documents so that identical inputs render to
// byte-identical text apart from the timestamp field.

#ifndef HYPERFOL_REPORT_HPP
#define HYPERFOL_REPORT_HPP

#include <nlohmann/json.hpp>

#include <string>

namespace hyperfol::report {

using Json = nlohmann::ordered_json;

// Skeleton report: command echo plus a UTC timestamp.
Json make_report(const std::string& command);

// Renders with a fixed layout (2-space indent, ordered keys).
std::string render(const Json& doc);

}  // namespace hyperfol::report

#endif  // HYPERFOL_REPORT_HPP
