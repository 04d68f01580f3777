#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "modehunt/harness.hpp"

namespace modehunt {

inline constexpr int kSchemaVersion = 1;

/// Renders with 17 significant digits; non-finite values become null.
std::string format_number(double x);

/// Serializes with every floating-point value printed by format_number, so a
/// parse of the output reproduces the in-memory doubles bit for bit.
std::string dump_json(const nlohmann::json& value, int indent = 2);

/// Report as a schema-versioned JSON document. Wall times are emitted only
/// when requested, which keeps same-seed reports byte-identical.
nlohmann::json report_to_json(const ExperimentReport& report, bool include_timings = false);

/// Long-format per-replication table: experiment,label,n,replication,metric,value.
void write_report_csv(std::ostream& out, const ExperimentReport& report);

}  // namespace modehunt
