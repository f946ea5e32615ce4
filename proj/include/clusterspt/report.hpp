#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "clusterspt/analysis.hpp"
#include "clusterspt/engine.hpp"

namespace clusterspt::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// v rounded to 12 significant digits; -0 becomes 0.
double round12(double v);

/// Number node holding round12(v), or null when v is not finite.
Json number(double v);

/// {schema_version, config, results, verdict, timings}.
Json envelope(Json config, Json results, Json verdict, Json timings = Json::object());

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& doc);

Json results_json(const VerifyReport& report);
Json verdict_json(const VerifyReport& report);

Json results_json(const SpectrumResult& spectrum);
Json verdict_json(const SpectrumResult& spectrum);

Json results_json(const ProtectionReport& report);
Json verdict_json(const ProtectionReport& report);

Json results_json(const ScanResult& scan, const std::optional<TransitionEstimate>& estimate);
Json verdict_json(const ScanResult& scan, const std::optional<TransitionEstimate>& estimate);

/// CSV writers: a header line, then one row per check, eigenvalue, probe or lambda.
void write_csv(std::ostream& out, const VerifyReport& report);
void write_csv(std::ostream& out, const SpectrumResult& spectrum);
void write_csv(std::ostream& out, const ProtectionReport& report);
void write_csv(std::ostream& out, const ScanResult& scan);

/// 12-significant-digit text used in CSV cells; "nan" for non-finite values.
std::string format_number(double v);

}  // namespace clusterspt::report
