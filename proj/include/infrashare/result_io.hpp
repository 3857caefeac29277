#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "infrashare/analysis.hpp"
#include "infrashare/kernels.hpp"

namespace infrashare {

/// Shortest round-trip rendering is used in JSON; CSV cells use this
/// 17-significant-digit form. NaN renders as "nan", infinities as "inf"/"-inf".
std::string format_number(double v);

nlohmann::ordered_json to_json(const ResultDocument& doc);
/// Pretty-printed JSON with a trailing newline.
std::string render_json(const ResultDocument& doc);
/// Tables rounded for reading; no timestamps.
std::string render_human(const ResultDocument& doc);

/// Scalar column names produced for the spec's analyses, in output order.
std::vector<std::string> scalar_columns(const ScenarioSpec& spec);
/// Values for scalar_columns(doc.scenario); empty cells for missing results.
std::vector<std::string> scalar_values(const ResultDocument& doc);

std::string csv_escape(const std::string& cell);
std::string render_csv(const SweepTable& table);
std::string render_csv(const Curve& curve);

}  // namespace infrashare
