#pragma once

#include "tfkit/behavior.hpp"
#include "tfkit/localpoly.hpp"
#include "tfkit/scenario.hpp"
#include "tfkit/spacetime.hpp"

#include <json.hpp>

#include <string>

namespace tfkit {

using Json = nlohmann::ordered_json;

/// JSON schema version stamped on every emitted document.
inline constexpr const char* kSchemaVersion = "1";

Json behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const Json& j);

Json distribution_to_json(const TFDistribution& d);
TFDistribution distribution_from_json(const Json& j);

Json joint_distribution_to_json(const JointTFDistribution& d);
JointTFDistribution joint_distribution_from_json(const Json& j);

Json verdict_to_json(const LPVerdict& v, const Behavior& queried);
Json signalling_to_json(const SignallingClass& c);
Json pigeonhole_to_json(const PigeonholeVerdict& v);
Json configuration_to_json(const BoostedConfiguration& config, const IntervalOptions& options);
std::string configuration_to_csv(const BoostedConfiguration& config);
Json causality_report_to_json(const BackwardCausalityReport& report);
Json escape_to_json(const EscapeVerdict& v);

} // namespace tfkit
