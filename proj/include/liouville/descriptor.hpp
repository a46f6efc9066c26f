#pragma once

// JSON descriptors for developing functions, radial profiles, metrics and
// radial pairs. Parse errors are InvalidConfigError naming the field path.

#include <string>

#include <json.hpp>

#include "liouville/covering.hpp"
#include "liouville/devfn.hpp"
#include "liouville/metric.hpp"
#include "liouville/profile.hpp"

namespace liouville {

using Json = nlohmann::json;

DevelopingFunction parse_devfn(const Json& j, const std::string& path = "devfn");
RadialProfile parse_profile(const Json& j, const std::string& path = "profile");
ConformalMetric parse_metric(const Json& j, const std::string& path = "metric");
RadialPair parse_pair(const Json& j, const std::string& path = "pair");

Json to_json(const DevelopingFunction& f);
Json to_json(const RadialProfile& p);

struct DescriptorSummary {
    std::string type;   // devfn, profile, metric or pair
    std::string label;
    std::string detail; // one line per check that ran
};

/// Parses a descriptor of any type (selected by its "type" field) and runs
/// the structural validation of that type.
DescriptorSummary validate_descriptor(const Json& j);

/// Reads and parses a JSON file; InvalidConfigError on IO or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace liouville
