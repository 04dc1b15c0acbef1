#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "alinconv/algebra.hpp"
#include "alinconv/checker.hpp"
#include "alinconv/domain.hpp"
#include "alinconv/gamma.hpp"
#include "alinconv/oracle.hpp"

namespace alinconv {

// One parsed configuration document. The gamma spec stays in JSON form until
// the algebra dimension is known; checker-level gamma/ptilde overrides are
// already folded in.
struct RunConfig {
    StructureTensor tensor{1};
    std::string algebra_name = "custom";
    std::optional<int> ptilde;
    nlohmann::json gamma_spec = "default";
    std::optional<DefiningFunction> domain;
    CheckerConfig checker;
    OracleConfig oracle;
    std::optional<std::string> output;
    nlohmann::json echo;
};

// Reads and parses a JSON document; raises ConfigError with a parse
// diagnostic on failure.
nlohmann::json load_json_file(const std::string& path);

// Parses the whole config document; unknown keys are rejected at every level.
RunConfig parse_run_config(const nlohmann::json& doc);

StructureTensor algebra_from_json(const nlohmann::json& spec, std::string& name, std::optional<int>& ptilde);

GammaFrame gamma_from_json(const nlohmann::json& spec, int m);

DefiningFunction domain_from_json(const nlohmann::json& spec, int m);

GammaFrame gamma_frame_from_config(const RunConfig& config, int m);

}  // namespace alinconv
