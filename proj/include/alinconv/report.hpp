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

nlohmann::json vector_json(const Eigen::VectorXd& v);
nlohmann::json matrix_json(const Eigen::MatrixXd& m);

// UTC wall-clock time; the one report field exempt from reproducibility.
std::string iso_timestamp();

nlohmann::json algebra_summary_json(const Algebra& algebra, const std::string& name);
nlohmann::json classification_json(const PointClassification& c);
nlohmann::json probe_json(const ProbeResult& p);

nlohmann::json validate_report(const Algebra& algebra, const std::string& name, const nlohmann::json& config_echo);
nlohmann::json derivatives_report(const Algebra& algebra, const std::string& name, const GammaFrame& frame,
                                  const DefiningFunction& domain, const Eigen::VectorXd& point,
                                  const nlohmann::json& config_echo);
nlohmann::json check_report(const Algebra& algebra, const std::string& name, const GammaFrame& frame,
                            const std::string& domain_name, const ConvexityReport& report,
                            const nlohmann::json& config_echo);
nlohmann::json oracle_report(const Algebra& algebra, const std::string& name, const GammaFrame& frame,
                             const std::string& domain_name, const OracleReport& report,
                             const nlohmann::json& config_echo);

// Sorted keys, two-space indent, trailing newline; deterministic for a fixed
// document.
std::string render_report(const nlohmann::json& doc);

// Writes to the path when given, stdout otherwise.
void emit_report(const nlohmann::json& doc, const std::optional<std::string>& path);

}  // namespace alinconv
