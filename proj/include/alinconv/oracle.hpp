#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alinconv/checker.hpp"
#include "alinconv/domain.hpp"
#include "alinconv/hyperplane.hpp"

namespace alinconv {

struct OracleConfig {
    std::vector<double> radii = {0.3, 0.1, 0.03, 0.01};
    int samples_per_radius = 16;
    std::uint64_t seed = 1;
};

enum class ProbeOutcome { NoIntersection, InteriorWitness };

std::string to_string(ProbeOutcome outcome);

struct RadiusRecord {
    double radius = 0.0;
    bool interior_found = false;
    // Ambient point with rho < 0 when found; empty otherwise.
    Eigen::VectorXd witness;
    double rho_value = 0.0;
};

struct ProbeResult {
    ProbeOutcome outcome = ProbeOutcome::NoIntersection;
    std::optional<Eigen::VectorXd> witness;
    std::vector<double> radii;
    int samples_per_radius = 0;
    std::vector<RadiusRecord> records;
    // Kernel dimension zero makes NoIntersection vacuous.
    bool vacuous = false;
    Eigen::VectorXd anchor;
};

// Probes rho(w + r s) over unit kernel directions s for each radius; the
// supplied witness direction is tried first. Strictly negative means below
// -1e-12 * scale. Early exit applies within one radius only; every radius in
// the schedule gets a record.
ProbeResult geometric_probe(const DefiningFunction& domain, const TangentFrame& frame, const OracleConfig& config,
                            const std::optional<Eigen::VectorXd>& witness_direction = std::nullopt);

// residual(t) = rho(w + t s) - (t^2/2) s^T H(w) s for unit tangent s.
std::vector<double> taylor_residual(const DefiningFunction& domain, const Eigen::VectorXd& w,
                                    const Eigen::VectorXd& s, const std::vector<double>& t_list);

// Checks |residual(t)|/t^2 at least halves along the list, up to an absolute
// floor that absorbs rounding on exact quadratics.
bool taylor_decay_ok(const std::vector<double>& t_list, const std::vector<double>& residuals, double scale);

// Empirical bound on the third directional derivative of rho at w along s,
// from a five-point stencil; floored at 1.
double third_derivative_bound(const DefiningFunction& domain, const Eigen::VectorXd& w, const Eigen::VectorXd& s);

enum class Agreement { Agree, Disagree, Indeterminate };

std::string to_string(Agreement agreement);

// Compares the eigenvalue classification with the geometric probe at the
// smallest scheduled radius.
Agreement cross_validate(const PointClassification& classification, const ProbeResult& probe);

struct OraclePointRecord {
    BoundaryPoint point;
    std::optional<PointClassification> classification;
    std::optional<ProbeResult> probe;
    std::optional<Agreement> agreement;
    std::string error;
};

struct OracleReport {
    std::vector<OraclePointRecord> records;
    Verdict verdict = Verdict::Inconclusive;
    bool any_disagree = false;
    std::uint64_t checker_seed = 0;
    CheckerConfig checker_config;
    OracleConfig oracle_config;
};

// check_domain plus a probe and agreement column per classified point.
OracleReport run_oracle(const Algebra& algebra, const GammaFrame& frame, const DefiningFunction& domain,
                        const CheckerConfig& checker_config, const OracleConfig& oracle_config);

}  // namespace alinconv
