#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alinconv/algebra.hpp"
#include "alinconv/domain.hpp"
#include "alinconv/gamma.hpp"
#include "alinconv/hyperplane.hpp"

namespace alinconv {

enum class PointKind { StrictlyPositive, Degenerate, NegativeDirection, VacuousTangent };

std::string to_string(PointKind kind);

struct PointClassification {
    PointKind kind = PointKind::Degenerate;
    // Absent exactly for VacuousTangent.
    std::optional<double> min_eigenvalue;
    // Present exactly for NegativeDirection: ambient unit vector in the
    // tangent kernel along which the quadratic form is minimal.
    std::optional<Eigen::VectorXd> witness;
    Element algebra_form_value;
    double cross_check_error = 0.0;
    int kernel_dim = 0;
    double tol = 0.0;
    Eigen::VectorXd anchor;
};

// B^T H(w) B on the orthonormal kernel basis B; 0x0 for a vacuous kernel.
Eigen::MatrixXd restricted_hessian(const DefiningFunction& domain, const TangentFrame& frame);

// Classifies one boundary point by the smallest eigenvalue of the restricted
// Hessian, and cross-checks against the algebra-valued quadratic form on the
// bold components of the extremal direction.
PointClassification classify_point(const Algebra& algebra, const GammaFrame& frame, const DefiningFunction& domain,
                                   const Eigen::VectorXd& w, std::optional<double> tol = std::nullopt);

enum class Verdict { SufficientConditionHolds, NecessaryConditionViolated, Inconclusive };

std::string to_string(Verdict verdict);

struct CheckerConfig {
    int samples = 32;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    double box_lo = -2.0;
    double box_hi = 2.0;
};

struct PointRecord {
    BoundaryPoint point;
    std::optional<PointClassification> classification;
    // Error code and message when classification failed; empty otherwise.
    std::string error;
};

struct ConvexityReport {
    std::vector<PointRecord> records;
    Verdict verdict = Verdict::Inconclusive;
    std::uint64_t seed = 0;
    // A finite sample certifies the conditions on the sample only.
    bool sample_only = true;
    CheckerConfig config;
};

// Samples boundary points, classifies each, and aggregates the verdict.
// Per-point failures are recorded, not fatal; sampling failures propagate.
ConvexityReport check_domain(const Algebra& algebra, const GammaFrame& frame, const DefiningFunction& domain,
                             const CheckerConfig& config);

}  // namespace alinconv
