#include "alinconv/checker.hpp"

#include <cmath>

namespace alinconv {

std::string to_string(PointKind kind) {
    switch (kind) {
        case PointKind::StrictlyPositive: return "StrictlyPositive";
        case PointKind::Degenerate: return "Degenerate";
        case PointKind::NegativeDirection: return "NegativeDirection";
        case PointKind::VacuousTangent: return "VacuousTangent";
    }
    return "Unknown";
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::SufficientConditionHolds: return "SufficientConditionHolds";
        case Verdict::NecessaryConditionViolated: return "NecessaryConditionViolated";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

Eigen::MatrixXd restricted_hessian(const DefiningFunction& domain, const TangentFrame& frame) {
    if (frame.kernel_dim == 0) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd h = domain.hessian(frame.anchor);
    return frame.kernel_basis.transpose() * h * frame.kernel_basis;
}

PointClassification classify_point(const Algebra& algebra, const GammaFrame& frame, const DefiningFunction& domain,
                                   const Eigen::VectorXd& w, std::optional<double> tol) {
    TangentFrame tangent = tangent_frame(algebra, domain, w);
    int m = algebra.dim();
    int n = domain.slots();

    PointClassification out;
    out.anchor = w;
    out.kernel_dim = tangent.kernel_dim;

    if (tangent.kernel_dim == 0) {
        out.kind = PointKind::VacuousTangent;
        out.algebra_form_value = Element::Zero(m);
        out.cross_check_error = 0.0;
        out.tol = tol.value_or(1e-8);
        return out;
    }

    Eigen::MatrixXd hess = domain.hessian(w);
    Eigen::MatrixXd restricted = tangent.kernel_basis.transpose() * hess * tangent.kernel_basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(restricted);
    double lambda = eig.eigenvalues()(0);
    Eigen::VectorXd direction = tangent.kernel_basis * eig.eigenvectors().col(0);
    direction /= direction.norm();
    // The eigensolver's sign choice is arbitrary; pin it for stable reports.
    for (Eigen::Index i = 0; i < direction.size(); ++i) {
        if (std::abs(direction(i)) > 1e-12) {
            if (direction(i) < 0.0) direction = -direction;
            break;
        }
    }

    double tol_eff = tol.value_or(1e-8 * (1.0 + hess.norm()));
    out.min_eigenvalue = lambda;
    out.tol = tol_eff;
    if (lambda > tol_eff) {
        out.kind = PointKind::StrictlyPositive;
    } else if (lambda < -tol_eff) {
        out.kind = PointKind::NegativeDirection;
        out.witness = direction;
    } else {
        out.kind = PointKind::Degenerate;
    }

    BoldVector bold = bold_vector(algebra, frame, direction, n);
    FormalHessian fh = formal_hessian(algebra, frame, hess);
    out.algebra_form_value = quadratic_form_value(algebra, fh, bold);
    double real_form = direction.dot(hess * direction);
    double err = std::abs(out.algebra_form_value(0) - real_form);
    for (int r = 1; r < m; ++r) err = std::max(err, std::abs(out.algebra_form_value(r)));
    out.cross_check_error = err;
    return out;
}

ConvexityReport check_domain(const Algebra& algebra, const GammaFrame& frame, const DefiningFunction& domain,
                             const CheckerConfig& config) {
    ConvexityReport report;
    report.seed = config.seed;
    report.config = config;

    std::vector<BoundaryPoint> points =
        sample_boundary(domain, config.samples, config.seed, config.box_lo, config.box_hi);

    bool any_negative = false;
    bool all_positive = true;
    for (auto& bp : points) {
        PointRecord record;
        record.point = bp;
        try {
            record.classification = classify_point(algebra, frame, domain, bp.w, config.tol);
            PointKind kind = record.classification->kind;
            if (kind == PointKind::NegativeDirection) any_negative = true;
            if (kind != PointKind::StrictlyPositive && kind != PointKind::VacuousTangent) all_positive = false;
        } catch (const Error& e) {
            record.error = e.code() + ": " + e.what();
            all_positive = false;
        }
        report.records.push_back(std::move(record));
    }

    if (any_negative) {
        report.verdict = Verdict::NecessaryConditionViolated;
    } else if (all_positive && !report.records.empty()) {
        report.verdict = Verdict::SufficientConditionHolds;
    } else {
        report.verdict = Verdict::Inconclusive;
    }
    return report;
}

}  // namespace alinconv
