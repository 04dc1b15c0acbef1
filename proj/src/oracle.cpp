#include "alinconv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alinconv/rng.hpp"

namespace alinconv {

std::string to_string(ProbeOutcome outcome) {
    return outcome == ProbeOutcome::InteriorWitness ? "InteriorWitness" : "NoIntersection";
}

std::string to_string(Agreement agreement) {
    switch (agreement) {
        case Agreement::Agree: return "Agree";
        case Agreement::Disagree: return "Disagree";
        case Agreement::Indeterminate: return "Indeterminate";
    }
    return "Unknown";
}

ProbeResult geometric_probe(const DefiningFunction& domain, const TangentFrame& frame, const OracleConfig& config,
                            const std::optional<Eigen::VectorXd>& witness_direction) {
    if (config.radii.empty()) throw ConfigError("probe radius schedule is empty");
    for (double r : config.radii) {
        if (!(r > 0.0)) throw ConfigError("probe radii must be positive");
    }
    if (config.samples_per_radius < 1) throw ConfigError("samples per radius must be positive");

    ProbeResult result;
    result.radii = config.radii;
    result.samples_per_radius = config.samples_per_radius;
    result.anchor = frame.anchor;

    if (frame.kernel_dim == 0) {
        result.vacuous = true;
        for (double r : config.radii) result.records.push_back(RadiusRecord{r, false, Eigen::VectorXd(), 0.0});
        return result;
    }

    std::vector<Eigen::VectorXd> directions;
    directions.reserve(static_cast<std::size_t>(config.samples_per_radius) + 1);
    if (witness_direction) {
        if (witness_direction->size() != frame.anchor.size()) {
            throw DimensionMismatch("witness direction has wrong ambient dimension");
        }
        double norm = witness_direction->norm();
        if (norm > 0.0) directions.push_back(*witness_direction / norm);
    }

    double threshold = -1e-12 * domain.scale_at(frame.anchor);
    Rng rng(config.seed);
    for (double r : config.radii) {
        // Draw the full batch before evaluating so an early exit at one
        // radius never shifts the stream seen by the next.
        std::vector<Eigen::VectorXd> batch = directions;
        for (int i = 0; i < config.samples_per_radius; ++i) {
            Eigen::VectorXd coeffs(frame.kernel_dim);
            for (int q = 0; q < frame.kernel_dim; ++q) coeffs(q) = rng.normal();
            double norm = coeffs.norm();
            if (norm == 0.0) continue;
            batch.push_back(frame.kernel_basis * (coeffs / norm));
        }
        RadiusRecord record;
        record.radius = r;
        for (const auto& s : batch) {
            Eigen::VectorXd x = frame.anchor + r * s;
            double v = domain.value(x);
            if (v < threshold) {
                record.interior_found = true;
                record.witness = x;
                record.rho_value = v;
                if (!result.witness) {
                    result.outcome = ProbeOutcome::InteriorWitness;
                    result.witness = x;
                }
                break;
            }
        }
        result.records.push_back(std::move(record));
    }
    return result;
}

std::vector<double> taylor_residual(const DefiningFunction& domain, const Eigen::VectorXd& w,
                                    const Eigen::VectorXd& s, const std::vector<double>& t_list) {
    if (s.size() != w.size()) throw DimensionMismatch("direction has wrong ambient dimension");
    Eigen::MatrixXd hess = domain.hessian(w);
    double quad = s.dot(hess * s);
    std::vector<double> out;
    out.reserve(t_list.size());
    for (double t : t_list) out.push_back(domain.value(w + t * s) - 0.5 * t * t * quad);
    return out;
}

bool taylor_decay_ok(const std::vector<double>& t_list, const std::vector<double>& residuals, double scale) {
    if (t_list.size() != residuals.size()) throw DimensionMismatch("residual list does not match t list");
    if (t_list.size() < 2) return true;
    double floor = 1e-9 * scale;
    for (std::size_t i = 0; i + 1 < t_list.size(); ++i) {
        double t0 = t_list[i], t1 = t_list[i + 1];
        if (!(t0 > 0.0 && t1 > 0.0)) throw ConfigError("decay check needs positive t values");
        double q0 = std::abs(residuals[i]) / (t0 * t0);
        double q1 = std::abs(residuals[i + 1]) / (t1 * t1);
        if (q1 > 0.5 * q0 + floor) return false;
    }
    return true;
}

double third_derivative_bound(const DefiningFunction& domain, const Eigen::VectorXd& w, const Eigen::VectorXd& s) {
    double h = std::pow(std::numeric_limits<double>::epsilon(), 0.2) * (1.0 + w.norm());
    auto f = [&](double t) { return domain.value(w + t * s); };
    double d3 = (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
    return std::max(std::abs(d3), 1.0);
}

Agreement cross_validate(const PointClassification& classification, const ProbeResult& probe) {
    double anchor_scale = 1.0 + classification.anchor.norm();
    if (classification.anchor.size() != probe.anchor.size() ||
        (classification.anchor - probe.anchor).norm() > 1e-12 * anchor_scale) {
        throw MismatchedAnchor("classification and probe anchors differ");
    }
    if (classification.kind == PointKind::Degenerate || classification.kind == PointKind::VacuousTangent) {
        return Agreement::Indeterminate;
    }
    if (classification.kind == PointKind::NegativeDirection) {
        return probe.outcome == ProbeOutcome::InteriorWitness ? Agreement::Agree : Agreement::Disagree;
    }
    // StrictlyPositive consults the smallest scheduled radius only.
    std::size_t best = 0;
    for (std::size_t i = 1; i < probe.records.size(); ++i) {
        if (probe.records[i].radius < probe.records[best].radius) best = i;
    }
    if (probe.records.empty()) throw ConfigError("probe has no radius records");
    return probe.records[best].interior_found ? Agreement::Disagree : Agreement::Agree;
}

OracleReport run_oracle(const Algebra& algebra, const GammaFrame& frame, const DefiningFunction& domain,
                        const CheckerConfig& checker_config, const OracleConfig& oracle_config) {
    OracleReport report;
    report.checker_seed = checker_config.seed;
    report.checker_config = checker_config;
    report.oracle_config = oracle_config;

    ConvexityReport checked = check_domain(algebra, frame, domain, checker_config);
    report.verdict = checked.verdict;

    for (const auto& rec : checked.records) {
        OraclePointRecord out;
        out.point = rec.point;
        out.classification = rec.classification;
        out.error = rec.error;
        if (rec.classification) {
            try {
                TangentFrame tangent = tangent_frame(algebra, domain, rec.point.w);
                std::optional<Eigen::VectorXd> witness = rec.classification->witness;
                out.probe = geometric_probe(domain, tangent, oracle_config, witness);
                out.agreement = cross_validate(*rec.classification, *out.probe);
                if (*out.agreement == Agreement::Disagree) report.any_disagree = true;
            } catch (const Error& e) {
                out.error = e.code() + ": " + e.what();
            }
        }
        report.records.push_back(std::move(out));
    }
    return report;
}

}  // namespace alinconv
