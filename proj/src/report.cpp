#include "alinconv/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

namespace alinconv {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(row);
    }
    return out;
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

json envelope(const std::string& command, const json& config_echo) {
    json doc;
    doc["tool"] = {{"name", "alinconv"}, {"version", ALINCONV_VERSION}};
    doc["timestamp"] = iso_timestamp();
    doc["command"] = command;
    doc["config"] = config_echo;
    return doc;
}

json gamma_json(const GammaFrame& frame) {
    json out;
    out["kind"] = frame.kind();
    out["matrix"] = matrix_json(frame.gamma());
    return out;
}

json point_record_json(const BoundaryPoint& point, const std::optional<PointClassification>& classification,
                       const std::string& error) {
    json rec;
    rec["w"] = vector_json(point.w);
    rec["residual"] = point.residual;
    if (classification) {
        json c = classification_json(*classification);
        for (auto it = c.begin(); it != c.end(); ++it) rec[it.key()] = it.value();
    }
    if (!error.empty()) rec["error"] = error;
    return rec;
}

}  // namespace

json algebra_summary_json(const Algebra& algebra, const std::string& name) {
    json out;
    out["name"] = name;
    out["m"] = algebra.dim();
    out["ptilde"] = algebra.ptilde();
    out["gamma_determinants"] = vector_json(algebra.gamma_determinants());
    json invertible = json::array();
    for (int k = 0; k < algebra.dim(); ++k) invertible.push_back(true);
    out["basis_invertible"] = invertible;
    out["basis_inverses"] = matrix_json(algebra.basis_inverses());
    return out;
}

json classification_json(const PointClassification& c) {
    json out;
    out["kind"] = to_string(c.kind);
    out["kernel_dim"] = c.kernel_dim;
    if (c.min_eigenvalue) {
        out["min_eigenvalue"] = *c.min_eigenvalue;
    } else {
        out["min_eigenvalue"] = nullptr;
    }
    if (c.witness) out["witness"] = vector_json(*c.witness);
    out["algebra_form_value"] = vector_json(c.algebra_form_value);
    out["cross_check_error"] = c.cross_check_error;
    out["tol"] = c.tol;
    return out;
}

json probe_json(const ProbeResult& p) {
    json out;
    out["outcome"] = to_string(p.outcome);
    if (p.witness) out["witness"] = vector_json(*p.witness);
    out["radii"] = vector_json(Eigen::Map<const Eigen::VectorXd>(p.radii.data(), static_cast<Eigen::Index>(p.radii.size())));
    out["samples_per_radius"] = p.samples_per_radius;
    out["vacuous"] = p.vacuous;
    json records = json::array();
    for (const auto& rec : p.records) {
        json r;
        r["radius"] = rec.radius;
        r["interior_found"] = rec.interior_found;
        if (rec.interior_found) {
            r["witness"] = vector_json(rec.witness);
            r["rho_value"] = rec.rho_value;
        }
        records.push_back(r);
    }
    out["records"] = records;
    return out;
}

json validate_report(const Algebra& algebra, const std::string& name, const json& config_echo) {
    json doc = envelope("validate-algebra", config_echo);
    doc["algebra"] = algebra_summary_json(algebra, name);
    doc["valid"] = true;
    return doc;
}

json derivatives_report(const Algebra& algebra, const std::string& name, const GammaFrame& frame,
                        const DefiningFunction& domain, const Eigen::VectorXd& point, const json& config_echo) {
    json doc = envelope("derivatives", config_echo);
    doc["algebra"] = algebra_summary_json(algebra, name);
    doc["gamma"] = gamma_json(frame);
    doc["domain"] = domain.name();
    doc["point"] = vector_json(point);
    doc["value"] = domain.value(point);

    int n = domain.slots();
    int m = algebra.dim();
    Eigen::VectorXd g = domain.gradient(point);
    Eigen::MatrixXd real_grad(n, m);
    for (int j = 0; j < n; ++j) real_grad.row(j) = g.segment(static_cast<Eigen::Index>(j) * m, m).transpose();
    doc["real_gradient"] = matrix_json(real_grad);

    FormalGradient fg = formal_gradient(algebra, frame, real_grad);
    json fg_json = json::array();
    for (int j = 0; j < n; ++j) fg_json.push_back(matrix_json(fg.slot(j)));
    doc["formal_gradient"] = fg_json;

    Eigen::MatrixXd hess = domain.hessian(point);
    FormalHessian fh = formal_hessian(algebra, frame, hess);
    json fh_json = json::array();
    for (int j = 0; j < n; ++j) {
        json per_p = json::array();
        for (int p = 0; p < m; ++p) {
            json per_i = json::array();
            for (int i = 0; i < n; ++i) {
                json per_q = json::array();
                for (int q = 0; q < m; ++q) per_q.push_back(vector_json(fh.at(j, p, i, q)));
                per_i.push_back(per_q);
            }
            per_p.push_back(per_i);
        }
        fh_json.push_back(per_p);
    }
    doc["formal_hessian"] = fh_json;
    return doc;
}

json check_report(const Algebra& algebra, const std::string& name, const GammaFrame& frame,
                  const std::string& domain_name, const ConvexityReport& report, const json& config_echo) {
    json doc = envelope("check", config_echo);
    doc["algebra"] = algebra_summary_json(algebra, name);
    doc["gamma"] = gamma_json(frame);
    doc["domain"] = domain_name;
    doc["seed"] = report.seed;
    doc["sample_only"] = report.sample_only;
    doc["verdict"] = to_string(report.verdict);
    json points = json::array();
    for (const auto& rec : report.records) {
        points.push_back(point_record_json(rec.point, rec.classification, rec.error));
    }
    doc["points"] = points;
    return doc;
}

json oracle_report(const Algebra& algebra, const std::string& name, const GammaFrame& frame,
                   const std::string& domain_name, const OracleReport& report, const json& config_echo) {
    json doc = envelope("oracle", config_echo);
    doc["algebra"] = algebra_summary_json(algebra, name);
    doc["gamma"] = gamma_json(frame);
    doc["domain"] = domain_name;
    doc["seed"] = report.checker_seed;
    doc["oracle_seed"] = report.oracle_config.seed;
    doc["sample_only"] = true;
    doc["verdict"] = to_string(report.verdict);
    doc["any_disagree"] = report.any_disagree;
    json points = json::array();
    for (const auto& rec : report.records) {
        json point = point_record_json(rec.point, rec.classification, rec.error);
        if (rec.probe) point["probe"] = probe_json(*rec.probe);
        if (rec.agreement) point["agreement"] = to_string(*rec.agreement);
        points.push_back(point);
    }
    doc["points"] = points;
    return doc;
}

std::string render_report(const json& doc) { return doc.dump(2) + "\n"; }

void emit_report(const json& doc, const std::optional<std::string>& path) {
    std::string text = render_report(doc);
    if (path) {
        std::ofstream out(*path);
        if (!out) throw ConfigError("cannot open output file: " + *path);
        out << text;
    } else {
        std::cout << text;
    }
}

}  // namespace alinconv
