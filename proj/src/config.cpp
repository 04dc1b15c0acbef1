#include "alinconv/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace alinconv {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

int as_int(const json& v, const std::string& what) {
    if (!v.is_number_integer()) throw ConfigError(what + " must be an integer");
    return v.get<int>();
}

std::uint64_t as_seed(const json& v, const std::string& what) {
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
        throw ConfigError(what + " must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

double as_double(const json& v, const std::string& what) {
    if (!v.is_number()) throw ConfigError(what + " must be a number");
    return v.get<double>();
}

Eigen::VectorXd as_vector(const json& v, const std::string& what) {
    if (!v.is_array()) throw ConfigError(what + " must be an array of numbers");
    Eigen::VectorXd out(v.size());
    Eigen::Index i = 0;
    for (const auto& entry : v) out(i++) = as_double(entry, what + " entry");
    return out;
}

DefiningFunction polynomial_from_json(const json& monomials, int n, int m) {
    if (!monomials.is_array()) throw MalformedMonomials("monomial list must be an array");
    std::vector<Monomial> parsed;
    parsed.reserve(monomials.size());
    for (const auto& entry : monomials) {
        if (!entry.is_array() || entry.empty()) {
            throw MalformedMonomials("each monomial must be a nonempty array ending with the coefficient");
        }
        Monomial mono;
        const json& last = entry.back();
        if (!last.is_number()) throw MalformedMonomials("monomial coefficient must be a number");
        mono.coefficient = last.get<double>();
        for (std::size_t i = 0; i + 1 < entry.size(); ++i) {
            const json& f = entry[i];
            if (!f.is_object()) throw MalformedMonomials("monomial factor must be an object");
            for (auto it = f.begin(); it != f.end(); ++it) {
                if (it.key() != "slot" && it.key() != "component" && it.key() != "power") {
                    throw MalformedMonomials("unknown key \"" + it.key() + "\" in monomial factor");
                }
            }
            if (!f.contains("slot") || !f.contains("component")) {
                throw MalformedMonomials("monomial factor needs slot and component");
            }
            MonomialFactor factor;
            if (!f["slot"].is_number_integer() || !f["component"].is_number_integer()) {
                throw MalformedMonomials("monomial factor indices must be integers");
            }
            factor.slot = f["slot"].get<int>();
            factor.component = f["component"].get<int>();
            factor.power = 1;
            if (f.contains("power")) {
                if (!f["power"].is_number_integer()) throw MalformedMonomials("monomial power must be an integer");
                factor.power = f["power"].get<int>();
            }
            mono.factors.push_back(factor);
        }
        parsed.push_back(std::move(mono));
    }
    return polynomial_domain(parsed, n, m);
}

std::vector<int> parse_signs(const json& v) {
    if (!v.is_array() || v.empty()) throw ConfigError("signed quadric signs must be a nonempty array");
    std::vector<int> signs;
    signs.reserve(v.size());
    for (const auto& entry : v) {
        if (entry.is_number_integer()) {
            signs.push_back(entry.get<int>());
        } else if (entry.is_string()) {
            std::string s = entry.get<std::string>();
            if (s == "+") signs.push_back(1);
            else if (s == "-") signs.push_back(-1);
            else throw ConfigError("signed quadric sign strings must be \"+\" or \"-\"");
        } else {
            throw ConfigError("signed quadric signs must be integers or \"+\"/\"-\" strings");
        }
    }
    return signs;
}

CheckerConfig checker_from_json(const json& spec, json& gamma_spec, std::optional<int>& ptilde) {
    if (!spec.is_object()) throw ConfigError("checker config must be an object");
    reject_unknown_keys(spec, {"samples", "seed", "tol", "gamma", "ptilde", "box"}, "checker config");
    CheckerConfig cfg;
    if (spec.contains("samples")) {
        cfg.samples = as_int(spec["samples"], "checker.samples");
        if (cfg.samples < 1) throw ConfigError("checker.samples must be positive");
    }
    if (spec.contains("seed")) cfg.seed = as_seed(spec["seed"], "checker.seed");
    if (spec.contains("tol") && !spec["tol"].is_null()) cfg.tol = as_double(spec["tol"], "checker.tol");
    if (spec.contains("gamma")) gamma_spec = spec["gamma"];
    if (spec.contains("ptilde") && !spec["ptilde"].is_null()) ptilde = as_int(spec["ptilde"], "checker.ptilde");
    if (spec.contains("box")) {
        const json& box = spec["box"];
        if (!box.is_array() || box.size() != 2) throw ConfigError("checker.box must be [lo, hi]");
        cfg.box_lo = as_double(box[0], "checker.box lower bound");
        cfg.box_hi = as_double(box[1], "checker.box upper bound");
        if (!(cfg.box_lo < cfg.box_hi)) throw ConfigError("checker.box must have lo < hi");
    }
    return cfg;
}

OracleConfig oracle_from_json(const json& spec) {
    if (!spec.is_object()) throw ConfigError("oracle config must be an object");
    reject_unknown_keys(spec, {"radii", "samples_per_radius", "seed"}, "oracle config");
    OracleConfig cfg;
    if (spec.contains("radii")) {
        const json& radii = spec["radii"];
        if (!radii.is_array() || radii.empty()) throw ConfigError("oracle.radii must be a nonempty array");
        cfg.radii.clear();
        for (const auto& r : radii) {
            double value = as_double(r, "oracle radius");
            if (!(value > 0.0)) throw ConfigError("oracle radii must be positive");
            cfg.radii.push_back(value);
        }
    }
    if (spec.contains("samples_per_radius")) {
        cfg.samples_per_radius = as_int(spec["samples_per_radius"], "oracle.samples_per_radius");
        if (cfg.samples_per_radius < 1) throw ConfigError("oracle.samples_per_radius must be positive");
    }
    if (spec.contains("seed")) cfg.seed = as_seed(spec["seed"], "oracle.seed");
    return cfg;
}

}  // namespace

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
}

StructureTensor algebra_from_json(const nlohmann::json& spec, std::string& name, std::optional<int>& ptilde) {
    if (!spec.is_object()) throw ConfigError("algebra spec must be an object");
    if (spec.contains("ptilde") && !spec["ptilde"].is_null()) {
        ptilde = as_int(spec["ptilde"], "algebra.ptilde");
    }
    if (spec.contains("builtin")) {
        reject_unknown_keys(spec, {"builtin", "ptilde"}, "algebra spec");
        if (!spec["builtin"].is_string()) throw ConfigError("algebra.builtin must be a string");
        name = spec["builtin"].get<std::string>();
        return builtin_algebra(name);
    }
    reject_unknown_keys(spec, {"m", "gamma", "ptilde"}, "algebra spec");
    if (!spec.contains("m") || !spec.contains("gamma")) {
        throw ConfigError("algebra spec needs either builtin or m plus gamma");
    }
    int m = as_int(spec["m"], "algebra.m");
    const json& entries = spec["gamma"];
    if (!entries.is_array()) throw ConfigError("algebra.gamma must be an array of [l,k,p,value] rows");
    std::vector<std::array<double, 4>> rows;
    rows.reserve(entries.size());
    for (const auto& row : entries) {
        if (!row.is_array() || row.size() != 4) {
            throw ConfigError("algebra.gamma rows must be [l,k,p,value]");
        }
        std::array<double, 4> parsed{};
        for (int i = 0; i < 4; ++i) parsed[static_cast<std::size_t>(i)] = as_double(row[i], "algebra.gamma entry");
        for (int i = 0; i < 3; ++i) {
            if (parsed[static_cast<std::size_t>(i)] != std::floor(parsed[static_cast<std::size_t>(i)])) {
                throw ConfigError("algebra.gamma indices must be integers");
            }
        }
        rows.push_back(parsed);
    }
    name = "custom";
    return StructureTensor::from_sparse(m, rows);
}

GammaFrame gamma_from_json(const nlohmann::json& spec, int m) {
    if (spec.is_string()) {
        std::string kind = spec.get<std::string>();
        if (kind == "default") return default_gamma(m);
        if (kind == "vandermonde") return vandermonde_gamma(m);
        if (kind == "hadamard") {
            int k = 0;
            while ((1 << k) < m) ++k;
            if ((1 << k) != m) throw ConfigError("hadamard gamma needs a power-of-two dimension");
            return hadamard_gamma(k);
        }
        throw ConfigError("unknown gamma kind \"" + kind + "\"");
    }
    if (spec.is_array()) {
        if (spec.size() != static_cast<std::size_t>(m)) {
            throw ConfigError("gamma matrix must have " + std::to_string(m) + " rows");
        }
        Eigen::MatrixXd g(m, m);
        for (int l = 0; l < m; ++l) {
            Eigen::VectorXd row = as_vector(spec[static_cast<std::size_t>(l)], "gamma matrix row");
            if (row.size() != m) throw ConfigError("gamma matrix rows must have " + std::to_string(m) + " entries");
            g.row(l) = row.transpose();
        }
        return custom_gamma(g);
    }
    throw ConfigError("gamma spec must be a kind string or an array of rows");
}

DefiningFunction domain_from_json(const nlohmann::json& spec, int m) {
    if (!spec.is_object()) throw ConfigError("domain spec must be an object");
    reject_unknown_keys(spec, {"builtin", "params", "polynomial", "n"}, "domain spec");
    std::optional<int> n_given;
    if (spec.contains("n")) {
        n_given = as_int(spec["n"], "domain.n");
        if (*n_given < 1) throw ConfigError("domain.n must be positive");
    }

    if (spec.contains("polynomial")) {
        if (spec.contains("builtin") || spec.contains("params")) {
            throw ConfigError("domain spec mixes polynomial and builtin forms");
        }
        if (!n_given) throw ConfigError("polynomial domain needs n");
        return polynomial_from_json(spec["polynomial"], *n_given, m);
    }

    if (!spec.contains("builtin")) throw ConfigError("domain spec needs builtin or polynomial");
    if (!spec["builtin"].is_string()) throw ConfigError("domain.builtin must be a string");
    std::string name = spec["builtin"].get<std::string>();
    json params = spec.contains("params") ? spec["params"] : json::object();
    if (!params.is_object()) throw ConfigError("domain.params must be an object");

    if (name == "ball") {
        reject_unknown_keys(params, {"radius"}, "ball params");
        double radius = params.contains("radius") ? as_double(params["radius"], "ball radius") : 1.0;
        if (!n_given) throw ConfigError("ball domain needs n");
        return ball_domain(*n_given, m, radius);
    }
    if (name == "signed-quadric") {
        reject_unknown_keys(params, {"signs", "radius"}, "signed-quadric params");
        if (!params.contains("signs")) throw ConfigError("signed-quadric needs params.signs");
        std::vector<int> signs = parse_signs(params["signs"]);
        double radius = params.contains("radius") ? as_double(params["radius"], "signed-quadric radius") : 1.0;
        if (n_given && *n_given != static_cast<int>(signs.size())) {
            throw ConfigError("domain.n disagrees with the number of signs");
        }
        return signed_quadric_domain(signs, m, radius);
    }
    if (name == "halfspace") {
        reject_unknown_keys(params, {"normal", "offset"}, "halfspace params");
        if (!params.contains("normal")) throw ConfigError("halfspace needs params.normal");
        Eigen::VectorXd normal = as_vector(params["normal"], "halfspace normal");
        double offset = params.contains("offset") ? as_double(params["offset"], "halfspace offset") : 0.0;
        if (normal.size() % m != 0) throw ConfigError("halfspace normal length must be a multiple of m");
        int n = static_cast<int>(normal.size()) / m;
        if (n_given && *n_given != n) throw ConfigError("domain.n disagrees with the normal length");
        return halfspace_domain(normal, offset, n, m);
    }
    if (name == "polynomial") {
        reject_unknown_keys(params, {"monomials"}, "polynomial params");
        if (!params.contains("monomials")) throw ConfigError("polynomial builtin needs params.monomials");
        if (!n_given) throw ConfigError("polynomial domain needs n");
        return polynomial_from_json(params["monomials"], *n_given, m);
    }
    throw UnknownDomain("unknown builtin domain \"" + name + "\"");
}

RunConfig parse_run_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    reject_unknown_keys(doc, {"algebra", "gamma", "domain", "checker", "oracle", "output"}, "config document");
    if (!doc.contains("algebra")) throw ConfigError("config document needs an algebra spec");

    RunConfig cfg;
    cfg.echo = doc;
    cfg.tensor = algebra_from_json(doc["algebra"], cfg.algebra_name, cfg.ptilde);
    if (doc.contains("gamma")) cfg.gamma_spec = doc["gamma"];
    if (doc.contains("checker")) {
        cfg.checker = checker_from_json(doc["checker"], cfg.gamma_spec, cfg.ptilde);
    }
    if (doc.contains("oracle")) cfg.oracle = oracle_from_json(doc["oracle"]);
    if (doc.contains("domain")) cfg.domain = domain_from_json(doc["domain"], cfg.tensor.dim());
    if (doc.contains("output")) {
        if (!doc["output"].is_string()) throw ConfigError("output must be a path string");
        cfg.output = doc["output"].get<std::string>();
    }
    return cfg;
}

GammaFrame gamma_frame_from_config(const RunConfig& config, int m) {
    return gamma_from_json(config.gamma_spec, m);
}

}  // namespace alinconv
