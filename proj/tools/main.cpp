#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "alinconv/config.hpp"
#include "alinconv/report.hpp"

namespace {

using alinconv::Algebra;
using alinconv::ConfigError;
using alinconv::Error;
using alinconv::GammaFrame;
using alinconv::RunConfig;
using nlohmann::json;

constexpr int kExitUsage = 64;
constexpr int kExitError = 2;

std::optional<std::string> effective_output(const RunConfig& cfg, const std::string& flag) {
    if (!flag.empty()) return flag;
    return cfg.output;
}

Eigen::VectorXd parse_point(const std::string& text, int expected) {
    std::vector<double> values;
    std::string token;
    std::stringstream stream(text);
    while (std::getline(stream, token, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(token, &used);
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
            if (used != token.size()) throw std::invalid_argument(token);
            values.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("point entry \"" + token + "\" is not a number");
        }
    }
    if (static_cast<int>(values.size()) != expected) {
        throw ConfigError("point must have " + std::to_string(expected) + " comma-separated entries");
    }
    return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void emit_error_report(const std::string& command, const Error& e, const json* echo,
                       const std::optional<std::string>& output) {
    json doc;
    doc["tool"] = {{"name", "alinconv"}, {"version", ALINCONV_VERSION}};
    doc["timestamp"] = alinconv::iso_timestamp();
    doc["command"] = command;
    if (echo) doc["config"] = *echo;
    doc["error"] = {{"code", e.code()}, {"message", e.what()}};
    try {
        alinconv::emit_report(doc, output);
    } catch (const Error&) {
        // Reporting failures must not mask the original error.
    }
}

struct CommandArgs {
    std::string config_path;
    std::string output;
    std::string point;
    long long seed = 0;
    bool seed_set = false;
};

int run_validate(const CommandArgs& args) {
    json doc = alinconv::load_json_file(args.config_path);
    RunConfig cfg = alinconv::parse_run_config(doc);
    std::optional<std::string> output = effective_output(cfg, args.output);
    try {
        Algebra algebra = alinconv::validate_algebra(cfg.tensor, cfg.ptilde);
        alinconv::emit_report(alinconv::validate_report(algebra, cfg.algebra_name, cfg.echo), output);
        return 0;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        emit_error_report("validate-algebra", e, &cfg.echo, output);
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return kExitError;
    }
}

int run_derivatives(const CommandArgs& args) {
    json doc = alinconv::load_json_file(args.config_path);
    RunConfig cfg = alinconv::parse_run_config(doc);
    if (!cfg.domain) throw ConfigError("derivatives needs a domain spec in the config");
    Algebra algebra = alinconv::validate_algebra(cfg.tensor, cfg.ptilde);
    GammaFrame frame = alinconv::gamma_frame_from_config(cfg, algebra.dim());
    Eigen::VectorXd point = parse_point(args.point, cfg.domain->ambient_dim());
    std::optional<std::string> output = effective_output(cfg, args.output);
    alinconv::emit_report(
        alinconv::derivatives_report(algebra, cfg.algebra_name, frame, *cfg.domain, point, cfg.echo), output);
    return 0;
}

int run_check(const CommandArgs& args) {
    json doc = alinconv::load_json_file(args.config_path);
    RunConfig cfg = alinconv::parse_run_config(doc);
    if (!cfg.domain) throw ConfigError("check needs a domain spec in the config");
    if (args.seed_set) cfg.checker.seed = static_cast<std::uint64_t>(args.seed);
    Algebra algebra = alinconv::validate_algebra(cfg.tensor, cfg.ptilde);
    GammaFrame frame = alinconv::gamma_frame_from_config(cfg, algebra.dim());
    alinconv::ConvexityReport report = alinconv::check_domain(algebra, frame, *cfg.domain, cfg.checker);
    alinconv::emit_report(
        alinconv::check_report(algebra, cfg.algebra_name, frame, cfg.domain->name(), report, cfg.echo),
        effective_output(cfg, args.output));
    switch (report.verdict) {
        case alinconv::Verdict::SufficientConditionHolds: return 0;
        case alinconv::Verdict::NecessaryConditionViolated: return 1;
        case alinconv::Verdict::Inconclusive: return 3;
    }
    return kExitError;
}

int run_oracle(const CommandArgs& args) {
    json doc = alinconv::load_json_file(args.config_path);
    RunConfig cfg = alinconv::parse_run_config(doc);
    if (!cfg.domain) throw ConfigError("oracle needs a domain spec in the config");
    if (args.seed_set) {
        cfg.checker.seed = static_cast<std::uint64_t>(args.seed);
        cfg.oracle.seed = static_cast<std::uint64_t>(args.seed);
    }
    Algebra algebra = alinconv::validate_algebra(cfg.tensor, cfg.ptilde);
    GammaFrame frame = alinconv::gamma_frame_from_config(cfg, algebra.dim());
    alinconv::OracleReport report = alinconv::run_oracle(algebra, frame, *cfg.domain, cfg.checker, cfg.oracle);
    alinconv::emit_report(
        alinconv::oracle_report(algebra, cfg.algebra_name, frame, cfg.domain->name(), report, cfg.echo),
        effective_output(cfg, args.output));
    return report.any_disagree ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local linear convexity toolkit for commutative algebras"};
    app.require_subcommand(1);

    CommandArgs args;
    auto add_common = [&args](CLI::App* sub, bool with_seed) {
        sub->add_option("--config", args.config_path, "JSON configuration file")->required();
        sub->add_option("--output", args.output, "write the JSON report to this path instead of stdout");
        if (with_seed) {
            sub->add_option("--seed", args.seed, "override the config seeds")->check(CLI::NonNegativeNumber);
        }
    };

    CLI::App* validate = app.add_subcommand("validate-algebra", "check the structure-constant conditions");
    add_common(validate, false);
    CLI::App* derivatives = app.add_subcommand("derivatives", "formal derivatives of the domain at a point");
    add_common(derivatives, false);
    derivatives->add_option("--point", args.point, "comma-separated ambient coordinates")->required();
    CLI::App* check = app.add_subcommand("check", "classify sampled boundary points");
    add_common(check, true);
    CLI::App* oracle = app.add_subcommand("oracle", "check plus geometric probe and agreement");
    add_common(oracle, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    args.seed_set = (check->count("--seed") > 0 && app.got_subcommand(check)) ||
                    (oracle->count("--seed") > 0 && app.got_subcommand(oracle));

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (app.got_subcommand(validate)) return run_validate(args);
        if (app.got_subcommand(derivatives)) return run_derivatives(args);
        if (app.got_subcommand(check)) return run_check(args);
        return run_oracle(args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        emit_error_report(command, e, nullptr, args.output.empty() ? std::nullopt : std::optional<std::string>(args.output));
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
