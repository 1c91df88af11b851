#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sipmink/harness/commands.hpp>

using namespace sipmink;
using namespace sipmink::harness;

namespace {

enum Exit { Ok = 0, SuiteFailure = 1, Usage = 2, NonConvergence = 3 };

std::string fmt(double v) { return format_real(v); }

std::string fmt(const Vector& v) { return format_vectors({v}); }

void emit_csv(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open '" + path + "' for writing");
    write(out);
    if (!out) throw UsageError("failed writing '" + path + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-inner-product and generalized Minkowski space toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials, nodes;
    app.add_option("--config", config_path, "Run configuration file")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Seed (overrides the config)");
    app.add_option("--out", out_path, "CSV output path (overrides the config)");
    app.add_option("--trials", trials, "Sample count")->check(CLI::PositiveNumber);
    app.add_option("--nodes", nodes, "Path segments for geodesics")->check(CLI::Range(2, 1 << 16));

    std::vector<std::string> vectors;
    auto* classify_cmd = app.add_subcommand("classify", "Classify vectors of the configured space");
    classify_cmd->add_option("vectors", vectors, "Comma-separated coordinates")->required();

    std::string u_text, v_text;
    auto* product_cmd = app.add_subcommand("product", "Evaluate [u,v]^- and [u,v]^+");
    product_cmd->add_option("u", u_text)->required();
    product_cmd->add_option("v", v_text)->required();

    std::string relation;
    auto* ortho_cmd = app.add_subcommand("ortho", "Test an orthogonality relation in the S block");
    ortho_cmd->add_option("relation", relation, "roberts|birkhoff|isosceles|pythagorean|singer|sip")->required();
    ortho_cmd->add_option("x", u_text)->required();
    ortho_cmd->add_option("y", v_text)->required();

    auto* auerbach_cmd = app.add_subcommand("auerbach", "Auerbach basis of the configured space");

    auto* tangent_cmd = app.add_subcommand("tangent", "Tangent frame at the lift of s");
    tangent_cmd->add_option("s", u_text)->required();

    auto* distance_cmd = app.add_subcommand("distance", "Geodesic distance between the lifts of a and b");
    distance_cmd->add_option("a", u_text)->required();
    distance_cmd->add_option("b", v_text)->required();

    std::string suite;
    auto* verify_cmd = app.add_subcommand("verify", "Run a property suite, or all of them");
    verify_cmd->add_option("suite", suite)->required();

    std::string example;
    auto* counter_cmd = app.add_subcommand("counterexample", "Search for a Cauchy-Schwarz violation");
    counter_cmd->add_option("name", example, "example4|remark1")->required();

    std::string matrix_path;
    auto* isometry_cmd = app.add_subcommand("isometry", "Check a matrix (CSV file) as an isometry");
    isometry_cmd->add_option("matrix", matrix_path)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw UsageError("cannot read '" + config_path + "'");
            cfg = parse_config(in);
        }
        apply_environment(cfg);
        if (seed) cfg.seed = Seed{*seed};
        if (trials) cfg.trials = *trials;
        if (nodes) cfg.nodes = *nodes;
        if (!out_path.empty()) cfg.out = out_path;

        if (classify_cmd->parsed()) {
            std::vector<Vector> vs;
            for (const auto& t : vectors) vs.push_back(parse_vector(t));
            const auto rows = cmd_classify(cfg, vs);
            for (const auto& r : rows)
                std::cout << fmt(r.v) << "  square " << fmt(r.square) << "  " << to_string(r.cls)
                          << (r.cone ? std::string("  ") + to_string(*r.cone) : std::string()) << '\n';
            emit_csv(cfg.out, [&](std::ostream& o) { write_classify_csv(o, rows); });
        } else if (product_cmd->parsed()) {
            const auto r = cmd_product(cfg, parse_vector(u_text), parse_vector(v_text));
            std::cout << "minus " << fmt(r.minus) << "\nplus " << fmt(r.plus) << '\n';
        } else if (ortho_cmd->parsed()) {
            const auto r = cmd_ortho(cfg, relation, parse_vector(u_text), parse_vector(v_text));
            std::cout << "related " << (r.related ? "true" : "false") << "\nresidual " << fmt(r.residual) << '\n';
            if (r.lambda) std::cout << "lambda " << fmt(*r.lambda) << '\n';
        } else if (auerbach_cmd->parsed()) {
            const auto r = cmd_auerbach(cfg);
            for (const auto& e : r.basis) std::cout << fmt(e) << '\n';
            std::cout << "orthogonality " << fmt(r.verification.worst) << (r.verification.pass() ? " pass" : " fail")
                      << '\n';
            if (!r.verification.pass()) return SuiteFailure;
        } else if (tangent_cmd->parsed()) {
            const auto rows = cmd_tangent(cfg, parse_vector(u_text));
            for (const auto& r : rows)
                std::cout << fmt(r.u) << "  orthogonality " << fmt(r.orthogonality) << "  ds2 " << fmt(r.ds2) << "  "
                          << to_string(r.cls) << '\n';
            emit_csv(cfg.out, [&](std::ostream& o) { write_tangent_csv(o, rows); });
        } else if (distance_cmd->parsed()) {
            const auto r = cmd_distance(cfg, parse_vector(u_text), parse_vector(v_text), cfg.nodes);
            std::cout << "distance " << fmt(r.geodesic.distance) << "\nplus " << fmt(r.plus) << "\ncosh_residual "
                      << fmt(r.residual) << (r.exploratory ? " (exploratory)" : "") << "\nnodes " << r.nodes
                      << "\nconverged yes (" << r.geodesic.sweeps << " sweeps)\n";
            emit_csv(cfg.out, [&](std::ostream& o) { write_path_csv(o, r.geodesic.path); });
        } else if (verify_cmd->parsed()) {
            const auto results = cmd_verify(cfg, suite);
            if (cfg.out.empty()) write_suite_csv(std::cout, results);
            else emit_csv(cfg.out, [&](std::ostream& o) { write_suite_csv(o, results); });
            std::ostream& log = cfg.out.empty() ? std::cerr : std::cout;
            bool all = true;
            for (const auto& r : results) {
                char seconds[32];
                std::snprintf(seconds, sizeof seconds, "%.2fs", r.seconds);
                log << (r.pass() ? "PASS " : "FAIL ") << r.name << "  worst " << fmt(r.worst()) << "  " << seconds;
                if (!r.pass()) log << "  witness " << r.witness();
                log << '\n';
                all &= r.pass();
            }
            if (!all) return SuiteFailure;
        } else if (counter_cmd->parsed()) {
            const auto r = cmd_counterexample(cfg, example);
            if (!r.found) {
                std::cout << "no violation found\n";
                return SuiteFailure;
            }
            std::cout << "u " << fmt(r.u) << "\nv " << fmt(r.v) << "\nmargin " << fmt(r.margin) << '\n';
        } else if (isometry_cmd->parsed()) {
            std::ifstream in(matrix_path);
            const auto r = cmd_isometry(cfg, read_matrix_csv(in));
            for (const auto& c : r.checks.checks)
                std::cout << c.name << ' ' << fmt(c.worst) << (c.pass() ? " pass" : " fail") << '\n';
            std::cout << "upper_sheet " << (r.maps_upper_sheet(cfg.tol.eq_tol) ? "yes" : "no") << "\nen_residual "
                      << fmt(r.en_residual) << '\n';
            if (!r.within_hypotheses) std::cout << "note: S is not strictly convex and smooth\n";
            if (!r.preserves_product() || !r.maps_upper_sheet(cfg.tol.eq_tol)) return SuiteFailure;
        }
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (best value " << fmt(e.best_value()) << ")\n";
        return NonConvergence;
    } catch (const sipmink::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    }
    return Ok;
}
