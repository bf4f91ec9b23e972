#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "detsolve/solver.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

detsolve::SolveMode parse_mode(const std::string& m) {
    if (m == "auto") return detsolve::SolveMode::Auto;
    if (m == "column") return detsolve::SolveMode::Column;
    if (m == "row") return detsolve::SolveMode::Row;
    throw CLI::ValidationError("--mode must be auto, column or row");
}

void print_summary(const detsolve::SolveReport& rep) {
    std::cout << "mode: " << rep.mode_used << "\n";
    std::cout << "count: " << rep.zdp.count() << "\n";
    std::cout << "bounds: c=" << rep.bounds.c << " c'=" << rep.bounds.cprime
              << " e=" << rep.bounds.e << " e'=" << rep.bounds.eprime << "\n";
    std::cout << "retries: " << rep.retries << "\n";
    std::cout << "checks: residual_zero=" << (rep.residual_zero ? "yes" : "no")
              << " count_within_bound=" << (rep.count_within_bound ? "yes" : "no");
    if (rep.simple_rank_full.has_value())
        std::cout << " simple_rank_full=" << (*rep.simple_rank_full ? "yes" : "no");
    std::cout << "\n";
    std::cout << "w:";
    for (auto c : rep.zdp.w) std::cout << ' ' << c.v;
    std::cout << "\n";
    for (size_t i = 0; i < rep.zdp.v.size(); ++i) {
        std::cout << "v" << (i + 1) << ":";
        for (auto c : rep.zdp.v[i]) std::cout << ' ' << c.v;
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact homotopy solver for determinantal systems"};
    app.require_subcommand(1);

    std::string input, mode = "auto", json_out;
    bool simple = false, check = false;
    uint64_t seed = 1, prime = detsolve::kDefaultPrime, field = 101;

    auto* solve_cmd = app.add_subcommand("solve", "compute the isolated (or simple) points");
    solve_cmd->add_option("--input", input, "problem file")->required();
    solve_cmd->add_option("--mode", mode, "auto|column|row");
    solve_cmd->add_flag("--simple", simple, "simple points only (full-rank Jacobian)");
    solve_cmd->add_option("--seed", seed, "random seed");
    solve_cmd->add_option("--prime", prime, "word-size prime for the base field");
    solve_cmd->add_flag("--check", check, "run all verification passes");
    solve_cmd->add_option("--json", json_out, "write the report as JSON to this file");

    auto* bounds_cmd = app.add_subcommand("bounds", "print the count/degree bounds");
    bounds_cmd->add_option("--input", input, "problem file")->required();

    auto* oracle_cmd =
        app.add_subcommand("oracle", "compare against exhaustive enumeration");
    oracle_cmd->add_option("--input", input, "problem file")->required();
    oracle_cmd->add_option("--field", field, "small prime to enumerate over")->required();
    oracle_cmd->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        detsolve::ProblemSpec spec = detsolve::parse_problem(read_file(input));
        if (solve_cmd->parsed()) {
            spec.options.mode = parse_mode(mode);
            spec.options.simple = simple;
            spec.options.seed = seed;
            spec.options.prime = prime;
            spec.options.check = check;
            detsolve::SolveReport rep = detsolve::solve(spec);
            print_summary(rep);
            if (!json_out.empty()) {
                std::ofstream out(json_out);
                if (!out) throw std::runtime_error("cannot write " + json_out);
                out << detsolve::report_to_json(rep) << "\n";
            }
        } else if (bounds_cmd->parsed()) {
            auto bd = detsolve::compute_bounds(spec.profile);
            std::cout << "c: " << bd.c << "\n";
            std::cout << "cprime: " << bd.cprime << "\n";
            std::cout << "e: " << bd.e << "\n";
            std::cout << "eprime: " << bd.eprime << "\n";
        } else if (oracle_cmd->parsed()) {
            spec.options.seed = seed;
            detsolve::OracleReport rep = detsolve::oracle_check(spec, field);
            std::cout << "oracle_count: " << rep.oracle_count << "\n";
            std::cout << "solver_count: " << rep.solver_count << "\n";
            std::cout << "solver_rational: " << rep.solver_rational << "\n";
            std::cout << "contained: " << (rep.solver_points_contained ? "yes" : "no")
                      << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
