#ifndef DETSOLVE_SOLVER_HPP
#define DETSOLVE_SOLVER_HPP

#include <optional>
#include <string>

#include "detsolve/problem.hpp"
#include "detsolve/zdp.hpp"

namespace detsolve {

struct SolveReport {
    ZeroDimParam zdp;
    std::string mode_used;  // "column" or "row"
    SolveBounds bounds;
    int retries = 0;
    uint64_t prime = 0;
    uint64_t seed = 0;
    bool residual_zero = false;
    bool count_within_bound = false;
    std::optional<bool> simple_rank_full;  // set in simple mode
};

// Target system as one program: the side equations followed by the
// p-minors of F in lexicographic column order (the residual reference).
Slp target_system(const ProblemSpec& spec);

// Dispatches to the column- or row-degree pipeline per the options (auto
// picks the smaller of c and c'; ties go to column) and verifies the
// output: zero residual, the count bound, and in simple mode full
// Jacobian rank at every output point.
SolveReport solve(const ProblemSpec& spec);

std::string report_to_json(const SolveReport& report);

struct OracleReport {
    size_t oracle_count = 0;     // points of the brute-force scan
    size_t solver_count = 0;     // deg w of the solver output
    size_t solver_rational = 0;  // output points with coordinates in F_q
    bool solver_points_contained = false;
    SolveReport solve_report;
};

// Runs the solver and the exhaustive scan over the same small prime and
// compares: every rational solver point must appear in the scan.
OracleReport oracle_check(ProblemSpec spec, uint64_t small_prime,
                          uint64_t budget = 3000000);

}  // namespace detsolve

#endif
