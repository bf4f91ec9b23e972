#ifndef DETSOLVE_PROBLEM_HPP
#define DETSOLVE_PROBLEM_HPP

#include <string>
#include <vector>

#include "detsolve/detstart.hpp"
#include "detsolve/slp.hpp"

namespace detsolve {

struct ParseError : std::runtime_error {
    size_t line, col;
    ParseError(size_t line_, size_t col_, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + what),
          line(line_),
          col(col_) {}
};

struct DimensionMismatchError : std::runtime_error {
    explicit DimensionMismatchError(const std::string& what) : std::runtime_error(what) {}
};

enum class SolveMode { Auto, Column, Row };

struct SolveOptions {
    SolveMode mode = SolveMode::Auto;
    bool simple = false;
    uint64_t prime = kDefaultPrime;
    uint64_t seed = 1;
    bool check = false;
};

// A parsed determinantal problem: the p x q matrix F, side equations G,
// their straight-line programs over the declared variables, and the
// degree profile derived by syntactic propagation.
struct ProblemSpec {
    std::vector<std::string> var_names;
    size_t p = 0, q = 0, s = 0;
    std::vector<std::string> f_text;  // p*q entries, row-major
    std::vector<std::string> g_text;  // s side equations
    Slp F;                            // p*q outputs
    Slp G;                            // s outputs
    DegreeProfile profile;
    SolveOptions options;

    size_t n() const { return var_names.size(); }
};

// Input format (UTF-8, '#' starts a comment):
//   vars x1 x2
//   matrix 2 3
//   x1 + 2*x2 - 1 | x1*x2 | x2^2 - 3
//   x1 - x2       | 2*x1  | x1^2 + x2
//   eq x1^2 + x2^2 - 1
ProblemSpec parse_problem(const std::string& text);
std::string print_problem(const ProblemSpec& spec);

// Expression grammar shared with the file format: integers, declared
// variables, + - *, ^ with nonnegative integer exponents, parentheses,
// unary minus.
Slp parse_expression(const std::string& text, const std::vector<std::string>& vars);

}  // namespace detsolve

#endif
