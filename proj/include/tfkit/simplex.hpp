#pragma once

#include "tfkit/rational.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace tfkit::lp {

/// Equality-form feasibility problem: A x = b, x >= 0.
/// Rows are sparse; coefficients and right-hand sides are exact rationals.
struct Problem {
    std::size_t num_vars = 0;

    struct Row {
        std::vector<std::pair<std::size_t, Rational>> coeffs;
        Rational rhs;
    };
    std::vector<Row> rows;
};

struct Feasible {
    std::vector<Rational> x; // a basic feasible solution, A x = b exactly
};

struct Infeasible {
    /// Farkas certificate over the original rows: y^T A <= 0 componentwise
    /// and y^T b > 0, all exact.
    std::vector<Rational> farkas;
};

using Outcome = std::variant<Feasible, Infeasible>;

/// Phase-1 simplex over exact rationals with Bland's anti-cycling rule.
/// Deterministic and tolerance-free; the returned solution or certificate is
/// re-verified against the input before returning.
Outcome solve_equality_feasibility(const Problem& problem);

} // namespace tfkit::lp
