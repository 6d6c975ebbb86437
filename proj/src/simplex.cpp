#include "tfkit/simplex.hpp"

#include <cstdint>
#include <stdexcept>

namespace tfkit::lp {

namespace {

/// Dense phase-1 tableau.  Columns: [0, n) structural, [n, n+m) artificial,
/// column n+m the right-hand side.  The objective minimizes the sum of the
/// artificial variables; reduced costs are kept in `reduced`.
class PhaseOneTableau {
public:
    explicit PhaseOneTableau(const Problem& p)
        : n_(p.num_vars), m_(p.rows.size()), width_(n_ + m_ + 1),
          cells_(m_ * width_, Rational(0)), reduced_(n_ + m_, Rational(0)),
          basis_(m_), row_sign_(m_, 1) {
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = p.rows[i];
            const bool flip = row.rhs < 0;
            row_sign_[i] = flip ? -1 : 1;
            for (const auto& [col, coeff] : row.coeffs) {
                if (col >= n_) throw std::invalid_argument("coefficient column out of range");
                at(i, col) += flip ? -coeff : coeff;
            }
            at(i, n_ + i) = 1;
            at(i, width_ - 1) = flip ? -row.rhs : row.rhs;
            basis_[i] = n_ + i;
        }
        // Reduced costs r_j = c_j - sum_i T[i][j] with all basic costs 1.
        objective_ = 0;
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            Rational column_sum = 0;
            for (std::size_t i = 0; i < m_; ++i) column_sum += at(i, j);
            reduced_[j] = (j >= n_ ? Rational(1) : Rational(0)) - column_sum;
        }
        for (std::size_t i = 0; i < m_; ++i) objective_ += at(i, width_ - 1);
    }

    void run() {
        std::uint64_t pivots = 0;
        for (;;) {
            if (++pivots > kMaxPivots) {
                throw std::logic_error("phase-1 pivot budget exhausted");
            }
            // Bland: lowest-index structural column with negative reduced
            // cost.  Artificial columns never re-enter; feasible points have
            // all artificials at zero, so restricting them keeps the zero
            // objective reachable whenever the system is feasible.
            std::size_t enter = n_ + m_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (reduced_[j] < 0) { enter = j; break; }
            }
            if (enter == n_ + m_) return;

            std::size_t leave = m_;
            Rational best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                const Rational& pivot = at(i, enter);
                if (pivot <= 0) continue;
                Rational ratio = at(i, width_ - 1) / pivot;
                if (leave == m_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m_) {
                throw std::logic_error("phase-1 objective unbounded below; corrupt tableau");
            }
            pivot(leave, enter);
        }
    }

    bool feasible() const { return objective_ == 0; }

    std::vector<Rational> solution() const {
        std::vector<Rational> x(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) x[basis_[i]] = at(i, width_ - 1);
        }
        return x;
    }

    /// Dual vector in original row orientation: y_i = (1 - r_{a_i}) * sign_i.
    std::vector<Rational> farkas() const {
        std::vector<Rational> y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            y[i] = (Rational(1) - reduced_[n_ + i]) * row_sign_[i];
        }
        return y;
    }

private:
    Rational& at(std::size_t row, std::size_t col) { return cells_[row * width_ + col]; }
    const Rational& at(std::size_t row, std::size_t col) const { return cells_[row * width_ + col]; }

    void pivot(std::size_t prow, std::size_t pcol) {
        const Rational pivot_value = at(prow, pcol);
        if (pivot_value == 0) throw std::logic_error("zero pivot");
        if (pivot_value != 1) {
            const Rational inv = 1 / pivot_value;
            for (std::size_t j = 0; j < width_; ++j) {
                Rational& cell = at(prow, j);
                if (cell != 0) cell *= inv;
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == prow) continue;
            const Rational factor = at(i, pcol);
            if (factor == 0) continue;
            for (std::size_t j = 0; j < width_; ++j) {
                const Rational& source = at(prow, j);
                if (source != 0) at(i, j) -= factor * source;
            }
        }
        const Rational rfactor = reduced_[pcol];
        if (rfactor != 0) {
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                const Rational& source = at(prow, j);
                if (source != 0) reduced_[j] -= rfactor * source;
            }
            // The entering variable rises to the normalized rhs.
            objective_ += rfactor * at(prow, width_ - 1);
        }
        basis_[prow] = pcol;
    }

    static constexpr std::uint64_t kMaxPivots = 50'000'000;

    std::size_t n_, m_, width_;
    std::vector<Rational> cells_;
    std::vector<Rational> reduced_;
    Rational objective_ = 0;
    std::vector<std::size_t> basis_;
    std::vector<int> row_sign_;
};

void verify_solution(const Problem& p, const std::vector<Rational>& x) {
    for (const auto& xi : x) {
        if (xi < 0) throw std::logic_error("simplex produced a negative component");
    }
    for (const auto& row : p.rows) {
        Rational lhs = 0;
        for (const auto& [col, coeff] : row.coeffs) lhs += coeff * x[col];
        if (lhs != row.rhs) throw std::logic_error("simplex solution fails a constraint");
    }
}

void verify_farkas(const Problem& p, const std::vector<Rational>& y) {
    std::vector<Rational> yta(p.num_vars, Rational(0));
    Rational ytb = 0;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        for (const auto& [col, coeff] : p.rows[i].coeffs) yta[col] += y[i] * coeff;
        ytb += y[i] * p.rows[i].rhs;
    }
    for (const auto& v : yta) {
        if (v > 0) throw std::logic_error("Farkas certificate violates y^T A <= 0");
    }
    if (ytb <= 0) throw std::logic_error("Farkas certificate violates y^T b > 0");
}

} // namespace

Outcome solve_equality_feasibility(const Problem& problem) {
    PhaseOneTableau tableau(problem);
    tableau.run();
    if (tableau.feasible()) {
        Feasible result{tableau.solution()};
        verify_solution(problem, result.x);
        return result;
    }
    Infeasible result{tableau.farkas()};
    verify_farkas(problem, result.farkas);
    return result;
}

} // namespace tfkit::lp
