#include "tfkit/spacetime.hpp"

#include "tfkit/errors.hpp"
#include "tfkit/simplex.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tfkit {

IntervalClass classify_interval(const Event& a, const Event& b, const IntervalOptions& options) {
    const double dt = b.t - a.t;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    const double space2 = dx * dx + dy * dy + dz * dz;
    const double interval2 = dt * dt - space2;
    const double scale = dt * dt + space2;
    if (std::abs(interval2) <= options.null_epsilon * scale) {
        throw NullInterval("interval within epsilon of the light cone (ds^2 = " +
                           std::to_string(interval2) + ")");
    }
    if (interval2 < 0) return IntervalClass::Spacelike;
    return dt > 0 ? IntervalClass::TimelikeFuture : IntervalClass::TimelikePast;
}

Event boost(const Event& e, double rapidity) {
    const double ch = std::cosh(rapidity);
    const double sh = std::sinh(rapidity);
    return {e.t * ch - e.x * sh, e.x * ch - e.t * sh, e.y, e.z};
}

const char* interval_class_name(IntervalClass c) {
    switch (c) {
        case IntervalClass::TimelikeFuture: return "timelike-future";
        case IntervalClass::TimelikePast: return "timelike-past";
        case IntervalClass::Spacelike: return "spacelike";
    }
    return "?";
}

double BoostedConfiguration::default_tau(double length, double rapidity_step) {
    return length * std::sinh(rapidity_step) / 100.0;
}

BoostedConfiguration BoostedConfiguration::generate(int n, double length, double rapidity_step,
                                                    double tau) {
    if (n < 1) throw ParameterOutOfRange("N must be at least 1");
    if (!(length > 0)) throw ParameterOutOfRange("L must be positive");
    if (!(rapidity_step > 0)) throw ParameterOutOfRange("phi must be positive");
    const double limit = length * std::sinh(rapidity_step);
    if (!(tau > 0) || !(tau < limit)) {
        throw ParameterOutOfRange("tau must satisfy 0 < tau < L sinh(phi) = " +
                                  std::to_string(limit));
    }
    BoostedConfiguration config;
    config.n_ = n;
    config.length_ = length;
    config.rapidity_step_ = rapidity_step;
    config.tau_ = tau;
    config.experiments_.reserve(static_cast<std::size_t>(2 * n + 1));
    for (int k = -n; k <= n; ++k) {
        const double phi_k = k * rapidity_step;
        ExperimentEvents e;
        e.frame_index = k;
        e.a_prep = boost({0.0, -length, 0.0, 0.0}, phi_k);
        e.b_prep = boost({0.0, +length, 0.0, 0.0}, phi_k);
        e.a_meas = boost({tau, -length, 0.0, 0.0}, phi_k);
        e.b_meas = boost({tau, +length, 0.0, 0.0}, phi_k);
        config.experiments_.push_back(e);
    }
    return config;
}

const ExperimentEvents& BoostedConfiguration::experiment(int k) const {
    if (k < -n_ || k > n_) throw std::out_of_range("frame index outside -N..N");
    return experiments_[static_cast<std::size_t>(k + n_)];
}

int minimal_pigeonhole_n(const Rational& p_s) {
    if (p_s <= 0 || p_s > 1) {
        throw ParameterOutOfRange("signalling probability must lie in (0, 1], got " +
                                  rational_to_string(p_s));
    }
    // Least N with 2N+1 > 1/p_s.
    const Rational inverse = 1 / p_s;
    std::int64_t n = rational_floor((inverse - 1) / 2) + 1;
    if (n < 1) n = 1;
    return static_cast<int>(n);
}

PigeonholeVerdict pigeonhole_infeasible(const Rational& p_s, int m,
                                        const PigeonholeOptions& options) {
    if (p_s <= 0 || p_s > 1) {
        throw ParameterOutOfRange("signalling probability must lie in (0, 1], got " +
                                  rational_to_string(p_s));
    }
    if (m < 1) throw ParameterOutOfRange("experiment count must be at least 1");

    PigeonholeVerdict verdict;
    verdict.union_bound = m * p_s;
    verdict.infeasible = verdict.union_bound > 1;

    if (!options.run_lp) return verdict;
    if (m > options.lp_max_experiments) {
        throw BudgetExceeded("LP path limited to " + std::to_string(options.lp_max_experiments) +
                             " experiments, got " + std::to_string(m));
    }

    // Variables q_S over the 2^M subsets of co-occurring signalling events.
    // Pairwise disjointness (sum over S containing {j,k} of q_S = 0 for all
    // j < k) plus q >= 0 fixes every q_S with |S| >= 2 to zero; the fixings
    // are applied exactly during construction, leaving the empty set and the
    // singletons as live LP columns.
    const std::uint64_t subset_count = std::uint64_t{1} << m;
    std::vector<std::uint64_t> live;
    for (std::uint64_t mask = 0; mask < subset_count; ++mask) {
        if (std::popcount(mask) <= 1) live.push_back(mask);
    }

    lp::Problem problem;
    problem.num_vars = live.size();
    problem.rows.resize(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k < m; ++k) problem.rows[static_cast<std::size_t>(k)].rhs = p_s;
    problem.rows[static_cast<std::size_t>(m)].rhs = 1;
    for (std::size_t var = 0; var < live.size(); ++var) {
        const std::uint64_t mask = live[var];
        for (int k = 0; k < m; ++k) {
            if (mask & (std::uint64_t{1} << k)) {
                problem.rows[static_cast<std::size_t>(k)].coeffs.emplace_back(var, Rational(1));
            }
        }
        problem.rows[static_cast<std::size_t>(m)].coeffs.emplace_back(var, Rational(1));
    }

    const auto outcome = lp::solve_equality_feasibility(problem);
    verdict.lp_checked = true;
    const bool lp_infeasible = std::holds_alternative<lp::Infeasible>(outcome);
    if (lp_infeasible != verdict.infeasible) {
        throw std::logic_error("union bound and LP disagree on pigeonhole feasibility");
    }
    if (const auto* feasible = std::get_if<lp::Feasible>(&outcome)) {
        std::vector<IndicatorCell> witness;
        for (std::size_t var = 0; var < live.size(); ++var) {
            if (feasible->x[var] == 0) continue;
            IndicatorCell cell;
            cell.weight = feasible->x[var];
            for (int k = 0; k < m; ++k) {
                if (live[var] & (std::uint64_t{1} << k)) cell.members.push_back(k);
            }
            witness.push_back(std::move(cell));
        }
        verdict.lp_witness = std::move(witness);
    }
    return verdict;
}

} // namespace tfkit
