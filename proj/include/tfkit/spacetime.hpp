#pragma once

#include "tfkit/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tfkit {

/// Spacetime point in a standard frame, units with c = 1, metric (+,-,-,-).
struct Event {
    double t = 0, x = 0, y = 0, z = 0;
};

enum class IntervalClass { TimelikeFuture, TimelikePast, Spacelike };

struct IntervalOptions {
    /// |dt^2 - dr^2| below epsilon * (dt^2 + dr^2) counts as null.
    double null_epsilon = 1e-9;
};

/// Classifies b relative to a: TimelikeFuture when b lies strictly inside
/// a's forward light cone.  Null intervals are rejected.
IntervalClass classify_interval(const Event& a, const Event& b, const IntervalOptions& options = {});

/// Standard x-boost by the given rapidity:
/// t' = t cosh(phi) - x sinh(phi), x' = x cosh(phi) - t sinh(phi).
Event boost(const Event& e, double rapidity);

const char* interval_class_name(IntervalClass c);

/// One Bell experiment of the boosted family: both receivers at rest in the
/// frame boosted by k * phi, preparations at rest-frame (0, -L) and (0, +L),
/// measurements a proper time tau later at the same rest-frame positions.
struct ExperimentEvents {
    int frame_index = 0;
    Event a_prep, b_prep, a_meas, b_meas;
};

/// The 2N+1 pairwise-boosted Bell experiments: every pair reproduces the
/// relativity-of-simultaneity overlap (the A sides are timelike ordered one
/// way, the B sides the other).
class BoostedConfiguration {
public:
    static BoostedConfiguration generate(int n, double length, double rapidity_step, double tau);

    /// tau = L sinh(phi) / 100, safely inside the cone-ordering regime.
    static double default_tau(double length, double rapidity_step);

    int n() const { return n_; }
    int experiment_count() const { return 2 * n_ + 1; }
    double length() const { return length_; }
    double rapidity_step() const { return rapidity_step_; }
    double tau() const { return tau_; }

    /// k ranges over -N..N.
    const ExperimentEvents& experiment(int k) const;
    const std::vector<ExperimentEvents>& experiments() const { return experiments_; }

private:
    BoostedConfiguration() = default;
    int n_ = 0;
    double length_ = 0, rapidity_step_ = 0, tau_ = 0;
    std::vector<ExperimentEvents> experiments_;
};

/// Least N >= 1 with p_s > 1/(2N+1) (strict).  p_s must lie in (0, 1].
int minimal_pigeonhole_n(const Rational& p_s);

struct PigeonholeOptions {
    bool run_lp = true;
    int lp_max_experiments = 15;
};

/// Joint-indicator distribution entry: the set of experiments whose
/// signalling functions co-occur, with its probability.
struct IndicatorCell {
    std::vector<int> members; // sorted experiment indices
    Rational weight;
};

struct PigeonholeVerdict {
    bool infeasible = false;
    Rational union_bound;      // M * p_s, infeasible iff > 1
    bool lp_checked = false;
    std::optional<std::vector<IndicatorCell>> lp_witness; // when the LP is feasible
};

/// Decides whether M experiments, each signalling with probability exactly
/// p_s, can have pairwise-disjoint signalling events.  Checked two ways: the
/// union-bound arithmetic M p_s <= 1, and an exact LP over the 2^M joint
/// indicator outcomes with pairwise-disjointness and marginal constraints.
/// The two verdicts are required to agree.
PigeonholeVerdict pigeonhole_infeasible(const Rational& p_s, int m,
                                        const PigeonholeOptions& options = {});

} // namespace tfkit
