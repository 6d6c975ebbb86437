#pragma once

#include "tfkit/behavior.hpp"
#include "tfkit/spacetime.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tfkit {

/// Deterministic classical relay: relay[outcome at A of the earlier
/// experiment] = setting at A of the later one.
using Relay = std::vector<int>;

/// Distribution over tuples of transfer functions, one per experiment, for
/// the correlated-background case.  Keys are canonical per-atom texts.
class JointTFDistribution {
public:
    JointTFDistribution(ExperimentShape shape, int experiment_count);

    const ExperimentShape& shape() const { return shape_; }
    int experiment_count() const { return m_; }

    void add(const std::vector<std::string>& atom_keys, const Rational& weight);

    Rational total_weight() const;
    bool is_normalized() const { return total_weight() == 1; }
    const std::map<std::vector<std::string>, Rational>& weights() const { return weights_; }

    TFDistribution marginal(int experiment) const;
    /// Joint weight over the (experiment j, experiment k) atom pair.
    std::map<std::pair<std::string, std::string>, Rational> pair_marginal(int j, int k) const;

private:
    ExperimentShape shape_;
    int m_;
    std::map<std::vector<std::string>, Rational> weights_;
};

/// Chained Bell experiments: the outcome at A of one experiment sets the
/// A-side orientation of the next through a classical relay.  Background
/// variables are independent per experiment (product of the marginals)
/// unless a joint distribution is supplied.
struct ChainedScenario {
    std::vector<TFDistribution> experiments;
    Relay relay;
    std::optional<JointTFDistribution> joint;

    /// Optional geometry: experiment i sits in frame frame_indices[i] of the
    /// configuration.
    std::optional<BoostedConfiguration> geometry;
    std::vector<int> frame_indices;
};

/// One detected backward chain: with everything else fixed, moving the
/// B-setting of the earlier experiment between the two listed values flips
/// the B-outcome of the later one.
struct BackwardCausalityWitness {
    std::string f1, f2;       // canonical atom keys of the two experiments
    int fixed_a1_setting = 0; // A-setting of the earlier experiment
    int fixed_b2_setting = 0; // B-setting of the later experiment
    int b1_setting_low = 0, b1_setting_high = 0;
    int b2_outcome_low = 0, b2_outcome_high = 0;
    Rational weight;          // joint probability of the atom pair
};

struct BackwardCausalityReport {
    std::vector<BackwardCausalityWitness> witnesses; // canonically sorted
    Rational total_probability;                      // weight of witnessing atom pairs
    bool default_context_sufficed = true;
};

/// Exhaustive sweep over positively weighted atom pairs of the two chained
/// experiments.  The fixed inputs default to setting 0; every fixed-input
/// context is swept when the default context yields nothing.
BackwardCausalityReport detect_backward_causality(const ChainedScenario& s, int exp1 = 0,
                                                  int exp2 = 1);

/// Re-runs the two chained evaluations a witness describes; true when the
/// B-outcome flip is reproduced.
bool verify_witness(const ChainedScenario& s, int exp1, int exp2,
                    const BackwardCausalityWitness& w);

/// Interval class of the later experiment's B measurement relative to the
/// earlier one's, from the scenario geometry.
IntervalClass chain_b_interval(const ChainedScenario& s, int exp1, int exp2);

/// Seeded Monte-Carlo estimate of the witness probability (samples atom
/// pairs, default context only).  Approximate by construction; the
/// exhaustive sweep is the reference mode.
double estimate_backward_causality(const ChainedScenario& s, int exp1, int exp2,
                                   std::uint64_t samples, std::uint64_t seed);

enum class EscapeStatus { Achieved, NotAchieved, Impossible };

struct CoSignallingPair {
    int first = 0, second = 0;
    Rational weight;
};

struct EscapeVerdict {
    EscapeStatus status = EscapeStatus::Impossible;
    Rational union_bound; // M * p_s
    std::vector<CoSignallingPair> co_signalling; // pairs with nonzero co-occurrence
    std::optional<JointTFDistribution> construction; // disjoint witness when built here
};

/// Can M experiments, each with signalling probability exactly p_s, have
/// their signalling functions never occur together?  Impossible whenever
/// M p_s > 1 (the pigeonhole bound); otherwise audits the supplied joint
/// distribution, or constructs a pairwise-disjoint witness when none is
/// given.  Throws MarginalMismatch when a supplied joint's marginals deviate
/// from p_s.
EscapeVerdict anticorrelation_escape_check(const Rational& p_s, int m,
                                           const std::optional<JointTFDistribution>& joint = {});

} // namespace tfkit
