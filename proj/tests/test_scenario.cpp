#include "tfkit/errors.hpp"
#include "tfkit/scenario.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

using namespace tfkit;

namespace {

const ExperimentShape& binary_shape() {
    static const ExperimentShape shape({{2, 2}, {2, 2}});
    return shape;
}

// j_A = i_B, j_B constant +  (signal from B to A only)
const char* kCopierAFromB = "00->00;01->10;10->00;11->10";
// j_B = i_A, j_A constant +  (signal from A to B only)
const char* kCopierBFromA = "00->00;01->00;10->01;11->01";
// j_A = i_B and j_B = i_A    (signals both ways)
const char* kFullCopier = "00->00;01->10;10->01;11->11";
const char* kNullPlus = "[++,++]";
const char* kNullMinus = "[--,--]";

Relay identity_relay() { return {0, 1}; }

ChainedScenario copier_pair_scenario() {
    ChainedScenario s;
    TFDistribution first(binary_shape());
    first.add(kCopierAFromB, Rational(1));
    TFDistribution second(binary_shape());
    second.add(kCopierBFromA, Rational(1));
    s.experiments = {first, second};
    s.relay = identity_relay();
    return s;
}

} // namespace

TEST_CASE("copier pair chains into exactly one backward witness") {
    const auto s = copier_pair_scenario();
    const auto report = detect_backward_causality(s);
    REQUIRE(report.witnesses.size() == 1);
    CHECK(report.total_probability == 1);
    CHECK(report.default_context_sufficed);
    const auto& w = report.witnesses[0];
    CHECK(w.f1 == kCopierAFromB);
    CHECK(w.f2 == kCopierBFromA);
    CHECK(w.b1_setting_low == 0);
    CHECK(w.b1_setting_high == 1);
    CHECK(w.b2_outcome_low != w.b2_outcome_high);
    CHECK(verify_witness(s, 0, 1, w));
}

TEST_CASE("product-form supports produce no witnesses") {
    ChainedScenario s;
    TFDistribution d(binary_shape());
    d.add(kNullPlus, make_rational(1, 2));
    d.add(kNullMinus, make_rational(1, 2));
    s.experiments = {d, d};
    s.relay = identity_relay();
    const auto report = detect_backward_causality(s);
    CHECK(report.witnesses.empty());
    CHECK(report.total_probability == 0);
    CHECK_FALSE(report.default_context_sufficed);
}

TEST_CASE("independent signalling supports multiply their probabilities") {
    // p on the B->A copier in experiment 1, p on the A->B copier in
    // experiment 2: the witness probability under independence is p^2.
    const Rational p = make_rational(1, 3);
    ChainedScenario s;
    TFDistribution first(binary_shape());
    first.add(kCopierAFromB, p);
    first.add(kNullPlus, 1 - p);
    TFDistribution second(binary_shape());
    second.add(kCopierBFromA, p);
    second.add(kNullPlus, 1 - p);
    s.experiments = {first, second};
    s.relay = identity_relay();
    const auto report = detect_backward_causality(s);
    CHECK(report.total_probability == p * p);
    for (const auto& w : report.witnesses) CHECK(verify_witness(s, 0, 1, w));
}

TEST_CASE("correlated backgrounds change the witness probability") {
    // Same marginals as the independent case, but the two signalling atoms
    // never co-occur: zero witnesses.
    JointTFDistribution joint(binary_shape(), 2);
    joint.add({kCopierAFromB, kNullPlus}, make_rational(1, 2));
    joint.add({kNullPlus, kCopierBFromA}, make_rational(1, 2));
    ChainedScenario s;
    s.joint = joint;
    s.relay = identity_relay();
    const auto report = detect_backward_causality(s);
    CHECK(report.total_probability == 0);

    // Perfectly correlated: the witness probability is the full overlap.
    JointTFDistribution aligned(binary_shape(), 2);
    aligned.add({kCopierAFromB, kCopierBFromA}, make_rational(1, 2));
    aligned.add({kNullPlus, kNullPlus}, make_rational(1, 2));
    ChainedScenario s2;
    s2.joint = aligned;
    s2.relay = identity_relay();
    CHECK(detect_backward_causality(s2).total_probability == make_rational(1, 2));
}

TEST_CASE("witness geometry runs backward over a timelike interval") {
    auto s = copier_pair_scenario();
    s.geometry = BoostedConfiguration::generate(1, 1.0, 0.5,
                                                BoostedConfiguration::default_tau(1.0, 0.5));
    s.frame_indices = {0, 1};
    const auto report = detect_backward_causality(s);
    REQUIRE_FALSE(report.witnesses.empty());
    // B_2's measurement is strictly in the past light cone of B_1's.
    CHECK(chain_b_interval(s, 0, 1) == IntervalClass::TimelikeFuture);
}

TEST_CASE("relay validation") {
    auto s = copier_pair_scenario();
    s.relay = {0};
    CHECK_THROWS_AS(detect_backward_causality(s), RelayUndefined);
    s.relay = {0, 5};
    CHECK_THROWS_AS(detect_backward_causality(s), RelayUndefined);
}

TEST_CASE("monte-carlo estimate tracks the exact probability") {
    const Rational p = make_rational(1, 2);
    ChainedScenario s;
    TFDistribution first(binary_shape());
    first.add(kCopierAFromB, p);
    first.add(kNullPlus, 1 - p);
    TFDistribution second(binary_shape());
    second.add(kCopierBFromA, p);
    second.add(kNullPlus, 1 - p);
    s.experiments = {first, second};
    s.relay = identity_relay();
    const double exact = detect_backward_causality(s).total_probability.get_d();
    const double estimate = estimate_backward_causality(s, 0, 1, 20000, 12345);
    CHECK(std::abs(estimate - exact) < 0.02);
}

TEST_CASE("escape check audits a supplied joint distribution") {
    // Eq-18 boundary: two experiments at p = 1/2 with disjoint signalling.
    JointTFDistribution joint(binary_shape(), 2);
    joint.add({kFullCopier, kNullPlus}, make_rational(1, 2));
    joint.add({kNullPlus, kFullCopier}, make_rational(1, 2));
    const auto verdict = anticorrelation_escape_check(make_rational(1, 2), 2, joint);
    CHECK(verdict.status == EscapeStatus::Achieved);
    CHECK(verdict.union_bound == 1);
    CHECK(verdict.co_signalling.empty());
}

TEST_CASE("escape is impossible beyond the pigeonhole bound") {
    const auto verdict = anticorrelation_escape_check(make_rational(1, 4), 5);
    CHECK(verdict.status == EscapeStatus::Impossible);
    CHECK(verdict.union_bound == make_rational(5, 4));
}

TEST_CASE("escape constructs a disjoint witness when possible") {
    const auto verdict = anticorrelation_escape_check(make_rational(1, 4), 3);
    REQUIRE(verdict.status == EscapeStatus::Achieved);
    REQUIRE(verdict.construction.has_value());
    const auto& joint = *verdict.construction;
    for (int k = 0; k < 3; ++k) {
        CHECK(signalling_weight(joint.marginal(k)) == make_rational(1, 4));
    }
    // audit the construction through the joint path
    const auto audited = anticorrelation_escape_check(make_rational(1, 4), 3, joint);
    CHECK(audited.status == EscapeStatus::Achieved);
}

TEST_CASE("escape flags marginal mismatches") {
    JointTFDistribution joint(binary_shape(), 2);
    joint.add({kFullCopier, kNullPlus}, make_rational(1, 2));
    joint.add({kNullPlus, kNullPlus}, make_rational(1, 2));
    CHECK_THROWS_AS(anticorrelation_escape_check(make_rational(1, 2), 2, joint), MarginalMismatch);
}

TEST_CASE("escape reports co-signalling pairs when the joint fails") {
    JointTFDistribution joint(binary_shape(), 2);
    joint.add({kFullCopier, kFullCopier}, make_rational(1, 2));
    joint.add({kNullPlus, kNullPlus}, make_rational(1, 2));
    const auto verdict = anticorrelation_escape_check(make_rational(1, 2), 2, joint);
    CHECK(verdict.status == EscapeStatus::NotAchieved);
    REQUIRE(verdict.co_signalling.size() == 1);
    CHECK(verdict.co_signalling[0].weight == make_rational(1, 2));
}

TEST_CASE("small correlated-lambda closure: co-signalling forces witnesses") {
    // Any joint over copier/null atoms with some pair co-signalling must
    // yield a backward witness on that pair.
    std::mt19937_64 rng(79);
    std::uniform_int_distribution<int> weight(0, 5);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 3;
        JointTFDistribution joint(binary_shape(), m);
        std::vector<std::string> pool{kNullPlus, kNullMinus, kFullCopier};
        Rational total = 0;
        std::vector<std::pair<std::vector<std::string>, Rational>> entries;
        for (int atom = 0; atom < 8; ++atom) {
            std::vector<std::string> tuple;
            for (int k = 0; k < m; ++k) {
                tuple.push_back(pool[static_cast<std::size_t>(weight(rng)) % pool.size()]);
            }
            const Rational w(weight(rng));
            if (w == 0) continue;
            entries.emplace_back(tuple, w);
            total += w;
        }
        if (total == 0) continue;
        for (auto& [tuple, w] : entries) joint.add(tuple, w / total);
        if (!joint.is_normalized()) continue;

        for (int j = 0; j < m; ++j) {
            for (int k = j + 1; k < m; ++k) {
                Rational co = 0;
                for (const auto& [keys, w] : joint.weights()) {
                    if (keys[static_cast<std::size_t>(j)] == kFullCopier &&
                        keys[static_cast<std::size_t>(k)] == kFullCopier) {
                        co += w;
                    }
                }
                ChainedScenario s;
                s.joint = joint;
                s.relay = identity_relay();
                const auto report = detect_backward_causality(s, j, k);
                CHECK(report.total_probability == co);
            }
        }
    }
}
