// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails.  Each criterion carries a wall-clock budget that is part of the
// check.

#include "tfkit/behavior.hpp"
#include "tfkit/errors.hpp"
#include "tfkit/localpoly.hpp"
#include "tfkit/quantum.hpp"
#include "tfkit/scenario.hpp"
#include "tfkit/spacetime.hpp"
#include "tfkit/transfer_function.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace tfkit;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
    bool ok = true;
    std::string detail;
    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

bool run_criterion(int number, const std::string& title, double budget_seconds,
                   const std::function<void(Check&)>& body) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.require(elapsed < budget_seconds,
                  "runtime " + std::to_string(elapsed) + "s exceeds budget of " +
                      std::to_string(budget_seconds) + "s");
    std::printf("[%s] criterion %2d: %s (%.3fs)\n", check.ok ? "PASS" : "FAIL", number,
                title.c_str(), elapsed);
    if (!check.ok) std::printf("       %s\n", check.detail.c_str());
    std::fflush(stdout);
    return check.ok;
}

TFDistribution three_setting_strategy_distribution(const std::array<Rational, 4>& p) {
    TFDistribution d(ExperimentShape({{3, 2}, {3, 2}}));
    const char* strings[4][2] = {{"+++", "---"}, {"-++", "+--"}, {"+-+", "-+-"}, {"++-", "--+"}};
    for (int k = 0; k < 4; ++k) {
        for (const char* s : strings[k]) {
            d.add("[" + std::string(s) + "," + std::string(s) + "]", p[static_cast<std::size_t>(k)]);
        }
    }
    return d;
}

Behavior pr_box() {
    const ExperimentShape shape({{2, 2}, {2, 2}});
    const Rational half(1, 2);
    std::vector<Rational> table(shape.joint_input_count() * shape.joint_output_count(), Rational(0));
    for (int ia = 0; ia < 2; ++ia) {
        for (int ib = 0; ib < 2; ++ib) {
            const std::size_t row = shape.encode_input({ia, ib}) * shape.joint_output_count();
            const bool anti = ia == 1 && ib == 1;
            table[row + shape.encode_output({0, anti ? 1 : 0})] = half;
            table[row + shape.encode_output({1, anti ? 0 : 1})] = half;
        }
    }
    return Behavior(shape, std::move(table));
}

// ---- criteria ----

void criterion_1(Check& c) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> pick(0, 30);
    for (int trial = 0; trial < 200; ++trial) {
        Rational p1(pick(rng)), p2(pick(rng));
        Rational sum = p1 + p2;
        if (sum == 0) { p1 = 1; sum = 1; }
        p1 /= 2 * sum;
        p2 /= 2 * sum;
        TFDistribution d(ExperimentShape({{2, 2}, {2, 2}}));
        d.add("[++,++]", p1);
        d.add("[--,--]", p1);
        d.add("[+-,+-]", p2);
        d.add("[-+,-+]", p2);
        const auto b = behavior_from_distribution(d);
        const Rational half(1, 2);
        for (int k = 0; k < 2; ++k) {
            c.require(b.probability({k, k}, {0, 0}) == half, "Pr(++/kk) != 1/2");
            c.require(b.probability({k, k}, {1, 1}) == half, "Pr(--/kk) != 1/2");
        }
    }
}

void criterion_2(Check& c) {
    std::mt19937_64 rng(102);
    std::uniform_int_distribution<int> pick(0, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<Rational, 4> p;
        Rational sum = 0;
        for (auto& v : p) {
            v = Rational(pick(rng));
            sum += v;
        }
        if (sum == 0) { p[0] = 1; sum = 1; }
        for (auto& v : p) v /= 2 * sum;
        const auto b = behavior_from_distribution(three_setting_strategy_distribution(p));
        const auto solved = derive_symmetric_probabilities({3}, b);
        for (int k = 0; k < 4; ++k) {
            c.require(solved.p[static_cast<std::size_t>(k)] == p[static_cast<std::size_t>(k)],
                      "P_" + std::to_string(k) + " not recovered exactly");
        }
        if (!c.ok) return;
    }
}

void criterion_3(Check& c) {
    const auto b = singlet_behavior({{0.0, -kPi / 3.0, kPi / 3.0}});
    c.require(bell_expression(b, 1) == make_rational(-1, 8), "Bell expression is not -1/8");
    const auto verdict = local_membership(b);
    c.require(!verdict.feasible, "quantum behavior came back feasible");
    c.require(verdict.certificate.has_value(), "missing certificate");
    if (verdict.certificate) {
        c.require(verdict.certificate->violation < 0, "certificate violation not negative");
        c.require(verdict.certificate->evaluate(b) ==
                      verdict.certificate->threshold + verdict.certificate->violation,
                  "certificate arithmetic broken");
    }
}

void criterion_4(Check& c) {
    const ExperimentShape shape({{3, 2}, {3, 2}});
    const auto atoms = enumerate_product_form(shape);
    c.require(atoms.size() == 64, "expected 64 atoms");
    std::mt19937_64 rng(104);
    std::uniform_int_distribution<int> pick(0, 9);
    for (int trial = 0; trial < 200; ++trial) {
        TFDistribution d(shape);
        Rational total = 0;
        std::vector<Rational> w(atoms.size());
        for (auto& v : w) {
            v = Rational(pick(rng));
            total += v;
        }
        if (total == 0) { w[0] = 1; total = 1; }
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            if (w[a] != 0) d.add(atoms[a], w[a] / total);
        }
        const auto b = behavior_from_distribution(d);
        const auto verdict = local_membership(b);
        c.require(verdict.feasible, "product mixture judged infeasible");
        if (!verdict.feasible) return;
        c.require(behavior_from_distribution(*verdict.witness) == b,
                  "witness does not reproduce the behavior");
        if (!c.ok) return;
    }

    const auto box = pr_box();
    const auto verdict = local_membership(box);
    c.require(!verdict.feasible, "PR box judged local");
    if (verdict.certificate) {
        for (const auto& atom : enumerate_product_form(box.shape())) {
            c.require(verdict.certificate->evaluate(atom) >= verdict.certificate->threshold,
                      "certificate cuts off a deterministic point");
        }
        c.require(verdict.certificate->violation < 0, "PR-box violation not negative");
    } else {
        c.require(false, "missing PR-box certificate");
    }
}

void criterion_5(Check& c) {
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const RationalizationPolicy tight{true, 10'000'000'000'000LL};
    for (int trial = 0; trial < 100; ++trial) {
        const double ta = angle(rng);
        const double tb = angle(rng);
        const auto b = singlet_behavior({{ta, tb}}, tight);
        const double expectation = expectation_from_behavior(b, 0, 1).get_d();
        c.require(std::abs(expectation + std::cos(ta - tb)) < 1e-12,
                  "expectation deviates from -cos(delta) at delta = " + std::to_string(ta - tb));
        if (!c.ok) return;
    }
}

void criterion_6(Check& c) {
    const auto census = signalling_census(ExperimentShape({{2, 2}, {2, 2}}));
    c.require(census.count_of("null") == 16, "null class size != 16");
    c.require(census.count_of("0->1") == 48, "A->B-only class size != 48");
    c.require(census.count_of("1->0") == 48, "B->A-only class size != 48");
    c.require(census.count_of("0->1,1->0") == 144, "both-ways class size != 144");
    std::uint64_t sum = 0;
    for (const auto& [name, count] : census.by_class) sum += count;
    c.require(sum == 256 && census.total == 256, "class sizes do not sum to 256");
}

void criterion_7(Check& c) {
    const double l = 1.0, phi = 0.5;
    const double tau = l * std::sinh(phi) / 100.0;
    const auto config = BoostedConfiguration::generate(3, l, phi, tau);
    int pairs = 0;
    for (int j = -3; j <= 3; ++j) {
        c.require(classify_interval(config.experiment(j).a_prep, config.experiment(j).b_prep) ==
                      IntervalClass::Spacelike,
                  "intra-experiment preparations not spacelike");
        for (int k = j + 1; k <= 3; ++k) {
            ++pairs;
            c.require(classify_interval(config.experiment(j).a_meas, config.experiment(k).a_meas) ==
                          IntervalClass::TimelikeFuture,
                      "A_j not timelike-past of A_k");
            c.require(classify_interval(config.experiment(j).b_meas, config.experiment(k).b_meas) ==
                          IntervalClass::TimelikePast,
                      "B_j not timelike-future of B_k");
        }
    }
    c.require(pairs == 21, "expected 21 experiment pairs");

    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_real_distribution<double> rapidity(-1.5, 1.5);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Event a{coord(rng), coord(rng), coord(rng), coord(rng)};
        const Event b{coord(rng), coord(rng), coord(rng), coord(rng)};
        const double boost_by = rapidity(rng);
        try {
            const auto before = classify_interval(a, b);
            const auto after = classify_interval(boost(a, boost_by), boost(b, boost_by));
            c.require(before == after, "classification changed under a common boost");
            ++checked;
        } catch (const NullInterval&) {
        }
    }
    c.require(checked > 900, "too many near-null samples");
}

void criterion_8(Check& c) {
    c.require(minimal_pigeonhole_n(make_rational(1, 4)) == 2, "minimal N(1/4) != 2");

    const auto infeasible = pigeonhole_infeasible(make_rational(1, 4), 5);
    c.require(infeasible.infeasible && infeasible.lp_checked,
              "pigeonhole(1/4, 5) not infeasible on both paths");
    c.require(infeasible.union_bound == make_rational(5, 4), "union bound != 5/4");

    const auto feasible = pigeonhole_infeasible(make_rational(1, 5), 5);
    c.require(!feasible.infeasible && feasible.lp_witness.has_value(),
              "pigeonhole(1/5, 5) missing the disjoint witness");
    if (feasible.lp_witness) {
        std::vector<Rational> marginals(5, Rational(0));
        Rational total = 0;
        for (const auto& cell : *feasible.lp_witness) {
            c.require(cell.members.size() <= 1, "witness cell not disjoint");
            total += cell.weight;
            for (int k : cell.members) marginals[static_cast<std::size_t>(k)] += cell.weight;
        }
        c.require(total == 1, "witness not normalized");
        for (const auto& m : marginals) {
            c.require(m == make_rational(1, 5), "witness marginal wrong");
        }
    }

    // grid agreement: every reduced fraction a/b with b <= 12, every M <= 12
    for (int den = 1; den <= 12; ++den) {
        for (int num = 1; num <= den; ++num) {
            const Rational p = make_rational(num, den);
            for (int m = 1; m <= 12; ++m) {
                const auto verdict = pigeonhole_infeasible(p, m);
                c.require(verdict.lp_checked, "LP path skipped on the grid");
                c.require(verdict.infeasible == (verdict.union_bound > 1),
                          "paths disagree at p = " + rational_to_string(p) +
                              ", M = " + std::to_string(m));
            }
        }
        if (!c.ok) return;
    }
}

void criterion_9(Check& c) {
    const ExperimentShape shape({{2, 2}, {2, 2}});
    const char* copier_a_from_b = "00->00;01->10;10->00;11->10";
    const char* copier_b_from_a = "00->00;01->00;10->01;11->01";
    const char* full_copier = "00->00;01->10;10->01;11->11";
    const char* null_plus = "[++,++]";
    const char* null_minus = "[--,--]";

    // copier pair: exactly one witness with probability 1
    {
        ChainedScenario s;
        TFDistribution first(shape), second(shape);
        first.add(copier_a_from_b, Rational(1));
        second.add(copier_b_from_a, Rational(1));
        s.experiments = {first, second};
        s.relay = {0, 1};
        const auto report = detect_backward_causality(s);
        c.require(report.witnesses.size() == 1, "copier pair: expected exactly one witness");
        c.require(report.total_probability == 1, "copier pair: probability != 1");
        if (!report.witnesses.empty()) {
            c.require(verify_witness(s, 0, 1, report.witnesses[0]),
                      "copier-pair witness fails re-evaluation");
        }
    }

    // correlated-lambda closure: for marginals p > 1/M the zero-co-signalling
    // joint is impossible (LP), and every sampled joint with those marginals
    // chains a backward witness on at least one pair.
    std::mt19937_64 rng(109);
    std::uniform_int_distribution<int> split_pick(0, 4);
    for (int m = 2; m <= 5; ++m) {
        for (int den = 2; den <= 6; ++den) {
            for (int num = 1; num <= den; ++num) {
                const Rational p = make_rational(num, den);
                if (p <= make_rational(1, m) || p > 1) continue;
                c.require(pigeonhole_infeasible(p, m).infeasible,
                          "disjoint joint not ruled out at p > 1/M");

                // joints with exact marginals p: mixtures of the independent
                // product and the all-together comonotone joint
                const char* anti_copier = "00->11;01->01;10->10;11->00";
                for (int mix_num = 0; mix_num <= 4; ++mix_num) {
                    const Rational lambda = make_rational(mix_num, 4);
                    JointTFDistribution joint(shape, m);
                    // four atoms per experiment: two copier variants for the
                    // signalling slots, two constants for the null slots
                    const Rational split = make_rational(split_pick(rng), 4);
                    auto add_pattern = [&](const std::vector<bool>& signalling, Rational w) {
                        if (w == 0) return;
                        std::vector<std::string> tuple;
                        for (bool sig : signalling) {
                            tuple.push_back(sig ? full_copier : null_plus);
                        }
                        joint.add(tuple, w * (1 - split));
                        std::vector<std::string> alt;
                        for (bool sig : signalling) {
                            alt.push_back(sig ? anti_copier : null_minus);
                        }
                        joint.add(alt, w * split);
                    };
                    // independent product part
                    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
                        Rational w = 1 - lambda;
                        std::vector<bool> pattern;
                        for (int k = 0; k < m; ++k) {
                            const bool sig = mask & (std::uint64_t{1} << k);
                            pattern.push_back(sig);
                            w *= sig ? p : 1 - p;
                        }
                        add_pattern(pattern, w);
                    }
                    // comonotone part
                    add_pattern(std::vector<bool>(static_cast<std::size_t>(m), true), lambda * p);
                    add_pattern(std::vector<bool>(static_cast<std::size_t>(m), false),
                                lambda * (1 - p));

                    c.require(joint.is_normalized(), "sampled joint not normalized");
                    for (int k = 0; k < m; ++k) {
                        c.require(signalling_weight(joint.marginal(k)) == p,
                                  "sampled joint marginal != p");
                    }

                    ChainedScenario s;
                    s.joint = joint;
                    s.relay = {0, 1};
                    Rational best = 0;
                    for (int j = 0; j < m && best == 0; ++j) {
                        for (int k = j + 1; k < m && best == 0; ++k) {
                            best = detect_backward_causality(s, j, k).total_probability;
                        }
                    }
                    c.require(best > 0, "no backward witness at p = " + rational_to_string(p) +
                                            ", M = " + std::to_string(m));

                    const auto audited = anticorrelation_escape_check(p, m, joint);
                    c.require(audited.status != EscapeStatus::Achieved,
                              "escape audit reports zero co-signalling above the bound");
                    if (!c.ok) return;
                }

                // adversarial sample: experiments 0 and 1 perfectly
                // anticorrelated, the witness must surface on another pair
                if (m >= 3 && 2 * p <= 1) {
                    JointTFDistribution joint(shape, m);
                    std::vector<std::string> first(static_cast<std::size_t>(m), full_copier);
                    first[1] = null_plus;
                    std::vector<std::string> second(static_cast<std::size_t>(m), null_plus);
                    second[1] = full_copier;
                    joint.add(first, p);
                    joint.add(second, p);
                    joint.add(std::vector<std::string>(static_cast<std::size_t>(m), null_plus),
                              1 - 2 * p);
                    for (int k = 0; k < m; ++k) {
                        c.require(signalling_weight(joint.marginal(k)) == p,
                                  "anticorrelated joint marginal != p");
                    }
                    ChainedScenario s;
                    s.joint = joint;
                    s.relay = {0, 1};
                    c.require(detect_backward_causality(s, 0, 1).total_probability == 0,
                              "anticorrelated pair still chains");
                    Rational best = 0;
                    for (int j = 0; j < m && best == 0; ++j) {
                        for (int k = j + 1; k < m && best == 0; ++k) {
                            if (j == 0 && k == 1) continue;
                            best = detect_backward_causality(s, j, k).total_probability;
                        }
                    }
                    c.require(best > 0, "witness did not surface on the co-signalling pairs");
                    if (!c.ok) return;
                }
            }
        }
    }

    // negative control: at p <= 1/M the disjoint construction yields no
    // witnesses anywhere
    {
        const int m = 4;
        const Rational p = make_rational(1, 4);
        const auto verdict = anticorrelation_escape_check(p, m);
        c.require(verdict.status == EscapeStatus::Achieved && verdict.construction.has_value(),
                  "disjoint construction missing at p = 1/M");
        if (verdict.construction) {
            ChainedScenario s;
            s.joint = *verdict.construction;
            s.relay = {0, 1};
            for (int j = 0; j < m; ++j) {
                for (int k = j + 1; k < m; ++k) {
                    c.require(detect_backward_causality(s, j, k).total_probability == 0,
                              "disjoint construction still chains a witness");
                }
            }
        }
    }
}

void criterion_10(Check&) {
    // Photon-polarization statistics and cross-experiment output
    // correlations are observational claims with no desk-scale oracle; the
    // suites above stand in for them by construction.  Nothing to execute.
}

} // namespace

int main() {
    bool all_ok = true;
    auto run = [&](int n, const std::string& title, double budget,
                   const std::function<void(Check&)>& body) {
        all_ok &= run_criterion(n, title, budget, body);
    };

    run(1, "two-setting mixtures hit the exact half-half diagonal", 1.0, criterion_1);
    run(2, "strategy-probability inversion round trip (10^3 cases)", 5.0, criterion_2);
    run(3, "singlet at thirds violates the Bell functional by -1/8", 2.0, criterion_3);
    run(4, "LP membership: 200 feasible mixtures + PR-box separation", 30.0, criterion_4);
    run(5, "expectation convention matches -cos(delta) to 1e-12", 1.0, criterion_5);
    run(6, "signalling census (16, 48, 48, 144)", 1.0, criterion_6);
    run(7, "boosted-family cone structure and boost invariance", 1.0, criterion_7);
    run(8, "pigeonhole arithmetic and LP agree on the grid", 30.0, criterion_8);
    run(9, "backward-causality witnesses and correlated-lambda closure", 60.0, criterion_9);
    run(10, "out-of-scope empirical claims delegated to the suites above", 1.0, criterion_10);

    return all_ok ? 0 : 1;
}
