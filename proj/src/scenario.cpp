#include "tfkit/scenario.hpp"

#include "tfkit/errors.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace tfkit {

JointTFDistribution::JointTFDistribution(ExperimentShape shape, int experiment_count)
    : shape_(std::move(shape)), m_(experiment_count) {
    if (m_ < 1) throw std::invalid_argument("joint distribution needs at least one experiment");
    if (shape_.party_count() != 2) {
        throw ShapeMismatch("chained experiments are two-party; got " + shape_.to_text());
    }
}

void JointTFDistribution::add(const std::vector<std::string>& atom_keys, const Rational& weight) {
    if (atom_keys.size() != static_cast<std::size_t>(m_)) {
        throw std::invalid_argument("atom tuple arity mismatch");
    }
    if (weight < 0) throw std::invalid_argument("joint weight must be nonnegative");
    if (weight == 0) return;
    std::vector<std::string> canonical;
    canonical.reserve(atom_keys.size());
    for (const auto& key : atom_keys) {
        canonical.push_back(to_canonical_text(transfer_function_from_text(shape_, key)));
    }
    weights_[canonical] += weight;
}

Rational JointTFDistribution::total_weight() const {
    Rational sum = 0;
    for (const auto& [keys, w] : weights_) sum += w;
    return sum;
}

TFDistribution JointTFDistribution::marginal(int experiment) const {
    if (experiment < 0 || experiment >= m_) throw std::out_of_range("experiment index");
    TFDistribution d(shape_);
    for (const auto& [keys, w] : weights_) {
        d.add(keys[static_cast<std::size_t>(experiment)], w);
    }
    return d;
}

std::map<std::pair<std::string, std::string>, Rational>
JointTFDistribution::pair_marginal(int j, int k) const {
    if (j < 0 || j >= m_ || k < 0 || k >= m_ || j == k) {
        throw std::out_of_range("experiment pair indices");
    }
    std::map<std::pair<std::string, std::string>, Rational> out;
    for (const auto& [keys, w] : weights_) {
        out[{keys[static_cast<std::size_t>(j)], keys[static_cast<std::size_t>(k)]}] += w;
    }
    return out;
}

namespace {

constexpr int kPartyA = 0;
constexpr int kPartyB = 1;

void require_two_party(const ExperimentShape& shape) {
    if (shape.party_count() != 2) {
        throw ShapeMismatch("chained experiments are two-party; got " + shape.to_text());
    }
}

void require_relay(const Relay& relay, const ExperimentShape& from_shape,
                   const ExperimentShape& to_shape) {
    const int outcomes = from_shape.party(kPartyA).outcomes;
    if (relay.size() != static_cast<std::size_t>(outcomes)) {
        throw RelayUndefined("relay must map every A outcome; expected " +
                             std::to_string(outcomes) + " entries, got " +
                             std::to_string(relay.size()));
    }
    for (int setting : relay) {
        if (setting < 0 || setting >= to_shape.party(kPartyA).settings) {
            throw RelayUndefined("relay target setting " + std::to_string(setting) +
                                 " out of range");
        }
    }
}

/// Chained evaluation: returns the B-outcome of the later experiment.
int run_chain(const TransferFunction& f1, const TransferFunction& f2, const Relay& relay,
              int a1_setting, int b1_setting, int b2_setting) {
    const auto& shape1 = f1.shape();
    const auto& shape2 = f2.shape();
    const std::size_t input1 = shape1.encode_input({a1_setting, b1_setting});
    const int a1_outcome = f1.output_component(input1, kPartyA);
    const int a2_setting = relay[static_cast<std::size_t>(a1_outcome)];
    const std::size_t input2 = shape2.encode_input({a2_setting, b2_setting});
    return f2.output_component(input2, kPartyB);
}

std::vector<std::tuple<std::string, std::string, Rational>>
pair_weights(const ChainedScenario& s, int exp1, int exp2) {
    std::vector<std::tuple<std::string, std::string, Rational>> out;
    if (s.joint) {
        for (const auto& [pair, w] : s.joint->pair_marginal(exp1, exp2)) {
            out.emplace_back(pair.first, pair.second, w);
        }
        return out;
    }
    const auto& d1 = s.experiments.at(static_cast<std::size_t>(exp1));
    const auto& d2 = s.experiments.at(static_cast<std::size_t>(exp2));
    for (const auto& [k1, w1] : d1.weights()) {
        for (const auto& [k2, w2] : d2.weights()) {
            out.emplace_back(k1, k2, w1 * w2);
        }
    }
    return out;
}

const ExperimentShape& experiment_shape(const ChainedScenario& s, int index) {
    if (s.joint) return s.joint->shape();
    return s.experiments.at(static_cast<std::size_t>(index)).shape();
}

} // namespace

BackwardCausalityReport detect_backward_causality(const ChainedScenario& s, int exp1, int exp2) {
    const auto& shape1 = experiment_shape(s, exp1);
    const auto& shape2 = experiment_shape(s, exp2);
    require_two_party(shape1);
    require_two_party(shape2);
    require_relay(s.relay, shape1, shape2);

    const auto pairs = pair_weights(s, exp1, exp2);
    struct ParsedPair {
        TransferFunction f1, f2;
        std::string k1, k2;
        Rational weight;
    };
    std::vector<ParsedPair> parsed;
    parsed.reserve(pairs.size());
    for (const auto& [k1, k2, w] : pairs) {
        if (w == 0) continue;
        parsed.push_back({transfer_function_from_text(shape1, k1),
                          transfer_function_from_text(shape2, k2), k1, k2, w});
    }

    const int b1_settings = shape1.party(kPartyB).settings;
    auto sweep = [&](int fixed_a1, int fixed_b2, std::vector<BackwardCausalityWitness>& found) {
        for (const auto& p : parsed) {
            for (int v1 = 0; v1 < b1_settings; ++v1) {
                const int out_low = run_chain(p.f1, p.f2, s.relay, fixed_a1, v1, fixed_b2);
                for (int v2 = v1 + 1; v2 < b1_settings; ++v2) {
                    const int out_high = run_chain(p.f1, p.f2, s.relay, fixed_a1, v2, fixed_b2);
                    if (out_low != out_high) {
                        found.push_back({p.k1, p.k2, fixed_a1, fixed_b2, v1, v2, out_low,
                                         out_high, p.weight});
                    }
                }
            }
        }
    };

    BackwardCausalityReport report;
    sweep(0, 0, report.witnesses);
    if (report.witnesses.empty()) {
        report.default_context_sufficed = false;
        for (int a1 = 0; a1 < shape1.party(kPartyA).settings; ++a1) {
            for (int b2 = 0; b2 < shape2.party(kPartyB).settings; ++b2) {
                if (a1 == 0 && b2 == 0) continue;
                sweep(a1, b2, report.witnesses);
            }
        }
    }

    std::sort(report.witnesses.begin(), report.witnesses.end(),
              [](const BackwardCausalityWitness& a, const BackwardCausalityWitness& b) {
                  return std::tie(a.f1, a.f2, a.fixed_a1_setting, a.fixed_b2_setting,
                                  a.b1_setting_low, a.b1_setting_high) <
                         std::tie(b.f1, b.f2, b.fixed_a1_setting, b.fixed_b2_setting,
                                  b.b1_setting_low, b.b1_setting_high);
              });

    report.total_probability = 0;
    std::pair<std::string, std::string> last;
    bool have_last = false;
    for (const auto& w : report.witnesses) {
        std::pair<std::string, std::string> key{w.f1, w.f2};
        if (!have_last || key != last) {
            report.total_probability += w.weight;
            last = key;
            have_last = true;
        }
    }
    return report;
}

bool verify_witness(const ChainedScenario& s, int exp1, int exp2,
                    const BackwardCausalityWitness& w) {
    const auto& shape1 = experiment_shape(s, exp1);
    const auto& shape2 = experiment_shape(s, exp2);
    const auto f1 = transfer_function_from_text(shape1, w.f1);
    const auto f2 = transfer_function_from_text(shape2, w.f2);
    const int low = run_chain(f1, f2, s.relay, w.fixed_a1_setting, w.b1_setting_low,
                              w.fixed_b2_setting);
    const int high = run_chain(f1, f2, s.relay, w.fixed_a1_setting, w.b1_setting_high,
                               w.fixed_b2_setting);
    return low == w.b2_outcome_low && high == w.b2_outcome_high && low != high;
}

IntervalClass chain_b_interval(const ChainedScenario& s, int exp1, int exp2) {
    if (!s.geometry) throw std::invalid_argument("scenario carries no geometry");
    const int k1 = s.frame_indices.at(static_cast<std::size_t>(exp1));
    const int k2 = s.frame_indices.at(static_cast<std::size_t>(exp2));
    return classify_interval(s.geometry->experiment(k2).b_meas,
                             s.geometry->experiment(k1).b_meas);
}

double estimate_backward_causality(const ChainedScenario& s, int exp1, int exp2,
                                   std::uint64_t samples, std::uint64_t seed) {
    const auto& shape1 = experiment_shape(s, exp1);
    const auto& shape2 = experiment_shape(s, exp2);
    require_two_party(shape1);
    require_two_party(shape2);
    require_relay(s.relay, shape1, shape2);

    const auto pairs = pair_weights(s, exp1, exp2);
    std::vector<double> cumulative;
    std::vector<std::pair<TransferFunction, TransferFunction>> atoms;
    double acc = 0;
    for (const auto& [k1, k2, w] : pairs) {
        if (w == 0) continue;
        acc += w.get_d();
        cumulative.push_back(acc);
        atoms.emplace_back(transfer_function_from_text(shape1, k1),
                           transfer_function_from_text(shape2, k2));
    }
    if (atoms.empty() || samples == 0) return 0.0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, acc);
    const int b1_settings = shape1.party(kPartyB).settings;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), uniform(rng));
        if (it == cumulative.end()) --it;
        const auto& [f1, f2] = atoms[static_cast<std::size_t>(it - cumulative.begin())];
        bool witnessed = false;
        const int reference = run_chain(f1, f2, s.relay, 0, 0, 0);
        for (int v = 1; v < b1_settings && !witnessed; ++v) {
            witnessed = run_chain(f1, f2, s.relay, 0, v, 0) != reference;
        }
        if (witnessed) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

namespace {

/// Default two-setting binary experiment used for constructed witnesses.
const ExperimentShape& escape_shape() {
    static const ExperimentShape shape({{2, 2}, {2, 2}});
    return shape;
}

std::string null_atom_key() {
    return to_canonical_text(
        product_transfer_function(escape_shape(), ProductFactors{{{0, 0}, {0, 0}}}));
}

std::string copier_atom_key() {
    // j_A = i_B and j_B = i_A: signals both ways.
    const auto& shape = escape_shape();
    std::vector<std::uint32_t> table(shape.joint_input_count());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const int ia = shape.input_component(i, kPartyA);
        const int ib = shape.input_component(i, kPartyB);
        table[i] = static_cast<std::uint32_t>(shape.encode_output({ib, ia}));
    }
    return to_canonical_text(TransferFunction(shape, std::move(table)));
}

} // namespace

EscapeVerdict anticorrelation_escape_check(const Rational& p_s, int m,
                                           const std::optional<JointTFDistribution>& joint) {
    if (p_s <= 0 || p_s > 1) {
        throw ParameterOutOfRange("signalling probability must lie in (0, 1], got " +
                                  rational_to_string(p_s));
    }
    if (m < 2) throw ParameterOutOfRange("need at least two experiments");

    EscapeVerdict verdict;
    verdict.union_bound = m * p_s;

    if (joint) {
        if (joint->experiment_count() != m) {
            throw std::invalid_argument("joint distribution covers " +
                                        std::to_string(joint->experiment_count()) +
                                        " experiments, expected " + std::to_string(m));
        }
        if (!joint->is_normalized()) {
            throw std::invalid_argument("joint distribution weights must sum to 1");
        }
        // Audit the marginals, then the pairwise co-occurrence of signalling
        // atoms.
        for (int k = 0; k < m; ++k) {
            Rational marginal = signalling_weight(joint->marginal(k));
            if (marginal != p_s) {
                throw MarginalMismatch("experiment " + std::to_string(k) +
                                       " has signalling probability " +
                                       rational_to_string(marginal) + ", expected " +
                                       rational_to_string(p_s));
            }
        }
        for (int j = 0; j < m; ++j) {
            for (int k = j + 1; k < m; ++k) {
                Rational together = 0;
                for (const auto& [keys, w] : joint->weights()) {
                    const auto& shape = joint->shape();
                    const auto fj = transfer_function_from_text(shape, keys[static_cast<std::size_t>(j)]);
                    const auto fk = transfer_function_from_text(shape, keys[static_cast<std::size_t>(k)]);
                    if (!classify_signalling(fj).is_null() && !classify_signalling(fk).is_null()) {
                        together += w;
                    }
                }
                if (together != 0) verdict.co_signalling.push_back({j, k, together});
            }
        }
        if (verdict.union_bound > 1) {
            verdict.status = EscapeStatus::Impossible;
            if (verdict.co_signalling.empty()) {
                throw std::logic_error("joint audit contradicts the pigeonhole bound");
            }
        } else {
            verdict.status = verdict.co_signalling.empty() ? EscapeStatus::Achieved
                                                           : EscapeStatus::NotAchieved;
        }
        return verdict;
    }

    const auto pigeonhole = pigeonhole_infeasible(p_s, m, {.run_lp = m <= 15});
    if (pigeonhole.infeasible) {
        verdict.status = EscapeStatus::Impossible;
        return verdict;
    }

    // Constructive witness: each experiment's signalling atom on its own
    // disjoint cell of mass p_s.
    JointTFDistribution construction(escape_shape(), m);
    const std::string null_key = null_atom_key();
    const std::string copier_key = copier_atom_key();
    for (int k = 0; k < m; ++k) {
        std::vector<std::string> tuple(static_cast<std::size_t>(m), null_key);
        tuple[static_cast<std::size_t>(k)] = copier_key;
        construction.add(tuple, p_s);
    }
    const Rational rest = Rational(1) - verdict.union_bound;
    if (rest > 0) {
        construction.add(std::vector<std::string>(static_cast<std::size_t>(m), null_key), rest);
    }
    for (int k = 0; k < m; ++k) {
        if (signalling_weight(construction.marginal(k)) != p_s) {
            throw std::logic_error("constructed witness has wrong marginals");
        }
    }
    verdict.status = EscapeStatus::Achieved;
    verdict.construction = std::move(construction);
    return verdict;
}

} // namespace tfkit
