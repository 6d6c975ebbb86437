#include "tfkit/behavior.hpp"

#include "tfkit/errors.hpp"

#include <stdexcept>

namespace tfkit {

Behavior::Behavior(ExperimentShape shape, std::vector<Rational> table)
    : shape_(std::move(shape)), table_(std::move(table)) {
    const std::size_t inputs = shape_.joint_input_count();
    const std::size_t outputs = shape_.joint_output_count();
    if (table_.size() != inputs * outputs) {
        throw std::invalid_argument("behavior table size mismatch");
    }
    for (std::size_t i = 0; i < inputs; ++i) {
        Rational row_sum = 0;
        for (std::size_t j = 0; j < outputs; ++j) {
            const Rational& p = table_[i * outputs + j];
            if (p < 0) {
                throw std::invalid_argument("behavior entries must be nonnegative");
            }
            row_sum += p;
        }
        if (row_sum != 1) {
            throw std::invalid_argument("behavior row for input " + std::to_string(i) +
                                        " sums to " + rational_to_string(row_sum) + ", not 1");
        }
    }
}

void TFDistribution::add(const TransferFunction& f, const Rational& weight) {
    if (!(f.shape() == shape_)) {
        throw ShapeMismatch("atom shape " + f.shape().to_text() +
                            " differs from distribution shape " + shape_.to_text());
    }
    if (weight < 0) {
        throw std::invalid_argument("atom weight must be nonnegative");
    }
    if (weight == 0) return;
    weights_[to_canonical_text(f)] += weight;
}

void TFDistribution::add(const std::string& canonical_text, const Rational& weight) {
    add(transfer_function_from_text(shape_, canonical_text), weight);
}

Rational TFDistribution::total_weight() const {
    Rational sum = 0;
    for (const auto& [key, w] : weights_) sum += w;
    return sum;
}

void TFDistribution::for_each_atom(
    const std::function<void(const TransferFunction&, const Rational&)>& visit) const {
    for (const auto& [key, w] : weights_) {
        visit(transfer_function_from_text(shape_, key), w);
    }
}

Behavior behavior_from_distribution(const TFDistribution& d) {
    if (!d.is_normalized()) {
        throw std::invalid_argument("distribution weights must sum to exactly 1, got " +
                                    rational_to_string(d.total_weight()));
    }
    const auto& shape = d.shape();
    const std::size_t inputs = shape.joint_input_count();
    const std::size_t outputs = shape.joint_output_count();
    std::vector<Rational> table(inputs * outputs, Rational(0));
    d.for_each_atom([&](const TransferFunction& f, const Rational& w) {
        for (std::size_t i = 0; i < inputs; ++i) {
            table[i * outputs + f.map_index(i)] += w;
        }
    });
    return Behavior(shape, std::move(table));
}

SignallingClass check_no_signalling(const Behavior& b) {
    const auto& shape = b.shape();
    const int n = shape.party_count();
    const std::size_t outputs = shape.joint_output_count();
    SignallingClass result(n);
    for (int from = 0; from < n; ++from) {
        const int settings = shape.party(from).settings;
        if (settings < 2) continue;
        for (int to = 0; to < n; ++to) {
            if (to == from) continue;
            const int to_outcomes = shape.party(to).outcomes;
            bool found = false;
            for (std::size_t i = 0; i < shape.joint_input_count() && !found; ++i) {
                if (shape.input_component(i, from) != 0) continue;
                // marginal of party `to` at this context, per from-setting
                std::vector<Rational> reference(static_cast<std::size_t>(to_outcomes), Rational(0));
                for (std::size_t j = 0; j < outputs; ++j) {
                    reference[static_cast<std::size_t>(shape.output_component(j, to))] += b.at(i, j);
                }
                for (int v = 1; v < settings && !found; ++v) {
                    const std::size_t alt = shape.with_input_component(i, from, v);
                    std::vector<Rational> marginal(static_cast<std::size_t>(to_outcomes), Rational(0));
                    for (std::size_t j = 0; j < outputs; ++j) {
                        marginal[static_cast<std::size_t>(shape.output_component(j, to))] += b.at(alt, j);
                    }
                    if (marginal != reference) found = true;
                }
            }
            result.set(from, to, found);
        }
    }
    return result;
}

Rational weak_signalling_probability(const TFDistribution& d, int from, int to) {
    Rational sum = 0;
    d.for_each_atom([&](const TransferFunction& f, const Rational& w) {
        if (classify_signalling(f).signals(from, to)) sum += w;
    });
    return sum;
}

Rational signalling_weight(const TFDistribution& d) {
    Rational sum = 0;
    d.for_each_atom([&](const TransferFunction& f, const Rational& w) {
        if (!classify_signalling(f).is_null()) sum += w;
    });
    return sum;
}

TFDistribution mix(const TFDistribution& a, const TFDistribution& b, const Rational& lambda) {
    if (!(a.shape() == b.shape())) {
        throw ShapeMismatch("cannot mix distributions over different shapes");
    }
    if (lambda < 0 || lambda > 1) {
        throw std::invalid_argument("mixing coefficient must lie in [0, 1]");
    }
    TFDistribution out(a.shape());
    for (const auto& [key, w] : a.weights()) out.add(key, lambda * w);
    const Rational complement = Rational(1) - lambda;
    for (const auto& [key, w] : b.weights()) out.add(key, complement * w);
    return out;
}

} // namespace tfkit
