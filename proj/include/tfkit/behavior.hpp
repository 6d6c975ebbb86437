#pragma once

#include "tfkit/rational.hpp"
#include "tfkit/shape.hpp"
#include "tfkit/transfer_function.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tfkit {

/// Conditional probability table Pr(output | input) with exact rational
/// entries.  Every entry is nonnegative and each input row sums to exactly 1.
class Behavior {
public:
    /// table is indexed [input * joint_output_count + output]; validated.
    Behavior(ExperimentShape shape, std::vector<Rational> table);

    const ExperimentShape& shape() const { return shape_; }

    const Rational& at(std::size_t input_index, std::size_t output_index) const {
        return table_[input_index * shape_.joint_output_count() + output_index];
    }
    const Rational& probability(const Components& input, const Components& output) const {
        return at(shape_.encode_input(input), shape_.encode_output(output));
    }

    friend bool operator==(const Behavior& a, const Behavior& b) {
        return a.shape_ == b.shape_ && a.table_ == b.table_;
    }

private:
    ExperimentShape shape_;
    std::vector<Rational> table_;
};

/// Probability distribution over transfer functions with exact rational
/// weights.  Atoms are keyed by canonical text, so two background variables
/// with the same transfer function are one atom.
class TFDistribution {
public:
    explicit TFDistribution(ExperimentShape shape) : shape_(std::move(shape)) {}

    const ExperimentShape& shape() const { return shape_; }

    /// Accumulates weight on an atom.  Weight must be >= 0; zero weights are
    /// dropped.  Throws ShapeMismatch when the function's shape differs.
    void add(const TransferFunction& f, const Rational& weight);
    void add(const std::string& canonical_text, const Rational& weight);

    Rational total_weight() const;
    bool is_normalized() const { return total_weight() == 1; }
    std::size_t atom_count() const { return weights_.size(); }
    const std::map<std::string, Rational>& weights() const { return weights_; }

    /// Visits atoms in canonical key order.
    void for_each_atom(const std::function<void(const TransferFunction&, const Rational&)>& visit) const;

private:
    ExperimentShape shape_;
    std::map<std::string, Rational> weights_;
};

/// Pr(j|i) of a mixture: entry (i, j) is the total weight of atoms mapping
/// i to j.  Requires a normalized distribution.
Behavior behavior_from_distribution(const TFDistribution& d);

/// Behavior-level signalling: signals(x, y) is true when party y's output
/// marginal changes with party x's setting for some fixing of the other
/// settings.  Exact rational comparison throughout.
SignallingClass check_no_signalling(const Behavior& b);

/// Total weight of atoms whose signalling class sends from -> to.
Rational weak_signalling_probability(const TFDistribution& d, int from, int to);

/// Total weight of atoms that signal between any ordered pair.
Rational signalling_weight(const TFDistribution& d);

/// lambda * a + (1 - lambda) * b, exact.
TFDistribution mix(const TFDistribution& a, const TFDistribution& b, const Rational& lambda);

} // namespace tfkit
