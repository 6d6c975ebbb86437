#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tfkit {

/// Number of settings (inputs) and outcomes (outputs) of one party.
struct PartyShape {
    int settings = 1;
    int outcomes = 1;

    friend auto operator<=>(const PartyShape&, const PartyShape&) = default;
};

/// Joint input/output component tuples, one entry per party.
using Components = std::vector<int>;

/// The index sets of a multi-party input/output experiment.  Joint inputs and
/// outputs are addressed either as component tuples or as flat indices in
/// canonical lexicographic order (party 0 most significant).
class ExperimentShape {
public:
    explicit ExperimentShape(std::vector<PartyShape> parties);

    int party_count() const { return static_cast<int>(parties_.size()); }
    const PartyShape& party(int p) const { return parties_.at(static_cast<std::size_t>(p)); }
    const std::vector<PartyShape>& parties() const { return parties_; }

    std::size_t joint_input_count() const { return input_count_; }
    std::size_t joint_output_count() const { return output_count_; }

    std::size_t encode_input(std::span<const int> components) const;
    std::size_t encode_output(std::span<const int> components) const;
    std::size_t encode_input(std::initializer_list<int> components) const {
        return encode_input(std::span<const int>(components.begin(), components.size()));
    }
    std::size_t encode_output(std::initializer_list<int> components) const {
        return encode_output(std::span<const int>(components.begin(), components.size()));
    }
    Components decode_input(std::size_t index) const;
    Components decode_output(std::size_t index) const;

    /// Component of a flat output index belonging to one party, without
    /// materializing the full tuple.
    int output_component(std::size_t output_index, int party) const;
    int input_component(std::size_t input_index, int party) const;

    /// Flat input index with one party's component replaced.
    std::size_t with_input_component(std::size_t input_index, int party, int value) const;

    /// Text form "2x2:3x2" = party 0 settings x outcomes : party 1 ...
    static ExperimentShape parse(std::string_view text);
    std::string to_text() const;

    friend bool operator==(const ExperimentShape& a, const ExperimentShape& b) {
        return a.parties_ == b.parties_;
    }

private:
    std::vector<PartyShape> parties_;
    std::vector<std::size_t> input_strides_;
    std::vector<std::size_t> output_strides_;
    std::size_t input_count_ = 1;
    std::size_t output_count_ = 1;
};

} // namespace tfkit
