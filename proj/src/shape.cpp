#include "tfkit/shape.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace tfkit {

namespace {

std::size_t checked_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
        throw std::overflow_error("experiment shape too large");
    }
    return a * b;
}

int parse_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed shape component: '" + std::string(s) + "'");
    }
    return value;
}

} // namespace

ExperimentShape::ExperimentShape(std::vector<PartyShape> parties) : parties_(std::move(parties)) {
    if (parties_.empty()) {
        throw std::invalid_argument("experiment shape needs at least one party");
    }
    for (const auto& p : parties_) {
        if (p.settings < 1 || p.outcomes < 1) {
            throw std::invalid_argument("party sizes must be positive");
        }
    }
    const auto n = parties_.size();
    input_strides_.assign(n, 1);
    output_strides_.assign(n, 1);
    for (std::size_t p = n; p-- > 0;) {
        if (p + 1 < n) {
            input_strides_[p] = checked_mul(input_strides_[p + 1],
                                            static_cast<std::size_t>(parties_[p + 1].settings));
            output_strides_[p] = checked_mul(output_strides_[p + 1],
                                             static_cast<std::size_t>(parties_[p + 1].outcomes));
        }
    }
    input_count_ = checked_mul(input_strides_[0], static_cast<std::size_t>(parties_[0].settings));
    output_count_ = checked_mul(output_strides_[0], static_cast<std::size_t>(parties_[0].outcomes));
}

std::size_t ExperimentShape::encode_input(std::span<const int> components) const {
    if (components.size() != parties_.size()) {
        throw std::invalid_argument("joint input arity mismatch");
    }
    std::size_t index = 0;
    for (std::size_t p = 0; p < parties_.size(); ++p) {
        if (components[p] < 0 || components[p] >= parties_[p].settings) {
            throw std::out_of_range("joint input component out of range");
        }
        index += static_cast<std::size_t>(components[p]) * input_strides_[p];
    }
    return index;
}

std::size_t ExperimentShape::encode_output(std::span<const int> components) const {
    if (components.size() != parties_.size()) {
        throw std::invalid_argument("joint output arity mismatch");
    }
    std::size_t index = 0;
    for (std::size_t p = 0; p < parties_.size(); ++p) {
        if (components[p] < 0 || components[p] >= parties_[p].outcomes) {
            throw std::out_of_range("joint output component out of range");
        }
        index += static_cast<std::size_t>(components[p]) * output_strides_[p];
    }
    return index;
}

Components ExperimentShape::decode_input(std::size_t index) const {
    Components c(parties_.size());
    for (std::size_t p = 0; p < parties_.size(); ++p) {
        c[p] = static_cast<int>(index / input_strides_[p]);
        index %= input_strides_[p];
    }
    return c;
}

Components ExperimentShape::decode_output(std::size_t index) const {
    Components c(parties_.size());
    for (std::size_t p = 0; p < parties_.size(); ++p) {
        c[p] = static_cast<int>(index / output_strides_[p]);
        index %= output_strides_[p];
    }
    return c;
}

int ExperimentShape::output_component(std::size_t output_index, int party) const {
    const auto p = static_cast<std::size_t>(party);
    return static_cast<int>((output_index / output_strides_.at(p)) %
                            static_cast<std::size_t>(parties_[p].outcomes));
}

int ExperimentShape::input_component(std::size_t input_index, int party) const {
    const auto p = static_cast<std::size_t>(party);
    return static_cast<int>((input_index / input_strides_.at(p)) %
                            static_cast<std::size_t>(parties_[p].settings));
}

std::size_t ExperimentShape::with_input_component(std::size_t input_index, int party, int value) const {
    const auto p = static_cast<std::size_t>(party);
    if (value < 0 || value >= parties_.at(p).settings) {
        throw std::out_of_range("setting index out of range");
    }
    const int old = input_component(input_index, party);
    return input_index + (static_cast<std::size_t>(value) - static_cast<std::size_t>(old)) * input_strides_[p];
}

ExperimentShape ExperimentShape::parse(std::string_view text) {
    std::vector<PartyShape> parties;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(':', start);
        if (end == std::string_view::npos) end = text.size();
        auto token = text.substr(start, end - start);
        auto x = token.find('x');
        if (x == std::string_view::npos) {
            throw std::invalid_argument("malformed shape: '" + std::string(text) + "'");
        }
        int settings = parse_int(token.substr(0, x));
        int outcomes = parse_int(token.substr(x + 1));
        parties.push_back({settings, outcomes});
        if (end == text.size()) break;
        start = end + 1;
    }
    return ExperimentShape(std::move(parties));
}

std::string ExperimentShape::to_text() const {
    std::string out;
    for (std::size_t p = 0; p < parties_.size(); ++p) {
        if (p) out += ':';
        out += std::to_string(parties_[p].settings);
        out += 'x';
        out += std::to_string(parties_[p].outcomes);
    }
    return out;
}

} // namespace tfkit
