#include "tfkit/transfer_function.hpp"

#include "tfkit/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace tfkit {

TransferFunction::TransferFunction(ExperimentShape shape, std::vector<std::uint32_t> table)
    : shape_(std::move(shape)), table_(std::move(table)) {
    if (table_.size() != shape_.joint_input_count()) {
        throw std::invalid_argument("transfer function table length mismatch");
    }
    if (shape_.joint_output_count() > std::numeric_limits<std::uint32_t>::max()) {
        throw std::overflow_error("joint output space too large for dense table");
    }
    for (auto entry : table_) {
        if (entry >= shape_.joint_output_count()) {
            throw std::out_of_range("transfer function table entry out of range");
        }
    }
}

Components TransferFunction::apply(const Components& input) const {
    return shape_.decode_output(table_[shape_.encode_input(input)]);
}

bool SignallingClass::is_null() const {
    return std::none_of(flags_.begin(), flags_.end(), [](bool b) { return b; });
}

SignallingClass::TwoPartyCase SignallingClass::two_party_case() const {
    if (parties_ != 2) {
        throw std::logic_error("two_party_case requires a 2-party class");
    }
    const bool ab = signals(0, 1), ba = signals(1, 0);
    if (ab && ba) return TwoPartyCase::Both;
    if (ab) return TwoPartyCase::AToB;
    if (ba) return TwoPartyCase::BToA;
    return TwoPartyCase::None;
}

SignallingClass classify_signalling(const TransferFunction& f) {
    const auto& shape = f.shape();
    const int n = shape.party_count();
    SignallingClass result(n);
    for (int from = 0; from < n; ++from) {
        const int settings = shape.party(from).settings;
        if (settings < 2) continue;
        for (int to = 0; to < n; ++to) {
            if (to == from) continue;
            bool found = false;
            for (std::size_t i = 0; i < shape.joint_input_count() && !found; ++i) {
                const int base = shape.input_component(i, from);
                if (base != 0) continue; // each context visited once, at from-setting 0
                const int ref = f.output_component(i, to);
                for (int v = 1; v < settings; ++v) {
                    const std::size_t alt = shape.with_input_component(i, from, v);
                    if (f.output_component(alt, to) != ref) {
                        found = true;
                        break;
                    }
                }
            }
            result.set(from, to, found);
        }
    }
    return result;
}

std::optional<ProductFactors> product_factors(const TransferFunction& f) {
    const auto& shape = f.shape();
    const int n = shape.party_count();
    ProductFactors factors;
    factors.factor.resize(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        factors.factor[static_cast<std::size_t>(p)].assign(
            static_cast<std::size_t>(shape.party(p).settings), -1);
    }
    for (std::size_t i = 0; i < shape.joint_input_count(); ++i) {
        for (int p = 0; p < n; ++p) {
            const int s = shape.input_component(i, p);
            const int out = f.output_component(i, p);
            int& slot = factors.factor[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)];
            if (slot == -1) {
                slot = out;
            } else if (slot != out) {
                return std::nullopt;
            }
        }
    }
    return factors;
}

bool is_product_form(const TransferFunction& f) {
    return product_factors(f).has_value();
}

TransferFunction product_transfer_function(const ExperimentShape& shape, const ProductFactors& factors) {
    const int n = shape.party_count();
    if (factors.factor.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("factor count must match party count");
    }
    std::vector<std::uint32_t> table(shape.joint_input_count());
    Components out(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (int p = 0; p < n; ++p) {
            const int s = shape.input_component(i, p);
            out[static_cast<std::size_t>(p)] =
                factors.factor[static_cast<std::size_t>(p)].at(static_cast<std::size_t>(s));
        }
        table[i] = static_cast<std::uint32_t>(shape.encode_output(out));
    }
    return TransferFunction(shape, std::move(table));
}

std::uint64_t count_local_deterministic(const ExperimentShape& shape) {
    std::uint64_t count = 1;
    for (const auto& party : shape.parties()) {
        for (int s = 0; s < party.settings; ++s) {
            const auto base = static_cast<std::uint64_t>(party.outcomes);
            if (count > std::numeric_limits<std::uint64_t>::max() / base) {
                throw std::overflow_error("local deterministic count exceeds uint64");
            }
            count *= base;
        }
    }
    return count;
}

std::uint64_t transfer_function_count(const ExperimentShape& shape, const EnumerationBudget& budget) {
    const std::uint64_t base = shape.joint_output_count();
    std::uint64_t count = 1;
    if (base == 1) return count;
    for (std::size_t i = 0; i < shape.joint_input_count(); ++i) {
        if (base != 0 && count > budget.max_functions / base) {
            throw BudgetExceeded("transfer function count exceeds budget of " +
                                 std::to_string(budget.max_functions));
        }
        count *= base;
    }
    if (count > budget.max_functions) {
        throw BudgetExceeded("transfer function count exceeds budget of " +
                             std::to_string(budget.max_functions));
    }
    return count;
}

void for_each_transfer_function(const ExperimentShape& shape,
                                const std::function<void(const TransferFunction&)>& visit,
                                const EnumerationBudget& budget) {
    transfer_function_count(shape, budget);
    const std::size_t inputs = shape.joint_input_count();
    const std::uint32_t outputs = static_cast<std::uint32_t>(shape.joint_output_count());
    std::vector<std::uint32_t> table(inputs, 0);
    // Odometer with the last input slot fastest: tables come out in
    // lexicographic order.
    for (;;) {
        visit(TransferFunction(shape, table));
        std::size_t pos = inputs;
        while (pos > 0) {
            --pos;
            if (++table[pos] < outputs) break;
            table[pos] = 0;
            if (pos == 0) return;
        }
        if (inputs == 0) return;
    }
}

std::vector<TransferFunction> enumerate_transfer_functions(const ExperimentShape& shape,
                                                           const EnumerationBudget& budget) {
    std::vector<TransferFunction> all;
    all.reserve(static_cast<std::size_t>(transfer_function_count(shape, budget)));
    for_each_transfer_function(shape, [&](const TransferFunction& f) { all.push_back(f); }, budget);
    return all;
}

void for_each_product_form(const ExperimentShape& shape,
                           const std::function<void(const TransferFunction&)>& visit,
                           const EnumerationBudget& budget) {
    const std::uint64_t count = count_local_deterministic(shape);
    if (count > budget.max_functions) {
        throw BudgetExceeded("local deterministic count " + std::to_string(count) +
                             " exceeds budget of " + std::to_string(budget.max_functions));
    }
    ProductFactors factors;
    factors.factor.reserve(static_cast<std::size_t>(shape.party_count()));
    std::vector<int> sizes; // outcome alphabet per factor slot, flattened
    for (const auto& party : shape.parties()) {
        factors.factor.emplace_back(static_cast<std::size_t>(party.settings), 0);
        sizes.insert(sizes.end(), static_cast<std::size_t>(party.settings), party.outcomes);
    }
    std::vector<int*> slots;
    for (auto& f : factors.factor) {
        for (auto& v : f) slots.push_back(&v);
    }
    for (;;) {
        visit(product_transfer_function(shape, factors));
        std::size_t pos = slots.size();
        while (pos > 0) {
            --pos;
            if (++*slots[pos] < sizes[pos]) break;
            *slots[pos] = 0;
            if (pos == 0) return;
        }
        if (slots.empty()) return;
    }
}

std::vector<TransferFunction> enumerate_product_form(const ExperimentShape& shape,
                                                     const EnumerationBudget& budget) {
    std::vector<TransferFunction> all;
    all.reserve(static_cast<std::size_t>(count_local_deterministic(shape)));
    for_each_product_form(shape, [&](const TransferFunction& f) { all.push_back(f); }, budget);
    return all;
}

std::string signalling_class_text(const SignallingClass& c) {
    if (c.is_null()) return "null";
    std::string out;
    for (int from = 0; from < c.party_count(); ++from) {
        for (int to = 0; to < c.party_count(); ++to) {
            if (from == to || !c.signals(from, to)) continue;
            if (!out.empty()) out += ',';
            out += std::to_string(from);
            out += "->";
            out += std::to_string(to);
        }
    }
    return out;
}

SignallingCensus signalling_census(const ExperimentShape& shape, const EnumerationBudget& budget) {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
    for_each_transfer_function(shape, [&](const TransferFunction& f) {
        ++counts[signalling_class_text(classify_signalling(f))];
        ++total;
    }, budget);
    SignallingCensus census;
    census.total = total;
    census.by_class.assign(counts.begin(), counts.end());
    return census;
}

std::uint64_t SignallingCensus::count_of(std::string_view klass) const {
    for (const auto& [name, count] : by_class) {
        if (name == klass) return count;
    }
    return 0;
}

namespace {

std::vector<int> inverse_permutation(std::span<const int> perm, int size) {
    if (perm.size() != static_cast<std::size_t>(size)) {
        throw std::invalid_argument("permutation size mismatch");
    }
    std::vector<int> inverse(perm.size(), -1);
    for (int old = 0; old < size; ++old) {
        const int now = perm[static_cast<std::size_t>(old)];
        if (now < 0 || now >= size || inverse[static_cast<std::size_t>(now)] != -1) {
            throw std::invalid_argument("not a permutation");
        }
        inverse[static_cast<std::size_t>(now)] = old;
    }
    return inverse;
}

} // namespace

TransferFunction relabel_settings(const TransferFunction& f, int party, std::span<const int> perm) {
    const auto& shape = f.shape();
    const auto inverse = inverse_permutation(perm, shape.party(party).settings);
    std::vector<std::uint32_t> table(shape.joint_input_count());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const int new_label = shape.input_component(i, party);
        const std::size_t old_index =
            shape.with_input_component(i, party, inverse[static_cast<std::size_t>(new_label)]);
        table[i] = static_cast<std::uint32_t>(f.map_index(old_index));
    }
    return TransferFunction(shape, std::move(table));
}

TransferFunction relabel_outcomes(const TransferFunction& f, int party, std::span<const int> perm) {
    const auto& shape = f.shape();
    if (perm.size() != static_cast<std::size_t>(shape.party(party).outcomes)) {
        throw std::invalid_argument("permutation size mismatch");
    }
    inverse_permutation(perm, shape.party(party).outcomes); // validity check
    std::vector<std::uint32_t> table(shape.joint_input_count());
    for (std::size_t i = 0; i < table.size(); ++i) {
        Components out = shape.decode_output(f.map_index(i));
        auto& component = out[static_cast<std::size_t>(party)];
        component = perm[static_cast<std::size_t>(component)];
        table[i] = static_cast<std::uint32_t>(shape.encode_output(out));
    }
    return TransferFunction(shape, std::move(table));
}

namespace {

constexpr std::string_view kSignAlphabet = "+-";

std::string render_outcome_string(const std::vector<int>& outcomes, int alphabet) {
    std::string out;
    bool first = true;
    for (int o : outcomes) {
        if (alphabet == 2) {
            out += kSignAlphabet[static_cast<std::size_t>(o)];
        } else if (alphabet <= 10) {
            out += static_cast<char>('0' + o);
        } else {
            if (!first) out += '.';
            out += std::to_string(o);
        }
        first = false;
    }
    return out;
}

std::string render_components(const Components& c, const std::vector<int>& alphabets) {
    bool all_small = std::all_of(alphabets.begin(), alphabets.end(), [](int a) { return a <= 10; });
    std::string out;
    for (std::size_t p = 0; p < c.size(); ++p) {
        if (all_small) {
            out += static_cast<char>('0' + c[p]);
        } else {
            if (p) out += '.';
            out += std::to_string(c[p]);
        }
    }
    return out;
}

std::vector<int> parse_components(std::string_view text, const std::vector<int>& alphabets) {
    std::vector<int> c;
    bool all_small = std::all_of(alphabets.begin(), alphabets.end(), [](int a) { return a <= 10; });
    if (all_small) {
        for (char ch : text) {
            if (ch < '0' || ch > '9') {
                throw std::invalid_argument("malformed component tuple: '" + std::string(text) + "'");
            }
            c.push_back(ch - '0');
        }
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('.', start);
            if (end == std::string_view::npos) end = text.size();
            c.push_back(std::stoi(std::string(text.substr(start, end - start))));
            if (end == text.size()) break;
            start = end + 1;
        }
    }
    if (c.size() != alphabets.size()) {
        throw std::invalid_argument("component tuple arity mismatch: '" + std::string(text) + "'");
    }
    return c;
}

std::vector<int> parse_outcome_string(std::string_view text, int settings, int alphabet) {
    std::vector<int> outcomes;
    if (alphabet == 2) {
        for (char ch : text) {
            auto pos = kSignAlphabet.find(ch);
            if (pos == std::string_view::npos) {
                throw std::invalid_argument("malformed sign string: '" + std::string(text) + "'");
            }
            outcomes.push_back(static_cast<int>(pos));
        }
    } else if (alphabet <= 10) {
        for (char ch : text) {
            if (ch < '0' || ch > '9' || ch - '0' >= alphabet) {
                throw std::invalid_argument("malformed outcome string: '" + std::string(text) + "'");
            }
            outcomes.push_back(ch - '0');
        }
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('.', start);
            if (end == std::string_view::npos) end = text.size();
            outcomes.push_back(std::stoi(std::string(text.substr(start, end - start))));
            if (end == text.size()) break;
            start = end + 1;
        }
    }
    if (outcomes.size() != static_cast<std::size_t>(settings)) {
        throw std::invalid_argument("outcome string length must equal setting count: '" +
                                    std::string(text) + "'");
    }
    return outcomes;
}

} // namespace

std::string to_canonical_text(const TransferFunction& f) {
    const auto& shape = f.shape();
    if (auto factors = product_factors(f)) {
        std::string out = "[";
        for (int p = 0; p < shape.party_count(); ++p) {
            if (p) out += ',';
            out += render_outcome_string(factors->factor[static_cast<std::size_t>(p)],
                                         shape.party(p).outcomes);
        }
        out += ']';
        return out;
    }
    std::vector<int> in_alphabets, out_alphabets;
    for (const auto& party : shape.parties()) {
        in_alphabets.push_back(party.settings);
        out_alphabets.push_back(party.outcomes);
    }
    std::string out;
    for (std::size_t i = 0; i < shape.joint_input_count(); ++i) {
        if (i) out += ';';
        out += render_components(shape.decode_input(i), in_alphabets);
        out += "->";
        out += render_components(shape.decode_output(f.map_index(i)), out_alphabets);
    }
    return out;
}

TransferFunction transfer_function_from_text(const ExperimentShape& shape, std::string_view text) {
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') {
            throw std::invalid_argument("unterminated factor list: '" + std::string(text) + "'");
        }
        auto body = text.substr(1, text.size() - 2);
        ProductFactors factors;
        std::size_t start = 0;
        int party = 0;
        while (start <= body.size()) {
            auto end = body.find(',', start);
            if (end == std::string_view::npos) end = body.size();
            if (party >= shape.party_count()) {
                throw std::invalid_argument("too many factors: '" + std::string(text) + "'");
            }
            factors.factor.push_back(parse_outcome_string(body.substr(start, end - start),
                                                          shape.party(party).settings,
                                                          shape.party(party).outcomes));
            ++party;
            if (end == body.size()) break;
            start = end + 1;
        }
        if (party != shape.party_count()) {
            throw std::invalid_argument("factor count mismatch: '" + std::string(text) + "'");
        }
        return product_transfer_function(shape, factors);
    }

    std::vector<int> in_alphabets, out_alphabets;
    for (const auto& party : shape.parties()) {
        in_alphabets.push_back(party.settings);
        out_alphabets.push_back(party.outcomes);
    }
    std::vector<std::uint32_t> table(shape.joint_input_count(),
                                     std::numeric_limits<std::uint32_t>::max());
    std::size_t start = 0;
    std::size_t seen = 0;
    while (start <= text.size()) {
        auto end = text.find(';', start);
        if (end == std::string_view::npos) end = text.size();
        auto entry = text.substr(start, end - start);
        auto arrow = entry.find("->");
        if (arrow == std::string_view::npos) {
            throw std::invalid_argument("malformed table entry: '" + std::string(entry) + "'");
        }
        auto in = parse_components(entry.substr(0, arrow), in_alphabets);
        auto out = parse_components(entry.substr(arrow + 2), out_alphabets);
        const std::size_t index = shape.encode_input(in);
        if (table[index] != std::numeric_limits<std::uint32_t>::max()) {
            throw std::invalid_argument("duplicate table entry: '" + std::string(entry) + "'");
        }
        table[index] = static_cast<std::uint32_t>(shape.encode_output(out));
        ++seen;
        if (end == text.size()) break;
        start = end + 1;
    }
    if (seen != shape.joint_input_count()) {
        throw std::invalid_argument("table listing must cover every joint input");
    }
    return TransferFunction(shape, std::move(table));
}

} // namespace tfkit
