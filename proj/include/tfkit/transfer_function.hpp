#pragma once

#include "tfkit/shape.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tfkit {

/// A total map from joint inputs to joint outputs of one experimental run,
/// stored as a dense table over flat input indices in canonical order.
class TransferFunction {
public:
    TransferFunction(ExperimentShape shape, std::vector<std::uint32_t> table);

    const ExperimentShape& shape() const { return shape_; }
    const std::vector<std::uint32_t>& table() const { return table_; }

    std::size_t map_index(std::size_t input_index) const { return table_[input_index]; }
    Components apply(const Components& input) const;

    /// Output component of one party for a flat input index.
    int output_component(std::size_t input_index, int party) const {
        return shape_.output_component(table_[input_index], party);
    }

    friend bool operator==(const TransferFunction& a, const TransferFunction& b) {
        return a.shape_ == b.shape_ && a.table_ == b.table_;
    }
    /// Canonical order: lexicographic on the dense table.
    friend bool operator<(const TransferFunction& a, const TransferFunction& b) {
        return a.table_ < b.table_;
    }

private:
    ExperimentShape shape_;
    std::vector<std::uint32_t> table_;
};

/// Directed cross-party dependence flags: signals(x, y) is true when party
/// y's output component changes under some variation of party x's setting
/// with every other setting held fixed.
class SignallingClass {
public:
    explicit SignallingClass(int parties)
        : parties_(parties), flags_(static_cast<std::size_t>(parties) * parties, false) {}

    int party_count() const { return parties_; }
    bool signals(int from, int to) const {
        return flags_[static_cast<std::size_t>(from) * parties_ + to];
    }
    void set(int from, int to, bool value) {
        flags_[static_cast<std::size_t>(from) * parties_ + to] = value;
    }
    bool is_null() const;

    enum class TwoPartyCase { None, AToB, BToA, Both };
    /// The four cases of the 2-party classification; requires 2 parties.
    TwoPartyCase two_party_case() const;

    friend bool operator==(const SignallingClass&, const SignallingClass&) = default;

private:
    int parties_;
    std::vector<bool> flags_;
};

SignallingClass classify_signalling(const TransferFunction& f);

/// Per-party factor tables of a product-form function: factor[p][s] is party
/// p's outcome at its own setting s.
struct ProductFactors {
    std::vector<std::vector<int>> factor;
};

/// Factors when each party's output component depends only on its own
/// setting; nullopt otherwise.
std::optional<ProductFactors> product_factors(const TransferFunction& f);
bool is_product_form(const TransferFunction& f);

TransferFunction product_transfer_function(const ExperimentShape& shape, const ProductFactors& factors);

/// Product over parties of outcomes^settings (the number of local
/// deterministic strategies).  Throws std::overflow_error beyond uint64.
std::uint64_t count_local_deterministic(const ExperimentShape& shape);

struct EnumerationBudget {
    std::uint64_t max_functions = 10'000'000;
};

/// Exact |J|^|I|; throws BudgetExceeded when it would exceed the budget.
std::uint64_t transfer_function_count(const ExperimentShape& shape,
                                      const EnumerationBudget& budget = {});

/// Visits every total function exactly once, in canonical lexicographic
/// order of tables.  Pure; safe to call concurrently.
void for_each_transfer_function(const ExperimentShape& shape,
                                const std::function<void(const TransferFunction&)>& visit,
                                const EnumerationBudget& budget = {});

std::vector<TransferFunction> enumerate_transfer_functions(const ExperimentShape& shape,
                                                           const EnumerationBudget& budget = {});

/// Product-form functions only, ordered by their per-party factor tables.
void for_each_product_form(const ExperimentShape& shape,
                           const std::function<void(const TransferFunction&)>& visit,
                           const EnumerationBudget& budget = {});

std::vector<TransferFunction> enumerate_product_form(const ExperimentShape& shape,
                                                     const EnumerationBudget& budget = {});

/// Exhaustive classification counts keyed by canonical class text
/// ("null", "0->1", "0->1,1->0", ...).
struct SignallingCensus {
    std::uint64_t total = 0;
    std::vector<std::pair<std::string, std::uint64_t>> by_class;

    std::uint64_t count_of(std::string_view klass) const;
};

SignallingCensus signalling_census(const ExperimentShape& shape,
                                   const EnumerationBudget& budget = {});

std::string signalling_class_text(const SignallingClass& c);

/// Relabelling helpers; perm[old_label] = new_label, a permutation.
TransferFunction relabel_settings(const TransferFunction& f, int party, std::span<const int> perm);
TransferFunction relabel_outcomes(const TransferFunction& f, int party, std::span<const int> perm);

/// Canonical text form.  Product-form functions render as per-party
/// bracketed outcome strings in setting order ("[+-,+-]"; 2-outcome parties
/// use +/- with + for outcome 0); everything else as a dense table listing
/// "00->01;01->11;...".
std::string to_canonical_text(const TransferFunction& f);
TransferFunction transfer_function_from_text(const ExperimentShape& shape, std::string_view text);

} // namespace tfkit
