#pragma once

#include "tfkit/behavior.hpp"
#include "tfkit/rational.hpp"
#include "tfkit/transfer_function.hpp"

#include <random>
#include <vector>

namespace tfkit::testing {

inline Rational random_weight(std::mt19937_64& rng, int max_numerator = 20) {
    std::uniform_int_distribution<int> dist(0, max_numerator);
    return Rational(dist(rng));
}

/// Random normalized distribution over the given atoms (integer weights
/// scaled by their sum).  At least one atom gets positive weight.
inline TFDistribution random_distribution(const ExperimentShape& shape,
                                          const std::vector<TransferFunction>& atoms,
                                          std::mt19937_64& rng) {
    std::vector<Rational> weights(atoms.size());
    Rational total = 0;
    for (auto& w : weights) {
        w = random_weight(rng);
        total += w;
    }
    if (total == 0) {
        weights[0] = 1;
        total = 1;
    }
    TFDistribution d(shape);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (weights[i] != 0) d.add(atoms[i], weights[i] / total);
    }
    return d;
}

inline TFDistribution random_product_distribution(const ExperimentShape& shape,
                                                  std::mt19937_64& rng) {
    return random_distribution(shape, enumerate_product_form(shape), rng);
}

} // namespace tfkit::testing
