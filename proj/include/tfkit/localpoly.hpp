#pragma once

#include "tfkit/behavior.hpp"
#include "tfkit/rational.hpp"
#include "tfkit/shape.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tfkit {

/// A linear functional over (input, output) pairs separating a behavior from
/// the local-deterministic polytope: <coeffs, d> >= threshold for every
/// product-form deterministic behavior d, while the queried behavior scores
/// threshold + violation with violation < 0.  Coefficients are normalized so
/// the largest absolute value is 1.
struct BellCertificate {
    std::vector<Rational> coeffs; // indexed [input * joint_output_count + output]
    Rational threshold;
    Rational violation;

    /// <coeffs, b> over the full table.
    Rational evaluate(const Behavior& b) const;
    /// <coeffs, behavior of f> for a deterministic function.
    Rational evaluate(const TransferFunction& f) const;
};

/// Outcome of the local-polytope membership test.
struct LPVerdict {
    bool feasible = false;
    std::optional<TFDistribution> witness;      // product-form atoms reproducing b
    std::optional<BellCertificate> certificate; // separating functional
};

struct LocalPolyOptions {
    /// Cap on the number of product-form atoms (LP columns).
    std::uint64_t max_atoms = 10'000;
};

/// Decides membership of b in the convex hull of product-form deterministic
/// behaviors by exact phase-1 simplex.  Witnesses and certificates are
/// verified exactly before being returned.
LPVerdict local_membership(const Behavior& b, const LocalPolyOptions& options = {});

/// The 2- or 3-setting two-outcome scenario with perfect same-sign
/// correlation at equal settings (angles at the two sites measured from
/// opposite zeros).
struct SymmetricSingletScenario {
    int n_settings = 3;                  // 2 or 3
    bool reversed_zero_convention = true;
};

ExperimentShape symmetric_scenario_shape(const SymmetricSingletScenario& scenario);

/// Strategy-distribution parameters solved from a symmetric behavior:
/// (P1, P2) for 2 settings, (P0, P1, P2, P3) for 3.  Quantum behaviors can
/// drive the 3-setting P1..P3 negative; those indices are flagged.
struct SymmetricProbabilities {
    std::vector<Rational> p;
    std::vector<int> negative_indices;
    bool bell_violation() const { return !negative_indices.empty(); }
};

/// Solves the symmetric closed forms.  Throws SymmetryViolated (naming the
/// offending entry) when b lacks the scenario's symmetry, ShapeMismatch when
/// the shape is not the scenario's.
SymmetricProbabilities derive_symmetric_probabilities(const SymmetricSingletScenario& scenario,
                                                      const Behavior& b);

/// Value of the cyclic Bell functional
///   Pr(+-/31) + Pr(+-/12) - Pr(+-/23)        (cyclic_index 1)
/// with settings permuted cyclically for indices 2 and 3; negative values
/// certify a Bell violation.  Requires the 3-setting 2-outcome shape.
Rational bell_expression(const Behavior& b, int cyclic_index);

/// Product expectation in Bell's sign convention: 4 Pr(+-/ia ib) - 1.
/// Requires two 2-outcome parties.
Rational expectation_from_behavior(const Behavior& b, int ia, int ib);

} // namespace tfkit
