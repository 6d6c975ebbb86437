#include "tfkit/localpoly.hpp"

#include "tfkit/errors.hpp"
#include "tfkit/simplex.hpp"

#include <stdexcept>
#include <string>

namespace tfkit {

Rational BellCertificate::evaluate(const Behavior& b) const {
    const std::size_t outputs = b.shape().joint_output_count();
    const std::size_t inputs = b.shape().joint_input_count();
    if (coeffs.size() != inputs * outputs) {
        throw ShapeMismatch("certificate length does not match behavior table");
    }
    Rational value = 0;
    for (std::size_t i = 0; i < inputs; ++i) {
        for (std::size_t j = 0; j < outputs; ++j) {
            const Rational& c = coeffs[i * outputs + j];
            if (c != 0) value += c * b.at(i, j);
        }
    }
    return value;
}

Rational BellCertificate::evaluate(const TransferFunction& f) const {
    const std::size_t outputs = f.shape().joint_output_count();
    const std::size_t inputs = f.shape().joint_input_count();
    if (coeffs.size() != inputs * outputs) {
        throw ShapeMismatch("certificate length does not match function shape");
    }
    Rational value = 0;
    for (std::size_t i = 0; i < inputs; ++i) {
        value += coeffs[i * outputs + f.map_index(i)];
    }
    return value;
}

LPVerdict local_membership(const Behavior& b, const LocalPolyOptions& options) {
    const auto& shape = b.shape();
    const std::uint64_t atom_count = count_local_deterministic(shape);
    if (atom_count > options.max_atoms) {
        throw BudgetExceeded("local deterministic count " + std::to_string(atom_count) +
                             " exceeds LP budget of " + std::to_string(options.max_atoms));
    }
    const auto atoms = enumerate_product_form(shape, {options.max_atoms});
    const std::size_t inputs = shape.joint_input_count();
    const std::size_t outputs = shape.joint_output_count();

    // One equality row per (input, output) cell, plus total weight 1.
    lp::Problem problem;
    problem.num_vars = atoms.size();
    problem.rows.resize(inputs * outputs + 1);
    for (std::size_t i = 0; i < inputs; ++i) {
        for (std::size_t j = 0; j < outputs; ++j) {
            problem.rows[i * outputs + j].rhs = b.at(i, j);
        }
    }
    auto& normalization = problem.rows[inputs * outputs];
    normalization.rhs = 1;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
        for (std::size_t i = 0; i < inputs; ++i) {
            problem.rows[i * outputs + atoms[a].map_index(i)].coeffs.emplace_back(a, Rational(1));
        }
        normalization.coeffs.emplace_back(a, Rational(1));
    }

    auto outcome = lp::solve_equality_feasibility(problem);

    LPVerdict verdict;
    if (auto* feasible = std::get_if<lp::Feasible>(&outcome)) {
        verdict.feasible = true;
        TFDistribution witness(shape);
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            if (feasible->x[a] != 0) witness.add(atoms[a], feasible->x[a]);
        }
        if (!(behavior_from_distribution(witness) == b)) {
            throw std::logic_error("feasible witness fails to reproduce the behavior");
        }
        verdict.witness = std::move(witness);
        return verdict;
    }

    const auto& y = std::get<lp::Infeasible>(outcome).farkas;
    BellCertificate certificate;
    certificate.coeffs.resize(inputs * outputs);
    Rational max_abs = 0;
    for (std::size_t cell = 0; cell < inputs * outputs; ++cell) {
        certificate.coeffs[cell] = -y[cell];
        Rational a = abs(certificate.coeffs[cell]);
        if (a > max_abs) max_abs = a;
    }
    if (max_abs == 0) {
        throw std::logic_error("Farkas certificate has no behavior component");
    }
    certificate.threshold = y[inputs * outputs] / max_abs;
    for (auto& c : certificate.coeffs) c /= max_abs;
    certificate.violation = certificate.evaluate(b) - certificate.threshold;

    if (certificate.violation >= 0) {
        throw std::logic_error("certificate fails to separate the behavior");
    }
    for (const auto& atom : atoms) {
        if (certificate.evaluate(atom) < certificate.threshold) {
            throw std::logic_error("certificate cuts off a local deterministic point");
        }
    }
    verdict.feasible = false;
    verdict.certificate = std::move(certificate);
    return verdict;
}

ExperimentShape symmetric_scenario_shape(const SymmetricSingletScenario& scenario) {
    if (scenario.n_settings != 2 && scenario.n_settings != 3) {
        throw ParameterOutOfRange("symmetric scenario requires 2 or 3 settings");
    }
    return ExperimentShape({{scenario.n_settings, 2}, {scenario.n_settings, 2}});
}

namespace {

std::string entry_label(int ja, int jb, int ia, int ib) {
    auto sign = [](int j) { return j == 0 ? '+' : '-'; };
    std::string s = "Pr(";
    s += sign(ja);
    s += sign(jb);
    s += '/';
    s += std::to_string(ia + 1);
    s += std::to_string(ib + 1);
    s += ')';
    return s;
}

/// Entry accessor with 1-based setting labels, matching the Pr(+-/23) style
/// used in emitted diagnostics.
const Rational& entry(const Behavior& b, int ja, int jb, int ia, int ib) {
    return b.probability({ia - 1, ib - 1}, {ja, jb});
}

void require_scenario_symmetry(const Behavior& b, int n_settings) {
    const Rational half(1, 2);
    for (int k = 1; k <= n_settings; ++k) {
        if (entry(b, 0, 1, k, k) != 0) {
            throw SymmetryViolated(entry_label(0, 1, k - 1, k - 1) + " must be 0, got " +
                                   rational_to_string(entry(b, 0, 1, k, k)));
        }
        if (entry(b, 1, 0, k, k) != 0) {
            throw SymmetryViolated(entry_label(1, 0, k - 1, k - 1) + " must be 0, got " +
                                   rational_to_string(entry(b, 1, 0, k, k)));
        }
        if (entry(b, 0, 0, k, k) != half) {
            throw SymmetryViolated(entry_label(0, 0, k - 1, k - 1) + " must be 1/2, got " +
                                   rational_to_string(entry(b, 0, 0, k, k)));
        }
    }
    for (int ia = 1; ia <= n_settings; ++ia) {
        for (int ib = 1; ib <= n_settings; ++ib) {
            if (entry(b, 0, 0, ia, ib) != entry(b, 1, 1, ia, ib)) {
                throw SymmetryViolated("sign reversal broken at " + entry_label(0, 0, ia - 1, ib - 1));
            }
            if (entry(b, 0, 1, ia, ib) != entry(b, 1, 0, ia, ib)) {
                throw SymmetryViolated("sign reversal broken at " + entry_label(0, 1, ia - 1, ib - 1));
            }
            if (entry(b, 0, 1, ia, ib) != entry(b, 0, 1, ib, ia)) {
                throw SymmetryViolated("site exchange broken at " + entry_label(0, 1, ia - 1, ib - 1));
            }
        }
    }
}

} // namespace

SymmetricProbabilities derive_symmetric_probabilities(const SymmetricSingletScenario& scenario,
                                                      const Behavior& b) {
    const auto expected_shape = symmetric_scenario_shape(scenario);
    if (!(b.shape() == expected_shape)) {
        throw ShapeMismatch("behavior shape " + b.shape().to_text() + " is not the " +
                            std::to_string(scenario.n_settings) + "-setting scenario shape " +
                            expected_shape.to_text());
    }
    require_scenario_symmetry(b, scenario.n_settings);

    SymmetricProbabilities out;
    if (scenario.n_settings == 2) {
        out.p = {entry(b, 0, 0, 1, 2), entry(b, 0, 1, 1, 2)};
    } else {
        const Rational half(1, 2);
        Rational p0 = (entry(b, 0, 0, 2, 3) + entry(b, 0, 0, 3, 1) + entry(b, 0, 0, 1, 2) - half) / 2;
        out.p = {p0, bell_expression(b, 1) / 2, bell_expression(b, 2) / 2, bell_expression(b, 3) / 2};
    }
    for (std::size_t k = 0; k < out.p.size(); ++k) {
        if (out.p[k] < 0) out.negative_indices.push_back(static_cast<int>(k));
    }
    return out;
}

Rational bell_expression(const Behavior& b, int cyclic_index) {
    const ExperimentShape expected({{3, 2}, {3, 2}});
    if (!(b.shape() == expected)) {
        throw ShapeMismatch("bell_expression requires the 3-setting 2-outcome shape " +
                            expected.to_text() + ", got " + b.shape().to_text());
    }
    if (cyclic_index < 1 || cyclic_index > 3) {
        throw ParameterOutOfRange("cyclic index must be 1, 2 or 3");
    }
    // cyclic_index 1: Pr(+-/31) + Pr(+-/12) - Pr(+-/23); higher indices
    // permute the setting labels 1 -> 2 -> 3 -> 1.
    auto rotate = [&](int label) { return (label - 1 + (cyclic_index - 1)) % 3 + 1; };
    return entry(b, 0, 1, rotate(3), rotate(1)) + entry(b, 0, 1, rotate(1), rotate(2)) -
           entry(b, 0, 1, rotate(2), rotate(3));
}

Rational expectation_from_behavior(const Behavior& b, int ia, int ib) {
    const auto& shape = b.shape();
    if (shape.party_count() != 2 || shape.party(0).outcomes != 2 || shape.party(1).outcomes != 2) {
        throw ShapeMismatch("expectation requires two 2-outcome parties, got " + shape.to_text());
    }
    return 4 * b.probability({ia, ib}, {0, 1}) - 1;
}

} // namespace tfkit
