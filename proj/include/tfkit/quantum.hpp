#pragma once

#include "tfkit/behavior.hpp"
#include "tfkit/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tfkit {

/// Measurement dial angles (radians), one per setting index, shared by the
/// two sites.  The two zeros point in opposite directions, so equal angles
/// give equal signs on the singlet.
struct Angles {
    std::vector<double> theta;
};

struct RationalizationPolicy {
    /// Snap sin^2(delta/2) to its exact value when delta is a multiple of
    /// pi/3 or pi/2 (where it is rational).
    bool exact_special_angles = true;
    /// Continued-fraction denominator bound for all other angles.
    std::int64_t max_denominator = 1'000'000;
};

/// Joint probability Pr(sign_a, sign_b | theta_a, theta_b) of the singlet,
/// computed from the explicit 4-dimensional state vector and rotated spin
/// projectors.  Signs are 0 for + and 1 for -.
double singlet_joint_probability(double theta_a, double theta_b, int sign_a, int sign_b);

/// Closed form for Pr(equal signs): cos^2(delta / 2).
double singlet_same_sign_closed_form(double delta);

/// Exact sin^2(delta/2) when delta is within 1e-9 of a multiple of pi/3 or
/// pi/2; nullopt otherwise.
std::optional<Rational> exact_sin2_half(double delta);

/// Singlet behavior over a 2-party shape with one setting per angle and two
/// outcomes.  Probabilities come from the state-vector path and are
/// rationalized at this boundary; marginals are exactly uniform.
Behavior singlet_behavior(const Angles& angles, const RationalizationPolicy& policy = {});

} // namespace tfkit
