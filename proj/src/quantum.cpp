#include "tfkit/quantum.hpp"

#include "tfkit/errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace tfkit {

namespace {

using Complex = std::complex<double>;
using Mat2 = std::array<Complex, 4>;  // row-major 2x2
using Vec4 = std::array<Complex, 4>;  // |ab>, index 2a + b

/// Projector onto spin sign s along the unit vector n = (nx, ny, nz):
/// (I + s n.sigma) / 2.
Mat2 spin_projector(double nx, double ny, double nz, int sign) {
    const double s = sign == 0 ? 1.0 : -1.0;
    return {Complex(0.5 * (1.0 + s * nz), 0.0), Complex(0.5 * s * nx, -0.5 * s * ny),
            Complex(0.5 * s * nx, 0.5 * s * ny), Complex(0.5 * (1.0 - s * nz), 0.0)};
}

Vec4 apply_kron(const Mat2& a, const Mat2& b, const Vec4& v) {
    Vec4 out{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Complex sum = 0.0;
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    sum += a[static_cast<std::size_t>(2 * i + k)] *
                           b[static_cast<std::size_t>(2 * j + l)] *
                           v[static_cast<std::size_t>(2 * k + l)];
                }
            }
            out[static_cast<std::size_t>(2 * i + j)] = sum;
        }
    }
    return out;
}

Vec4 singlet_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return {Complex(0.0), Complex(r), Complex(-r), Complex(0.0)};
}

} // namespace

double singlet_joint_probability(double theta_a, double theta_b, int sign_a, int sign_b) {
    // Site A measures along (sin t, 0, cos t); site B's dial is read from the
    // opposite zero, so its axis is the antipode of the same direction.
    const Mat2 pa = spin_projector(std::sin(theta_a), 0.0, std::cos(theta_a), sign_a);
    const Mat2 pb = spin_projector(-std::sin(theta_b), 0.0, -std::cos(theta_b), sign_b);
    const Vec4 psi = singlet_state();
    const Vec4 projected = apply_kron(pa, pb, psi);
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(psi[i]) * projected[i];
    return overlap.real();
}

double singlet_same_sign_closed_form(double delta) {
    const double c = std::cos(delta / 2.0);
    return c * c;
}

std::optional<Rational> exact_sin2_half(double delta) {
    constexpr double tolerance = 1e-9;
    if (std::abs(delta) > 1e6) return std::nullopt; // lround range guard
    const double thirds = delta / (std::numbers::pi / 3.0);
    if (std::abs(thirds - std::round(thirds)) < tolerance) {
        // sin^2(m pi/6) cycles through {0, 1/4, 3/4, 1, 3/4, 1/4}.
        static const int numerators[6] = {0, 1, 3, 4, 3, 1};
        const long m = std::lround(std::round(thirds));
        const int idx = static_cast<int>(((m % 6) + 6) % 6);
        return make_rational(numerators[idx], 4);
    }
    const double halves = delta / (std::numbers::pi / 2.0);
    if (std::abs(halves - std::round(halves)) < tolerance) {
        // sin^2(m pi/4) cycles through {0, 1/2, 1, 1/2}.
        static const int numerators[4] = {0, 1, 2, 1};
        const long m = std::lround(std::round(halves));
        const int idx = static_cast<int>(((m % 4) + 4) % 4);
        return make_rational(numerators[idx], 2);
    }
    return std::nullopt;
}

Behavior singlet_behavior(const Angles& angles, const RationalizationPolicy& policy) {
    if (angles.theta.empty()) {
        throw ShapeMismatch("singlet behavior needs at least one angle");
    }
    const int n = static_cast<int>(angles.theta.size());
    const ExperimentShape shape({{n, 2}, {n, 2}});
    const std::size_t outputs = shape.joint_output_count();
    std::vector<Rational> table(shape.joint_input_count() * outputs, Rational(0));

    for (int ia = 0; ia < n; ++ia) {
        for (int ib = 0; ib < n; ++ib) {
            const double ta = angles.theta[static_cast<std::size_t>(ia)];
            const double tb = angles.theta[static_cast<std::size_t>(ib)];
            const double p_pp = singlet_joint_probability(ta, tb, 0, 0);
            const double p_mm = singlet_joint_probability(ta, tb, 1, 1);
            const double p_pm = singlet_joint_probability(ta, tb, 0, 1);
            const double p_mp = singlet_joint_probability(ta, tb, 1, 0);
            if (std::abs(p_pp - p_mm) > 1e-12 || std::abs(p_pm - p_mp) > 1e-12 ||
                std::abs(p_pp + p_mm + p_pm + p_mp - 1.0) > 1e-12) {
                throw std::logic_error("singlet projector probabilities lost their symmetry");
            }

            Rational same;
            std::optional<Rational> snapped;
            if (policy.exact_special_angles) {
                if (auto sin2 = exact_sin2_half(ta - tb)) snapped = Rational(1) - *sin2;
            }
            if (snapped) {
                if (std::abs(snapped->get_d() - (p_pp + p_mm)) > 1e-9) {
                    throw std::logic_error("special-angle table disagrees with the state vector");
                }
                same = *snapped;
            } else {
                double clamped = std::min(1.0, std::max(0.0, p_pp + p_mm));
                same = rationalize(clamped, policy.max_denominator);
                if (same < 0) same = 0;
                if (same > 1) same = 1;
            }
            const Rational diff = Rational(1) - same;
            const std::size_t row = shape.encode_input({ia, ib}) * outputs;
            table[row + shape.encode_output({0, 0})] = same / 2;
            table[row + shape.encode_output({1, 1})] = same / 2;
            table[row + shape.encode_output({0, 1})] = diff / 2;
            table[row + shape.encode_output({1, 0})] = diff / 2;
        }
    }
    return Behavior(shape, std::move(table));
}

} // namespace tfkit
