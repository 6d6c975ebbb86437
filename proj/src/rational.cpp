#include "tfkit/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace tfkit {

Rational make_rational(long numerator, long denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("rational denominator must be nonzero");
    }
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
}

namespace {

bool is_decimal(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

Rational rational_from_string(std::string_view text) {
    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
        negative = num.front() == '-';
        num.remove_prefix(1);
    }
    if (!is_decimal(num) || !is_decimal(den)) {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw std::invalid_argument("rational denominator must be nonzero: '" + std::string(text) + "'");
    }
    if (negative) n = -n;
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::int64_t rational_floor(const Rational& value) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
    if (!q.fits_slong_p()) {
        throw std::overflow_error("rational_floor: value out of int64 range");
    }
    return static_cast<std::int64_t>(q.get_si());
}

Rational rationalize(double x, std::int64_t max_denominator) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("rationalize: non-finite input");
    }
    if (max_denominator < 1) {
        throw std::invalid_argument("rationalize: denominator bound must be positive");
    }
    const bool negative = x < 0;
    double r = negative ? -x : x;

    // Convergents h/k of the continued fraction of r.
    mpz_class h_prev = 1, h = mpz_class(static_cast<long>(std::floor(r)));
    mpz_class k_prev = 0, k = 1;
    double frac = r - std::floor(r);
    const mpz_class bound(static_cast<long>(max_denominator));

    for (int iter = 0; iter < 64 && frac > 1e-18; ++iter) {
        r = 1.0 / frac;
        double a_floor = std::floor(r);
        if (a_floor > 9.0e18) break; // next convergent already exact at double precision
        mpz_class a(static_cast<long>(a_floor));
        mpz_class k_next = a * k + k_prev;
        if (k_next > bound) break;
        mpz_class h_next = a * h + h_prev;
        h_prev = h; h = h_next;
        k_prev = k; k = k_next;
        frac = r - a_floor;
    }

    Rational result(h, k);
    result.canonicalize();
    if (negative) result = -result;
    return result;
}

} // namespace tfkit
