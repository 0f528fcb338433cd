#include "hardylab/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hardylab {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-15;
constexpr double kEulerGamma = 0.57721566490153286061;

/// Lower series Gamma(a) - Gamma(a,x), valid a > 0, x < a+1.
double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x));
}

/// Continued fraction for Gamma(a,x), modified Lentz; reliable for
/// x >= max(1, a+1), any real a.
double upper_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

double gamma_positive(double a, double x) {
    if (x < a + 1.0) return std::tgamma(a) - lower_series(a, x);
    return upper_cf(a, x);
}

/// Exponential integral E1(x) = Gamma(0,x) by series, for 0 < x <= 1.
double e1_series(double x) {
    double term = 1.0;
    double sum = 0.0;
    for (int n = 1; n <= kMaxIter; ++n) {
        term *= -x / n;
        const double add = -term / n;
        sum += add;
        if (std::abs(add) < std::abs(sum) * kEps + 1e-300) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

}  // namespace

double upper_incomplete_gamma(double a, double x) {
    if (!(x >= 0.0))
        throw std::invalid_argument("upper_incomplete_gamma: x must be >= 0");
    if (x == 0.0) {
        if (a > 0.0) return std::tgamma(a);
        return std::numeric_limits<double>::infinity();
    }
    if (a > 0.0) return gamma_positive(a, x);
    if (x >= 1.0) return upper_cf(a, x);

    // x in (0,1), a <= 0: start from a fractional base in (0,1] (or from
    // E1 when a sits on an integer) and step the recurrence
    // Gamma(a-1,x) = (Gamma(a,x) - x^(a-1) e^-x) / (a-1) downward.
    double cur;
    double g;
    if (a == std::round(a)) {
        cur = 0.0;
        g = e1_series(x);
    } else {
        cur = a - std::floor(a);
        g = gamma_positive(cur, x);
    }
    const double lx = std::log(x);
    while (cur > a + 0.5) {
        cur -= 1.0;
        g = (g - std::exp(cur * lx - x)) / cur;
    }
    return g;
}

}  // namespace hardylab
