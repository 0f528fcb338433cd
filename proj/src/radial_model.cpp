#include "hardylab/radial_model.hpp"

#include <cmath>

namespace hardylab {

namespace {

/// Horner evaluation of P(x) = sum a_k x^k and its first two derivatives.
void poly_eval2(const std::vector<double>& a, double x, double& p, double& dp,
                double& d2p) {
    p = 0.0;
    dp = 0.0;
    d2p = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) {
        d2p = d2p * x + 2.0 * dp;
        dp = dp * x + p;
        p = p * x + a[i];
    }
    // the recurrence above accumulates 2*dp, so d2p already carries the
    // factorial factor of the second derivative
}

}  // namespace

RadialModel build_model(int n, double R, std::vector<double> psi_coeffs) {
    if (n < 2) throw std::invalid_argument("build_model: dimension must be >= 2");
    if (!(R > 0.0)) throw std::invalid_argument("build_model: radius must be > 0");
    RadialModel m;
    m.dim = n;
    m.radius = R;
    m.psi_coeffs = std::move(psi_coeffs);
    return m;
}

void require_interior(const RadialModel& m, double r, const char* where) {
    if (!(r > 0.0) || !(r < m.diameter()))
        throw std::invalid_argument(std::string(where) +
                                    ": r must lie in (0, diameter)");
}

double psi_value(const RadialModel& m, double r) {
    if (m.psi_coeffs.empty()) return 0.0;
    double p, dp, d2p;
    poly_eval2(m.psi_coeffs, std::cos(r / m.radius), p, dp, d2p);
    return p;
}

double psi_deriv(const RadialModel& m, double r) {
    if (m.psi_coeffs.empty()) return 0.0;
    double p, dp, d2p;
    const double x = r / m.radius;
    poly_eval2(m.psi_coeffs, std::cos(x), p, dp, d2p);
    return -std::sin(x) / m.radius * dp;
}

double psi_second(const RadialModel& m, double r) {
    if (m.psi_coeffs.empty()) return 0.0;
    double p, dp, d2p;
    const double x = r / m.radius;
    const double R = m.radius;
    poly_eval2(m.psi_coeffs, std::cos(x), p, dp, d2p);
    const double s = std::sin(x);
    return -std::cos(x) / (R * R) * dp + s * s / (R * R) * d2p;
}

double density(const RadialModel& m, double r) {
    require_interior(m, r, "density");
    const double warp = m.radius * std::sin(r / m.radius);
    return std::pow(warp, m.dim - 1) * std::exp(-psi_value(m, r));
}

double weighted_laplacian_r(const RadialModel& m, double r) {
    require_interior(m, r, "weighted_laplacian_r");
    const double x = r / m.radius;
    return (m.dim - 1) * (std::cos(x) / std::sin(x)) / m.radius -
           psi_deriv(m, r);
}

double sphere_area_constant(int n) {
    if (n < 2)
        throw std::invalid_argument("sphere_area_constant: n must be >= 2");
    const double pi = 3.14159265358979323846;
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double inv_x_minus_cot(double x) {
    if (std::abs(x) < 0.4) {
        // 1/x - cot x = x/3 + x^3/45 + 2x^5/945 + x^7/4725 + 2x^9/93555
        //             + 1382 x^11/638512875 + 4 x^13/18243225 + ...
        const double x2 = x * x;
        return x * (1.0 / 3.0 +
                    x2 * (1.0 / 45.0 +
                          x2 * (2.0 / 945.0 +
                                x2 * (1.0 / 4725.0 +
                                      x2 * (2.0 / 93555.0 +
                                            x2 * (1382.0 / 638512875.0 +
                                                  x2 * (4.0 / 18243225.0)))))));
    }
    return 1.0 / x - std::cos(x) / std::sin(x);
}

std::vector<double> geometric_grid(double a, double b, int count,
                                   double edge_fraction) {
    if (count < 4) throw std::invalid_argument("geometric_grid: count < 4");
    const double len = b - a;
    const int half = count / 2;
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(count));
    const double lo = std::log(edge_fraction);
    const double hi = std::log(0.5);
    for (int i = 0; i < half; ++i) {
        const double t = std::exp(lo + (hi - lo) * i / double(half - 1));
        g.push_back(a + len * t);
    }
    for (int i = count - half; i-- > 0;) {
        const double t = std::exp(lo + (hi - lo) * i / double(count - half - 1));
        g.push_back(b - len * t);
    }
    return g;
}

}  // namespace hardylab
