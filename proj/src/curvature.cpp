#include "hardylab/curvature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hardylab {

namespace {

constexpr double kGateTol = 1e-12;

double base_sphere_ricci(const RadialModel& m) {
    return (m.dim - 1) / (m.radius * m.radius);
}

}  // namespace

double ricci_n_direction(const RadialModel& m, double r, double N,
                         Direction dir) {
    require_interior(m, r, "ricci_n_direction");
    if (N < m.dim)
        throw std::invalid_argument("ricci_n_direction: N must be >= n");
    const bool finite = std::isfinite(N);
    if (finite && N == m.dim && !m.psi_constant())
        throw std::invalid_argument(
            "ricci_n_direction: N = n requires a constant density exponent");

    double ric = base_sphere_ricci(m);
    if (dir == Direction::radial) {
        ric += psi_second(m, r);
        if (finite && N > m.dim) {
            const double dpsi = psi_deriv(m, r);
            ric -= dpsi * dpsi / (N - m.dim);
        }
    } else {
        const double x = r / m.radius;
        ric += psi_deriv(m, r) * (std::cos(x) / std::sin(x)) / m.radius;
    }
    return ric;
}

double comparison_margin(const RadialModel& m, const CurvatureHypothesis& hyp,
                         double r) {
    require_interior(m, r, "comparison_margin");
    const double x = r / m.radius;
    const int n = m.dim;
    // (n-1)(1/r - cot(r/R)/R) is evaluated as a stable series product to
    // avoid cancellation near r = 0
    const double stable = (n - 1) / m.radius * inv_x_minus_cot(x);
    switch (hyp.kind) {
        case CurvatureHypothesis::Kind::ric_n:
            return stable + (hyp.value - n) / r + psi_deriv(m, r);
        case CurvatureHypothesis::Kind::ric_inf_lambda:
            return stable + hyp.value + psi_deriv(m, r);
        case CurvatureHypothesis::Kind::ric_inf_bounded:
            return stable + 4.0 * hyp.value / r + psi_deriv(m, r);
    }
    return 0.0;
}

double volume_ratio(const RadialModel& m, int kind, double param, double r) {
    require_interior(m, r, "volume_ratio");
    const double x = r / m.radius;
    const int n = m.dim;
    const double sinc = std::sin(x) / x;  // sigma/r^(n-1) = sinc^(n-1) e^-Psi
    const double base = std::pow(sinc, n - 1) * std::exp(-psi_value(m, r));
    switch (kind) {
        case 1:  // sigma / r^(N-1)
            return base * std::pow(r, double(n) - param);
        case 2:  // sigma / (e^(lambda r) r^(n-1))
            return base * std::exp(-param * r);
        case 3:  // sigma / r^(n+4k-1)
            return base * std::pow(r, -4.0 * param);
    }
    throw std::invalid_argument("volume_ratio: kind must be 1, 2 or 3");
}

double p_laplacian_radial(const RadialModel& m, const RadialTrial& f, double p,
                          double r) {
    require_interior(m, r, "p_laplacian_radial");
    if (!(p > 1.0))
        throw std::invalid_argument("p_laplacian_radial: p must be > 1");
    for (double bp : f.breakpoints)
        if (std::abs(r - bp) < 1e-12 * m.diameter())
            throw std::invalid_argument(
                "p_laplacian_radial: derivative undefined at a kink");

    const double df = f.deriv(r);
    if (f.second_deriv) {
        const double d2f = f.second_deriv(r);
        const double mag = std::pow(std::abs(df), p - 2.0);
        return mag * ((p - 1.0) * d2f + df * weighted_laplacian_r(m, r));
    }
    // central difference of the flux sigma |f'|^(p-2) f'
    const double h = 1e-6 * std::min({r, m.diameter() - r, m.diameter()});
    const auto flux = [&](double s) {
        const double d = f.deriv(s);
        return density(m, s) * std::pow(std::abs(d), p - 2.0) * d;
    };
    return (flux(r + h) - flux(r - h)) / (2.0 * h * density(m, r));
}

double supersolution_margin(const RadialModel& m, const WeightSpec& w,
                            double r) {
    require_interior(m, r, "supersolution_margin");
    const double c = supersolution_constant(w);
    if (std::abs(c) < 1e-14)
        throw std::invalid_argument(
            "supersolution_margin: degenerate constant c = 0 "
            "((alpha-1)(p-1) = beta+1)");

    const double a = w.alpha;
    RadialTrial rho_alpha;
    if (w.is_log()) {
        const double d = w.d;
        rho_alpha.value = [a, d](double s) {
            return std::pow(std::log(d / s), a);
        };
        rho_alpha.deriv = [a, d](double s) {
            return -a * std::pow(std::log(d / s), a - 1.0) / s;
        };
        rho_alpha.second_deriv = [a, d](double s) {
            const double L = std::log(d / s);
            return a * ((a - 1.0) * std::pow(L, a - 2.0) + std::pow(L, a - 1.0)) /
                   (s * s);
        };
    } else {
        rho_alpha.value = [a](double s) { return std::pow(s, a); };
        rho_alpha.deriv = [a](double s) { return a * std::pow(s, a - 1.0); };
        rho_alpha.second_deriv = [a](double s) {
            return a * (a - 1.0) * std::pow(s, a - 2.0);
        };
    }
    rho_alpha.support = {0.0, m.diameter()};

    // Lap_p(c f) = |c|^(p-2) c Lap_p(f)
    const double scale = std::pow(std::abs(c), w.p - 2.0) * c;
    return -scale * p_laplacian_radial(m, rho_alpha, w.p, r);
}

GateReport hypothesis_gate(const RadialModel& m, CurvatureHypothesis& hyp,
                           int grid_points) {
    GateReport rep;
    rep.min_ricci_radial = std::numeric_limits<double>::infinity();
    rep.min_ricci_tangential = std::numeric_limits<double>::infinity();
    rep.min_aux = std::numeric_limits<double>::infinity();
    rep.min_comparison_margin = std::numeric_limits<double>::infinity();

    const double N = hyp.kind == CurvatureHypothesis::Kind::ric_n
                         ? hyp.value
                         : std::numeric_limits<double>::infinity();
    if (hyp.kind == CurvatureHypothesis::Kind::ric_n &&
        (hyp.value < m.dim ||
         (hyp.value == m.dim && !m.psi_constant())))
        return rep;  // pass stays false

    const auto grid = geometric_grid(0.0, m.diameter(), grid_points);
    hyp.margin_grid.clear();
    hyp.margin_grid.reserve(grid.size());
    for (double r : grid) {
        const double ric_r = ricci_n_direction(m, r, N, Direction::radial);
        const double ric_t = ricci_n_direction(m, r, N, Direction::tangential);
        rep.min_ricci_radial = std::min(rep.min_ricci_radial, ric_r);
        rep.min_ricci_tangential = std::min(rep.min_ricci_tangential, ric_t);

        double aux = std::numeric_limits<double>::infinity();
        if (hyp.kind == CurvatureHypothesis::Kind::ric_inf_lambda)
            aux = psi_deriv(m, r) + hyp.value;  // drift >= -lambda
        else if (hyp.kind == CurvatureHypothesis::Kind::ric_inf_bounded)
            aux = hyp.value - std::abs(psi_value(m, r));  // |Psi| <= k
        rep.min_aux = std::min(rep.min_aux, aux);

        const double margin = comparison_margin(m, hyp, r);
        rep.min_comparison_margin = std::min(rep.min_comparison_margin, margin);
        hyp.margin_grid.emplace_back(r, margin);
    }
    rep.pass = rep.min_ricci_radial >= -kGateTol &&
               rep.min_ricci_tangential >= -kGateTol &&
               rep.min_aux >= -kGateTol;
    return rep;
}

}  // namespace hardylab
