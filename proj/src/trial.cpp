#include "hardylab/trial.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hardylab {

namespace {

void poly_eval2(const std::vector<double>& a, double x, double& p, double& dp,
                double& d2p) {
    p = dp = d2p = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) {
        d2p = d2p * x + 2.0 * dp;
        dp = dp * x + p;
        p = p * x + a[i];
    }
}

/// quintic smoothstep: 0 -> 1 with vanishing first and second derivatives
double smoothstep(double t) { return t * t * t * (t * (6.0 * t - 15.0) + 10.0); }
double smoothstep_d(double t) { return 30.0 * t * t * (t - 1.0) * (t - 1.0); }
double smoothstep_d2(double t) {
    return 60.0 * t * (t - 1.0) * (2.0 * t - 1.0);
}

}  // namespace

RadialTrial cos_poly_trial(const RadialModel& m, std::vector<double> coeffs,
                           std::string label) {
    double p, dp, d2p;
    poly_eval2(coeffs, 1.0, p, dp, d2p);
    if (std::abs(p) > 1e-12)
        throw std::invalid_argument(
            "cos_poly_trial: polynomial must vanish at the pole (Q(1) = 0)");

    // order of vanishing at x = 1 fixes the left power: u ~ r^(2*mult)
    int mult = 0;
    std::vector<double> q = coeffs;
    while (mult < 16) {
        double qv, qd, qd2;
        poly_eval2(q, 1.0, qv, qd, qd2);
        if (std::abs(qv) > 1e-12) break;
        // synthetic division by (x - 1)
        std::vector<double> next(q.size() > 1 ? q.size() - 1 : 0);
        double carry = 0.0;
        for (std::size_t i = q.size(); i-- > 1;) {
            carry += q[i];
            next[i - 1] = carry;
        }
        q = std::move(next);
        ++mult;
        if (q.empty()) break;
    }

    const double R = m.radius;
    RadialTrial u;
    u.value = [coeffs, R](double r) {
        double p1, d1, d21;
        poly_eval2(coeffs, std::cos(r / R), p1, d1, d21);
        return p1;
    };
    u.deriv = [coeffs, R](double r) {
        double p1, d1, d21;
        const double x = r / R;
        poly_eval2(coeffs, std::cos(x), p1, d1, d21);
        return -std::sin(x) / R * d1;
    };
    u.second_deriv = [coeffs, R](double r) {
        double p1, d1, d21;
        const double x = r / R;
        poly_eval2(coeffs, std::cos(x), p1, d1, d21);
        const double s = std::sin(x);
        return (-std::cos(x) * d1 + s * s * d21) / (R * R);
    };
    u.left_order = 2.0 * mult;
    u.support = {0.0, m.diameter()};
    u.smooth_at_pole = true;
    u.label = std::move(label);
    return u;
}

RadialTrial power_bump_trial(const RadialModel& m, double kappa, double r1,
                             double r2, std::string label) {
    if (!(0.0 < r1 && r1 < r2 && r2 < m.diameter()))
        throw std::invalid_argument("power_bump_trial: need 0 < r1 < r2 < diam");
    if (!(kappa > 0.0))
        throw std::invalid_argument("power_bump_trial: kappa must be > 0");

    const double w = r2 - r1;
    RadialTrial u;
    u.value = [=](double r) {
        if (r >= r2) return 0.0;
        const double core = std::pow(r, kappa);
        if (r <= r1) return core;
        return core * (1.0 - smoothstep((r - r1) / w));
    };
    u.deriv = [=](double r) {
        if (r >= r2) return 0.0;
        const double core = std::pow(r, kappa);
        const double dcore = kappa * std::pow(r, kappa - 1.0);
        if (r <= r1) return dcore;
        const double t = (r - r1) / w;
        return dcore * (1.0 - smoothstep(t)) - core * smoothstep_d(t) / w;
    };
    u.second_deriv = [=](double r) {
        if (r >= r2) return 0.0;
        const double core = std::pow(r, kappa);
        const double dcore = kappa * std::pow(r, kappa - 1.0);
        const double d2core = kappa * (kappa - 1.0) * std::pow(r, kappa - 2.0);
        if (r <= r1) return d2core;
        const double t = (r - r1) / w;
        return d2core * (1.0 - smoothstep(t)) -
               2.0 * dcore * smoothstep_d(t) / w -
               core * smoothstep_d2(t) / (w * w);
    };
    u.left_order = kappa;
    u.support = {0.0, r2};
    u.breakpoints = {r1, r2};
    u.label = std::move(label);
    return u;
}

RadialTrial annulus_bump_trial(const RadialModel& m, double a, double a2,
                               double b2, double b, std::string label) {
    if (!(0.0 < a && a < a2 && a2 < b2 && b2 < b && b < m.diameter()))
        throw std::invalid_argument("annulus_bump_trial: bad window");
    RadialTrial u;
    u.value = [=](double r) {
        if (r <= a || r >= b) return 0.0;
        if (r < a2) return smoothstep((r - a) / (a2 - a));
        if (r > b2) return 1.0 - smoothstep((r - b2) / (b - b2));
        return 1.0;
    };
    u.deriv = [=](double r) {
        if (r <= a || r >= b) return 0.0;
        if (r < a2) return smoothstep_d((r - a) / (a2 - a)) / (a2 - a);
        if (r > b2) return -smoothstep_d((r - b2) / (b - b2)) / (b - b2);
        return 0.0;
    };
    u.second_deriv = [=](double r) {
        if (r <= a || r >= b) return 0.0;
        if (r < a2) return smoothstep_d2((r - a) / (a2 - a)) / ((a2 - a) * (a2 - a));
        if (r > b2) return smoothstep_d2((r - b2) / (b - b2)) / ((b - b2) * (b - b2));
        return 0.0;
    };
    u.support = {a, b};
    u.breakpoints = {a, a2, b2, b};
    u.label = std::move(label);
    return u;
}

RadialTrial scale_trial(const RadialTrial& u, double t) {
    RadialTrial v = u;
    auto val = u.value;
    auto der = u.deriv;
    v.value = [val, t](double r) { return t * val(r); };
    v.deriv = [der, t](double r) { return t * der(r); };
    if (u.second_deriv) {
        auto d2 = u.second_deriv;
        v.second_deriv = [d2, t](double r) { return t * d2(r); };
    }
    v.label = u.label + "*scaled";
    return v;
}

double derivative_consistency(const RadialTrial& u, const RadialModel& m,
                              unsigned seed, int count) {
    std::mt19937 rng(seed);
    const double lo = std::max(u.support.lo, 1e-4 * m.diameter());
    const double hi = std::min(u.support.hi, m.diameter() * (1.0 - 1e-4));
    std::uniform_real_distribution<double> dist(lo, hi);
    const double h = 1e-6 * m.diameter();
    double worst = 0.0;
    int accepted = 0;
    while (accepted < count) {
        const double r = dist(rng);
        bool near_break = r - h <= lo || r + h >= hi;
        for (double bp : u.breakpoints)
            near_break = near_break || std::abs(r - bp) < 4.0 * h;
        if (near_break) continue;
        ++accepted;
        const double fd = (u.value(r + h) - u.value(r - h)) / (2.0 * h);
        const double dv = u.deriv(r);
        const double scale = std::max({std::abs(dv), std::abs(fd), 1e-8});
        worst = std::max(worst, std::abs(fd - dv) / scale);
    }
    return worst;
}

}  // namespace hardylab
