#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hardylab/radial_model.hpp"

namespace hardylab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double r) const { return r >= lo && r <= hi; }
    bool empty() const { return !(hi > lo); }
};

/// Radial trial function u(r) with an explicit derivative and declared
/// endpoint behavior.  u ~ C r^left_order [log(log_scale/r)]^left_log_power
/// near r = 0 when the support starts at 0; outside the support u vanishes.
struct RadialTrial {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::function<double(double)> second_deriv;  // optional, may be empty

    double left_order = 0.0;
    double left_log_power = 0.0;
    double log_scale = 0.0;
    Interval support{0.0, 0.0};
    bool smooth_at_pole = false;
    std::vector<double> breakpoints;
    std::string label;

    double eval(double r) const {
        return support.contains(r) ? value(r) : 0.0;
    }
    double eval_deriv(double r) const {
        return support.contains(r) ? deriv(r) : 0.0;
    }
};

/// u(r) = Q(cos(r/R)) for a polynomial Q with Q(1) = 0 (vanishing at the
/// pole); coeffs are Q's coefficients in increasing degree.
RadialTrial cos_poly_trial(const RadialModel& m, std::vector<double> coeffs,
                           std::string label);

/// u(r) = r^kappa on [0, r1], ramped smoothly to zero on [r1, r2].
RadialTrial power_bump_trial(const RadialModel& m, double kappa, double r1,
                             double r2, std::string label);

/// Smooth bump supported on [a, b], identically 1 on [a2, b2].
RadialTrial annulus_bump_trial(const RadialModel& m, double a, double a2,
                               double b2, double b, std::string label);

RadialTrial scale_trial(const RadialTrial& u, double t);

/// Finite-difference spot check of deriv against value at `count` seeded
/// interior points away from breakpoints; returns the worst relative error.
double derivative_consistency(const RadialTrial& u, const RadialModel& m,
                              unsigned seed = 12345u, int count = 16);

}  // namespace hardylab
