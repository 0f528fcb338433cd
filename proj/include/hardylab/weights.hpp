#pragma once

#include "hardylab/radial_model.hpp"

namespace hardylab {

/// Radial Hardy weight: rho(r) = r (power kind) or rho(r) = log(d/r)
/// (log kind, d >= diameter), together with the exponents (p, beta) of the
/// inequality and the supersolution exponent alpha.
struct WeightSpec {
    enum class Kind { power_distance, log_distance };
    Kind kind = Kind::power_distance;
    double p = 2.0;
    double beta = 0.0;
    double alpha = 1.0;
    double d = 0.0;  // log kind only

    bool is_log() const { return kind == Kind::log_distance; }
};

double weight_value(const WeightSpec& w, double r);
double weight_deriv(const WeightSpec& w, double r);
double weight_grad_norm(const WeightSpec& w, double r);  // |rho'(r)|

/// c = alpha * [(alpha-1)(p-1) - beta - 1]; the supersolution statement
/// -Lap_p(c rho^alpha) >= 0 is meaningful only when c != 0.
double supersolution_constant(const WeightSpec& w);

/// Smallest admissible log-weight scale for curvature bound (n-1)K > 0:
/// any d >= pi/sqrt(K) works as the diameter surrogate.
double d_min(double K);

/// Throws std::invalid_argument on a malformed spec (p <= 1, log weight
/// with d below the model diameter).
void validate_weight(const WeightSpec& w, const RadialModel& m);

}  // namespace hardylab
