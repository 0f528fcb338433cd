#include "hardylab/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace hardylab {

double weight_value(const WeightSpec& w, double r) {
    if (w.is_log()) return std::log(w.d / r);
    return r;
}

double weight_deriv(const WeightSpec& w, double r) {
    if (w.is_log()) return -1.0 / r;
    return 1.0;
}

double weight_grad_norm(const WeightSpec& w, double r) {
    if (w.is_log()) return 1.0 / r;
    return 1.0;
}

double supersolution_constant(const WeightSpec& w) {
    return w.alpha * ((w.alpha - 1.0) * (w.p - 1.0) - w.beta - 1.0);
}

double d_min(double K) {
    if (!(K > 0.0)) throw std::invalid_argument("d_min: K must be > 0");
    return 3.14159265358979323846 / std::sqrt(K);
}

void validate_weight(const WeightSpec& w, const RadialModel& m) {
    if (!(w.p > 1.0))
        throw std::invalid_argument("weight: p must be > 1");
    if (w.is_log()) {
        const double K = 1.0 / (m.radius * m.radius);
        if (!(w.d >= d_min(K) * (1.0 - 1e-12)))
            throw std::invalid_argument(
                "weight: log scale d must be >= the model diameter");
    }
}

}  // namespace hardylab
