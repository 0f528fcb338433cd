#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hardylab/radial_model.hpp"

namespace hardylab {

enum class Verdict { converged, divergent, max_depth };

const char* to_string(Verdict v);

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-8;
};

/// Declared asymptotic model of an integrand near the interval endpoints:
/// f ~ C r^gL [log(log_scale/r)]^lL as r -> a (left, in t = r-a) and
/// f ~ C (b-r)^gR [log(log_scale/(b-r))]^lR as r -> b.  The log factor is
/// active only when log_scale > 0.
struct EndpointBehavior {
    double left_exponent = 0.0;
    double right_exponent = 0.0;
    double left_log_power = 0.0;
    double right_log_power = 0.0;
    double log_scale = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subdivisions = 0;
    Verdict verdict = Verdict::converged;
};

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod integration over (a, b) with geometric peeling
/// toward singular endpoints; the last peeled stub is integrated against
/// the declared power/log endpoint model.  Breakpoints force panel edges
/// (trial kinks, support boundaries).
QuadratureResult integrate_interval(const RealFn& f, double a, double b,
                                    const EndpointBehavior& hints,
                                    Tolerance tol = {},
                                    std::span<const double> breakpoints = {});

/// Same over (0, diameter(m)); the unit-sphere area factor is not applied.
QuadratureResult integrate_radial(const RadialModel& m, const RealFn& f,
                                  const EndpointBehavior& hints,
                                  Tolerance tol = {});

enum class LogIntegralPart { h1, h2 };

/// Convergence gate for the two log-power integrals:
/// h1: int_0^s log(d/r)^k1 r^k2 dr   -- finite iff k2 > -1, or k2 = -1
///     with k1 < -1;
/// h2: int_s^l log(d/r)^k1 r^k2 dr   -- always finite for l < d, and for
///     l = d iff k1 > -1.
bool log_integral_valid(LogIntegralPart part, double k1, double k2, double l,
                        double d);

/// Gated evaluation of the integrals above (0 < s < l <= d); returns
/// verdict divergent without integrating when the gate fails.
QuadratureResult log_power_integral(LogIntegralPart part, double k1, double k2,
                                    double s, double l, double d,
                                    Tolerance tol = {});

/// Closed-form int_0^eta t^g log(scale/t)^l dt for an integrable model.
double endpoint_model_integral(double g, double l, double scale, double eta);

/// True when t^g log(./t)^l is integrable at t -> 0+.
bool endpoint_model_integrable(double g, double l);

}  // namespace hardylab
