#pragma once

#include <utility>
#include <vector>

#include "hardylab/radial_model.hpp"
#include "hardylab/trial.hpp"
#include "hardylab/weights.hpp"

namespace hardylab {

/// One of the three curvature hypotheses the comparison estimates rest on:
/// Ric_N >= 0 (finite N >= n), Ric_inf >= 0 with a radial-drift lower bound
/// -lambda, or Ric_inf >= 0 with |Psi| <= k.
struct CurvatureHypothesis {
    enum class Kind { ric_n, ric_inf_lambda, ric_inf_bounded };
    Kind kind = Kind::ric_n;
    double value = 0.0;  // N, lambda, or k
    std::vector<std::pair<double, double>> margin_grid;

    static CurvatureHypothesis ric_n(double N) {
        return {Kind::ric_n, N, {}};
    }
    static CurvatureHypothesis ric_inf_lambda(double lambda) {
        return {Kind::ric_inf_lambda, lambda, {}};
    }
    static CurvatureHypothesis ric_inf_bounded(double k) {
        return {Kind::ric_inf_bounded, k, {}};
    }
};

/// Ric_N(e,e) for a unit radial or tangential vector e at radius r.
/// N may be infinity; N = n requires a constant density exponent.
double ricci_n_direction(const RadialModel& m, double r, double N,
                         Direction dir);

/// bound(r) - weighted_laplacian_r(m, r), where the bound is (N-1)/r,
/// (n-1)/r + lambda, or (n-1+4k)/r depending on the hypothesis.
/// Nonnegative whenever the hypothesis holds.
double comparison_margin(const RadialModel& m, const CurvatureHypothesis& hyp,
                         double r);

/// Monotone volume ratios: kind 1 = sigma/r^(N-1), kind 2 =
/// sigma/(e^(lambda r) r^(n-1)), kind 3 = sigma/r^(n+4k-1).
double volume_ratio(const RadialModel& m, int kind, double param, double r);

/// Drift p-Laplacian of a radial function,
/// sigma^-1 d/dr [ sigma |f'|^(p-2) f' ]; uses the trial's closed-form
/// second derivative when present, otherwise central differences of the
/// flux.
double p_laplacian_radial(const RadialModel& m, const RadialTrial& f, double p,
                          double r);

/// Pointwise value of -Lap_p(c rho^alpha) for the weight's distance
/// function; must be >= 0 for admissible parameter sets.  Rejects c = 0.
double supersolution_margin(const RadialModel& m, const WeightSpec& w,
                            double r);

struct GateReport {
    bool pass = false;
    double min_ricci_radial = 0.0;
    double min_ricci_tangential = 0.0;
    double min_aux = 0.0;  // drift or |Psi| slack, hypothesis dependent
    double min_comparison_margin = 0.0;
};

/// Samples Ric over a geometric grid in both frame directions, checks the
/// hypothesis-specific side condition, and fills hyp.margin_grid with the
/// comparison margins.  Must pass before any inequality run.
GateReport hypothesis_gate(const RadialModel& m, CurvatureHypothesis& hyp,
                           int grid_points = 2048);

}  // namespace hardylab
