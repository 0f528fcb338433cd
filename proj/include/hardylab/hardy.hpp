#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hardylab/curvature.hpp"
#include "hardylab/quadrature.hpp"
#include "hardylab/radial_model.hpp"
#include "hardylab/trial.hpp"
#include "hardylab/weights.hpp"

namespace hardylab {

/// Inequality families dispatched by the runner.  "closed" marks the
/// variants stated for globally defined functions vanishing at the pole;
/// the plain forms are for functions supported away from it.
enum class TheoremId {
    ric_n_power,
    ric_n_power_closed,
    ric_inf_lambda_power,
    ric_inf_bounded_power,
    log_ric_n,
    log_ric_n_closed,
    log_ric_inf_lambda,
    log_ric_inf_bounded,
    bv_improvement,
    uncertainty,
    sphere_distance,
};

const char* to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& name);

struct Admissibility {
    bool ok = true;
    std::vector<std::string> reasons;  // violated clauses
};

/// Pure arithmetic check of the family's hypothesis block on
/// (n, N/lambda/k, p, beta, alpha, d, diameter); the curvature gate is the
/// caller's separate responsibility.
Admissibility admissible(TheoremId id, const RadialModel& m,
                         const WeightSpec& w, const CurvatureHypothesis& hyp);

/// The family's optimal constant, in the normalization of hardy_quotient.
double sharp_constant(TheoremId id, const RadialModel& m, const WeightSpec& w,
                      const CurvatureHypothesis& hyp);

struct FunctionalValue {
    double value = 0.0;
    Verdict verdict = Verdict::converged;
};

/// c_(n-1) * int |u'|^p rho^(p+beta) sigma dr
FunctionalValue hardy_lhs(const RadialModel& m, const WeightSpec& w,
                          const RadialTrial& u, Tolerance tol = {});
/// c_(n-1) * int |u|^p rho^beta |rho'|^p sigma dr
FunctionalValue hardy_rhs(const RadialModel& m, const WeightSpec& w,
                          const RadialTrial& u, Tolerance tol = {});
FunctionalValue hardy_quotient(const RadialModel& m, const WeightSpec& w,
                               const RadialTrial& u, Tolerance tol = {});

/// Both sides of the uncertainty-principle inequality for p > n:
/// (int r^q |u|^q dmu)^(1/q) (int |grad u|^p dmu)^(1/p)  vs
/// ((p-n)/p) int u^2 dmu,  1/p + 1/q = 1.
std::pair<FunctionalValue, FunctionalValue> uncertainty_product(
    const RadialModel& m, double p, const RadialTrial& u, Tolerance tol = {});

/// Improved inequality with remainder coefficient theta:
/// lhs = int |grad u|^p dmu,
/// rhs = ((p-n)/p)^p int |u|^p/r^p + (2 theta/p)((p-n)/p)^(p-2) int |u|^p/r^(p-2).
std::pair<FunctionalValue, FunctionalValue> bv_check(const RadialModel& m,
                                                     double p,
                                                     const RadialTrial& u,
                                                     double theta,
                                                     Tolerance tol = {});

struct SuiteOptions {
    bool include_extremizers = true;
    std::vector<double> extremizer_eps{0.5, 0.2, 0.1, 0.05};
};

/// The standard radial trial battery for a (model, weight) pair:
/// cosine polynomials vanishing at the pole, truncated power profiles,
/// interior bumps, and near-extremal profiles when requested.
std::vector<RadialTrial> standard_suite(const RadialModel& m,
                                        const WeightSpec& w,
                                        const SuiteOptions& opts = {});

}  // namespace hardylab
