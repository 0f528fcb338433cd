#pragma once

#include <span>
#include <vector>

#include "hardylab/hardy.hpp"
#include "hardylab/radial_model.hpp"
#include "hardylab/trial.hpp"
#include "hardylab/weights.hpp"

namespace hardylab {

/// Piecewise-power near-extremal family.  The profile is
/// (rho/s)^c_eps on the sublevel region rho <= s and (rho/s)^(-c_eps_half)
/// outside it; for distance-power weights whose inequality is driven by the
/// substituted supersolution profile (beta = -p), the exponents carry the
/// substitution's effective epsilon, stored in `eps`.
struct ExtremalFamily {
    WeightSpec weight;
    double s = 0.0;        // splitting level of rho
    double split_r = 0.0;  // same level in r
    double eps = 0.0;      // effective epsilon of the exponents
    double c_eps = 0.0;
    double c_eps_half = 0.0;
};

ExtremalFamily extremal_family(const RadialModel& m, const WeightSpec& w,
                               double eps);

/// The trial realizing the family; quotients approach the family's optimal
/// constant from above as eps -> 0 while staying below c_eps^p.
RadialTrial near_extremal(const RadialModel& m, const WeightSpec& w,
                          double eps);

/// v_delta = max(v - delta, 0): globally Lipschitz with support away from
/// the singular pole.  Support edges located by bisection on v.
RadialTrial truncate(const RadialTrial& v, const RadialModel& m, double delta);

struct SweepRow {
    double eps = 0.0;
    double c_eps = 0.0;
    double quotient = 0.0;
    double c_eps_pow_p = 0.0;
    double sharp = 0.0;
    double gap = 0.0;  // quotient - sharp
    Verdict verdict = Verdict::converged;
};

/// Rows sorted by requested eps descending; each quotient must sit in
/// [sharp, c_eps^p) and decrease along the sweep.
std::vector<SweepRow> sharpness_sweep(const RadialModel& m, TheoremId id,
                                      const WeightSpec& w,
                                      const CurvatureHypothesis& hyp,
                                      std::span<const double> eps_list,
                                      Tolerance tol = {});

}  // namespace hardylab
