#include "hardylab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hardylab/extremizers.hpp"

namespace hardylab {

namespace {

constexpr double kZeroTrialFloor = 1e-300;

struct LeftOrder {
    double kappa = 0.0;
    double logpow = 0.0;
};

/// Leading behavior of u' at r -> 0 given u ~ r^kappa log^m.
LeftOrder deriv_order(const LeftOrder& u) {
    if (u.kappa > 0.0) return {u.kappa - 1.0, u.logpow};
    if (u.logpow != 0.0) return {-1.0, u.logpow - 1.0};
    return {0.0, 0.0};
}

struct WeightedIntegrand {
    RealFn f;
    double a = 0.0, b = 0.0;
    EndpointBehavior hints;
    std::vector<double> breaks;
};

enum class Side { lhs, rhs };

WeightedIntegrand build_integrand(const RadialModel& m, const WeightSpec& w,
                                  const RadialTrial& u, Side side) {
    WeightedIntegrand spec;
    const double diam = m.diameter();
    spec.a = std::max(0.0, u.support.lo);
    spec.b = std::min(diam, u.support.hi);
    spec.breaks = u.breakpoints;

    const double p = w.p;
    const double beta = w.beta;
    const int n = m.dim;

    if (side == Side::lhs) {
        spec.f = [&m, w, &u, p, beta](double r) {
            const double du = u.eval_deriv(r);
            if (du == 0.0) return 0.0;
            return std::pow(std::abs(du), p) *
                   std::pow(weight_value(w, r), p + beta) * density(m, r);
        };
    } else {
        spec.f = [&m, w, &u, p, beta](double r) {
            const double uv = u.eval(r);
            if (uv == 0.0) return 0.0;
            double val = std::pow(std::abs(uv), p) *
                         std::pow(weight_value(w, r), beta) * density(m, r);
            if (w.is_log()) val *= std::pow(r, -p);
            return val;
        };
    }

    if (spec.a <= 0.0) {
        const LeftOrder uo{u.left_order, u.left_log_power};
        const LeftOrder active = side == Side::lhs ? deriv_order(uo) : uo;
        spec.hints.left_exponent = p * active.kappa + (n - 1);
        spec.hints.left_log_power = p * active.logpow;
        if (w.is_log()) {
            spec.hints.left_exponent += side == Side::rhs ? -p : 0.0;
            spec.hints.left_log_power += side == Side::lhs ? p + beta : beta;
            spec.hints.log_scale = w.d;
        } else {
            spec.hints.left_exponent += side == Side::lhs ? p + beta : beta;
            if (spec.hints.left_log_power != 0.0) spec.hints.log_scale = u.log_scale;
        }
    }
    if (spec.b >= diam) {
        spec.hints.right_exponent = n - 1;
        if (side == Side::lhs && u.smooth_at_pole)
            spec.hints.right_exponent += p;
        if (w.is_log()) {
            // log(d/r) vanishes at the far pole only when d == diam
            spec.hints.right_log_power = side == Side::lhs ? p + beta : beta;
            spec.hints.log_scale = w.d;
        }
    }
    return spec;
}

FunctionalValue run_integrand(const WeightedIntegrand& spec, int n,
                              Tolerance tol) {
    FunctionalValue out;
    if (!(spec.b > spec.a)) return out;  // empty support
    QuadratureResult q = integrate_interval(spec.f, spec.a, spec.b, spec.hints,
                                            tol, spec.breaks);
    out.value = sphere_area_constant(n) * q.value;
    out.verdict = q.verdict;
    return out;
}

void clause(Admissibility& adm, bool ok, const std::string& text) {
    if (!ok) {
        adm.ok = false;
        adm.reasons.push_back(text);
    }
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

const char* to_string(TheoremId id) {
    switch (id) {
        case TheoremId::ric_n_power: return "ric_n_power";
        case TheoremId::ric_n_power_closed: return "ric_n_power_closed";
        case TheoremId::ric_inf_lambda_power: return "ric_inf_lambda_power";
        case TheoremId::ric_inf_bounded_power: return "ric_inf_bounded_power";
        case TheoremId::log_ric_n: return "log_ric_n";
        case TheoremId::log_ric_n_closed: return "log_ric_n_closed";
        case TheoremId::log_ric_inf_lambda: return "log_ric_inf_lambda";
        case TheoremId::log_ric_inf_bounded: return "log_ric_inf_bounded";
        case TheoremId::bv_improvement: return "bv_improvement";
        case TheoremId::uncertainty: return "uncertainty";
        case TheoremId::sphere_distance: return "sphere_distance";
    }
    return "unknown";
}

TheoremId theorem_from_string(const std::string& name) {
    static const std::pair<const char*, TheoremId> table[] = {
        {"ric_n_power", TheoremId::ric_n_power},
        {"ric_n_power_closed", TheoremId::ric_n_power_closed},
        {"ric_inf_lambda_power", TheoremId::ric_inf_lambda_power},
        {"ric_inf_bounded_power", TheoremId::ric_inf_bounded_power},
        {"log_ric_n", TheoremId::log_ric_n},
        {"log_ric_n_closed", TheoremId::log_ric_n_closed},
        {"log_ric_inf_lambda", TheoremId::log_ric_inf_lambda},
        {"log_ric_inf_bounded", TheoremId::log_ric_inf_bounded},
        {"bv_improvement", TheoremId::bv_improvement},
        {"uncertainty", TheoremId::uncertainty},
        {"sphere_distance", TheoremId::sphere_distance},
    };
    for (const auto& [k, v] : table)
        if (name == k) return v;
    throw std::invalid_argument("unknown theorem id: " + name);
}

Admissibility admissible(TheoremId id, const RadialModel& m,
                         const WeightSpec& w, const CurvatureHypothesis& hyp) {
    Admissibility adm;
    const int n = m.dim;
    const double p = w.p;
    const double beta = w.beta;
    const double alpha = w.alpha;
    const double diam = m.diameter();
    const double slope = (alpha - 1.0) * (p - 1.0);
    using K = CurvatureHypothesis::Kind;

    switch (id) {
        case TheoremId::ric_n_power:
        case TheoremId::ric_n_power_closed: {
            clause(adm, hyp.kind == K::ric_n, "hypothesis must bound Ric_N");
            const double N = hyp.value;
            clause(adm, N >= n, "N >= n fails (N=" + num(N) + ", n=" + num(n) + ")");
            clause(adm, p > 1.0, "p > 1 fails (p=" + num(p) + ")");
            clause(adm, p != N, "p in (1,N) u (N,inf) fails (p=N=" + num(p) + ")");
            clause(adm, beta < -N,
                   "beta < -N fails (beta=" + num(beta) + ", N=" + num(N) + ")");
            if (id == TheoremId::ric_n_power_closed)
                clause(adm, p + beta > -n,
                       "p + beta > -n fails (p+beta=" + num(p + beta) + ")");
            break;
        }
        case TheoremId::ric_inf_lambda_power: {
            clause(adm, hyp.kind == K::ric_inf_lambda,
                   "hypothesis must bound Ric_inf with a drift constant");
            const double lam = hyp.value;
            clause(adm, lam >= 0.0, "lambda >= 0 fails");
            clause(adm, alpha != 0.0, "alpha != 0 fails");
            clause(adm, p > std::max(1.0, -double(n) - beta),
                   "p > max(1, -n-beta) fails (p=" + num(p) + ")");
            clause(adm, beta + 1.0 < slope,
                   "beta+1 < (alpha-1)(p-1) fails (" + num(beta + 1.0) +
                       " !< " + num(slope) + ")");
            clause(adm, slope <= -(n - 1.0 + lam * diam),
                   "(alpha-1)(p-1) <= -(n-1+lambda*diam) fails (" + num(slope) +
                       " !<= " + num(-(n - 1.0 + lam * diam)) + ")");
            break;
        }
        case TheoremId::ric_inf_bounded_power: {
            clause(adm, hyp.kind == K::ric_inf_bounded,
                   "hypothesis must bound |Psi|");
            const double k = hyp.value;
            clause(adm, k >= 0.0, "k >= 0 fails");
            clause(adm, alpha != 0.0, "alpha != 0 fails");
            clause(adm, p > std::max(1.0, -double(n) - beta),
                   "p > max(1, -n-beta) fails (p=" + num(p) + ")");
            clause(adm, beta + 1.0 < slope,
                   "beta+1 < (alpha-1)(p-1) fails");
            clause(adm, slope <= -(n - 1.0 + 4.0 * k),
                   "(alpha-1)(p-1) <= -(n-1+4k) fails");
            break;
        }
        case TheoremId::log_ric_n:
        case TheoremId::log_ric_n_closed: {
            clause(adm, hyp.kind == K::ric_n, "hypothesis must bound Ric_N");
            clause(adm, w.is_log(), "weight must be the log kind");
            const double N = hyp.value;
            const double d = w.d;
            if (id == TheoremId::log_ric_n)
                clause(adm, d >= diam * (1.0 - 1e-12),
                       "d >= diam fails (d=" + num(d) + ")");
            else
                clause(adm, d > diam * (1.0 + 1e-12),
                       "d > diam fails (d=" + num(d) + ")");
            clause(adm, p >= N,
                   "p >= N fails (p=" + num(p) + ", N=" + num(N) + ")");
            clause(adm, alpha != 0.0, "alpha != 0 fails");
            const double lo = std::log(d / diam) * (N - p);
            clause(adm, lo <= slope,
                   "log(d/diam)(N-p) <= (alpha-1)(p-1) fails (" + num(lo) +
                       " !<= " + num(slope) + ")");
            clause(adm, slope < beta + 1.0,
                   "(alpha-1)(p-1) < beta+1 fails (" + num(slope) + " !< " +
                       num(beta + 1.0) + ")");
            break;
        }
        case TheoremId::log_ric_inf_lambda:
        case TheoremId::log_ric_inf_bounded: {
            const bool lam_kind = id == TheoremId::log_ric_inf_lambda;
            clause(adm,
                   hyp.kind == (lam_kind ? K::ric_inf_lambda : K::ric_inf_bounded),
                   "hypothesis kind mismatch");
            clause(adm, w.is_log(), "weight must be the log kind");
            clause(adm, hyp.value >= 0.0, "hypothesis constant must be >= 0");
            clause(adm, alpha != 0.0, "alpha != 0 fails");
            const double d = w.d;
            clause(adm, d >= diam * (1.0 - 1e-12), "d >= diam fails");
            const double dim_eff =
                lam_kind ? n + hyp.value * diam : n + 4.0 * hyp.value;
            clause(adm, p >= dim_eff,
                   "p >= " + num(dim_eff) + " fails (p=" + num(p) + ")");
            const double lo = std::log(d / diam) * (dim_eff - p);
            clause(adm, lo <= slope,
                   "lower slope bound fails (" + num(lo) + " !<= " + num(slope) +
                       ")");
            clause(adm, slope < beta + 1.0,
                   "(alpha-1)(p-1) < beta+1 fails");
            break;
        }
        case TheoremId::bv_improvement: {
            clause(adm, p >= 2.0, "p >= 2 fails (p=" + num(p) + ")");
            clause(adm, p > n, "p > n fails (p=" + num(p) + ", n=" + num(n) + ")");
            const bool hyp_ok =
                (hyp.kind == K::ric_inf_lambda && hyp.value == 0.0) ||
                (hyp.kind == K::ric_n && m.psi_constant());
            clause(adm, hyp_ok, "needs Ric_inf >= 0 with nonnegative drift");
            break;
        }
        case TheoremId::uncertainty: {
            clause(adm, p > n, "p > n fails (p=" + num(p) + ", n=" + num(n) + ")");
            const bool hyp_ok =
                (hyp.kind == K::ric_inf_lambda && hyp.value == 0.0) ||
                (hyp.kind == K::ric_n && m.psi_constant());
            clause(adm, hyp_ok, "needs Ric_inf >= 0 with nonnegative drift");
            break;
        }
        case TheoremId::sphere_distance: {
            clause(adm, m.psi_constant(), "density exponent must be constant");
            clause(adm, p > n, "p > n fails (p=" + num(p) + ", n=" + num(n) + ")");
            clause(adm, !w.is_log(), "weight must be the power kind");
            clause(adm, beta == -p, "beta = -p fails (beta=" + num(beta) + ")");
            break;
        }
    }
    return adm;
}

double sharp_constant(TheoremId id, const RadialModel& m, const WeightSpec& w,
                      const CurvatureHypothesis& hyp) {
    const Admissibility adm = admissible(id, m, w, hyp);
    if (!adm.ok) {
        std::string msg = "sharp_constant: inadmissible parameters:";
        for (const auto& r : adm.reasons) msg += " [" + r + "]";
        throw std::invalid_argument(msg);
    }
    const double p = w.p;
    const double slope = (w.alpha - 1.0) * (p - 1.0);
    switch (id) {
        case TheoremId::ric_n_power:
        case TheoremId::ric_n_power_closed:
            return std::pow(std::abs(hyp.value + w.beta) / p, p);
        case TheoremId::ric_inf_lambda_power:
        case TheoremId::ric_inf_bounded_power:
            return std::pow((slope - w.beta - 1.0) / p, p);
        case TheoremId::log_ric_n:
        case TheoremId::log_ric_n_closed:
        case TheoremId::log_ric_inf_lambda:
        case TheoremId::log_ric_inf_bounded:
            return std::pow((w.beta + 1.0 - slope) / p, p);
        case TheoremId::bv_improvement:
        case TheoremId::sphere_distance:
            return std::pow((p - m.dim) / p, p);
        case TheoremId::uncertainty:
            return (p - m.dim) / p;
    }
    throw std::logic_error("sharp_constant: unreachable");
}

FunctionalValue hardy_lhs(const RadialModel& m, const WeightSpec& w,
                          const RadialTrial& u, Tolerance tol) {
    return run_integrand(build_integrand(m, w, u, Side::lhs), m.dim, tol);
}

FunctionalValue hardy_rhs(const RadialModel& m, const WeightSpec& w,
                          const RadialTrial& u, Tolerance tol) {
    return run_integrand(build_integrand(m, w, u, Side::rhs), m.dim, tol);
}

FunctionalValue hardy_quotient(const RadialModel& m, const WeightSpec& w,
                               const RadialTrial& u, Tolerance tol) {
    const FunctionalValue lhs = hardy_lhs(m, w, u, tol);
    const FunctionalValue rhs = hardy_rhs(m, w, u, tol);
    FunctionalValue out;
    if (lhs.verdict != Verdict::converged) return lhs;
    if (rhs.verdict != Verdict::converged) return rhs;
    if (!(rhs.value > kZeroTrialFloor))
        throw std::invalid_argument(
            "hardy_quotient: trial is identically zero (rhs vanishes)");
    out.value = lhs.value / rhs.value;
    return out;
}

std::pair<FunctionalValue, FunctionalValue> uncertainty_product(
    const RadialModel& m, double p, const RadialTrial& u, Tolerance tol) {
    if (!(p > m.dim))
        throw std::invalid_argument("uncertainty_product: requires p > n");
    const double q = p / (p - 1.0);
    const int n = m.dim;

    WeightedIntegrand iq;
    iq.a = std::max(0.0, u.support.lo);
    iq.b = std::min(m.diameter(), u.support.hi);
    iq.breaks = u.breakpoints;
    iq.f = [&m, &u, q](double r) {
        const double uv = u.eval(r);
        if (uv == 0.0) return 0.0;
        return std::pow(r * std::abs(uv), q) * density(m, r);
    };
    if (iq.a <= 0.0) iq.hints.left_exponent = q * (u.left_order + 1.0) + (n - 1);
    if (iq.b >= m.diameter()) iq.hints.right_exponent = n - 1;

    WeightSpec plain{WeightSpec::Kind::power_distance, p, -p, 1.0, 0.0};
    // |grad u|^p with unit weight: reuse the lhs builder with beta = -p
    const FunctionalValue grad_term =
        run_integrand(build_integrand(m, plain, u, Side::lhs), n, tol);
    const FunctionalValue q_term = run_integrand(iq, n, tol);

    WeightedIntegrand i2 = iq;
    i2.f = [&m, &u](double r) {
        const double uv = u.eval(r);
        return uv == 0.0 ? 0.0 : uv * uv * density(m, r);
    };
    i2.hints = {};
    if (i2.a <= 0.0) i2.hints.left_exponent = 2.0 * u.left_order + (n - 1);
    if (i2.b >= m.diameter()) i2.hints.right_exponent = n - 1;
    const FunctionalValue sq_term = run_integrand(i2, n, tol);

    FunctionalValue lhs, rhs;
    lhs.verdict = std::max({q_term.verdict, grad_term.verdict});
    lhs.value = std::pow(q_term.value, 1.0 / q) * std::pow(grad_term.value, 1.0 / p);
    rhs.verdict = sq_term.verdict;
    rhs.value = (p - n) / p * sq_term.value;
    return {lhs, rhs};
}

std::pair<FunctionalValue, FunctionalValue> bv_check(const RadialModel& m,
                                                     double p,
                                                     const RadialTrial& u,
                                                     double theta,
                                                     Tolerance tol) {
    if (!(p >= 2.0) || !(p > m.dim))
        throw std::invalid_argument("bv_check: requires p >= 2 and p > n");
    if (!(theta >= 0.0))
        throw std::invalid_argument("bv_check: theta must be >= 0");
    const int n = m.dim;

    WeightSpec w_p{WeightSpec::Kind::power_distance, p, -p, 1.0, 0.0};
    const FunctionalValue lhs =
        run_integrand(build_integrand(m, w_p, u, Side::lhs), n, tol);
    const FunctionalValue hardy_term =
        run_integrand(build_integrand(m, w_p, u, Side::rhs), n, tol);

    WeightSpec w_rem{WeightSpec::Kind::power_distance, p, -(p - 2.0), 1.0, 0.0};
    const FunctionalValue rem_term =
        run_integrand(build_integrand(m, w_rem, u, Side::rhs), n, tol);

    const double theta_n = (p - n) / p;
    FunctionalValue rhs;
    rhs.verdict = std::max(hardy_term.verdict, rem_term.verdict);
    rhs.value = std::pow(theta_n, p) * hardy_term.value +
                (2.0 * theta / p) * std::pow(theta_n, p - 2.0) * rem_term.value;
    return {lhs, rhs};
}

std::vector<RadialTrial> standard_suite(const RadialModel& m,
                                        const WeightSpec& w,
                                        const SuiteOptions& opts) {
    std::vector<RadialTrial> suite;
    const double diam = m.diameter();
    const double kappa_min = w.is_log() ? (w.p - m.dim) / w.p
                                        : (-w.beta - m.dim) / w.p;

    const std::vector<std::pair<std::vector<double>, const char*>> polys = {
        {{1, -1}, "cos1"},                  // 1 - x
        {{1, -2, 1}, "cos2"},               // (1-x)^2
        {{1, -3, 3, -1}, "cos3"},           // (1-x)^3
        {{1, 0, -1}, "sin_sq"},             // (1-x)(1+x)
        {{2, -1, -1}, "cos_mix"},           // (1-x)(2+x)
        {{1, -1.5, 0, 0.5}, "cos_cub"},     // (1-x)^2 (1 + x/2)
        {{1, -1, 1, -1}, "cos_quart"},      // (1-x)(1+x^2)
        {{2, -3, 0, 1}, "cos_skew"},        // (1-x)^2 (2+x)
    };
    for (const auto& [coeffs, label] : polys) {
        RadialTrial t = cos_poly_trial(m, coeffs, label);
        if (t.left_order > kappa_min + 1e-9) suite.push_back(std::move(t));
    }

    const double offsets[] = {0.034, 0.3, 0.8, 1.5};
    int idx = 0;
    for (double off : offsets) {
        const double kappa = std::max(kappa_min, 0.0) + off;
        const bool near = (idx++ % 2) == 0;
        const double r1 = (near ? 0.35 : 0.6) * diam;
        const double r2 = (near ? 0.5 : 0.8) * diam;
        suite.push_back(power_bump_trial(m, kappa, r1, r2,
                                         "bump_k" + std::to_string(idx)));
        suite.push_back(power_bump_trial(m, kappa + 0.15, 0.45 * diam,
                                         0.7 * diam,
                                         "bump_w" + std::to_string(idx)));
    }

    suite.push_back(annulus_bump_trial(m, 0.3 * diam, 0.45 * diam, 0.75 * diam,
                                       0.9 * diam, "annulus_outer"));
    suite.push_back(annulus_bump_trial(m, 0.15 * diam, 0.3 * diam, 0.5 * diam,
                                       0.65 * diam, "annulus_inner"));

    if (opts.include_extremizers) {
        for (double eps : opts.extremizer_eps) {
            // keep a profile only when it is a finite-energy test function
            // for this weight (singular-branch integrability)
            const ExtremalFamily fam = extremal_family(m, w, eps);
            bool integrable;
            if (w.is_log()) {
                const double k1 = w.beta - w.p * fam.c_eps_half;
                const double k2 = m.dim - 1.0 - w.p;
                integrable = log_integral_valid(LogIntegralPart::h1, k1, k2,
                                                w.d, w.d);
            } else {
                integrable =
                    fam.c_eps * w.p + w.beta + m.dim - 1.0 > -1.0;
            }
            if (integrable) suite.push_back(near_extremal(m, w, eps));
        }
    }

    // top up with additional interior profiles if filters thinned the set
    double extra = 0.5;
    while (suite.size() < 20) {
        suite.push_back(power_bump_trial(
            m, std::max(kappa_min, 0.0) + extra, 0.3 * diam, 0.55 * diam,
            "bump_extra" + std::to_string(suite.size())));
        extra += 0.4;
    }
    return suite;
}

}  // namespace hardylab
