#include "hardylab/extremizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hardylab {

namespace {

/// Distance-power weights with beta = -p on a constant-exponent model are
/// driven by the substituted profile r^((p-n)/(p-1)); feeding that profile
/// to the generic construction is equivalent to shrinking eps by the
/// profile exponent, which is what makes the quotients track the optimal
/// constant tightly.
double effective_eps(const RadialModel& m, const WeightSpec& w, double eps) {
    if (!w.is_log() && w.beta == -w.p && w.p > m.dim && m.psi_constant()) {
        const double a = (w.p - m.dim) / (w.p - 1.0);
        return eps * a;
    }
    return eps;
}

}  // namespace

ExtremalFamily extremal_family(const RadialModel& m, const WeightSpec& w,
                               double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("extremal_family: eps must be > 0");
    ExtremalFamily fam;
    fam.weight = w;
    fam.eps = effective_eps(m, w, eps);
    const double base =
        std::abs((w.alpha - 1.0) * (w.p - 1.0) - w.beta - 1.0);
    fam.c_eps = (base + fam.eps) / w.p;
    fam.c_eps_half = (base + 0.5 * fam.eps) / w.p;
    const double inj = m.injectivity_radius();
    if (w.is_log()) {
        fam.s = std::log(2.0 * w.d / inj);
        fam.split_r = 0.5 * inj;  // rho <= s is the outer region
    } else {
        fam.s = 0.5 * inj;
        fam.split_r = fam.s;
    }
    return fam;
}

RadialTrial near_extremal(const RadialModel& m, const WeightSpec& w,
                          double eps) {
    const ExtremalFamily fam = extremal_family(m, w, eps);
    const double cp = fam.c_eps;
    const double cm = fam.c_eps_half;
    const double s = fam.s;
    RadialTrial v;
    v.support = {0.0, m.diameter()};
    v.breakpoints = {fam.split_r};
    v.label = "near_extremal_eps" + std::to_string(eps);

    if (!w.is_log()) {
        // inner ball: (r/s)^cp, outer: (r/s)^-cm
        v.value = [=](double r) {
            return r <= s ? std::pow(r / s, cp) : std::pow(r / s, -cm);
        };
        v.deriv = [=](double r) {
            return r <= s ? cp / s * std::pow(r / s, cp - 1.0)
                          : -cm / s * std::pow(r / s, -cm - 1.0);
        };
        v.left_order = cp;
    } else {
        // rho = log(d/r): sublevel set is the outer annulus
        const double d = w.d;
        const double split = fam.split_r;
        v.value = [=](double r) {
            const double rho = std::log(d / r);
            return r >= split ? std::pow(rho / s, cp) : std::pow(rho / s, -cm);
        };
        v.deriv = [=](double r) {
            const double rho = std::log(d / r);
            return r >= split ? -cp / (s * r) * std::pow(rho / s, cp - 1.0)
                              : cm / (s * r) * std::pow(rho / s, -cm - 1.0);
        };
        v.left_order = 0.0;
        v.left_log_power = -cm;
        v.log_scale = d;
    }
    return v;
}

RadialTrial truncate(const RadialTrial& v, const RadialModel& m,
                     double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("truncate: need 0 < delta < 1");

    // locate the level crossings v = delta on a scan grid + bisection
    const double diam = m.diameter();
    const int scan = 4096;
    std::vector<double> crossings;
    double prev_r = diam * 1e-9;
    double prev_v = v.eval(prev_r);
    for (int i = 1; i <= scan; ++i) {
        const double r = diam * (1e-9 + (1.0 - 2e-9) * i / scan);
        const double val = v.eval(r);
        if ((prev_v - delta) * (val - delta) < 0.0) {
            double lo = prev_r, hi = r;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((v.eval(mid) - delta) * (v.eval(lo) - delta) <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            crossings.push_back(0.5 * (lo + hi));
        }
        prev_r = r;
        prev_v = val;
    }

    RadialTrial out;
    out.label = v.label + "_trunc" + std::to_string(delta);
    if (crossings.empty()) {
        // delta above sup v: the zero trial
        out.value = [](double) { return 0.0; };
        out.deriv = [](double) { return 0.0; };
        out.support = {0.0, 0.0};
        return out;
    }
    const double lo = crossings.front();
    const double hi = crossings.size() > 1 ? crossings.back() : diam;

    auto base_val = v.value;
    auto base_der = v.deriv;
    out.value = [base_val, delta](double r) {
        return std::max(base_val(r) - delta, 0.0);
    };
    out.deriv = [base_val, base_der, delta](double r) {
        return base_val(r) > delta ? base_der(r) : 0.0;
    };
    out.support = {lo, hi};
    out.breakpoints = v.breakpoints;
    out.breakpoints.insert(out.breakpoints.end(), crossings.begin(),
                           crossings.end());
    out.smooth_at_pole = false;
    return out;
}

std::vector<SweepRow> sharpness_sweep(const RadialModel& m, TheoremId id,
                                      const WeightSpec& w,
                                      const CurvatureHypothesis& hyp,
                                      std::span<const double> eps_list,
                                      Tolerance tol) {
    const Admissibility adm = admissible(id, m, w, hyp);
    if (!adm.ok)
        throw std::invalid_argument(
            "sharpness_sweep: weight not admissible for the theorem");
    const double sharp = sharp_constant(id, m, w, hyp);

    std::vector<double> eps_sorted(eps_list.begin(), eps_list.end());
    std::sort(eps_sorted.rbegin(), eps_sorted.rend());

    std::vector<SweepRow> rows;
    rows.reserve(eps_sorted.size());
    for (double eps : eps_sorted) {
        if (!(eps > 0.0))
            throw std::invalid_argument("sharpness_sweep: eps must be > 0");
        const ExtremalFamily fam = extremal_family(m, w, eps);
        const RadialTrial v = near_extremal(m, w, eps);
        const FunctionalValue q = hardy_quotient(m, w, v, tol);
        SweepRow row;
        row.eps = eps;
        row.c_eps = fam.c_eps;
        row.quotient = q.value;
        row.c_eps_pow_p = std::pow(fam.c_eps, w.p);
        row.sharp = sharp;
        row.gap = q.value - sharp;
        row.verdict = q.verdict;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hardylab
