#include "hardylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "hardylab/special_functions.hpp"

namespace hardylab {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule.
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double integral = 0.0;
    double error = 0.0;
};

PanelEstimate gauss_kronrod(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = kWgk[7] * f(c);
    double resg = kWg[3] * f(c);
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    PanelEstimate e;
    e.integral = resk * h;
    e.error = std::abs((resk - resg) * h);
    return e;
}

/// Small fixed-depth adaptive pass for a single cell; peel cells are smooth
/// inside, so this almost never recurses.
PanelEstimate integrate_cell(const RealFn& f, double a, double b, double tol,
                             int depth, int* evals) {
    PanelEstimate whole = gauss_kronrod(f, a, b);
    ++*evals;
    if (whole.error <= tol || depth >= 12) return whole;
    const double mid = 0.5 * (a + b);
    PanelEstimate l = integrate_cell(f, a, mid, 0.5 * tol, depth + 1, evals);
    PanelEstimate r = integrate_cell(f, mid, b, 0.5 * tol, depth + 1, evals);
    return {l.integral + r.integral, l.error + r.error};
}

struct Panel {
    double a, b, integral, error;
    int depth;
    bool operator<(const Panel& o) const { return error < o.error; }
};

constexpr int kMaxPanels = 6000;
constexpr int kMaxDepth = 60;
constexpr int kMaxPeel = 60;
constexpr int kDivergenceFromPeel = 10;
constexpr int kDivergenceRunLength = 5;
constexpr double kDecayThreshold = 0.999;

struct TailModel {
    double exponent = 0.0;
    double log_power = 0.0;
    double log_scale = 0.0;
    bool integrable() const {
        return endpoint_model_integrable(exponent, log_power);
    }
    double value(double t) const {
        double v = std::pow(t, exponent);
        if (log_power != 0.0)
            v *= std::pow(std::log(log_scale / t), log_power);
        return v;
    }
    double integral_to(double eta) const {
        return endpoint_model_integral(exponent, log_power, log_scale, eta);
    }
};

struct TailResult {
    double value = 0.0;
    double error = 0.0;
    double consumed = 0.0;
    int cells = 0;
    Verdict verdict = Verdict::converged;
};

TailResult diverged_tail(int cells) {
    TailResult t;
    t.cells = cells;
    t.verdict = Verdict::divergent;
    t.value = std::numeric_limits<double>::quiet_NaN();
    t.error = std::numeric_limits<double>::infinity();
    return t;
}

/// Integrate f over the tail of width `width` attached to `edge`
/// (sign=+1: interval (edge, edge+width]; sign=-1: [edge-width, edge)).
/// Geometric peeling toward the edge; the unpeeled stub is integrated
/// analytically under the declared endpoint model with a sampled prefactor.
TailResult integrate_tail(const RealFn& f, double edge, double width, int sign,
                          const TailModel& model, Tolerance tol) {
    TailResult out;
    out.consumed = width;
    const auto point = [&](double t) { return edge + sign * t; };
    const bool model_ok = model.integrable();

    double partial = 0.0;
    double gk_err = 0.0;
    double prev_total = std::numeric_limits<double>::quiet_NaN();
    double prev_incr = std::numeric_limits<double>::quiet_NaN();
    double last_stub_err = 0.0;
    int stale = 0;
    int settled = 0;

    for (int k = 0; k < kMaxPeel; ++k) {
        const double local_tol =
            0.25 * std::max(tol.abs, tol.rel * std::abs(partial));
        const double hi = width * std::ldexp(1.0, -k);
        const double lo = 0.5 * hi;
        const double ra = sign > 0 ? point(lo) : point(hi);
        const double rb = sign > 0 ? point(hi) : point(lo);
        PanelEstimate cell =
            integrate_cell(f, ra, rb, local_tol / kMaxPeel, 0, &out.cells);
        const double incr = cell.integral;
        partial += incr;
        gk_err += cell.error;

        if (!model_ok && k >= kDivergenceFromPeel &&
            std::abs(prev_incr) > tol.abs) {
            const double ratio = std::abs(incr) / std::abs(prev_incr);
            stale = ratio >= kDecayThreshold ? stale + 1 : 0;
            if (stale >= kDivergenceRunLength) return diverged_tail(out.cells);
        }
        prev_incr = incr;

        double stub = 0.0;
        double stub_err = 0.0;
        if (model_ok) {
            const double x1 = 0.3 * lo;
            const double x2 = 0.7 * lo;
            const double m1 = model.value(x1);
            const double m2 = model.value(x2);
            double c1 = 0.0, c2 = 0.0;
            if (std::abs(m1) > 1e-290) c1 = f(point(x1)) / m1;
            if (std::abs(m2) > 1e-290) c2 = f(point(x2)) / m2;
            const double c = 0.5 * (c1 + c2);
            const double mass = model.integral_to(lo);
            stub = c * mass;
            stub_err = std::abs(c1 - c2) * std::abs(mass);
        } else {
            stub_err = std::abs(f(point(0.5 * lo))) * lo;
        }
        last_stub_err = stub_err;

        const double total = partial + stub;
        if (!std::isnan(prev_total) &&
            std::abs(total - prev_total) <= local_tol &&
            stub_err <= local_tol) {
            if (++settled >= 2) {
                out.value = total;
                out.error =
                    gk_err + stub_err + std::abs(total - prev_total);
                return out;
            }
        } else {
            settled = 0;
        }
        prev_total = total;
    }

    if (!model_ok && last_stub_err > tol.abs) return diverged_tail(out.cells);
    out.verdict = Verdict::max_depth;
    out.value = prev_total;
    out.error = gk_err + last_stub_err + tol.abs;
    return out;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::converged: return "converged";
        case Verdict::divergent: return "divergent";
        case Verdict::max_depth: return "max_depth";
    }
    return "unknown";
}

bool endpoint_model_integrable(double g, double l) {
    if (g > -1.0) return true;
    return g == -1.0 && l < -1.0;
}

double endpoint_model_integral(double g, double l, double scale, double eta) {
    if (l == 0.0) return std::pow(eta, g + 1.0) / (g + 1.0);
    if (!(scale > 0.0) || eta >= scale)
        throw std::invalid_argument(
            "endpoint_model_integral: log model requires 0 < eta < scale");
    const double t0 = std::log(scale / eta);
    if (g == -1.0) {
        // int_0^eta t^-1 log(scale/t)^l dt = t0^(l+1)/(-l-1) for l < -1
        return std::pow(t0, l + 1.0) / (-l - 1.0);
    }
    // u = log(scale/t):  scale^(g+1) (g+1)^-(l+1) Gamma(l+1, (g+1) t0)
    const double a = l + 1.0;
    const double x = (g + 1.0) * t0;
    return std::pow(scale, g + 1.0) * std::pow(g + 1.0, -a) *
           upper_incomplete_gamma(a, x);
}

QuadratureResult integrate_interval(const RealFn& f, double a, double b,
                                    const EndpointBehavior& hints,
                                    Tolerance tol,
                                    std::span<const double> breakpoints) {
    if (!(tol.abs > 0.0))
        throw std::invalid_argument("integrate_interval: tolerance must be > 0");
    if (!(b > a))
        throw std::invalid_argument("integrate_interval: empty interval");

    QuadratureResult out;

    // A right-end log factor is smooth there when log_scale > b; when
    // log_scale == b it degenerates to an extra power of (b-r).
    TailModel left{hints.left_exponent, hints.left_log_power, hints.log_scale};
    TailModel right{hints.right_exponent, 0.0, 0.0};
    if (hints.right_log_power != 0.0 && hints.log_scale > 0.0 &&
        hints.log_scale <= b * (1.0 + 1e-12))
        right.exponent += hints.right_log_power;

    std::vector<double> edges;
    edges.push_back(a);
    for (double bp : breakpoints)
        if (bp > a && bp < b) edges.push_back(bp);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const bool left_singular =
        std::abs(left.exponent) > 1e-14 || left.log_power != 0.0;
    const bool right_singular = std::abs(right.exponent) > 1e-14;

    double interior_lo = a;
    double interior_hi = b;
    double total = 0.0;
    double err = 0.0;

    if (left_singular) {
        const double wmax =
            std::min(0.5 * (edges[1] - a), 0.125 * (b - a));
        TailResult t = integrate_tail(f, a, wmax, +1, left, tol);
        out.subdivisions += t.cells;
        if (t.verdict != Verdict::converged) {
            out.verdict = t.verdict;
            out.value = t.value;
            out.abs_error_estimate = t.error;
            return out;
        }
        total += t.value;
        err += t.error;
        interior_lo = a + t.consumed;
    }
    if (right_singular) {
        const double wmax =
            std::min(0.5 * (b - edges[edges.size() - 2]), 0.125 * (b - a));
        TailResult t = integrate_tail(f, b, wmax, -1, right, tol);
        out.subdivisions += t.cells;
        if (t.verdict != Verdict::converged) {
            out.verdict = t.verdict;
            out.value = t.value;
            out.abs_error_estimate = t.error;
            return out;
        }
        total += t.value;
        err += t.error;
        interior_hi = b - t.consumed;
    }

    std::priority_queue<Panel> queue;
    std::vector<double> cuts;
    cuts.push_back(interior_lo);
    for (double e : edges)
        if (e > interior_lo && e < interior_hi) cuts.push_back(e);
    cuts.push_back(interior_hi);
    double interior_sum = 0.0;
    double interior_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        PanelEstimate e = gauss_kronrod(f, cuts[i], cuts[i + 1]);
        queue.push({cuts[i], cuts[i + 1], e.integral, e.error, 0});
        interior_sum += e.integral;
        interior_err += e.error;
    }

    const auto target = [&](double current) {
        return 0.5 * std::max(tol.abs, tol.rel * std::abs(current));
    };

    int panels = static_cast<int>(queue.size());
    while (!queue.empty() && interior_err > target(total + interior_sum) &&
           panels < kMaxPanels) {
        Panel worst = queue.top();
        queue.pop();
        if (worst.depth >= kMaxDepth) {
            out.verdict = Verdict::max_depth;
            queue.push(worst);
            break;
        }
        interior_sum -= worst.integral;
        interior_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        PanelEstimate l = gauss_kronrod(f, worst.a, mid);
        PanelEstimate r = gauss_kronrod(f, mid, worst.b);
        queue.push({worst.a, mid, l.integral, l.error, worst.depth + 1});
        queue.push({mid, worst.b, r.integral, r.error, worst.depth + 1});
        interior_sum += l.integral + r.integral;
        interior_err += l.error + r.error;
        ++panels;
        ++out.subdivisions;
    }
    if (panels >= kMaxPanels) out.verdict = Verdict::max_depth;

    out.value = total + interior_sum;
    out.abs_error_estimate = err + interior_err;
    if (out.verdict == Verdict::converged &&
        out.abs_error_estimate >
            std::max(tol.abs, tol.rel * std::abs(out.value)))
        out.verdict = Verdict::max_depth;
    return out;
}

QuadratureResult integrate_radial(const RadialModel& m, const RealFn& f,
                                  const EndpointBehavior& hints,
                                  Tolerance tol) {
    return integrate_interval(f, 0.0, m.diameter(), hints, tol);
}

bool log_integral_valid(LogIntegralPart part, double k1, double k2, double l,
                        double d) {
    if (part == LogIntegralPart::h1)
        return k2 > -1.0 || (k2 == -1.0 && k1 < -1.0);
    if (l < d) return true;
    return k1 > -1.0;
}

QuadratureResult log_power_integral(LogIntegralPart part, double k1, double k2,
                                    double s, double l, double d,
                                    Tolerance tol) {
    if (!(s > 0.0) || !(s < d))
        throw std::invalid_argument("log_power_integral: need 0 < s < d");
    if (part == LogIntegralPart::h2 && (!(l > s) || !(l <= d)))
        throw std::invalid_argument("log_power_integral: need s < l <= d");

    QuadratureResult out;
    if (!log_integral_valid(part, k1, k2, l, d)) {
        out.verdict = Verdict::divergent;
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.abs_error_estimate = std::numeric_limits<double>::infinity();
        return out;
    }

    if (part == LogIntegralPart::h1) {
        out.value = endpoint_model_integral(k2, k1, d, s);
        out.abs_error_estimate = 1e-14 * std::abs(out.value);
        return out;
    }

    const auto f = [=](double r) {
        return std::pow(std::log(d / r), k1) * std::pow(r, k2);
    };
    EndpointBehavior hints;
    hints.log_scale = d;
    if (l == d) hints.right_log_power = k1;  // log(d/r) ~ (d-r)/d there
    return integrate_interval(f, s, l, hints, tol);
}

}  // namespace hardylab
