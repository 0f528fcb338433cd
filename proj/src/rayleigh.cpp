#include "hardylab/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hardylab {

namespace {

/// 4-point Gauss-Legendre on [0,1].
const double kGx[4] = {0.069431844202973712, 0.330009478207571868,
                       0.669990521792428132, 0.930568155797026288};
const double kGw[4] = {0.173927422568726929, 0.326072577431273071,
                       0.326072577431273071, 0.173927422568726929};

double form_weight(const RadialModel& m, double r) {
    return std::pow(r, 2.0 - m.dim) * density(m, r);
}

/// Mesh on [cutoff, diam] geometrically clustered at both ends, nested
/// under element-count doubling.  far_edge_fraction sets the deepest shell
/// at the far pole; a pinned far end needs deep shells because the
/// constrained minimizer transitions across a zero-capacity layer.
std::vector<double> radial_mesh(const RadialModel& m, double cutoff,
                                int elements, double far_edge_fraction) {
    if (elements < 64)
        throw std::invalid_argument("radial_mesh: need >= 64 elements");
    if ((elements & (elements - 1)) != 0)
        throw std::invalid_argument("radial_mesh: element count must be 2^k");
    const double diam = m.diameter();
    const double mid = 0.5 * (cutoff + diam);
    const int half = elements / 2;

    std::vector<double> mesh;
    mesh.reserve(elements + 2);
    // left half: geometric from the cutoff up to mid; nested under doubling
    const double lratio = std::log(mid / cutoff);
    for (int i = 0; i <= half; ++i)
        mesh.push_back(cutoff * std::exp(lratio * i / double(half)));
    // right half: geometric in (diam - r) down to a fixed boundary offset
    const double edge = far_edge_fraction * diam;
    const double rratio = std::log((diam - mid) / edge);
    for (int i = half - 1; i >= 0; --i)
        mesh.push_back(diam - edge * std::exp(rratio * i / double(half)));
    mesh.push_back(diam);
    std::sort(mesh.begin(), mesh.end());
    mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
    return mesh;
}

struct LdlFactor {
    std::vector<double> d;
    std::vector<double> l;
};

/// LDL^T of a symmetric tridiagonal matrix (possibly indefinite after a
/// shift; small pivots are nudged).
LdlFactor ldl(const Tridiagonal& T) {
    const std::size_t n = T.size();
    LdlFactor f;
    f.d.resize(n);
    f.l.assign(n > 0 ? n - 1 : 0, 0.0);
    double prev_d = 0.0, prev_off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double di = T.diag[i];
        if (i > 0) di -= prev_off * prev_off / prev_d;
        if (std::abs(di) < 1e-300) di = di < 0 ? -1e-300 : 1e-300;
        f.d[i] = di;
        if (i + 1 < n) {
            f.l[i] = T.off[i] / di;
            prev_off = T.off[i];
        }
        prev_d = di;
    }
    return f;
}

void ldl_solve(const LdlFactor& f, std::vector<double>& x) {
    const std::size_t n = f.d.size();
    for (std::size_t i = 1; i < n; ++i) x[i] -= f.l[i - 1] * x[i - 1];
    for (std::size_t i = 0; i < n; ++i) x[i] /= f.d[i];
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= f.l[i] * x[i + 1];
}

void tri_mult(const Tridiagonal& T, const std::vector<double>& x,
              std::vector<double>& y) {
    const std::size_t n = T.size();
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = T.diag[i] * x[i];
        if (i > 0) v += T.off[i - 1] * x[i - 1];
        if (i + 1 < n) v += T.off[i] * x[i + 1];
        y[i] = v;
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

Tridiagonal shifted(const Tridiagonal& S, const Tridiagonal& M, double sigma) {
    Tridiagonal T = S;
    for (std::size_t i = 0; i < T.size(); ++i) T.diag[i] -= sigma * M.diag[i];
    for (std::size_t i = 0; i + 1 < T.size(); ++i)
        T.off[i] -= sigma * M.off[i];
    return T;
}

}  // namespace

RadialForms assemble_radial_forms(const RadialModel& m, double cutoff,
                                  int elements, bool dirichlet_far,
                                  double far_edge_fraction) {
    if (!(cutoff > 0.0) || !(cutoff < 0.25 * m.diameter()))
        throw std::invalid_argument(
            "assemble_radial_forms: cutoff must lie in (0, diam/4)");

    RadialForms out;
    out.nodes = radial_mesh(m, cutoff, elements, far_edge_fraction);
    const std::size_t nn = out.nodes.size();

    // unknowns: nodes 1..nn-1 (Dirichlet at the cutoff node 0); optionally
    // the far node is pinned as well
    const std::size_t unknowns = dirichlet_far ? nn - 2 : nn - 1;
    out.stiffness.diag.assign(unknowns, 0.0);
    out.stiffness.off.assign(unknowns > 0 ? unknowns - 1 : 0, 0.0);
    out.mass.diag.assign(unknowns, 0.0);
    out.mass.off.assign(unknowns > 0 ? unknowns - 1 : 0, 0.0);

    const auto add = [&](Tridiagonal& T, std::size_t node_i, std::size_t node_j,
                         double v) {
        // map mesh node -> unknown index (Dirichlet nodes are skipped)
        const auto idx = [&](std::size_t node) -> long {
            if (node == 0) return -1;
            if (dirichlet_far && node == nn - 1) return -1;
            return static_cast<long>(node - 1);
        };
        const long i = idx(node_i);
        const long j = idx(node_j);
        if (i < 0 || j < 0) return;
        if (i == j)
            T.diag[static_cast<std::size_t>(i)] += v;
        else
            T.off[static_cast<std::size_t>(std::min(i, j))] += v;
    };

    for (std::size_t e = 0; e + 1 < nn; ++e) {
        const double x0 = out.nodes[e];
        const double x1 = out.nodes[e + 1];
        const double h = x1 - x0;
        double w00 = 0.0, w01 = 0.0, w11 = 0.0, s_int = 0.0;
        for (int g = 0; g < 4; ++g) {
            const double r = x0 + h * kGx[g];
            const double w = form_weight(m, r) * kGw[g] * h;
            const double phi1 = kGx[g];
            const double phi0 = 1.0 - phi1;
            w00 += w * phi0 * phi0;
            w01 += w * phi0 * phi1;
            w11 += w * phi1 * phi1;
            s_int += w;
        }
        if (!(s_int > 0.0) || !std::isfinite(s_int))
            throw std::runtime_error(
                "assemble_radial_forms: weight underflow in an element");
        const double k = s_int / (h * h);  // u' constant per element
        add(out.stiffness, e, e, k);
        add(out.stiffness, e + 1, e + 1, k);
        add(out.stiffness, e, e + 1, -k);
        add(out.mass, e, e, w00);
        add(out.mass, e + 1, e + 1, w11);
        add(out.mass, e, e + 1, w01);
    }
    return out;
}

SmallestEig smallest_generalized_eig(const Tridiagonal& S, const Tridiagonal& M,
                                     int iteration_cap) {
    const std::size_t n = S.size();
    if (n == 0) throw std::invalid_argument("smallest_generalized_eig: empty");

    SmallestEig out;
    std::vector<double> x(n, 1.0), mx, sx, y;
    tri_mult(M, x, mx);
    {
        const double s = std::sqrt(dot(x, mx));
        for (auto& v : x) v /= s;
        for (auto& v : mx) v /= s;
    }

    double sigma = 0.0;
    LdlFactor fac = ldl(S);
    double theta_prev = 0.0;
    for (int it = 0; it < iteration_cap; ++it) {
        ++out.iterations;
        y = mx;
        ldl_solve(fac, y);
        tri_mult(M, y, mx);
        const double s = std::sqrt(dot(y, mx));
        for (auto& v : y) v /= s;
        for (auto& v : mx) v /= s;
        x = y;

        tri_mult(S, x, sx);
        const double theta = dot(x, sx);  // x already M-normalized
        const double res_num = [&] {
            std::vector<double> r(n);
            for (std::size_t i = 0; i < n; ++i) r[i] = sx[i] - theta * mx[i];
            return norm(r);
        }();
        out.value = theta;
        out.residual = res_num / std::max(norm(mx), 1e-300);
        if (out.residual <= 1e-10 && std::abs(theta - theta_prev) <=
                                         1e-12 * std::max(1.0, std::abs(theta))) {
            out.vector = x;
            return out;
        }
        theta_prev = theta;

        // refresh the shift once the iterate has locked onto the bottom of
        // the spectrum; keep it below theta so the pencil stays definite
        if (it % 4 == 3 && std::isfinite(theta) &&
            out.residual < 0.05 * std::max(1.0, std::abs(theta)) &&
            std::abs(theta - sigma) > 1e-8 * std::max(1.0, theta)) {
            sigma = 0.9 * theta;
            fac = ldl(shifted(S, M, sigma));
        }
    }
    throw std::runtime_error(
        "smallest_generalized_eig: iteration cap exceeded");
}

double theta_radial(const RadialModel& m, double inner_cutoff, int elements) {
    const RadialForms forms = assemble_radial_forms(m, inner_cutoff, elements);
    return smallest_generalized_eig(forms.stiffness, forms.mass).value;
}

double theta_truncated(const RadialModel& m, double eps, int elements) {
    return theta_radial(m, eps, elements);
}

EigenResult theta_pipeline(const RadialModel& m, std::vector<double> cutoffs,
                           std::vector<int> grids) {
    if (cutoffs.empty())
        cutoffs = {1e-2 * m.diameter(), 1e-3 * m.diameter(),
                   1e-4 * m.diameter()};
    if (grids.empty()) grids = {256, 512, 1024};

    EigenResult res;
    res.inner_cutoffs = cutoffs;
    res.grid_sizes = grids;
    const double finest_cutoff = cutoffs.back();
    for (int g : grids)
        res.values_per_grid.push_back(theta_radial(m, finest_cutoff, g));
    for (double c : cutoffs)
        res.values_per_cutoff.push_back(theta_radial(m, c, grids.back()));

    const std::size_t ng = res.values_per_grid.size();
    if (ng >= 2) {
        // piecewise-linear elements converge at second order per refinement
        const double fine = res.values_per_grid[ng - 1];
        const double coarse = res.values_per_grid[ng - 2];
        res.extrapolated = fine + (fine - coarse) / 3.0;
    } else {
        res.extrapolated = res.values_per_grid.back();
    }
    res.theta = res.values_per_grid.back();
    return res;
}

}  // namespace hardylab
