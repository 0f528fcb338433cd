#include <doctest.h>

#include <cmath>
#include <limits>

#include "hardylab/curvature.hpp"
#include "oracles.hpp"

using namespace hardylab;

namespace {
const double kPi = 3.14159265358979323846;
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("ricci of round spheres is constant in every direction") {
    const RadialModel s3 = build_model(3, 1.0, {});
    for (double N : {3.0, 5.0, kInf}) {
        CHECK(ricci_n_direction(s3, 1.0, N, Direction::radial) ==
              doctest::Approx(2.0));
        CHECK(ricci_n_direction(s3, 1.0, N, Direction::tangential) ==
              doctest::Approx(2.0));
    }
    const RadialModel big = build_model(3, 2.0, {});
    CHECK(ricci_n_direction(big, 1.0, kInf, Direction::radial) ==
          doctest::Approx(0.5));
}

TEST_CASE("ricci with a radial density exponent") {
    const RadialModel m = build_model(2, 1.0, {0.0, 1.0});  // Psi = cos r
    CHECK(ricci_n_direction(m, 0.3, kInf, Direction::radial) ==
          doctest::Approx(1.0 - std::cos(0.3)));
    CHECK(ricci_n_direction(m, kPi / 2, kInf, Direction::tangential) ==
          doctest::Approx(1.0));
    // Psi'' via finite differences of Psi'
    for (double r : {0.5, 1.2, 2.2}) {
        const double fd =
            oracles::diff([&](double s) { return psi_deriv(m, s); }, r, 1e-6);
        const double hess = ricci_n_direction(m, r, kInf, Direction::radial) - 1.0;
        CHECK(hess == doctest::Approx(fd).epsilon(1e-7));
    }
    // finite N subtracts the drift-squared term radially
    const double dpsi = psi_deriv(m, 0.9);
    CHECK(ricci_n_direction(m, 0.9, 5.0, Direction::radial) ==
          doctest::Approx(ricci_n_direction(m, 0.9, kInf, Direction::radial) -
                          dpsi * dpsi / 3.0));

    CHECK_THROWS_AS(ricci_n_direction(m, 0.5, 1.5, Direction::radial),
                    std::invalid_argument);
    CHECK_THROWS_AS(ricci_n_direction(m, 0.5, 2.0, Direction::radial),
                    std::invalid_argument);  // N = n needs constant Psi
    const RadialModel flat = build_model(2, 1.0, {0.7});
    CHECK_NOTHROW(ricci_n_direction(flat, 0.5, 2.0, Direction::radial));
}

TEST_CASE("comparison margin spot values") {
    const RadialModel s2 = build_model(2, 1.0, {});
    const auto ric2 = CurvatureHypothesis::ric_n(2.0);
    CHECK(comparison_margin(s2, ric2, kPi / 2) ==
          doctest::Approx(2.0 / kPi));
    // vanishes from above as r -> 0+
    const double tiny = comparison_margin(s2, ric2, 1e-7);
    CHECK(tiny > 0.0);
    CHECK(tiny < 1e-6);

    const RadialModel s2w = build_model(2, 1.0, {0.0, 1.0});
    const auto lam1 = CurvatureHypothesis::ric_inf_lambda(1.0);
    CHECK(comparison_margin(s2w, lam1, kPi / 2) ==
          doctest::Approx(2.0 / kPi));
}

TEST_CASE("comparison margin is nonnegative under a passing gate") {
    struct Case {
        RadialModel m;
        CurvatureHypothesis hyp;
    };
    std::vector<Case> cases;
    for (int n : {2, 3, 4, 5})
        cases.push_back({build_model(n, 1.0, {}),
                         CurvatureHypothesis::ric_n(double(n))});
    cases.push_back({build_model(2, 1.0, {0.0, 0.5}),
                     CurvatureHypothesis::ric_inf_lambda(0.5)});
    cases.push_back({build_model(2, 1.0, {0.0, 0.25}),
                     CurvatureHypothesis::ric_inf_bounded(0.25)});
    for (auto& c : cases) {
        const GateReport rep = hypothesis_gate(c.m, c.hyp, 2048);
        REQUIRE(rep.pass);
        CHECK(rep.min_ricci_radial >= -1e-12);
        CHECK(rep.min_ricci_tangential >= -1e-12);
        CHECK(rep.min_comparison_margin >= -1e-10);
        CHECK(c.hyp.margin_grid.size() == 2048);
    }
}

TEST_CASE("gate rejects models violating the hypothesis") {
    // strong drift: Psi = 3 cos r gives Ric_inf = 1 - 3 cos r < 0 near 0
    RadialModel m = build_model(2, 1.0, {0.0, 3.0});
    auto hyp = CurvatureHypothesis::ric_inf_lambda(3.0);
    const GateReport rep = hypothesis_gate(m, hyp, 512);
    CHECK_FALSE(rep.pass);
    CHECK(rep.min_ricci_radial < -1e-12);
    // side condition violation: lambda too small for the drift
    RadialModel m2 = build_model(2, 1.0, {0.0, 0.5});
    auto hyp2 = CurvatureHypothesis::ric_inf_lambda(0.1);
    const GateReport rep2 = hypothesis_gate(m2, hyp2, 512);
    CHECK_FALSE(rep2.pass);
    CHECK(rep2.min_aux < -1e-12);
}

TEST_CASE("volume ratios: values, monotonicity, limit dichotomy") {
    const RadialModel s2 = build_model(2, 1.0, {});
    CHECK(volume_ratio(s2, 1, 2.0, kPi / 2) == doctest::Approx(2.0 / kPi));
    CHECK(volume_ratio(s2, 2, 0.0, 1e-8) == doctest::Approx(1.0));
    CHECK(volume_ratio(s2, 3, 0.0, kPi / 4) ==
          doctest::Approx(std::sin(kPi / 4) / (kPi / 4)));
    CHECK_THROWS_AS(volume_ratio(s2, 4, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(volume_ratio(s2, 1, 2.0, -1.0), std::invalid_argument);

    const RadialModel s3 = build_model(3, 1.0, {});
    for (int kind : {1, 2, 3}) {
        const double param = kind == 1 ? 3.0 : 0.0;
        const auto grid = geometric_grid(0.0, s3.diameter(), 1024);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            CHECK(volume_ratio(s3, kind, param, grid[i + 1]) -
                      volume_ratio(s3, kind, param, grid[i]) <=
                  1e-10);
        }
    }

    // finite limit at 0 iff the comparison exponent matches the dimension
    const double r0 = 1e-7;
    CHECK(volume_ratio(s3, 1, 3.0, r0) / volume_ratio(s3, 1, 3.0, r0 / 2) ==
          doctest::Approx(1.0).epsilon(1e-6));
    // f ~ r^(n-N) blows up for N > n, so halving r doubles the ratio value
    CHECK(volume_ratio(s3, 1, 4.0, r0) / volume_ratio(s3, 1, 4.0, r0 / 2) ==
          doctest::Approx(0.5).epsilon(1e-6));
    CHECK(volume_ratio(s3, 3, 0.25, r0) / volume_ratio(s3, 3, 0.25, r0 / 2) ==
          doctest::Approx(0.5).epsilon(1e-6));
    CHECK(volume_ratio(s3, 3, 0.0, r0) / volume_ratio(s3, 3, 0.0, r0 / 2) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("p-laplacian of radial profiles") {
    // distance function at p = 2 reduces to the drift laplacian
    for (int n : {2, 3, 4}) {
        const RadialModel m = build_model(n, 1.0, {});
        RadialTrial ident;
        ident.value = [](double r) { return r; };
        ident.deriv = [](double) { return 1.0; };
        ident.second_deriv = [](double) { return 0.0; };
        ident.support = {0.0, m.diameter()};
        for (double r : {0.7, 1.9}) {
            CHECK(p_laplacian_radial(m, ident, 2.0, r) ==
                  doctest::Approx((n - 1) * std::cos(r) / std::sin(r)));
        }
    }
    const RadialModel s2w = build_model(2, 1.0, {0.0, 1.0});
    RadialTrial ident;
    ident.value = [](double r) { return r; };
    ident.deriv = [](double) { return 1.0; };
    ident.second_deriv = [](double) { return 0.0; };
    ident.support = {0.0, s2w.diameter()};
    CHECK(p_laplacian_radial(s2w, ident, 2.0, kPi / 2) == doctest::Approx(1.0));

    // supersolution profile on the unit 2-sphere at p=3: spot value 1/pi^2
    const RadialModel s2 = build_model(2, 1.0, {});
    RadialTrial rho;
    rho.value = [](double r) { return std::sqrt(r); };
    rho.deriv = [](double r) { return 0.5 / std::sqrt(r); };
    rho.second_deriv = [](double r) { return -0.25 * std::pow(r, -1.5); };
    rho.support = {0.0, s2.diameter()};
    CHECK(-p_laplacian_radial(s2, rho, 3.0, kPi / 2) ==
          doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-12));

    // analytic route against the flux-difference route (no second
    // derivative handed over)
    RadialTrial rho_fd = rho;
    rho_fd.second_deriv = nullptr;
    CHECK(p_laplacian_radial(s2, rho_fd, 3.0, 1.1) ==
          doctest::Approx(p_laplacian_radial(s2, rho, 3.0, 1.1))
              .epsilon(1e-7));
}

TEST_CASE("p-laplacian identity for supersolution profiles") {
    // |Lap_p r^a + (n-1) a^(p-1) r^-n (1 - r cot r)| stays below 1e-6
    // relative on a 100-point grid
    const std::vector<std::pair<int, double>> cases = {{2, 3.0}, {3, 4.0},
                                                       {3, 3.5}};
    for (const auto& [n, p] : cases) {
        const RadialModel m = build_model(n, 1.0, {});
        const double a = (p - n) / (p - 1.0);
        RadialTrial rho;
        rho.value = [a](double r) { return std::pow(r, a); };
        rho.deriv = [a](double r) { return a * std::pow(r, a - 1.0); };
        rho.second_deriv = [a](double r) {
            return a * (a - 1.0) * std::pow(r, a - 2.0);
        };
        rho.support = {0.0, m.diameter()};
        for (double r : geometric_grid(0.0, m.diameter(), 100, 1e-4)) {
            const double lap = p_laplacian_radial(m, rho, p, r);
            const double closed = -(n - 1) * std::pow(a, p - 1.0) *
                                  std::pow(r, 1.0 - n) * inv_x_minus_cot(r);
            CHECK(lap == doctest::Approx(closed).epsilon(1e-6));
            CHECK(-lap >= 0.0);
        }
    }
}

TEST_CASE("supersolution margin for the power weight") {
    const RadialModel s2 = build_model(2, 1.0, {});
    WeightSpec w;
    w.kind = WeightSpec::Kind::power_distance;
    w.p = 3.0;
    w.beta = -4.0;
    w.alpha = (3.0 - 2.0) / (3.0 - 1.0);  // (p-N)/(p-1), N=n=2
    // margin = |c|^(p-2) c |alpha|^p r^((alpha-1)(p-1)-1) (beta+N)(1-N+r Lap r)
    // and c = 1 at these parameters
    for (double r : geometric_grid(0.0, s2.diameter(), 32, 1e-3)) {
        const double margin = supersolution_margin(s2, w, r);
        CHECK(margin >= 0.0);
        const double lap_r = weighted_laplacian_r(s2, r);
        const double display = std::pow(std::abs(w.alpha), w.p) *
                               std::pow(r, -2.0) * (w.beta + 2.0) *
                               (1.0 - 2.0 + r * lap_r);
        CHECK(margin == doctest::Approx(display).epsilon(1e-9));
    }
    CHECK(supersolution_margin(s2, w, kPi / 2) ==
          doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-12));
}

TEST_CASE("supersolution margin for the log weight") {
    const RadialModel s2 = build_model(2, 1.0, {});
    WeightSpec w;
    w.kind = WeightSpec::Kind::log_distance;
    w.p = 2.0;
    w.beta = 1.0;
    w.alpha = 1.0;
    w.d = 1.5 * s2.diameter();
    for (double r : geometric_grid(0.0, s2.diameter(), 32, 1e-3)) {
        CHECK(supersolution_margin(s2, w, r) >= 0.0);
    }
    // degenerate constant rejected
    WeightSpec bad = w;
    bad.alpha = 2.0;
    bad.beta = (bad.alpha - 1.0) * (bad.p - 1.0) - 1.0;
    CHECK_THROWS_AS(supersolution_margin(s2, bad, 1.0), std::invalid_argument);
}
