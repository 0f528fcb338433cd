#include <doctest.h>

#include <cmath>

#include "hardylab/radial_model.hpp"
#include "oracles.hpp"

using namespace hardylab;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("build_model validates and stores the description") {
    const RadialModel s2 = build_model(2, 1.0, {});
    CHECK(s2.dim == 2);
    CHECK(s2.diameter() == doctest::Approx(kPi));
    CHECK(s2.injectivity_radius() == doctest::Approx(kPi));
    CHECK(s2.psi_constant());

    const RadialModel s3 = build_model(3, 1.0, {0.0, 1.0});
    CHECK(psi_value(s3, 1.0) == doctest::Approx(std::cos(1.0)));
    CHECK_FALSE(s3.psi_constant());

    const RadialModel big = build_model(2, 2.0, {});
    CHECK(big.diameter() == doctest::Approx(2.0 * kPi));

    CHECK_THROWS_AS(build_model(1, 1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_model(2, 0.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_model(2, -1.0, {}), std::invalid_argument);
}

TEST_CASE("density matches the warped product form") {
    const RadialModel s3 = build_model(3, 1.0, {});
    CHECK(density(s3, kPi / 2) == doctest::Approx(1.0));
    CHECK(density(s3, kPi / 4) == doctest::Approx(0.5));

    const RadialModel s2w = build_model(2, 1.0, {0.0, 1.0});  // Psi = cos r
    CHECK(density(s2w, kPi / 2) == doctest::Approx(1.0));

    CHECK_THROWS_AS(density(s3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(density(s3, kPi), std::invalid_argument);
    CHECK_THROWS_AS(density(s3, -0.5), std::invalid_argument);
}

TEST_CASE("density vanishes at both poles at order n-1") {
    for (int n : {2, 3, 5}) {
        const RadialModel m = build_model(n, 1.0, {});
        double r = 1e-2;
        for (int k = 0; k < 6; ++k) {
            const double ratio = density(m, r) / density(m, 0.5 * r);
            CHECK(ratio == doctest::Approx(std::pow(2.0, n - 1)).epsilon(1e-3));
            const double ratio_top =
                density(m, kPi - r) / density(m, kPi - 0.5 * r);
            CHECK(ratio_top ==
                  doctest::Approx(std::pow(2.0, n - 1)).epsilon(1e-3));
            r *= 0.5;
        }
    }
}

TEST_CASE("density scaling law in the radius") {
    const RadialModel unit = build_model(4, 1.0, {});
    const RadialModel big = build_model(4, 2.5, {});
    for (double r : {0.3, 1.1, 2.9}) {
        CHECK(density(big, r * 2.5) ==
              doctest::Approx(std::pow(2.5, 3) * density(unit, r)));
    }
}

TEST_CASE("weighted laplacian of the distance function") {
    const RadialModel s3 = build_model(3, 1.0, {});
    CHECK(weighted_laplacian_r(s3, kPi / 2) == doctest::Approx(0.0));

    const RadialModel s2 = build_model(2, 1.0, {});
    CHECK(weighted_laplacian_r(s2, kPi / 4) == doctest::Approx(1.0));

    const RadialModel s2w = build_model(2, 1.0, {0.0, 1.0});
    CHECK(weighted_laplacian_r(s2w, kPi / 2) == doctest::Approx(1.0));
    // closed-form Psi' cross-checked against finite differences of Psi
    for (double r : {0.4, 1.3, 2.6}) {
        const double fd = oracles::diff(
            [&](double s) { return psi_value(s2w, s); }, r, 1e-6);
        CHECK(psi_deriv(s2w, r) == doctest::Approx(fd).epsilon(1e-8));
    }
    CHECK_THROWS_AS(weighted_laplacian_r(s3, kPi), std::invalid_argument);
}

TEST_CASE("weighted laplacian agrees with d/dr log density") {
    // the step of the difference oracle bounds how close to the poles the
    // comparison itself stays accurate
    const RadialModel m = build_model(3, 1.3, {0.2, -0.4, 0.3});
    const double h = 1e-5 * m.diameter();
    for (double r : geometric_grid(0.0, m.diameter(), 64, 2e-2)) {
        const double fd = oracles::diff(
            [&](double s) { return std::log(density(m, s)); }, r, h);
        CHECK(weighted_laplacian_r(m, r) ==
              doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("psi derivative vanishes at both poles") {
    const RadialModel m = build_model(2, 1.0, {0.1, 0.7, -0.2, 0.05});
    CHECK(std::abs(psi_deriv(m, 1e-9)) < 1e-8);
    CHECK(std::abs(psi_deriv(m, m.diameter() - 1e-9)) < 1e-8);
}

TEST_CASE("sphere area constants") {
    CHECK(sphere_area_constant(2) == doctest::Approx(2.0 * kPi));
    CHECK(sphere_area_constant(3) == doctest::Approx(4.0 * kPi));
    CHECK(sphere_area_constant(4) == doctest::Approx(2.0 * kPi * kPi));
    CHECK_THROWS_AS(sphere_area_constant(1), std::invalid_argument);
}

TEST_CASE("stable 1/x - cot x") {
    for (double x : {0.2, 0.35, 0.39, 0.41, 0.8}) {
        CHECK(inv_x_minus_cot(x) ==
              doctest::Approx(1.0 / x - std::cos(x) / std::sin(x))
                  .epsilon(1e-11));
    }
    CHECK(inv_x_minus_cot(1e-8) == doctest::Approx(1e-8 / 3.0).epsilon(1e-10));
    CHECK(inv_x_minus_cot(1e-8) > 0.0);
}
