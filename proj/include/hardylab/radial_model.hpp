#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hardylab {

/// Rotationally symmetric closed weighted manifold: round-sphere warp
/// s(r) = R sin(r/R) in dimension n, radial density exp(-Psi(r)) with
/// Psi(r) = sum_k a_k cos^k(r/R).  Polar coordinates around a pole o are
/// global up to the single cut point at r = pi*R, so diameter and
/// injectivity radius coincide.
struct RadialModel {
    int dim = 2;                     // n >= 2
    double radius = 1.0;             // R > 0
    std::vector<double> psi_coeffs;  // a_k, Psi = sum a_k cos^k(r/R)

    double diameter() const { return 3.14159265358979323846 * radius; }
    double injectivity_radius() const { return diameter(); }
    bool psi_constant() const {
        for (std::size_t k = 1; k < psi_coeffs.size(); ++k)
            if (psi_coeffs[k] != 0.0) return false;
        return true;
    }
};

/// Evaluation direction for the curvature tensor in the radial frame.
enum class Direction { radial, tangential };

RadialModel build_model(int n, double R, std::vector<double> psi_coeffs);

/// Psi and its first two derivatives in r, in closed form from the
/// cosine-polynomial representation.
double psi_value(const RadialModel& m, double r);
double psi_deriv(const RadialModel& m, double r);
double psi_second(const RadialModel& m, double r);

/// Polar measure density sigma(r) = (R sin(r/R))^(n-1) exp(-Psi(r)).
double density(const RadialModel& m, double r);

/// Drift Laplacian of the distance function,
/// (n-1) cot(r/R)/R - Psi'(r) = d/dr log sigma(r).
double weighted_laplacian_r(const RadialModel& m, double r);

/// Surface measure of the unit (n-1)-sphere, 2 pi^(n/2) / Gamma(n/2).
double sphere_area_constant(int n);

/// 1/x - cot(x), evaluated without cancellation near x = 0.
double inv_x_minus_cot(double x);

/// Geometric grid on (a, b) accumulating at both endpoints.
std::vector<double> geometric_grid(double a, double b, int count,
                                   double edge_fraction = 1e-9);

void require_interior(const RadialModel& m, double r, const char* where);

}  // namespace hardylab
