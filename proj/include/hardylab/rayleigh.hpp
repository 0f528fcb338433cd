#pragma once

#include <vector>

#include "hardylab/radial_model.hpp"

namespace hardylab {

/// Symmetric tridiagonal quadratic form (stiffness or mass).
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples i and i+1
    std::size_t size() const { return diag.size(); }
};

struct RadialForms {
    Tridiagonal stiffness;
    Tridiagonal mass;
    std::vector<double> nodes;  // full mesh including the Dirichlet node
};

/// Piecewise-linear forms for the quotient
/// int w u'^2 / int w u^2, w(r) = r^(2-n) sigma(r), on [cutoff, diam]
/// with a Dirichlet condition at the cutoff; the far end is free unless
/// dirichlet_far is set.
RadialForms assemble_radial_forms(const RadialModel& m, double cutoff,
                                  int elements, bool dirichlet_far = false,
                                  double far_edge_fraction = 1e-8);

struct SmallestEig {
    double value = 0.0;
    double residual = 0.0;  // |(S - theta M) x| / |M x|
    int iterations = 0;
    std::vector<double> vector;
};

/// Smallest generalized eigenvalue of (S, M) by shifted inverse iteration
/// with Rayleigh-quotient updates; throws after iteration_cap steps.
SmallestEig smallest_generalized_eig(const Tridiagonal& S, const Tridiagonal& M,
                                     int iteration_cap = 10000);

/// Smallest eigenvalue of the radial quotient above.
double theta_radial(const RadialModel& m, double inner_cutoff, int elements);

/// Same quantity with the Dirichlet radius read as a domain truncation.
double theta_truncated(const RadialModel& m, double eps, int elements);

struct EigenResult {
    double theta = 0.0;                    // finest cutoff, finest grid
    std::vector<int> grid_sizes;
    std::vector<double> values_per_grid;   // finest cutoff, per grid
    double extrapolated = 0.0;             // Richardson limit over grids
    std::vector<double> inner_cutoffs;
    std::vector<double> values_per_cutoff; // finest grid, per cutoff
};

/// Grid/cutoff study: Richardson extrapolation across nested grid
/// refinements at the finest cutoff, with the per-cutoff values reported
/// alongside.  The computed value is an upper bound for the untruncated
/// infimum, which degenerates as the cutoff vanishes.
EigenResult theta_pipeline(const RadialModel& m,
                           std::vector<double> cutoffs = {},
                           std::vector<int> grids = {256, 512, 1024});

}  // namespace hardylab
