#pragma once

// Reference values computed independently with mpmath at 40 digits
// (tests/tools/gen_reference_values.py); frozen here as regression anchors.
namespace refvals {

// int_0^pi (1-cos r)^3 r^-3 sin r dr
inline constexpr double I_RHS_P3 = 0.456165294741795146;
// int_0^pi r^1.5 (1-cos r)^1.5 sin r dr
inline constexpr double I_UNC_Q_P3 = 6.92419546955517675;
// int_0^pi r^(4/3) (1-cos r)^(4/3) sin r dr
inline constexpr double I_UNC_Q_P4 = 5.68000225978242306;
// int_0^pi (1-cos r)^4 r^-4 sin^2 r dr
inline constexpr double I_RHS_P4_S3 = 0.243934806606590623;
// sine integral Si(pi)
inline constexpr double SI_PI = 1.85193705198246617;
// int_0^pi sin^3 r r^-1.8 exp(-0.5 cos r) dr
inline constexpr double I_RICINF_LHS = 0.753259833996378839;
// int_0^pi (1-cos r)^2 r^-3.8 sin r exp(-0.5 cos r) dr
inline constexpr double I_RICINF_RHS = 0.323010000629752802;
// int_0^pi log(1.5pi/r)^3 sin^3 r dr
inline constexpr double I_LOG_LHS = 2.73738613719446075;
// int_0^pi log(1.5pi/r) (1-cos r)^2 r^-2 sin r dr
inline constexpr double I_LOG_RHS = 0.696333176077148617;
// int_0^1 log(2/r)^1.5 sqrt(r) dr
inline constexpr double H1_A = 1.14346145480693761;
// int_0.5^2 log(2/r)^-0.5 r^-2 dr
inline constexpr double H2_A = 2.04822466364702022;
// int_0^pi r^-0.9 (pi-r)^-0.5 dr
inline constexpr double BAT_DOUBLE_SING = 7.1631639960231526;
// int_0^pi log(2pi/r)^2 r^-0.5 dr
inline constexpr double BAT_LOG_SING = 39.8909943193074205;
// Gamma(-1.3, 0.47)
inline constexpr double GAMMA_M13_047 = 0.804587960735812891;
// Gamma(2.6, 3.1)
inline constexpr double GAMMA_26_31 = 0.442370406414893169;
// near-extremal quotient, unit 2-sphere, p=3, beta=-3, requested eps=0.5
inline constexpr double SWEEP_Q_EPS05 = 0.0715881209422980164;
// smallest radial eigenvalue on the unit 2-sphere at inner cutoffs
// pi*{1e-2, 1e-3, 1e-4}
inline constexpr double THETA_S2_1E2 = 0.13424673391856677;
inline constexpr double THETA_S2_1E3 = 0.0833429951901122611;
inline constexpr double THETA_S2_1E4 = 0.0603160141560347451;

}  // namespace refvals
