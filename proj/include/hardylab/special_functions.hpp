#pragma once

namespace hardylab {

/// Upper incomplete gamma Gamma(a, x) for real a (any sign) and x > 0.
/// Series for small x, continued fraction otherwise; nonpositive a is
/// lifted with the recurrence Gamma(a,x) = (Gamma(a+1,x) - x^a e^-x)/a.
double upper_incomplete_gamma(double a, double x);

}  // namespace hardylab
