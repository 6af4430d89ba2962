#pragma once

#include <vector>

namespace nlslab {

// Least-squares slope of log(y) against log(x).  Needs at least two points with x, y > 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Single constant c minimising sum (lhs - c rhs)^2.
double fit_constant(const std::vector<double>& lhs, const std::vector<double>& rhs);

} // namespace nlslab
