#include "nlslab/fit.hpp"

#include "nlslab/errors.hpp"

#include <cmath>

namespace nlslab {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), "fit needs matching x and y");
    require(x.size() >= 2, "fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        require(x[i] > 0 && y[i] > 0, "log-log fit needs positive data");
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double den = n * sxx - sx * sx;
    require(den > 0, "fit abscissae are degenerate");
    return (n * sxy - sx * sy) / den;
}

double fit_constant(const std::vector<double>& lhs, const std::vector<double>& rhs) {
    require(lhs.size() == rhs.size() && !lhs.empty(), "fit needs matching nonempty arrays");
    double num = 0, den = 0;
    for (size_t i = 0; i < lhs.size(); ++i) {
        num += lhs[i] * rhs[i];
        den += rhs[i] * rhs[i];
    }
    require(den > 0, "fit reference is identically zero");
    return num / den;
}

} // namespace nlslab
