#pragma once

#include <vector>

namespace simadc {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;

    double at(double x) const { return slope * x + intercept; }
};

// Ordinary least-squares line through (x, y). Requires at least two points
// and a non-degenerate x range.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// Coefficient of determination of `fit` on (x, y). Defined as 1 when the
// data carry no variance and the fit is exact.
double r_squared(const std::vector<double>& x, const std::vector<double>& y,
                 const LinearFit& fit);

// Deviation from linearity, in percent: RMS residual about the least-squares
// line, normalized by the range of fitted values. A flat fit falls back to
// the data range; if that is also zero the deviation is 0. Requires at least
// three points and a non-degenerate x range.
double nrmsd(const std::vector<double>& x, const std::vector<double>& y);

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace simadc
