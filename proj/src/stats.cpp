#include "simadc/stats.hpp"

#include <algorithm>
#include <cmath>

#include "simadc/errors.hpp"

namespace simadc {

namespace {

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

void check_paired(const std::vector<double>& x, const std::vector<double>& y,
                  std::size_t min_points) {
    if (x.size() != y.size()) throw ConfigError("fit inputs must have equal length");
    if (x.size() < min_points) throw ConfigError("fit needs more points");
}

}  // namespace

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    check_paired(x, y, 2);
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    if (sxx == 0.0) throw ConfigError("fit needs a non-degenerate x range");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y,
                 const LinearFit& fit) {
    check_paired(x, y, 2);
    const double my = mean(y);
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.at(x[i]);
        const double d = y[i] - my;
        ss_res += r * r;
        ss_tot += d * d;
    }
    if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
    return 1.0 - ss_res / ss_tot;
}

double nrmsd(const std::vector<double>& x, const std::vector<double>& y) {
    check_paired(x, y, 3);
    const LinearFit fit = least_squares(x, y);
    double ss_res = 0.0;
    double fit_lo = fit.at(x[0]);
    double fit_hi = fit_lo;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = fit.at(x[i]);
        fit_lo = std::min(fit_lo, f);
        fit_hi = std::max(fit_hi, f);
        const double r = y[i] - f;
        ss_res += r * r;
    }
    const double rms = std::sqrt(ss_res / static_cast<double>(x.size()));
    double range = fit_hi - fit_lo;
    if (range == 0.0) {
        const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
        range = *hi - *lo;
    }
    if (range == 0.0) return 0.0;
    return 100.0 * rms / range;
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    check_paired(x, y, 2);
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ConfigError("correlation needs variance in both inputs");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace simadc
