#include "qmb/stats.hpp"

#include <cmath>

#include "qmb/error.hpp"

namespace qmb {

ScalingFit fit_log_log(std::span<const double> n, std::span<const double> error) {
    require(n.size() == error.size(), ErrorKind::shape, "fit_log_log: size mismatch");
    require(n.size() >= 2, ErrorKind::precondition, "fit_log_log: need at least two points");
    const auto count = static_cast<double>(n.size());
    double sx = 0, sy = 0;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n.size(); ++i) {
        require(n[i] > 0 && error[i] > 0, ErrorKind::domain, "fit_log_log: non-positive value");
        xs.push_back(std::log(n[i]));
        ys.push_back(std::log(error[i]));
        sx += xs.back();
        sy += ys.back();
    }
    const double mx = sx / count, my = sy / count;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    require(sxx > 0, ErrorKind::precondition, "fit_log_log: all N identical");
    ScalingFit fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    fit.points = xs.size();
    return fit;
}

EstimationResult ErrorAccumulator::result(std::int64_t n) const {
    EstimationResult r;
    r.n = n;
    r.true_value = true_value_;
    r.trials = count_;
    if (count_ > 0) {
        r.mean_estimate = mean_;
        r.rmse = std::sqrt(sum_sq_err_ / static_cast<double>(count_));
        r.std_estimate = count_ > 1 ? std::sqrt(m2_ / static_cast<double>(count_ - 1)) : 0.0;
    }
    return r;
}

}  // namespace qmb
