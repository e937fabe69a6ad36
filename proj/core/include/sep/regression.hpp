#pragma once

#include <stdexcept>
#include <vector>

#include "sep/scalar.hpp"

namespace sep {

/// Least-squares line fit for the slope checks. Fitting a single trend slope
/// stands in for the theorems' existential constants: a condition holds on a
/// grid when the fitted trend does not exceed the allowed exponent.
struct SlopeFit {
    Scalar slope{0};
    Scalar intercept{0};
    Scalar max_abs_residual{0};
    int points = 0;
};

inline SlopeFit fit_line(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
    SlopeFit f;
    f.points = static_cast<int>(x.size());
    if (x.empty()) return f;
    if (x.size() == 1) {
        f.intercept = y[0];
        return f;
    }
    const Scalar n(static_cast<long long>(x.size()));
    Scalar sx(0), sy(0);
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const Scalar mx = sx / n, my = sy / n;
    Scalar sxx(0), sxy(0);
    for (size_t i = 0; i < x.size(); ++i) {
        const Scalar dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    if (sxx.is_zero()) {
        f.intercept = my;
        return f;
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (size_t i = 0; i < x.size(); ++i) {
        const Scalar r = abs(y[i] - (f.intercept + f.slope * x[i]));
        if (f.max_abs_residual < r) f.max_abs_residual = r;
    }
    return f;
}

}  // namespace sep
