#pragma once

#include <functional>
#include <vector>

namespace alloy {

struct QuadResult {
    double value = 0;
    double error = 0;
};

// Integral of f over [a, b]. `singular` lists points where f may blow up like
// |r - p|^{-e} with e <= max_exponent < 1; `breaks` lists points where f is only
// piecewise smooth. Each panel next to a singular point is mapped by
// r = p + h t^{1/(1 - max_exponent)}, which removes the singularity, and then
// integrated with adaptive Gauss-Kronrod.
QuadResult integrate_singular(const std::function<double(double)>& f, double a, double b,
                              const std::vector<double>& singular, const std::vector<double>& breaks,
                              double max_exponent, double rel_tol = 1e-11);

}  // namespace alloy
