#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace qstats::detail {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes by Newton iteration on P_n; cached per order.
const GaussLegendre& gauss_legendre(int order);

/// Integral of f over [a, b] by adaptive bisection of 16-point
/// Gauss-Legendre panels. Stops refining when a panel and its two halves
/// agree to abs_tol + rel_tol * |panel|.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-13, double abs_tol = 1e-300, int max_depth = 30);

}  // namespace qstats::detail
