#pragma once

#include <array>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "qstats/distribution.hpp"

namespace qstats::detail {

/// Quadrature plan for integrals of the form  int_0^cut g(s) k(x, s) ds
/// with g shared by every x. Nodes are Gauss-Legendre points on panels no
/// wider than a quarter period of the fastest kernel oscillation, bisected
/// further where g itself is under-resolved.
struct TransformPlan {
    std::vector<double> nodes;
    std::vector<double> weights;
    /// g at the nodes times the damping factor of each level; one level
    /// unless the plan is regularized, then three (4 eps, 2 eps, eps).
    std::vector<std::vector<double>> weighted;
    double cutoff = 0.0;
    bool regularized = false;
    double eps = 0.0;  ///< narrowest damping exp(-eps s^2)
};

/// Recomputes `weighted` for new integrand values at the plan's nodes.
void fill_levels(TransformPlan& plan, const std::vector<double>& g);

/// Scans |g| on a geometric grid; returns the point after which three
/// consecutive values fell below tol, or a negative value when g has not
/// decayed by `limit`.
double find_decay_cutoff(const std::function<double(double)>& g, double tol, double start,
                         double limit);

/// Throws TruncationError (tagged with `what`) when g does not decay and
/// options.smoothing is zero.
TransformPlan plan_transform(const std::function<double(double)>& g, double omega_max,
                             const InversionOptions& options, const char* what);

/// Re and Im parts of a complex transform on nodes refined for |chi|.
struct ComplexTransformPlan {
    TransformPlan re;
    TransformPlan im;
};

ComplexTransformPlan plan_transform_complex(const std::function<std::complex<double>(double)>& chi,
                                            double omega_max, const InversionOptions& options,
                                            const char* what);

/// Evaluates  sum_i w_i g_i k(x, s_i)  for a kernel returning two channels
/// (density, distribution function), applying Richardson extrapolation
/// across damping levels when present.
template <class Kernel>
std::pair<double, double> apply_plan(const TransformPlan& plan, double x, Kernel&& kernel) {
    const std::size_t levels = plan.weighted.size();
    std::array<double, 3> a{0.0, 0.0, 0.0};
    std::array<double, 3> b{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
        const auto [ka, kb] = kernel(x, plan.nodes[i]);
        for (std::size_t l = 0; l < levels; ++l) {
            a[l] += plan.weighted[l][i] * ka;
            b[l] += plan.weighted[l][i] * kb;
        }
    }
    if (levels == 1) return {a[0], b[0]};
    // damping widths 4 eps, 2 eps, eps; the combination cancels O(eps) and O(eps^2).
    const auto extrapolate = [](const std::array<double, 3>& v) {
        return (8.0 * v[2] - 6.0 * v[1] + v[0]) / 3.0;
    };
    return {extrapolate(a), extrapolate(b)};
}

}  // namespace qstats::detail
