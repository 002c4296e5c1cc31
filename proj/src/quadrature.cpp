#include "quadrature.hpp"

#include <map>
#include <mutex>

namespace qstats::detail {

namespace {

GaussLegendre build(int n) {
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

double panel(const std::function<double(double)>& f, double a, double b) {
    const GaussLegendre& gl = gauss_legendre(16);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) sum += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return sum * half;
}

double refine(const std::function<double(double)>& f, double a, double b, double whole,
              double rel_tol, double abs_tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid);
    const double right = panel(f, mid, b);
    const double split = left + right;
    if (depth <= 0 || std::abs(split - whole) <= abs_tol + rel_tol * std::abs(split)) return split;
    return refine(f, a, mid, left, rel_tol, 0.5 * abs_tol, depth - 1) +
           refine(f, mid, b, right, rel_tol, 0.5 * abs_tol, depth - 1);
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    static std::mutex mutex;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build(order)).first;
    return it->second;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
    return refine(f, a, b, panel(f, a, b), rel_tol, abs_tol, max_depth);
}

}  // namespace qstats::detail
