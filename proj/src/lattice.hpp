#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace qstats::detail {

/// Squared norms ||n + a||^2 of the lattice points n >= 0 (componentwise)
/// inside the ball of the given radius, ascending. The origin is skipped
/// when a = 0.
inline std::vector<double> lattice_norms2(const std::vector<double>& a, double radius) {
    const int d = static_cast<int>(a.size());
    const auto side = static_cast<long>(std::ceil(radius)) + 1;
    std::vector<double> out;
    const double r2 = radius * radius;
    std::vector<long> n(static_cast<std::size_t>(d), 0);
    while (true) {
        double q = 0.0;
        for (int i = 0; i < d; ++i) q += (n[i] + a[i]) * (n[i] + a[i]);
        if (q <= r2 && q > 0.0) out.push_back(q);
        int i = 0;
        while (i < d && ++n[i] > side) n[i++] = 0;
        if (i == d) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The first `count` squared norms in ascending order.
inline std::vector<double> smallest_norms2(const std::vector<double>& a, std::size_t count) {
    const int d = static_cast<int>(a.size());
    const double volume = d == 1 ? 1.0 : d == 2 ? 0.785398163397448 : 0.523598775598299;
    double radius = std::pow(static_cast<double>(count) / volume, 1.0 / d) + 2.0;
    std::vector<double> q = lattice_norms2(a, radius);
    while (q.size() < count) {
        radius *= 1.3;
        q = lattice_norms2(a, radius);
    }
    q.resize(count);
    return q;
}

}  // namespace qstats::detail
