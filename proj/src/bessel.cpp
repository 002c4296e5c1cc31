#include "qstats/bessel.hpp"

#include <cmath>
#include <numbers>

#include "qstats/errors.hpp"

namespace qstats {

namespace {

constexpr double kSeriesLimit = 8.0;
constexpr double kAsymptoticLimit = 25.0;

double power_series(int n, double x) {
    const double half = 0.5 * x;
    const double q = half * half;
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= half / i;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) || term == 0.0) break;
    }
    return sum;
}

// x > 0 assumed.
BesselTriple miller(double x) {
    const int start = 2 * (static_cast<int>(x + 40.0) / 2);
    double next = 0.0;  // j_{k+1}
    double cur = 1e-30; // j_k
    double norm = 0.0;
    double j0 = 0.0, j1 = 0.0, j2 = 0.0;
    for (int k = start; k >= 1; --k) {
        const double prev = (2.0 * k / x) * cur - next;  // j_{k-1}
        next = cur;
        cur = prev;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
            j2 *= 1e-250;
        }
        const int idx = k - 1;
        if (idx == 2) j2 = cur;
        if (idx == 1) j1 = cur;
        if (idx > 0 && idx % 2 == 0) norm += 2.0 * cur;
    }
    j0 = cur;
    norm += j0;
    return {j0 / norm, j1 / norm, j2 / norm};
}

// Hankel expansion; x >= kAsymptoticLimit.
double hankel(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::abs(term);
        if (mag > last) break;
        last = mag;
        const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
        if (k % 2 == 0) {
            p += sign * term;
        } else {
            q += (((k - 1) / 2) % 2 == 0 ? 1 : -1) * term;
        }
        if (mag < 1e-17) break;
    }
    const double phase = (0.5 * nu + 0.25) * std::numbers::pi;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    const double cos_w = cx * c + sx * s;
    const double sin_w = sx * c - cx * s;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_w - q * sin_w);
}

BesselTriple positive_triple(double ax) {
    if (ax <= kSeriesLimit) {
        return {power_series(0, ax), power_series(1, ax), power_series(2, ax)};
    }
    if (ax < kAsymptoticLimit) return miller(ax);
    return {hankel(0, ax), hankel(1, ax), hankel(2, ax)};
}

double positive_order(int order, double ax) {
    if (ax <= kSeriesLimit) return power_series(order, ax);
    if (ax < kAsymptoticLimit) {
        const BesselTriple t = miller(ax);
        return order == 0 ? t.j0 : (order == 1 ? t.j1 : t.j2);
    }
    return hankel(order, ax);
}

}  // namespace

double bessel_j0(double x) { return positive_order(0, std::abs(x)); }

double bessel_j1(double x) {
    const double v = positive_order(1, std::abs(x));
    return x < 0 ? -v : v;
}

double bessel_j2(double x) { return positive_order(2, std::abs(x)); }

double bessel_j(int order, double x) {
    switch (order) {
        case 0: return bessel_j0(x);
        case 1: return bessel_j1(x);
        case 2: return bessel_j2(x);
        default: throw InvalidArgument("bessel_j: order must be 0, 1 or 2");
    }
}

BesselTriple bessel_j012(double x) {
    BesselTriple t = positive_triple(std::abs(x));
    if (x < 0) t.j1 = -t.j1;
    return t;
}

}  // namespace qstats
