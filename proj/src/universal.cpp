#include "qstats/universal.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

#include "constants_table.inc"
#include "qstats/errors.hpp"
#include "qstats/loschmidt.hpp"
#include "qstats/parallel.hpp"
#include "lattice.hpp"
#include "quadrature.hpp"
#include "transform.hpp"

namespace qstats {

namespace {

constexpr long kEulerMaclaurinTerms = 10000;
constexpr double kThetaSplit = 0.1;
constexpr int kThetaOrder = 24;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// zeta(-m, a) = -B_{m+1}(a) / (m + 1)
double hurwitz_negative(int m, double a) {
    const int n = m + 1;
    double poly = 0.0;
    for (int j = 0; j <= n; ++j) poly += binomial(n, j) * detail::kBernoulli[j] * std::pow(a, n - j);
    return -poly / n;
}

// sum_{n>=0} exp(-t (n + a)^2)
double theta_one_sided(double a, double t) {
    double sum = 0.0;
    for (long n = 0;; ++n) {
        const double x = n + a;
        const double term = std::exp(-t * x * x);
        sum += term;
        if (x > 0.0 && term < 1e-18 * sum) break;
    }
    return sum;
}

double theta_mellin(double alpha, const std::vector<double>& a) {
    const double s = 0.5 * alpha;
    const int d = static_cast<int>(a.size());
    const double t0 = kThetaSplit;

    // Each factor as a Laurent series in u = sqrt(t): sqrt(pi)/2 u^-1 + sum_k e_k u^2k.
    // Index j stores the coefficient of u^(j-1).
    const int factor_len = 2 * (kThetaOrder + d) + 2;
    std::vector<double> product{1.0};
    int offset = 0;  // product index j holds u^(j - offset)
    for (double ai : a) {
        std::vector<double> f(static_cast<std::size_t>(factor_len), 0.0);
        f[0] = 0.5 * std::sqrt(std::numbers::pi);
        double fact = 1.0;
        for (int k = 0; 2 * k + 1 < factor_len; ++k) {
            if (k > 0) fact *= k;
            f[static_cast<std::size_t>(2 * k + 1)] = ((k % 2) ? -1.0 : 1.0) * hurwitz_negative(2 * k, ai) / fact;
        }
        std::vector<double> next(product.size() + f.size() - 1, 0.0);
        for (std::size_t i = 0; i < product.size(); ++i) {
            for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += product[i] * f[j];
        }
        product = std::move(next);
        ++offset;
    }
    double small = 0.0;
    for (std::size_t j = 0; j < product.size(); ++j) {
        const int m = static_cast<int>(j) - offset;
        if (m > 2 * kThetaOrder) break;
        const double e = s + 0.5 * m;
        small += product[j] * std::pow(t0, e) / e;
    }

    const double norm2 = std::inner_product(a.begin(), a.end(), a.begin(), 0.0);
    const auto integrand = [&](double t) {
        double v = std::pow(t, s - 1.0);
        for (double ai : a) v *= theta_one_sided(ai, t);
        return v;
    };
    const double peak = std::max(t0, (s - 1.0) / norm2);
    const auto log_envelope = [&](double t) { return (s - 1.0) * std::log(t) - t * norm2; };
    double end = peak + 1.0;
    while (log_envelope(end) > log_envelope(peak) - 50.0) end *= 1.5;
    double large = detail::integrate_adaptive(integrand, t0, peak, 1e-13);
    large += detail::integrate_adaptive(integrand, peak, end, 1e-13);
    return std::exp(std::log(small + large) - std::lgamma(s));
}

std::vector<double> offsets(const ZetaSpec& spec) {
    std::vector<double> a(spec.b.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = spec.first_index + spec.b[i];
    return a;
}

struct LinearFit {
    double slope, intercept, r2;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw InvalidArgument("fit: abscissae are all equal");
    const double slope = sxy / sxx;
    const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return {slope, my - slope * mx, r2};
}

// Unit-sphere surface inside one orthant; pi/2 for both d = 2 and d = 3.
constexpr double kOrthantSurface = 0.5 * std::numbers::pi;

}  // namespace

void ZetaSpec::validate() const {
    if (d < 1 || d > 3) throw InvalidArgument("zeta: d must be 1, 2 or 3");
    if (static_cast<int>(b.size()) != d) throw InvalidArgument("zeta: b needs d entries");
    for (double bi : b) {
        if (!(bi >= 0.0 && bi <= 0.5)) throw InvalidArgument("zeta: b entries must lie in [0, 1/2]");
    }
    if (first_index != 0 && first_index != 1) throw InvalidArgument("zeta: first_index must be 0 or 1");
    if (first_index == 0 && std::all_of(b.begin(), b.end(), [](double v) { return v == 0.0; })) {
        throw InvalidArgument("zeta: the origin is included; some b must be positive");
    }
    if (L && *L < 1) throw InvalidArgument("zeta: L must be positive");
}

double hurwitz_zeta(double s, double a) {
    if (!(s > 1.0)) throw DivergenceError("hurwitz_zeta: needs s > 1");
    if (!(a > 0.0)) throw InvalidArgument("hurwitz_zeta: needs a > 0");
    const long n0 = kEulerMaclaurinTerms;
    const double x = n0 + a;
    // Euler-Maclaurin remainder for sum_{n >= n0}
    double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    double rising = s;  // s (s+1) ... (s + 2k - 2)
    double fact = 2.0;  // (2k)!
    for (int k = 1; k <= 4; ++k) {
        tail += detail::kBernoulli[2 * k] / fact * rising * std::pow(x, -s - 2 * k + 1);
        rising *= (s + 2 * k - 1) * (s + 2 * k);
        fact *= (2.0 * k + 1) * (2.0 * k + 2);
    }
    long double sum = tail;
    for (long n = n0 - 1; n >= 0; --n) sum += std::pow(static_cast<long double>(n + a), -static_cast<long double>(s));
    return static_cast<double>(sum);
}

double epstein_zeta(const ZetaSpec& spec) {
    spec.validate();
    if (spec.L) return epstein_zeta_truncated(spec);
    if (!(spec.alpha > spec.d)) {
        throw DivergenceError("epstein_zeta: the infinite sum needs alpha > d");
    }
    const std::vector<double> a = offsets(spec);
    if (spec.d == 1) return hurwitz_zeta(spec.alpha, a[0]);
    return theta_mellin(spec.alpha, a);
}

double epstein_zeta_truncated(const ZetaSpec& spec) {
    spec.validate();
    if (!spec.L) throw InvalidArgument("epstein_zeta_truncated: L is required");
    const long L = *spec.L;
    const std::vector<double> a = offsets(spec);
    const double half = -0.5 * spec.alpha;
    double points = 1.0;
    for (int i = 0; i < spec.d; ++i) points *= static_cast<double>(L);
    if (points > 4e9) throw DimensionLimit("epstein_zeta_truncated: more than 4e9 lattice points");
    // largest index first so small terms accumulate before large ones
    std::vector<long double> partial(static_cast<std::size_t>(L), 0.0L);
    parallel_for(static_cast<std::size_t>(L), [&](std::size_t idx) {
        const long i = L - 1 - static_cast<long>(idx);
        const double x0 = i + a[0];
        long double acc = 0.0L;
        if (spec.d == 1) {
            acc = std::pow(static_cast<long double>(x0) * x0, static_cast<long double>(half));
        } else {
            for (long j = L - 1; j >= 0; --j) {
                const double x1 = j + a[1];
                if (spec.d == 2) {
                    const double q = x0 * x0 + x1 * x1;
                    if (q > 0.0) acc += std::pow(q, half);
                } else {
                    for (long k = L - 1; k >= 0; --k) {
                        const double x2 = k + a[2];
                        const double q = x0 * x0 + x1 * x1 + x2 * x2;
                        if (q > 0.0) acc += std::pow(q, half);
                    }
                }
            }
        }
        if (x0 == 0.0 && spec.d == 1) acc = 0.0L;
        partial[idx] = acc;
    });
    long double sum = 0.0L;
    for (long double p : partial) sum += p;
    return static_cast<double>(sum);
}

TruncationFit truncation_law(const ZetaSpec& spec, const std::vector<long>& sizes) {
    spec.validate();
    if (sizes.size() < 2) throw InvalidArgument("truncation_law: need at least two sizes");
    ZetaSpec s = spec;
    const auto at = [&](long L) {
        s.L = L;
        return epstein_zeta_truncated(s);
    };
    std::vector<double> lx, ly;
    TruncationFit fit;
    fit.n_points = static_cast<int>(sizes.size());
    const double gap = spec.alpha - spec.d;
    if (std::abs(gap) < 1e-12) {
        fit.law = "log";
        for (long L : sizes) {
            lx.push_back(std::log(static_cast<double>(L)));
            ly.push_back(at(L));
        }
        const LinearFit f = least_squares(lx, ly);
        fit.constant = f.slope;
        fit.r2 = f.r2;
        return fit;
    }
    if (gap > 0.0) {
        fit.law = "power";
        s.L.reset();
        const double full = epstein_zeta(s);
        for (long L : sizes) {
            const double diff = full - at(L);
            if (!(diff > 0.0)) throw NonPositiveValue("truncation_law: remainder not resolved at L = " + std::to_string(L));
            lx.push_back(std::log(static_cast<double>(L)));
            ly.push_back(std::log(diff));
        }
        const LinearFit f = least_squares(lx, ly);
        fit.exponent = f.slope;
        fit.constant = std::exp(f.intercept) * gap;
        fit.r2 = f.r2;
        return fit;
    }
    fit.law = "growth";
    for (long L : sizes) {
        lx.push_back(std::log(static_cast<double>(L)));
        ly.push_back(std::log(at(2 * L) - at(L)));
    }
    const LinearFit f = least_squares(lx, ly);
    fit.exponent = f.slope;
    fit.constant = std::exp(f.intercept) * (-gap) / (std::pow(2.0, -gap) - 1.0);
    fit.r2 = f.r2;
    return fit;
}

UniversalRatios universal_ratios(double alpha, int d, const std::vector<double>& b, int p_max,
                                 int first_index) {
    if (p_max < 1) throw InvalidArgument("universal_ratios: p_max must be >= 1");
    UniversalRatios r;
    r.alpha = alpha;
    r.p_max = p_max;
    r.R = Eigen::VectorXd::Zero(p_max);
    r.R(0) = 1.0;
    if (!(2.0 * alpha > d)) {
        r.branch = "gaussian";
        return r;
    }
    r.branch = "zeta";
    ZetaSpec spec{2.0 * alpha, d, b, std::nullopt, first_index};
    const double z2 = epstein_zeta(spec);
    for (int p = 2; p <= p_max; ++p) {
        spec.alpha = 2.0 * p * alpha;
        r.R(p - 1) = epstein_zeta(spec) / std::pow(z2, p);
    }
    return r;
}

Eigen::VectorXd finite_size_ratios(double alpha, int d, const std::vector<double>& b, long L,
                                   int p_max, int first_index) {
    if (p_max < 1) throw InvalidArgument("finite_size_ratios: p_max must be >= 1");
    Eigen::VectorXd r(p_max);
    ZetaSpec spec{2.0 * alpha, d, b, L, first_index};
    const double z2 = epstein_zeta_truncated(spec);
    r(0) = 1.0;
    for (int p = 2; p <= p_max; ++p) {
        spec.alpha = 2.0 * p * alpha;
        r(p - 1) = epstein_zeta_truncated(spec) / std::pow(z2, p);
    }
    return r;
}

LimitWeights limit_weights(double alpha, int d, const std::vector<double>& b, LimitVariable variable,
                           Eigen::Index explicit_modes, int first_index) {
    if (!(2.0 * alpha > d)) throw InvalidArgument("limit_weights: needs 2 alpha > d");
    if (explicit_modes < 1) throw InvalidArgument("limit_weights: need at least one explicit mode");
    ZetaSpec spec{2.0 * alpha, d, b, std::nullopt, first_index};
    spec.validate();
    const std::vector<double> a = offsets(spec);
    const double z2 = epstein_zeta(spec);
    LimitWeights out;
    out.kappa = std::sqrt((variable == LimitVariable::kObservable ? 2.0 : 1.0) / z2);
    constexpr int kTailOrders = kMaxLogI0Order / 2;
    Eigen::VectorXd tail = Eigen::VectorXd::Zero(kTailOrders);
    Eigen::VectorXd c;
    double next_norm = 0.0;
    if (d == 1) {
        c.resize(explicit_modes);
        for (Eigen::Index n = 0; n < explicit_modes; ++n) c(n) = out.kappa * std::pow(n + a[0], -alpha);
        const double a_tail = a[0] + static_cast<double>(explicit_modes);
        next_norm = a_tail;
        for (int p = 1; p <= kTailOrders; ++p) {
            tail(p - 1) = std::pow(out.kappa, 2 * p) * hurwitz_zeta(2.0 * p * alpha, a_tail);
        }
    } else {
        const double volume = d == 2 ? 0.25 * std::numbers::pi : std::numbers::pi / 6.0;
        double radius = std::pow(static_cast<double>(explicit_modes) / volume, 1.0 / d) + 2.0;
        std::vector<double> q = detail::lattice_norms2(a, radius);
        while (static_cast<Eigen::Index>(q.size()) <= explicit_modes) {
            radius *= 1.3;
            q = detail::lattice_norms2(a, radius);
        }
        // keep whole shells so the explicit set is a ball
        auto cut = static_cast<std::size_t>(explicit_modes);
        while (cut < q.size() && q[cut] == q[cut - 1]) ++cut;
        const double r_in = std::sqrt(q[cut - 1]);
        next_norm = std::sqrt(q[cut]);
        c.resize(static_cast<Eigen::Index>(cut));
        long double kept = 0.0L;
        for (std::size_t i = 0; i < cut; ++i) {
            c(static_cast<Eigen::Index>(i)) = out.kappa * std::pow(q[i], -0.5 * alpha);
            kept += std::pow(static_cast<long double>(q[i]), -static_cast<long double>(alpha));
        }
        tail(0) = out.kappa * out.kappa * (z2 - static_cast<double>(kept));
        // higher sums: direct to 6 r_in, continuum beyond
        const double r_far = 6.0 * r_in;
        const std::vector<double> far = detail::lattice_norms2(a, r_far);
        for (int p = 2; p <= kTailOrders; ++p) {
            long double acc = 0.0L;
            for (auto it = far.rbegin(); it != far.rend() && *it > q[cut - 1]; ++it) {
                acc += std::pow(static_cast<long double>(*it), -static_cast<long double>(p * alpha));
            }
            const double e = 2.0 * p * alpha - d;
            acc += kOrthantSurface * std::pow(r_far, -e) / e;
            tail(p - 1) = std::pow(out.kappa, 2 * p) * static_cast<double>(acc);
        }
    }
    out.weights.c = c;
    out.weights.tail = tail;
    out.weights.tail_max = out.kappa * std::pow(next_norm, -alpha);
    out.explicit_modes = c.size();
    if (alpha > d) {
        ZetaSpec s1 = spec;
        s1.alpha = alpha;
        out.support = out.kappa * epstein_zeta(s1);
    } else {
        out.support = std::numeric_limits<double>::infinity();
    }
    return out;
}

DistributionTable limit_distribution(double alpha, int d, const std::vector<double>& b,
                                     LimitVariable variable, const LimitOptions& options) {
    const bool observable = variable == LimitVariable::kObservable;
    if (!(2.0 * alpha > d)) {
        if (observable) {
            const Eigen::VectorXd x = linear_grid(-options.x_max, options.x_max, options.points);
            return pdf_from_charfun([](double s) { return std::exp(-0.5 * s * s); }, x, options.inversion);
        }
        const Eigen::VectorXd x = linear_grid(0.0, 25.0, options.points);
        return le_pdf([](double r) { return std::exp(-0.25 * r * r); }, x, options.inversion);
    }
    constexpr Eigen::Index kMaxExplicit = Eigen::Index{1} << 20;
    for (Eigen::Index n = 256;; n *= 4) {
        LimitWeights lw = limit_weights(alpha, d, b, variable, n, options.first_index);
        const double reach = 1.0 / lw.weights.tail_max;
        const auto chi = [&](double s) { return charfun_value(lw.weights, s); };
        const double cut = detail::find_decay_cutoff(chi, options.inversion.decay_tol,
                                                     options.inversion.scan_start, reach);
        if (cut < 0.0 && n < kMaxExplicit) continue;
        InversionOptions inv = options.inversion;
        inv.scan_limit = reach;
        if (observable) {
            const double half = std::min(options.x_max, lw.support);
            const Eigen::VectorXd x = linear_grid(-half, half, options.points);
            return pdf_from_charfun(chi, x, inv);
        }
        const double top = std::min(lw.support * lw.support, 25.0);
        const Eigen::VectorXd x = linear_grid(0.0, top, options.points);
        return le_pdf(chi, x, inv);
    }
}

ScalingFit scaling_fit(const std::vector<double>& sizes, const std::vector<double>& values) {
    if (sizes.size() != values.size()) throw InvalidArgument("scaling_fit: size mismatch");
    if (sizes.size() < 4) throw InvalidArgument("scaling_fit: need at least four points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(sizes[i] > 0.0) || !(values[i] > 0.0)) {
            throw NonPositiveValue("scaling_fit: sizes and values must be positive");
        }
        lx.push_back(std::log(sizes[i]));
        ly.push_back(std::log(values[i]));
    }
    const LinearFit f = least_squares(lx, ly);
    return {f.slope, std::exp(f.intercept), f.r2, static_cast<int>(sizes.size())};
}

}  // namespace qstats
