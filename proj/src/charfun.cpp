#include "qstats/charfun.hpp"

#include <cmath>
#include <numbers>

#include "constants_table.inc"
#include "qstats/errors.hpp"
#include "qstats/parallel.hpp"
#include "transform.hpp"

namespace qstats {

CumulantCoefficients log_i0_coefficients(int n_max) {
    if (n_max < 0) throw InvalidArgument("log_i0_coefficients: negative order");
    if (n_max > kMaxLogI0Order) {
        throw OrderTooLarge("log_i0_coefficients: exact coefficients are embedded up to order 32");
    }
    CumulantCoefficients out;
    out.a.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out.a(n) = detail::kLogI0Coefficients[n];
    return out;
}

namespace {

// ln J0 of the implicit tail: sum_p a_2p (-1)^p s^2p T_p / (2p)!.
double tail_log(const WeightVector& weights, double s) {
    if (weights.tail.size() == 0) return 0.0;
    if (s * weights.tail_max >= 2.0) {
        throw InvalidArgument("charfun: s beyond the convergence radius of the tail series");
    }
    double sum = 0.0;
    double pow_s = 1.0;
    double factorial = 1.0;
    const Eigen::Index p_max = std::min<Eigen::Index>(weights.tail.size(), kMaxLogI0Order / 2);
    for (Eigen::Index p = 1; p <= p_max; ++p) {
        pow_s *= s * s;
        factorial *= static_cast<double>((2 * p - 1) * (2 * p));
        const double sign = (p % 2 == 0) ? 1.0 : -1.0;
        sum += sign * detail::kLogI0Coefficients[2 * p] * pow_s * weights.tail(p - 1) / factorial;
    }
    return sum;
}

}  // namespace

double charfun_value(const WeightVector& weights, double s) {
    double mantissa = 1.0;
    int exponent = 0;
    for (Eigen::Index j = 0; j < weights.c.size(); ++j) {
        mantissa *= bessel_j0(s * weights.c(j));
        if (mantissa == 0.0) return 0.0;
        if (std::abs(mantissa) < 0x1p-500) {
            int e = 0;
            mantissa = std::frexp(mantissa, &e);
            exponent += e;
        }
    }
    return std::ldexp(mantissa, exponent) * std::exp(tail_log(weights, s));
}

Eigen::VectorXd characteristic_function(const WeightVector& weights,
                                        const Eigen::Ref<const Eigen::VectorXd>& s_grid) {
    Eigen::VectorXd out(s_grid.size());
    parallel_for(static_cast<std::size_t>(s_grid.size()), [&](std::size_t i) {
        out(static_cast<Eigen::Index>(i)) = charfun_value(weights, s_grid(static_cast<Eigen::Index>(i)));
    });
    return out;
}

DistributionTable pdf_from_charfun(const std::function<double(double)>& chi,
                                   const Eigen::Ref<const Eigen::VectorXd>& x_grid,
                                   const InversionOptions& options) {
    if (x_grid.size() < 2) throw InvalidArgument("pdf_from_charfun: need at least two grid points");
    const double omega = x_grid.cwiseAbs().maxCoeff();
    const detail::TransformPlan plan = detail::plan_transform(chi, omega, options, "pdf_from_charfun");

    DistributionTable table;
    table.x = x_grid;
    table.pdf.resize(x_grid.size());
    table.cdf.resize(x_grid.size());
    table.provenance = Provenance::kAnalyticInversion;
    table.cutoff = plan.cutoff;
    table.regularized = plan.regularized;
    parallel_for(static_cast<std::size_t>(x_grid.size()), [&](std::size_t k) {
        const auto i = static_cast<Eigen::Index>(k);
        const auto [density, cumulative] = detail::apply_plan(plan, x_grid(i), [](double x, double s) {
            return std::pair{std::cos(s * x), std::sin(s * x) / s};
        });
        table.pdf(i) = density / std::numbers::pi;
        table.cdf(i) = 0.5 + cumulative / std::numbers::pi;
    });
    table.mass = integrate_samples(table.x, table.pdf);
    const double covered = table.cdf(table.cdf.size() - 1) - table.cdf(0);
    if (std::abs(table.mass - covered) > options.normalization_tol) {
        throw NormalizationFailure("pdf_from_charfun: grid mass " + std::to_string(table.mass) +
                                   " disagrees with cdf increment " + std::to_string(covered));
    }
    return table;
}

WeightCumulants cumulants_from_weights(const Eigen::Ref<const Eigen::VectorXd>& w, int p_max) {
    if (p_max < 1) throw InvalidArgument("cumulants_from_weights: p_max must be >= 1");
    const CumulantCoefficients a = log_i0_coefficients(2 * p_max);
    WeightCumulants out;
    out.q.resize(p_max);
    out.kappa.resize(p_max);
    const Eigen::ArrayXd abs_w = w.array().abs();
    for (int p = 1; p <= p_max; ++p) {
        out.q(p - 1) = abs_w.pow(2.0 * p).sum();
        out.kappa(p - 1) = a[2 * p] * std::ldexp(1.0, 2 * p) * out.q(p - 1);
    }
    return out;
}

Eigen::VectorXd linear_grid(double lo, double hi, Eigen::Index points) {
    if (points < 2) throw InvalidArgument("linear_grid: need at least two points");
    return Eigen::VectorXd::LinSpaced(points, lo, hi);
}

}  // namespace qstats
