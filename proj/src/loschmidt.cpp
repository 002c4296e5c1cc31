#include "qstats/loschmidt.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <numbers>

#include "lattice.hpp"
#include "qstats/bessel.hpp"
#include "qstats/charfun.hpp"
#include "qstats/errors.hpp"
#include "qstats/parallel.hpp"
#include "quadrature.hpp"
#include "transform.hpp"

namespace qstats {

SpectralWeights::SpectralWeights(Eigen::VectorXd weights) : p(std::move(weights)) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!std::isfinite(p(i)) || p(i) < 0.0) {
            throw InvalidArgument("spectral weights must be finite and non-negative");
        }
    }
    normalized = std::abs(p.sum() - 1.0) <= 1e-12;
}

double le_charfun_value(const SpectralWeights& weights, double rho) {
    return charfun_value(WeightVector(weights.p), rho);
}

Eigen::VectorXd le_charfun(const SpectralWeights& weights,
                           const Eigen::Ref<const Eigen::VectorXd>& rho_grid) {
    return characteristic_function(WeightVector(weights.p), rho_grid);
}

double le_charfun_series(const SpectralWeights& weights, double rho, int p_max) {
    const CumulantCoefficients a = log_i0_coefficients(2 * p_max);
    const Purities tr = purities(weights, 2 * p_max);
    double sum = 0.0, factorial = 1.0, power = 1.0;
    for (int p = 1; p <= p_max; ++p) {
        factorial *= (2.0 * p - 1.0) * (2.0 * p);
        power *= -rho * rho;
        sum += a[2 * p] * tr.trace(2 * p) * power / factorial;
    }
    return std::exp(sum);
}

Purities purities(const SpectralWeights& weights, int n_max) {
    if (n_max < 1) throw InvalidArgument("purities: n_max must be >= 1");
    Purities out;
    const int m_max = 2 * n_max;
    out.trace = Eigen::VectorXd::Zero(m_max + 1);
    out.trace(0) = static_cast<double>(weights.p.size());
    for (int m = 1; m <= m_max; ++m) out.trace(m) = weights.p.array().pow(m).sum();
    out.T = Eigen::VectorXd::Zero(n_max + 1);
    for (int n = 1; n <= n_max; ++n) out.T(n) = out.trace(2 * n) / std::pow(out.trace(2), n);
    return out;
}

DistributionTable le_pdf(const std::function<double(double)>& J,
                         const Eigen::Ref<const Eigen::VectorXd>& x_grid,
                         const InversionOptions& options) {
    if (x_grid.size() < 2) throw InvalidArgument("le_pdf: need at least two grid points");
    if (x_grid.minCoeff() < 0.0) throw InvalidArgument("le_pdf: grid must be non-negative");
    const double omega = std::sqrt(x_grid.maxCoeff());
    const detail::TransformPlan plan = detail::plan_transform(J, omega, options, "le_pdf");
    DistributionTable table;
    table.x = x_grid;
    table.pdf.resize(x_grid.size());
    table.cdf.resize(x_grid.size());
    table.provenance = Provenance::kKernelIntegral;
    table.cutoff = plan.cutoff;
    table.regularized = plan.regularized;
    parallel_for(static_cast<std::size_t>(x_grid.size()), [&](std::size_t k) {
        const auto i = static_cast<Eigen::Index>(k);
        const double x = x_grid(i);
        const double root = std::sqrt(x);
        const auto [density, cumulative] = detail::apply_plan(plan, x, [root](double, double rho) {
            if (root == 0.0) return std::pair{0.5 * rho, 0.0};
            const BesselTriple j = bessel_j012(root * rho);
            return std::pair{j.j1 / (2.0 * root) + 0.25 * rho * (j.j0 - j.j2), root * j.j1};
        });
        table.pdf(i) = density;
        table.cdf(i) = cumulative;
    });
    table.mass = integrate_samples(table.x, table.pdf);
    const double covered = table.cdf(table.cdf.size() - 1) - table.cdf(0);
    if (std::abs(table.mass - covered) > options.normalization_tol) {
        throw NormalizationFailure("le_pdf: grid mass " + std::to_string(table.mass) +
                                   " disagrees with cdf increment " + std::to_string(covered));
    }
    return table;
}

SpectralWeights critical_weights(double nu, int d, const std::vector<double>& b, long n_modes,
                                 double delta_lambda, int first_index) {
    if (!(nu > 0.0)) throw InvalidArgument("critical_weights: nu must be positive");
    if (n_modes < 1) throw InvalidArgument("critical_weights: n_modes must be positive");
    if (static_cast<int>(b.size()) != d) throw InvalidArgument("critical_weights: b needs d entries");
    if (delta_lambda == 0.0) return SpectralWeights(Eigen::VectorXd::Ones(1));
    std::vector<double> a(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = first_index + b[i];
    const std::vector<double> q = detail::smallest_norms2(a, static_cast<std::size_t>(n_modes));
    Eigen::VectorXd p(n_modes + 1);
    const double scale = delta_lambda * delta_lambda;
    long double excited = 0.0L;
    // smallest weights first in the running sum
    for (long j = n_modes; j >= 1; --j) {
        p(j) = scale * std::pow(q[static_cast<std::size_t>(j - 1)], -1.0 / nu);
        excited += p(j);
    }
    if (excited >= 1.0L) {
        throw WeightOverflow("critical_weights: excited weights sum to " +
                             std::to_string(static_cast<double>(excited)) + ", quench too large");
    }
    p(0) = static_cast<double>(1.0L - excited);
    return SpectralWeights(std::move(p));
}

SpectralWeights weights_from_energies(const Eigen::Ref<const Eigen::VectorXd>& energies,
                                      double delta_lambda, double power) {
    if ((energies.array() <= 0.0).any()) throw InvalidArgument("weights_from_energies: energies must be positive");
    Eigen::VectorXd p(energies.size() + 1);
    p.tail(energies.size()) = delta_lambda * delta_lambda * energies.array().pow(-power);
    const double excited = p.tail(energies.size()).sum();
    if (excited >= 1.0) throw WeightOverflow("weights_from_energies: excited weights reach 1");
    p(0) = 1.0 - excited;
    return SpectralWeights(std::move(p));
}

QuasiFreeSystem::QuasiFreeSystem(Eigen::MatrixXcd R, Eigen::MatrixXcd M)
    : R_(std::move(R)), M_(std::move(M)) {
    const Eigen::Index n = R_.rows();
    if (R_.cols() != n || M_.rows() != n || M_.cols() != n || n == 0) {
        throw InvalidArgument("quasi-free system: R and M must be square and of equal size");
    }
    const double r_norm = R_.norm();
    const double m_norm = M_.norm();
    if ((R_ - R_.adjoint()).norm() > 1e-12 * std::max(1.0, r_norm) ||
        (M_ - M_.adjoint()).norm() > 1e-12 * std::max(1.0, m_norm)) {
        throw InvalidArgument("quasi-free system: R and M must be Hermitian");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> r_solver(R_, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd rv = r_solver.eigenvalues();
    if (rv.minCoeff() < -1e-12 || rv.maxCoeff() > 1.0 + 1e-12) {
        throw NonPhysicalCovariance("quasi-free system: covariance eigenvalues outside [0, 1]");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> m_solver(M_);
    epsilon_ = m_solver.eigenvalues();
    U_ = m_solver.eigenvectors();
    commutator_norm_ = (M_ * R_ - R_ * M_).norm();
    commuting_ = commutator_norm_ <= 1e-10 * std::max(m_norm * r_norm, 1e-300);

    // diagonalize R inside each degenerate eigenspace of M
    const Eigen::MatrixXcd Rm = U_.adjoint() * R_ * U_;
    r_.resize(n);
    const double tol = 1e-10 * std::max(1.0, epsilon_.cwiseAbs().maxCoeff());
    for (Eigen::Index start = 0; start < n;) {
        Eigen::Index end = start + 1;
        while (end < n && epsilon_(end) - epsilon_(end - 1) <= tol) ++end;
        const Eigen::Index size = end - start;
        if (size == 1) {
            r_(start) = Rm(start, start).real();
        } else {
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> block(Rm.block(start, start, size, size));
            r_.segment(start, size) = block.eigenvalues();
            U_.middleCols(start, size) = U_.middleCols(start, size) * block.eigenvectors();
        }
        start = end;
    }
    r_ = r_.cwiseMax(0.0).cwiseMin(1.0);
    alpha_ = (4.0 * r_.array() * (1.0 - r_.array())).matrix();
}

double quasifree_le(const QuasiFreeSystem& system, double t) {
    const Eigen::Index n = system.R().rows();
    const Eigen::VectorXcd phases =
        (std::complex<double>(0.0, -t) * system.epsilon().cast<std::complex<double>>()).array().exp();
    const Eigen::MatrixXcd evolution = system.eigenvectors() * phases.asDiagonal() * system.eigenvectors().adjoint();
    const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) - system.R() + system.R() * evolution;
    return std::norm(Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant());
}

double quasifree_product_le(const Eigen::Ref<const Eigen::VectorXd>& alpha,
                            const Eigen::Ref<const Eigen::VectorXd>& epsilon, double t) {
    if (alpha.size() != epsilon.size()) throw InvalidArgument("quasifree_product_le: size mismatch");
    double v = 1.0;
    for (Eigen::Index k = 0; k < alpha.size(); ++k) {
        const double s = std::sin(0.5 * t * epsilon(k));
        v *= 1.0 - alpha(k) * s * s;
    }
    return v;
}

double quasifree_product_le(const QuasiFreeSystem& system, double t) {
    if (!system.commuting()) {
        throw InvalidArgument("quasifree_product_le: M and R do not commute");
    }
    return quasifree_product_le(system.alpha(), system.epsilon(), t);
}

std::complex<double> hypergeometric_2f1_half(double lambda, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw AlphaOutOfRange("2F1: alpha must lie in [0, 1)");
    }
    const std::complex<double> b(0.0, -lambda);
    std::complex<double> term = 1.0;
    std::complex<double> sum = 1.0;
    for (int n = 0; n < 10000000; ++n) {
        const double nd = n;
        const std::complex<double> ratio = (0.5 + nd) * (b + nd) / ((1.0 + nd) * (1.0 + nd)) * alpha;
        term *= ratio;
        sum += term;
        // the ratio tends to alpha from below, so the tail is bounded by a geometric series
        const double r = std::max(std::abs(ratio), alpha);
        if (term == 0.0 || (r < 1.0 && std::abs(term) * r / (1.0 - r) < 1e-12 * std::abs(sum))) break;
    }
    return sum;
}

Eigen::VectorXcd quasifree_g_charfun(const Eigen::Ref<const Eigen::VectorXd>& alpha,
                                     const Eigen::Ref<const Eigen::VectorXd>& lambda_grid) {
    for (Eigen::Index k = 0; k < alpha.size(); ++k) {
        if (!(alpha(k) >= 0.0 && alpha(k) < 1.0)) {
            throw AlphaOutOfRange("quasifree_g_charfun: alpha_k = 1 gives a divergent log tail");
        }
    }
    Eigen::VectorXcd out(lambda_grid.size());
    parallel_for(static_cast<std::size_t>(lambda_grid.size()), [&](std::size_t i) {
        const auto j = static_cast<Eigen::Index>(i);
        std::complex<double> v = 1.0;
        for (Eigen::Index k = 0; k < alpha.size(); ++k) v *= hypergeometric_2f1_half(lambda_grid(j), alpha(k));
        out(j) = v;
    });
    return out;
}

Eigen::VectorXd quasifree_g_cumulants(const Eigen::Ref<const Eigen::VectorXd>& alpha) {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(5);
    for (Eigen::Index k = 0; k < alpha.size(); ++k) {
        const double a = alpha(k);
        if (!(a >= 0.0 && a < 1.0)) throw AlphaOutOfRange("quasifree_g_cumulants: alpha must lie in [0, 1)");
        if (a == 0.0) continue;
        double mu[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
        for (int m = 1; m <= 4; ++m) {
            mu[m] = detail::integrate_adaptive(
                        [a, m](double phi) {
                            const double s = std::sin(phi);
                            return std::pow(std::log1p(-a * s * s), m);
                        },
                        0.0, 0.5 * std::numbers::pi, 1e-13) / (0.5 * std::numbers::pi);
        }
        total(1) += mu[1];
        total(2) += mu[2] - mu[1] * mu[1];
        total(3) += mu[3] - 3.0 * mu[2] * mu[1] + 2.0 * std::pow(mu[1], 3);
        total(4) += mu[4] - 4.0 * mu[3] * mu[1] - 3.0 * mu[2] * mu[2] + 12.0 * mu[2] * mu[1] * mu[1] -
                    6.0 * std::pow(mu[1], 4);
    }
    return total;
}

DistributionTable pdf_from_complex_charfun(const std::function<std::complex<double>(double)>& chi,
                                           const Eigen::Ref<const Eigen::VectorXd>& x_grid,
                                           const InversionOptions& options) {
    if (x_grid.size() < 2) throw InvalidArgument("pdf_from_complex_charfun: need at least two grid points");
    const double omega = x_grid.cwiseAbs().maxCoeff();
    const detail::ComplexTransformPlan plan =
        detail::plan_transform_complex(chi, omega, options, "pdf_from_complex_charfun");
    DistributionTable table;
    table.x = x_grid;
    table.pdf.resize(x_grid.size());
    table.cdf.resize(x_grid.size());
    table.provenance = Provenance::kAnalyticInversion;
    table.cutoff = plan.re.cutoff;
    table.regularized = plan.re.regularized;
    parallel_for(static_cast<std::size_t>(x_grid.size()), [&](std::size_t k) {
        const auto i = static_cast<Eigen::Index>(k);
        // P = (1/pi) int Re[chi e^{-isx}],  F = 1/2 + (1/pi) int Im[chi e^{-isx}] (-1/s)
        const auto [pr, fr] = detail::apply_plan(plan.re, x_grid(i), [](double x, double s) {
            return std::pair{std::cos(s * x), std::sin(s * x) / s};
        });
        const auto [pi_, fi] = detail::apply_plan(plan.im, x_grid(i), [](double x, double s) {
            return std::pair{std::sin(s * x), -std::cos(s * x) / s};
        });
        table.pdf(i) = (pr + pi_) / std::numbers::pi;
        table.cdf(i) = 0.5 + (fr + fi) / std::numbers::pi;
    });
    table.mass = integrate_samples(table.x, table.pdf);
    const double covered = table.cdf(table.cdf.size() - 1) - table.cdf(0);
    if (std::abs(table.mass - covered) > options.normalization_tol) {
        throw NormalizationFailure("pdf_from_complex_charfun: grid mass " + std::to_string(table.mass) +
                                   " disagrees with cdf increment " + std::to_string(covered));
    }
    return table;
}

}  // namespace qstats
