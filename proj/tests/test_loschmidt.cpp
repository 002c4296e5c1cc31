#include <cmath>
#include <Eigen/QR>
#include <numbers>

#include "doctest.h"
#include "qstats/errors.hpp"
#include "qstats/loschmidt.hpp"
#include "qstats/timeseries.hpp"
#include "qstats/universal.hpp"

using namespace qstats;
using std::numbers::pi;

TEST_CASE("stationary state") {
    const SpectralWeights w(Eigen::VectorXd::Ones(1));
    CHECK(w.normalized);
    for (double r : {0.0, 0.5, 3.0, 40.0}) CHECK(le_charfun_value(w, r) == bessel_j0(r));
}

TEST_CASE("two equal weights") {
    const SpectralWeights w(Eigen::VectorXd::Constant(2, 0.5));
    const Purities p = purities(w, 2);
    CHECK(p.trace(2) == 0.5);
    CHECK(p.T(1) == 1.0);
    CHECK(p.T(2) == 0.5);
    // L(t) = cos^2(t / 2): time statistics agree with the purities
    const Trajectory tr = sample_function([](double t) { return std::pow(std::cos(0.5 * t), 2); }, {1e4, 200000, 1, 16});
    const EmpiricalStats s = empirical_stats(tr.value);
    CHECK(std::abs(s.mean - p.trace(2)) <= 4 * s.std_errors(1));
}

TEST_CASE("product and series forms agree") {
    Eigen::VectorXd p(4);
    p << 0.6, 0.25, 0.1, 0.05;
    const SpectralWeights w(p);
    for (double r : {0.3, 1.0, 1.6}) {
        CHECK(std::abs(le_charfun_series(w, r) - le_charfun_value(w, r)) <= 1e-10);
    }
}

TEST_CASE("purity properties") {
    Eigen::VectorXd p(5);
    p << 0.5, 0.2, 0.15, 0.1, 0.05;
    const Purities pu = purities(SpectralWeights(p), 4);
    for (int m = 2; m <= 8; ++m) CHECK(pu.trace(m) < pu.trace(m - 1));
    for (int n = 1; n <= 4; ++n) CHECK(pu.T(n) <= 1.0);
}

TEST_CASE("critical weights") {
    CHECK(critical_weights(1.0, 1, {0.0}, 10, 0.0).p.size() == 1);
    const SpectralWeights two = critical_weights(1.0, 1, {0.0}, 2, 0.1);
    CHECK(two.p(1) / two.p(2) == doctest::Approx(4.0));
    const SpectralWeights many = critical_weights(1.0, 1, {0.0}, 10000, 0.01);
    ZetaSpec trunc{2.0, 1, {0.0}};
    trunc.L = 10000;
    CHECK(many.p(0) == doctest::Approx(1.0 - 1e-4 * epstein_zeta_truncated(trunc)).epsilon(1e-14));
    CHECK(many.p(0) == doctest::Approx(1.0 - 1.6449e-4).epsilon(1e-7));
    CHECK(many.normalized);
    CHECK_THROWS_AS(critical_weights(1.0, 1, {0.0}, 100, 1.0), WeightOverflow);
}

TEST_CASE("T4 of critical weights approaches the zeta ratio") {
    double previous = 0.0;
    for (long n : {10L, 100L, 1000L}) {
        const SpectralWeights w = critical_weights(1.0, 1, {0.0}, n, 0.01);
        const SpectralWeights excited(w.excited());
        const double t4 = purities(excited, 2).T(2);
        CHECK(std::abs(t4 - 6.0 / 7.0) <= std::abs(previous - 6.0 / 7.0) + 1e-15);
        previous = t4;
    }
    CHECK(previous == doctest::Approx(6.0 / 7.0).epsilon(1e-6));
}

TEST_CASE("gapped spectra lose the universal ratio") {
    double previous = 1.0;
    for (int L : {64, 128, 256, 512, 1024}) {
        Eigen::VectorXd e(L / 2);
        for (int j = 0; j < L / 2; ++j) {
            const double k = 2 * pi / L * (j + 0.5);
            e(j) = 2 * std::sqrt(std::pow(std::sin(k), 2) + 0.25);
        }
        const SpectralWeights w = weights_from_energies(e, 0.01);
        const double t4 = purities(SpectralWeights(w.excited()), 2).T(2);
        CHECK(t4 < previous);
        previous = t4;
    }
}

TEST_CASE("arcsine law of two equal weights") {
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(99, 0.01, 0.99);
    InversionOptions opt;
    opt.smoothing = 5e-4;
    const DistributionTable t = le_pdf([](double r) { return std::pow(bessel_j0(0.5 * r), 2); }, x, opt);
    double err = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        err = std::max(err, std::abs(t.pdf(i) - 1.0 / (pi * std::sqrt(x(i) * (1 - x(i))))));
    }
    CHECK(err <= 1e-3);
}

TEST_CASE("Poisson limit") {
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(801, 0.0, 8.0);
    const DistributionTable t = le_pdf([](double r) { return std::exp(-0.25 * r * r); }, x);
    double err = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        err = std::max(err, std::abs(t.pdf(i) - std::exp(-x(i))));
        CHECK(std::abs(t.cdf(i) - (1.0 - std::exp(-x(i)))) <= 1e-6);
    }
    CHECK(err <= 1e-3);
    CHECK(t.pdf(0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("quasi-free determinant and product forms") {
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(1, 1), M = Eigen::MatrixXcd::Zero(1, 1);
    R(0, 0) = 0.5;
    M(0, 0) = 1.7;
    const QuasiFreeSystem one(R, M);
    CHECK(one.alpha()(0) == 1.0);
    for (double t : {0.0, 0.3, 2.0, 11.0}) {
        CHECK(quasifree_le(one, t) == doctest::Approx(std::pow(std::cos(1.7 * t / 2), 2)).epsilon(1e-12));
        CHECK(quasifree_product_le(one, t) == doctest::Approx(std::pow(std::cos(1.7 * t / 2), 2)).epsilon(1e-12));
    }

    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(2, 2), M2 = Eigen::MatrixXcd::Zero(2, 2);
    P(0, 0) = 1.0;
    M2(0, 0) = 0.3;
    M2(1, 1) = 1.1;
    const QuasiFreeSystem eig(P, M2);
    for (double t : {0.0, 1.0, 5.0}) CHECK(quasifree_le(eig, t) == doctest::Approx(1.0));

    // random commuting pair: shared eigenvectors with a degenerate level
    const int n = 6;
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Random(n, n);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(X);
    const Eigen::MatrixXcd U = qr.householderQ();
    Eigen::VectorXd eps(n), occ(n);
    eps << -1.3, -0.4, -0.4, 0.2, 0.9, 2.5;
    occ << 0.9, 0.3, 0.6, 0.5, 0.05, 0.0;
    const QuasiFreeSystem sys(U * occ.cast<std::complex<double>>().asDiagonal() * U.adjoint(),
                              U * eps.cast<std::complex<double>>().asDiagonal() * U.adjoint());
    CHECK(sys.commuting());
    for (double t : {0.0, 0.7, 3.1, 20.0}) {
        CHECK(std::abs(quasifree_le(sys, t) - quasifree_product_le(sys, t)) <= 1e-10);
        CHECK(quasifree_le(sys, t) <= 1.0 + 1e-12);
        CHECK(quasifree_le(sys, t) >= 0.0);
    }
    CHECK(quasifree_le(sys, 0.0) == doctest::Approx(1.0));

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(1, 1) * 1.5;
    CHECK_THROWS_AS(QuasiFreeSystem(bad, M), NonPhysicalCovariance);
}

TEST_CASE("quasi-free mean") {
    Eigen::VectorXd alpha(3), eps(3);
    alpha << 0.3, 0.7, 0.5;
    eps << 1.0, std::sqrt(2.0), std::sqrt(5.0);
    const Trajectory tr = sample_function([&](double t) { return quasifree_product_le(alpha, eps, t); },
                                          {1e5, 200000, 11, 16});
    const EmpiricalStats s = empirical_stats(tr.value);
    const double expected = (1 - 0.15) * (1 - 0.35) * (1 - 0.25);
    CHECK(std::abs(s.mean - expected) <= 4 * s.std_errors(1));
}

TEST_CASE("hypergeometric characteristic function of ln L") {
    Eigen::VectorXd alpha(2);
    alpha << 0.75, 0.2;
    const Eigen::VectorXcd at0 = quasifree_g_charfun(alpha, Eigen::VectorXd::Zero(1));
    CHECK(std::abs(at0(0) - 1.0) <= 1e-15);
    // -i d/dlambda at zero is the mean of ln(1 - a sin^2)
    const double h = 1e-5;
    Eigen::VectorXd single(1);
    single << 0.75;
    Eigen::VectorXd grid(2);
    grid << h, -h;
    const Eigen::VectorXcd v = quasifree_g_charfun(single, grid);
    const double mean = ((v(0) - v(1)) / (2 * h) * std::complex<double>(0, -1)).real();
    CHECK(mean == doctest::Approx(2 * std::log(0.75)).epsilon(1e-6));
    CHECK(quasifree_g_cumulants(single)(1) == doctest::Approx(2 * std::log(0.75)).epsilon(1e-12));
    Eigen::VectorXd one(1);
    one << 1.0;
    CHECK_THROWS_AS(quasifree_g_charfun(one, grid), AlphaOutOfRange);
}

TEST_CASE("ln L of many small modes: sampled histogram, inverted law, vanishing skewness") {
    const int n = 64;
    Eigen::VectorXd alpha = Eigen::VectorXd::Constant(n, 0.3);
    Eigen::VectorXd eps(n);
    for (int k = 0; k < n; ++k) eps(k) = std::sqrt(2.0 + k) + 0.1 * std::sqrt(3.0 * k + 1);
    const Trajectory tr = sample_function([&](double t) { return std::log(quasifree_product_le(alpha, eps, t)); },
                                          {1e6, 100000, 21, 16});
    const Eigen::VectorXd kappa = quasifree_g_cumulants(alpha);
    const double sd = std::sqrt(kappa(2));
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(401, kappa(1) - 6 * sd, kappa(1) + 6 * sd);
    const DistributionTable t = pdf_from_complex_charfun(
        [&](double s) { return quasifree_g_charfun(alpha, Eigen::VectorXd::Constant(1, s))(0); }, x);
    CHECK(std::abs(t.mass - 1.0) <= 1e-4);
    const double ks = ks_distance(tr.value, [&](double v) { return interpolate_cdf(t, v); });
    CHECK(ks <= 0.01);

    double previous = 1.0;
    for (int m : {4, 16, 64, 256}) {
        const Eigen::VectorXd k = quasifree_g_cumulants(Eigen::VectorXd::Constant(m, 0.3));
        const double skew = std::abs(k(3)) / std::pow(k(2), 1.5);
        CHECK(skew < previous);
        previous = skew;
    }
}
