#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qstats/errors.hpp"
#include "qstats/universal.hpp"

using namespace qstats;
using std::numbers::pi;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("one-dimensional zeta closed forms") {
    CHECK(rel(epstein_zeta({2.0, 1, {0.0}}), pi * pi / 6) <= 1e-10);
    CHECK(rel(epstein_zeta({2.0, 1, {0.5}}), pi * pi / 2 - 4) <= 1e-10);
    CHECK(rel(epstein_zeta({8.0, 1, {0.0}}), std::pow(pi, 8) / 9450) <= 1e-10);
    CHECK(rel(epstein_zeta({4.0, 1, {0.5}}), std::pow(pi, 4) / 6 - 16) <= 1e-10);
    // lattice starting at zero: sum_{n>=0} (n + 1/2)^-2 = pi^2 / 2
    ZetaSpec from_zero{2.0, 1, {0.5}};
    from_zero.first_index = 0;
    CHECK(rel(epstein_zeta(from_zero), pi * pi / 2) <= 1e-10);
    CHECK_THROWS_AS(epstein_zeta({1.0, 1, {0.0}}), DivergenceError);
    CHECK_THROWS_AS(epstein_zeta({2.0, 2, {0.0, 0.0}}), DivergenceError);
}

TEST_CASE("Hurwitz shift identity") {
    for (double b : {0.0, 0.25, 0.5}) {
        for (double s : {1.5, 2.0, 3.7}) {
            const double lhs = hurwitz_zeta(s, 1.0 + b);
            const double rhs = hurwitz_zeta(s, 2.0 + b) + std::pow(1.0 + b, -s);
            CHECK(rel(lhs, rhs) <= 1e-10);
        }
    }
}

TEST_CASE("two-dimensional zeta against the Catalan closed form") {
    const double catalan = 0.915965594177219015054603514932;
    const double zeta2 = pi * pi / 6, zeta4 = std::pow(pi, 4) / 90;
    CHECK(rel(epstein_zeta({4.0, 2, {0.0, 0.0}}), zeta2 * catalan - zeta4) <= 1e-8);
}

TEST_CASE("multi-dimensional zeta against direct summation") {
    {
        ZetaSpec spec{6.0, 2, {0.5, 0.0}};
        spec.L = 1000;
        CHECK(rel(epstein_zeta({6.0, 2, {0.5, 0.0}}), epstein_zeta_truncated(spec)) <= 1e-8);
    }
    {
        ZetaSpec spec{8.0, 3, {0.0, 0.0, 0.0}};
        spec.L = 200;
        CHECK(rel(epstein_zeta({8.0, 3, {0.0, 0.0, 0.0}}), epstein_zeta_truncated(spec)) <= 1e-8);
    }
    {
        ZetaSpec spec{9.0, 3, {0.5, 0.25, 0.0}};
        spec.L = 150;
        CHECK(rel(epstein_zeta({9.0, 3, {0.5, 0.25, 0.0}}), epstein_zeta_truncated(spec)) <= 1e-8);
    }
}

TEST_CASE("truncated sums") {
    ZetaSpec spec{2.0, 1, {0.0}};
    spec.L = 2;
    CHECK(epstein_zeta_truncated(spec) == 1.0 + 0.25);
    ZetaSpec s2{3.0, 2, {0.5, 0.5}};
    s2.L = 2;
    const double direct = 2 * std::pow(1.5 * 1.5 + 2.5 * 2.5, -1.5) + std::pow(2 * 1.5 * 1.5, -1.5) +
                          std::pow(2 * 2.5 * 2.5, -1.5);
    CHECK(rel(epstein_zeta_truncated(s2), direct) <= 1e-14);

    double previous = 0.0;
    for (long L : {2L, 8L, 64L, 512L, 4096L}) {
        spec.L = L;
        const double v = epstein_zeta_truncated(spec);
        CHECK(v > previous);
        previous = v;
    }
    CHECK(pi * pi / 6 - previous == doctest::Approx(1.0 / 4096).epsilon(1e-3));

    ZetaSpec harmonic{1.0, 1, {0.0}};
    harmonic.L = 1000000;
    CHECK(std::abs(epstein_zeta_truncated(harmonic) / std::log(1e6) - 1.0) <= 0.05);
}

TEST_CASE("truncation law") {
    std::vector<long> sizes;
    for (int e = 6; e <= 14; ++e) sizes.push_back(1L << e);
    const TruncationFit power = truncation_law({2.0, 1, {0.0}}, sizes);
    CHECK(power.law == "power");
    CHECK(std::abs(power.exponent + 1.0) <= 0.02);
    CHECK(power.constant == doctest::Approx(1.0).epsilon(0.02));
    const TruncationFit log = truncation_law({1.0, 1, {0.0}}, sizes);
    CHECK(log.law == "log");
    CHECK(log.r2 >= 0.999);
    CHECK(log.constant == doctest::Approx(1.0).epsilon(0.01));
    const TruncationFit growth = truncation_law({0.5, 1, {0.0}}, sizes);
    CHECK(growth.law == "growth");
    CHECK(growth.exponent == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("universal ratios") {
    const UniversalRatios a1 = universal_ratios(1.0, 1, {0.0}, 3);
    CHECK(a1.branch == "zeta");
    CHECK(a1.R(0) == 1.0);
    CHECK(rel(a1.R(1), 0.4) <= 1e-10);
    const UniversalRatios a2 = universal_ratios(2.0, 1, {0.0}, 2);
    CHECK(rel(a2.R(1), 6.0 / 7.0) <= 1e-10);
    const UniversalRatios g = universal_ratios(0.25, 1, {0.0}, 4);
    CHECK(g.branch == "gaussian");
    CHECK(g.R(0) == 1.0);
    CHECK(g.R(1) == 0.0);
    for (int p = 2; p <= 3; ++p) {
        CHECK(a1.R(p - 1) > 0.0);
        CHECK(a1.R(p - 1) <= 1.0);
    }
}

TEST_CASE("finite-size ratios converge") {
    const Eigen::VectorXd r = finite_size_ratios(1.0, 1, {0.0}, 100000, 2);
    CHECK(rel(r(1), 0.4) <= 1e-4);
    // Gaussian branch: R_4(L) decreases to zero
    double previous = 1.0;
    for (long L : {1000L, 10000L, 100000L, 1000000L}) {
        const double v = finite_size_ratios(0.25, 1, {0.0}, L, 2)(1);
        CHECK(v < previous);
        previous = v;
    }
    CHECK(previous < 0.05);
}

TEST_CASE("limit weights carry the whole family") {
    const LimitWeights lw = limit_weights(1.0, 1, {0.5}, LimitVariable::kObservable, 100, 0);
    const double explicit_sum = lw.weights.c.squaredNorm();
    CHECK(explicit_sum + lw.weights.tail(0) == doctest::Approx(2.0).epsilon(1e-12));
    const LimitWeights d2 = limit_weights(1.5, 2, {0.0, 0.0}, LimitVariable::kLoschmidt, 300);
    CHECK(d2.weights.c.squaredNorm() + d2.weights.tail(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d2.weights.tail_max <= d2.weights.c.minCoeff());
}

TEST_CASE("limit distributions") {
    const DistributionTable gauss = limit_distribution(0.25, 1, {0.0}, LimitVariable::kObservable);
    CHECK(gauss.mass == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(gauss.pdf(gauss.pdf.size() / 2) == doctest::Approx(1.0 / std::sqrt(2 * pi)).epsilon(1e-8));

    LimitOptions opt;
    opt.first_index = 0;
    const DistributionTable ising = limit_distribution(1.0, 1, {0.5}, LimitVariable::kObservable, opt);
    CHECK(std::abs(ising.mass - 1.0) <= 1e-4);
    CHECK(table_moment(ising, 2) == doctest::Approx(1.0).epsilon(1e-4));
    // central dip of the critical magnetization law
    const auto mid = ising.pdf.size() / 2;
    CHECK(ising.pdf(mid) < ising.pdf.maxCoeff());

    const DistributionTable le = limit_distribution(2.0, 1, {0.0}, LimitVariable::kLoschmidt);
    CHECK(std::abs(le.mass - 1.0) <= 1e-4);
    CHECK(std::abs(table_moment(le, 1) - 1.0) <= 1e-3);
    CHECK(le.provenance == Provenance::kKernelIntegral);
}

TEST_CASE("scaling fit") {
    const ScalingFit f = scaling_fit({2, 4, 8, 16, 32}, {4, 16, 64, 256, 1024});
    CHECK(f.exponent == doctest::Approx(2.0));
    CHECK(f.prefactor == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));
    CHECK(f.n_points == 5);
    CHECK_THROWS_AS(scaling_fit({1, 2, 3, 4}, {1, 2, 0, 4}), NonPositiveValue);
    CHECK_THROWS_AS(scaling_fit({1, 2, 3}, {1, 2, 3}), InvalidArgument);
}
