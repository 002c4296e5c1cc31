#include <cmath>

#include "doctest.h"
#include "qstats/bessel.hpp"
#include "qstats/errors.hpp"

using namespace qstats;

TEST_CASE("bessel values at the origin") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(bessel_j1(0.0) == 0.0);
    CHECK(bessel_j2(0.0) == 0.0);
}

TEST_CASE("first zero of J0") {
    CHECK(std::abs(bessel_j0(2.404825557695773)) <= 1e-10);
}

TEST_CASE("J0(1) reference value") {
    CHECK(std::abs(bessel_j0(1.0) - 0.7651976865579666) <= 1e-14);
}

TEST_CASE("power-series band matches the standard library to 1e-12 absolute") {
    for (double x = -8.0; x <= 8.0; x += 0.01) {
        for (int n = 0; n <= 2; ++n) {
            const double ref = std::cyl_bessel_j(static_cast<double>(n), std::abs(x)) *
                               ((n == 1 && x < 0) ? -1.0 : 1.0);
            REQUIRE(std::abs(bessel_j(n, x) - ref) <= 1e-12);
        }
    }
}

TEST_CASE("large arguments match the standard library to 1e-10 relative to the envelope") {
    for (double x = 8.0; x <= 2000.0; x *= 1.003) {
        const BesselTriple t = bessel_j012(x);
        const double envelope = std::sqrt(2.0 / (3.141592653589793 * x));
        REQUIRE(std::abs(t.j0 - std::cyl_bessel_j(0.0, x)) <= 1e-10 * envelope);
        REQUIRE(std::abs(t.j1 - std::cyl_bessel_j(1.0, x)) <= 1e-10 * envelope);
        REQUIRE(std::abs(t.j2 - std::cyl_bessel_j(2.0, x)) <= 1e-10 * envelope);
    }
}

TEST_CASE("parity") {
    CHECK(bessel_j0(-3.7) == bessel_j0(3.7));
    CHECK(bessel_j1(-3.7) == -bessel_j1(3.7));
    CHECK(bessel_j2(-31.0) == bessel_j2(31.0));
}

TEST_CASE("unsupported order") {
    CHECK_THROWS_AS(bessel_j(3, 1.0), InvalidArgument);
}
