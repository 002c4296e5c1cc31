#pragma once

namespace qstats {

/// Bessel functions of the first kind of integer order 0, 1 and 2.
///
/// |x| <= 8 uses the power series (absolute error ~1e-14). Between 8 and 25
/// the values come from Miller's backward recurrence normalised by
/// J0 + 2 sum J_2k = 1, and from 25 on from the Hankel asymptotic expansion
/// in modulus/phase form, summed until the terms stop decreasing.
double bessel_j0(double x);
double bessel_j1(double x);
double bessel_j2(double x);

/// order must be 0, 1 or 2.
double bessel_j(int order, double x);

struct BesselTriple {
    double j0;
    double j1;
    double j2;
};

/// J0, J1 and J2 at the same argument, sharing the work.
BesselTriple bessel_j012(double x);

}  // namespace qstats
