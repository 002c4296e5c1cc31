#pragma once

#include <Eigen/Core>
#include <functional>

#include "qstats/bessel.hpp"
#include "qstats/distribution.hpp"

namespace qstats {

/// Coefficients a_n of  ln I0(s) = sum_n a_n s^n / n!.
struct CumulantCoefficients {
    Eigen::VectorXd a;  ///< a(n), n = 0..n_max; odd entries are exactly zero

    [[nodiscard]] double operator[](Eigen::Index n) const { return a(n); }
};

/// Largest order for which the embedded exact coefficients exist.
inline constexpr int kMaxLogI0Order = 32;

/// Throws OrderTooLarge past kMaxLogI0Order.
CumulantCoefficients log_i0_coefficients(int n_max);

/// Scaled weights c_j of a characteristic function  prod_j J0(s c_j).
///
/// A weight family can be split into explicit factors and an implicit tail
/// that is only known through its power sums  tail(p-1) = sum c^(2p);
/// the tail enters through the convergent series of ln J0, which requires
/// s * tail_max < 2 (first zero of J0 is at 2.405).
struct WeightVector {
    Eigen::VectorXd c;
    Eigen::VectorXd tail;
    double tail_max = 0.0;

    WeightVector() = default;
    explicit WeightVector(Eigen::VectorXd weights) : c(std::move(weights)) {}
};

/// chi(s) = prod_j J0(s c_j) (times the tail factor). Evaluated as a plain
/// product with exponent rescaling, so sign changes at Bessel zeros are
/// carried exactly; chi(0) = 1.
double charfun_value(const WeightVector& weights, double s);

Eigen::VectorXd characteristic_function(const WeightVector& weights,
                                        const Eigen::Ref<const Eigen::VectorXd>& s_grid);

/// Density of a real, even characteristic function,
///     P(x) = (1/pi) int_0^inf chi(s) cos(s x) ds,
/// with cdf  F(x) = 1/2 + (1/pi) int_0^inf chi(s) sin(s x) / s ds.
///
/// Throws TruncationError when chi does not decay (see InversionOptions) and
/// NormalizationFailure when the quadrature mass over the grid disagrees
/// with F(x_max) - F(x_min) by more than options.normalization_tol.
DistributionTable pdf_from_charfun(const std::function<double(double)>& chi,
                                   const Eigen::Ref<const Eigen::VectorXd>& x_grid,
                                   const InversionOptions& options = {});

/// Power sums and cumulants of  X = sum_j 2|w_j| cos(phi_j)  with uniform
/// independent phases: Q_2p = sum |w_j|^(2p), kappa_2p = a_2p 2^(2p) Q_2p.
struct WeightCumulants {
    Eigen::VectorXd q;      ///< q(p-1) = Q_2p
    Eigen::VectorXd kappa;  ///< kappa(p-1) = kappa_2p
};

WeightCumulants cumulants_from_weights(const Eigen::Ref<const Eigen::VectorXd>& w, int p_max);

/// Evenly spaced grid, endpoints included.
Eigen::VectorXd linear_grid(double lo, double hi, Eigen::Index points);

}  // namespace qstats
