#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <vector>

#include "qstats/distribution.hpp"

namespace qstats {

/// Diagonal-ensemble weights p_n = |<n|psi0>|^2. Weights built from a
/// ground state keep p_0 in front.
struct SpectralWeights {
    Eigen::VectorXd p;
    bool normalized = false;

    SpectralWeights() = default;
    /// Throws InvalidArgument on negative or non-finite entries; the flag is
    /// set when the sum is 1 within 1e-12.
    explicit SpectralWeights(Eigen::VectorXd weights);

    [[nodiscard]] Eigen::VectorXd excited() const {
        return p.size() > 1 ? Eigen::VectorXd(p.tail(p.size() - 1)) : Eigen::VectorXd();
    }
};

/// J(rho) = prod_n J0(p_n rho)
Eigen::VectorXd le_charfun(const SpectralWeights& weights,
                           const Eigen::Ref<const Eigen::VectorXd>& rho_grid);
double le_charfun_value(const SpectralWeights& weights, double rho);

/// exp( sum_{p<=p_max} a_2p tr(rhobar^2p) (-1)^p rho^2p / (2p)! ), valid for
/// rho max_n p_n below the first zero of J0.
double le_charfun_series(const SpectralWeights& weights, double rho, int p_max = 16);

struct Purities {
    Eigen::VectorXd trace;  ///< trace(m) = tr(rhobar^m) = sum p^m, m = 0..m_max (entry 0 unused)
    Eigen::VectorXd T;      ///< T(n) = tr(rhobar^2n) / tr(rhobar^2)^n, n = 1..n_max (entry 0 unused)
};

Purities purities(const SpectralWeights& weights, int n_max);

/// Density of L = |sum_n p_n e^(i phi_n)|^2 from its characteristic function
///     P(x) = int_0^inf K(x, rho) J(rho) d rho,
///     K(x, rho) = J1(sqrt(x) rho) / (2 sqrt(x)) + (rho / 4)[J0(sqrt(x) rho) - J2(sqrt(x) rho)],
/// with K(0, rho) = rho / 2, and cdf F(x) = int_0^inf sqrt(x) J1(sqrt(x) rho) J(rho) d rho.
/// Grid points must be non-negative.
DistributionTable le_pdf(const std::function<double(double)>& J,
                         const Eigen::Ref<const Eigen::VectorXd>& x_grid,
                         const InversionOptions& options = {});

/// p_j = delta_lambda^2 ||n_j + b||^(-2/nu) over the n_modes smallest lattice
/// norms (components from first_index on), p_0 = 1 - sum p_j first.
/// Throws WeightOverflow when the excited weights reach 1.
SpectralWeights critical_weights(double nu, int d, const std::vector<double>& b, long n_modes,
                                 double delta_lambda, int first_index = 1);

/// p_j = delta_lambda^2 E_j^(-power) for excitation energies E_j > 0, with
/// p_0 = 1 - sum p_j in front. First-order weights of a gapped spectrum.
SpectralWeights weights_from_energies(const Eigen::Ref<const Eigen::VectorXd>& energies,
                                      double delta_lambda, double power = 2.0);

/// Quadratic fermion system: covariance R = <c^dagger c> and one-particle
/// Hamiltonian M.
class QuasiFreeSystem {
public:
    /// Throws NonPhysicalCovariance when an eigenvalue of R leaves
    /// [-1e-12, 1 + 1e-12], InvalidArgument on non-Hermitian input.
    QuasiFreeSystem(Eigen::MatrixXcd R, Eigen::MatrixXcd M);

    [[nodiscard]] const Eigen::MatrixXcd& R() const { return R_; }
    [[nodiscard]] const Eigen::MatrixXcd& M() const { return M_; }
    [[nodiscard]] const Eigen::VectorXd& epsilon() const { return epsilon_; }
    /// Occupations in M's eigenbasis (diagonalized inside degenerate blocks).
    [[nodiscard]] const Eigen::VectorXd& r() const { return r_; }
    [[nodiscard]] const Eigen::VectorXd& alpha() const { return alpha_; }
    [[nodiscard]] double commutator_norm() const { return commutator_norm_; }
    /// ||[M, R]|| <= 1e-10 ||M|| ||R|| (Frobenius norms)
    [[nodiscard]] bool commuting() const { return commuting_; }
    [[nodiscard]] const Eigen::MatrixXcd& eigenvectors() const { return U_; }

private:
    Eigen::MatrixXcd R_, M_, U_;
    Eigen::VectorXd epsilon_, r_, alpha_;
    double commutator_norm_ = 0.0;
    bool commuting_ = false;
};

/// |det(1 - R + R e^(-itM))|^2
double quasifree_le(const QuasiFreeSystem& system, double t);

/// prod_k (1 - alpha_k sin^2(t eps_k / 2))
double quasifree_product_le(const Eigen::Ref<const Eigen::VectorXd>& alpha,
                            const Eigen::Ref<const Eigen::VectorXd>& epsilon, double t);

/// Product form of a commuting system; throws InvalidArgument otherwise.
double quasifree_product_le(const QuasiFreeSystem& system, double t);

/// 2F1(1/2, -i lambda; 1; alpha) summed until the remaining tail is below
/// 1e-12 of the partial sum. alpha must lie in [0, 1).
std::complex<double> hypergeometric_2f1_half(double lambda, double alpha);

/// Characteristic function E[exp(i lambda G)] of G = ln L = sum_k ln(1 - alpha_k sin^2 phi_k).
/// Throws AlphaOutOfRange unless every alpha_k is in [0, 1).
Eigen::VectorXcd quasifree_g_charfun(const Eigen::Ref<const Eigen::VectorXd>& alpha,
                                     const Eigen::Ref<const Eigen::VectorXd>& lambda_grid);

/// Cumulants kappa_1..kappa_4 (entries 1..4) of G, summed over modes from
/// exact phase averages.
Eigen::VectorXd quasifree_g_cumulants(const Eigen::Ref<const Eigen::VectorXd>& alpha);

/// Density and cdf of a real variable from a complex characteristic function.
DistributionTable pdf_from_complex_charfun(const std::function<std::complex<double>(double)>& chi,
                                           const Eigen::Ref<const Eigen::VectorXd>& x_grid,
                                           const InversionOptions& options = {});

}  // namespace qstats
