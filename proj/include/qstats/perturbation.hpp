#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qstats/loschmidt.hpp"

namespace qstats {

inline constexpr Eigen::Index kMaxDenseDimension = 4096;

/// H = H0 + delta_lambda B with observable A. Throws InvalidArgument on
/// shape mismatch or non-Hermitian input (1e-12), DimensionLimit past 4096.
struct DenseSystem {
    Eigen::MatrixXcd H0;
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;

    void validate() const;
};

struct PerturbativeWeights {
    Eigen::VectorXcd Z;         ///< Z_n = A_0n B_n0 / (E_n - E_0), n = 1..dim-1
    Eigen::VectorXd gaps;       ///< E_n - E_0
    Eigen::VectorXcd Z_merged;  ///< coherent sums over gaps equal within 1e-8 relative
    Eigen::VectorXd merged_gaps;
    Eigen::VectorXd Q;          ///< Q(p-1) = sum |Z_n|^2p, p = 1..4
    Eigen::VectorXd Q_merged;   ///< same over merged classes; enters the temporal variance
    double chi_ab = 0.0;        ///< 2 sum Re Z_n
    double diam_a = 0.0;        ///< max minus min eigenvalue of A
    std::vector<std::pair<Eigen::Index, Eigen::Index>> gap_warnings;  ///< n, m with near-equal gaps

    /// 2 delta_lambda^2 sum |Z_merged|^2
    [[nodiscard]] double temporal_variance(double delta_lambda) const {
        return 2.0 * delta_lambda * delta_lambda * Q_merged(0);
    }
};

/// Throws DegenerateGroundState when E_1 - E_0 <= 1e-10 ||H0||.
PerturbativeWeights perturbative_weights(const DenseSystem& system);

struct DiagonalEnsembleReport {
    SpectralWeights weights;  ///< p_E summed over each degenerate level of H
    Eigen::VectorXd traces;   ///< traces(m) = tr(rhobar^m), m = 1..8 (entry 0 unused)
    double mean = 0.0;        ///< infinite-time average of <A>
    double variance = 0.0;    ///< infinite-time temporal variance of <A>
    double diam_a = 0.0;
    double bound = 0.0;       ///< diam(A)^2 tr(rhobar^2)
    bool bound_holds = false;
};

/// Throws UnnormalizedState unless |psi0| = 1 within 1e-10.
DiagonalEnsembleReport diagonal_ensemble(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& psi0,
                                         const Eigen::MatrixXcd& A);

struct DenseXY {
    Eigen::MatrixXd H;
    Eigen::MatrixXd M;  ///< sum_j sz_j
};

/// H = -sum_j [ (1+g)/2 sx_j sx_{j+1} + (1-g)/2 sy_j sy_{j+1} + h sz_j ], periodic.
/// Bit j of a basis index is spin j, 0 meaning sz = +1. L <= 12.
DenseXY build_xy_dense(int L, double h, double gamma);

/// Exact <A>(t) = <psi(t)|A|psi(t)> after a quench into H.
class QuenchEvolution {
public:
    QuenchEvolution(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& psi0, const Eigen::MatrixXcd& A);

    [[nodiscard]] double value(double t) const;
    [[nodiscard]] double time_average() const { return average_; }
    [[nodiscard]] Eigen::Index active_levels() const { return energies_.size(); }

private:
    Eigen::VectorXd energies_;
    Eigen::VectorXcd amplitudes_;
    Eigen::MatrixXcd a_;  ///< A restricted to the active eigenvectors
    double average_ = 0.0;
};

/// Real symmetric matrix with independent N(0, 1/dim) entries (GOE scaling).
Eigen::MatrixXd random_symmetric(Eigen::Index dim, std::uint64_t seed);

/// Lowest eigenvector of a Hermitian matrix.
Eigen::VectorXcd ground_state(const Eigen::MatrixXcd& H);

}  // namespace qstats
