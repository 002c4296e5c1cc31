#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "qstats/charfun.hpp"
#include "qstats/distribution.hpp"

namespace qstats {

/// Lattice sum  zeta_b(alpha) = sum_n ||n + b||^(-alpha)  over integer
/// vectors whose components all start at `first_index` (1 by default; 0 adds
/// the boundary layers and needs a nonzero b). With `L` set, every component
/// runs over L consecutive values only.
struct ZetaSpec {
    double alpha = 2.0;
    int d = 1;
    std::vector<double> b{0.0};
    std::optional<long> L;
    int first_index = 1;

    void validate() const;
};

/// d = 1: Euler-Maclaurin after 10^4 explicit terms. d = 2, 3: Mellin
/// transform of a product of one-sided theta functions, with the small-t
/// piece integrated term by term from the theta asymptotic series.
/// Throws DivergenceError for alpha <= d without truncation.
double epstein_zeta(const ZetaSpec& spec);

/// Exact finite sum; spec.L must be set.
double epstein_zeta_truncated(const ZetaSpec& spec);

/// Hurwitz zeta  sum_{n>=0} (n + a)^(-s), s > 1, a > 0.
double hurwitz_zeta(double s, double a);

struct TruncationFit {
    /// "power": zeta - zeta_L ~ C L^(d-alpha) / (alpha - d)
    /// "log": zeta_L ~ C' ln L + const (alpha = d)
    /// "growth": zeta_L(2L) - zeta_L(L) ~ L^(d-alpha) (alpha < d)
    std::string law;
    double exponent = 0.0;  ///< fitted power of L (0 for the log law)
    double constant = 0.0;  ///< C, or C' for the log law
    double r2 = 0.0;
    int n_points = 0;
};

TruncationFit truncation_law(const ZetaSpec& spec, const std::vector<long>& sizes);

struct UniversalRatios {
    double alpha = 0.0;
    int p_max = 0;
    Eigen::VectorXd R;   ///< R(p-1) = R_2p
    std::string branch;  ///< "zeta" or "gaussian"
};

/// R_2p = zeta_b(2 p alpha) / zeta_b(2 alpha)^p when 2 alpha > d, otherwise
/// the Gaussian values delta_{p,1}.
UniversalRatios universal_ratios(double alpha, int d, const std::vector<double>& b, int p_max,
                                 int first_index = 1);

/// Same ratios from the sums truncated at L; defined for any alpha.
Eigen::VectorXd finite_size_ratios(double alpha, int d, const std::vector<double>& b, long L,
                                   int p_max, int first_index = 1);

enum class LimitVariable { kObservable, kLoschmidt };

struct LimitOptions {
    InversionOptions inversion;
    Eigen::Index points = 2001;
    double x_max = 8.0;  ///< half-width of the observable grid
    int first_index = 1;
};

/// Rescaled weight family c_n = kappa ||n + b||^(-alpha). The leading modes
/// are explicit; all remaining ones enter exactly through their power sums.
/// kappa fixes sum c^2 = 2 (observable: X = sum c cos(phi) has unit
/// variance) or sum c^2 = 1 (Loschmidt echo: unit mean).
struct LimitWeights {
    WeightVector weights;
    double kappa = 0.0;
    double support = 0.0;  ///< sum of all c_n (largest |X|, or sqrt of the largest echo)
    Eigen::Index explicit_modes = 0;
};

LimitWeights limit_weights(double alpha, int d, const std::vector<double>& b, LimitVariable variable,
                           Eigen::Index explicit_modes, int first_index = 1);

/// Universal distribution of the rescaled observable or echo. The Gaussian
/// branch (2 alpha <= d) gives N(0, 1), respectively the exponential law.
DistributionTable limit_distribution(double alpha, int d, const std::vector<double>& b,
                                     LimitVariable variable, const LimitOptions& options = {});

struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r2 = 0.0;
    int n_points = 0;
};

/// Least squares on (ln size, ln value). Needs four or more points;
/// throws NonPositiveValue on non-positive input.
ScalingFit scaling_fit(const std::vector<double>& sizes, const std::vector<double>& values);

}  // namespace qstats
