#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

namespace qstats {

/// One quench of the transverse-field XY chain
///     H = -sum_j [ (1+g)/2 sx_j sx_{j+1} + (1-g)/2 sy_j sy_{j+1} + h sz_j ].
struct QuenchProtocol {
    int L = 2;
    double h1 = 1.0;
    double gamma1 = 1.0;
    double h2 = 1.0;
    double gamma2 = 1.0;
    double bc_offset = 0.5;  ///< momentum offset b; 1/2 is the fermionic antiperiodic grid

    [[nodiscard]] double delta_h() const { return h2 - h1; }
    [[nodiscard]] double delta_gamma() const { return gamma2 - gamma1; }
    /// |h2 - h1| + |gamma2 - gamma1|
    [[nodiscard]] double delta_lambda() const;
    /// Throws InvalidArgument on L < 2 or b outside [0, 1/2].
    void validate() const;
};

struct ModeData {
    double k = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double delta_theta = 0.0;
    double lambda = 0.0;
    double w = 0.0;     ///< sin(theta2) sin(delta_theta)
    double mean = 0.0;  ///< cos(theta2) cos(delta_theta), time-independent part
};

struct ModeTable {
    std::vector<ModeData> modes;
    std::vector<int> index;  ///< grid index n of each retained mode
    std::vector<std::string> warnings;
};

/// Universality data of a critical point; alpha = 2d + zeta - delta_A - delta_B.
class CriticalExponents {
public:
    CriticalExponents(int d, double zeta_dyn, double nu, double delta_a, double delta_b,
                      std::vector<double> b);

    [[nodiscard]] int d() const { return d_; }
    [[nodiscard]] double zeta_dyn() const { return zeta_dyn_; }
    [[nodiscard]] double nu() const { return nu_; }
    [[nodiscard]] double delta_a() const { return delta_a_; }
    [[nodiscard]] double delta_b() const { return delta_b_; }
    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] const std::vector<double>& b() const { return b_; }
    /// |delta_lambda|^(-nu); delta_lambda must be nonzero.
    [[nodiscard]] double xi(double delta_lambda) const;

private:
    int d_;
    double zeta_dyn_, nu_, delta_a_, delta_b_, alpha_;
    std::vector<double> b_;
};

/// k_n = (2 pi / L)(n + b), n = 0..L-1.
Eigen::VectorXd momentum_grid(int L, double bc_offset);

struct BogoliubovAngle {
    double theta;
    double lambda;
};

/// theta = atan2(-gamma sin k, h + cos k), Lambda = 2 sqrt((h + cos k)^2 + gamma^2 sin^2 k).
/// Throws DegenerateMode when both arguments vanish to within rounding.
BogoliubovAngle bogoliubov(double h, double gamma, double k);

/// Mode data on the protocol's grid. Degenerate modes are dropped and
/// reported in `warnings`.
ModeTable quench_modes(const QuenchProtocol& protocol);

struct RegimeReport {
    double delta_lambda = 0.0;
    double threshold = 0.0;  ///< min(L^(-d/2), L^(-1/nu))
    double ratio = 0.0;      ///< delta_lambda / threshold
    double xi = 0.0;         ///< |h2 - h_c|^(-nu); infinite at h2 = h_c
    std::string label;       ///< "no quench", "critical", "off-critical" or "crossover"
};

/// Small-quench and finite-size regime of a protocol. "critical" needs
/// xi > 10 L, "off-critical" xi < L / 10.
RegimeReport small_quench_check(const QuenchProtocol& protocol, const CriticalExponents& exponents,
                                double h_c = 1.0);

/// CSV with header n,k,theta1,theta2,delta_theta,lambda,w.
void write_modes_csv(std::ostream& out, const ModeTable& table);

}  // namespace qstats
