#include "qstats/model_xy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "format.hpp"
#include "qstats/errors.hpp"
#include "qstats/parallel.hpp"

namespace qstats {

double QuenchProtocol::delta_lambda() const {
    return std::abs(h2 - h1) + std::abs(gamma2 - gamma1);
}

void QuenchProtocol::validate() const {
    if (L < 2) throw InvalidArgument("protocol: L must be at least 2");
    if (!(bc_offset >= 0.0 && bc_offset <= 0.5)) {
        throw InvalidArgument("protocol: bc_offset must lie in [0, 1/2]");
    }
}

CriticalExponents::CriticalExponents(int d, double zeta_dyn, double nu, double delta_a,
                                     double delta_b, std::vector<double> b)
    : d_(d), zeta_dyn_(zeta_dyn), nu_(nu), delta_a_(delta_a), delta_b_(delta_b),
      alpha_(2.0 * d + zeta_dyn - delta_a - delta_b), b_(std::move(b)) {
    if (d < 1) throw InvalidArgument("exponents: d must be positive");
    if (!(nu > 0.0) || !(zeta_dyn > 0.0)) throw InvalidArgument("exponents: nu and zeta must be positive");
    if (b_.empty()) b_.assign(static_cast<std::size_t>(d), 0.0);
    if (b_.size() != static_cast<std::size_t>(d)) throw InvalidArgument("exponents: b needs d entries");
}

double CriticalExponents::xi(double delta_lambda) const {
    if (delta_lambda == 0.0) throw InvalidArgument("xi: undefined at zero coupling distance");
    return std::pow(std::abs(delta_lambda), -nu_);
}

Eigen::VectorXd momentum_grid(int L, double bc_offset) {
    if (L < 2) throw InvalidArgument("momentum_grid: L must be at least 2");
    if (!(bc_offset >= 0.0 && bc_offset <= 0.5)) {
        throw InvalidArgument("momentum_grid: bc_offset must lie in [0, 1/2]");
    }
    Eigen::VectorXd k(L);
    for (int n = 0; n < L; ++n) k(n) = 2.0 * std::numbers::pi / L * (n + bc_offset);
    return k;
}

BogoliubovAngle bogoliubov(double h, double gamma, double k) {
    const double x = h + std::cos(k);
    const double y = -gamma * std::sin(k);
    // zero up to the rounding of cos k and sin k
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(h) + 1.0 + std::abs(gamma));
    if (std::abs(x) <= tol && std::abs(y) <= tol) {
        throw DegenerateMode("bogoliubov: angle undefined at k = " + detail::full(k));
    }
    return {std::atan2(y, x), 2.0 * std::hypot(x, y)};
}

ModeTable quench_modes(const QuenchProtocol& protocol) {
    protocol.validate();
    const Eigen::VectorXd k = momentum_grid(protocol.L, protocol.bc_offset);
    std::vector<ModeData> all(static_cast<std::size_t>(protocol.L));
    std::vector<char> ok(all.size(), 1);
    std::vector<std::string> why(all.size());
    parallel_for(all.size(), [&](std::size_t n) {
        const double kn = k(static_cast<Eigen::Index>(n));
        try {
            const BogoliubovAngle pre = bogoliubov(protocol.h1, protocol.gamma1, kn);
            const BogoliubovAngle post = bogoliubov(protocol.h2, protocol.gamma2, kn);
            ModeData& m = all[n];
            m.k = kn;
            m.theta1 = pre.theta;
            m.theta2 = post.theta;
            m.delta_theta = post.theta - pre.theta;
            m.lambda = post.lambda;
            m.w = std::sin(m.theta2) * std::sin(m.delta_theta);
            m.mean = std::cos(m.theta2) * std::cos(m.delta_theta);
        } catch (const DegenerateMode& e) {
            ok[n] = 0;
            why[n] = "dropped mode n=" + std::to_string(n) + ": " + e.what();
        }
    });
    ModeTable table;
    for (std::size_t n = 0; n < all.size(); ++n) {
        if (ok[n]) {
            table.modes.push_back(all[n]);
            table.index.push_back(static_cast<int>(n));
        } else {
            table.warnings.push_back(why[n]);
        }
    }
    return table;
}

RegimeReport small_quench_check(const QuenchProtocol& protocol, const CriticalExponents& exponents,
                                double h_c) {
    RegimeReport r;
    const double L = protocol.L;
    r.delta_lambda = protocol.delta_lambda();
    r.threshold = std::min(std::pow(L, -0.5 * exponents.d()), std::pow(L, -1.0 / exponents.nu()));
    r.ratio = r.delta_lambda / r.threshold;
    const double distance = std::abs(protocol.h2 - h_c);
    r.xi = distance == 0.0 ? std::numeric_limits<double>::infinity()
                           : std::pow(distance, -exponents.nu());
    if (r.delta_lambda == 0.0) {
        r.label = "no quench";
    } else if (r.xi > 10.0 * L) {
        r.label = "critical";
    } else if (r.xi < L / 10.0) {
        r.label = "off-critical";
    } else {
        r.label = "crossover";
    }
    return r;
}

void write_modes_csv(std::ostream& out, const ModeTable& table) {
    out << "n,k,theta1,theta2,delta_theta,lambda,w\n";
    for (std::size_t i = 0; i < table.modes.size(); ++i) {
        const ModeData& m = table.modes[i];
        out << table.index[i] << ',' << detail::full(m.k) << ',' << detail::full(m.theta1) << ','
            << detail::full(m.theta2) << ',' << detail::full(m.delta_theta) << ','
            << detail::full(m.lambda) << ',' << detail::full(m.w) << '\n';
    }
}

}  // namespace qstats
