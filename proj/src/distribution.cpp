#include "qstats/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "format.hpp"
#include "qstats/errors.hpp"

namespace qstats {

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::kAnalyticInversion: return "analytic-inversion";
        case Provenance::kKernelIntegral: return "kernel-integral";
        case Provenance::kHistogram: return "histogram";
    }
    return "unknown";
}

double integrate_samples(const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& y) {
    const Eigen::Index n = x.size();
    if (n != y.size()) throw InvalidArgument("integrate_samples: size mismatch");
    if (n < 2) return 0.0;
    const double h = (x(n - 1) - x(0)) / static_cast<double>(n - 1);
    bool uniform = n % 2 == 1 && n >= 3;
    for (Eigen::Index i = 1; uniform && i < n; ++i) {
        if (std::abs((x(i) - x(i - 1)) - h) > 1e-9 * std::abs(h)) uniform = false;
    }
    if (uniform) {
        double sum = y(0) + y(n - 1);
        for (Eigen::Index i = 1; i < n - 1; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * y(i);
        return sum * h / 3.0;
    }
    double sum = 0.0;
    for (Eigen::Index i = 1; i < n; ++i) sum += 0.5 * (x(i) - x(i - 1)) * (y(i) + y(i - 1));
    return sum;
}

double table_moment(const DistributionTable& table, int order, double center) {
    const Eigen::VectorXd w = (table.x.array() - center).pow(order) * table.pdf.array();
    return integrate_samples(table.x, w);
}

double interpolate_cdf(const DistributionTable& table, double x) {
    const auto& xs = table.x;
    const Eigen::Index n = xs.size();
    if (n == 0) return 0.0;
    if (x <= xs(0)) return std::clamp(table.cdf(0), 0.0, 1.0);
    if (x >= xs(n - 1)) return std::clamp(table.cdf(n - 1), 0.0, 1.0);
    const auto it = std::upper_bound(xs.data(), xs.data() + n, x);
    const Eigen::Index hi = it - xs.data();
    const Eigen::Index lo = hi - 1;
    const double f = (x - xs(lo)) / (xs(hi) - xs(lo));
    return std::clamp(table.cdf(lo) + f * (table.cdf(hi) - table.cdf(lo)), 0.0, 1.0);
}

TableDiagnostics inspect(const DistributionTable& table) {
    TableDiagnostics d;
    d.min_pdf = table.pdf.size() ? table.pdf.minCoeff() : 0.0;
    for (Eigen::Index i = 1; i < table.cdf.size(); ++i) {
        d.max_cdf_drop = std::max(d.max_cdf_drop, table.cdf(i - 1) - table.cdf(i));
    }
    d.mass = integrate_samples(table.x, table.pdf);
    return d;
}

void write_csv(std::ostream& out, const DistributionTable& table) {
    out << "x,pdf,cdf\n";
    for (Eigen::Index i = 0; i < table.x.size(); ++i) {
        out << detail::full(table.x(i)) << ',' << detail::full(table.pdf(i)) << ','
            << detail::full(table.cdf(i)) << '\n';
    }
}

}  // namespace qstats
