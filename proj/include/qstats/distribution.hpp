#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string_view>

namespace qstats {

enum class Provenance { kAnalyticInversion, kKernelIntegral, kHistogram };

std::string_view to_string(Provenance p);

/// A tabulated probability density with its distribution function.
struct DistributionTable {
    Eigen::VectorXd x;
    Eigen::VectorXd pdf;
    Eigen::VectorXd cdf;
    double mass = 0.0;  ///< quadrature of pdf over the grid
    Provenance provenance = Provenance::kAnalyticInversion;
    double cutoff = 0.0;       ///< upper limit of the transform integral
    bool regularized = false;  ///< Gaussian-damped, Richardson-extrapolated inversion
};

/// Controls for inverting a characteristic function.
///
/// The transform is cut where |chi| has stayed below `decay_tol` for three
/// consecutive points of a geometric scan. When chi has not decayed by
/// `scan_limit`, inversion fails with TruncationError unless `smoothing`
/// is positive; then chi is damped by exp(-eps s^2) at three widths
/// (eps = smoothing^2 / 2 for the narrowest) and the results are
/// Richardson-extrapolated to eps = 0.
struct InversionOptions {
    double decay_tol = 1e-8;
    double scan_start = 0.25;
    double scan_limit = 2e4;
    double smoothing = 0.0;
    double normalization_tol = 1e-3;
};

/// Simpson's rule on uniform grids with an odd point count, trapezoid
/// otherwise.
double integrate_samples(const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& y);

/// Raw moment of order k of the tabulated pdf about `center`.
double table_moment(const DistributionTable& table, int order, double center = 0.0);

/// Linear interpolation of the tabulated cdf, clamped to [0, 1] outside.
double interpolate_cdf(const DistributionTable& table, double x);

struct TableDiagnostics {
    double min_pdf = 0.0;
    double max_cdf_drop = 0.0;  ///< largest decrease between neighbouring cdf values
    double mass = 0.0;
};

TableDiagnostics inspect(const DistributionTable& table);

/// CSV with header `x,pdf,cdf`.
void write_csv(std::ostream& out, const DistributionTable& table);

}  // namespace qstats
