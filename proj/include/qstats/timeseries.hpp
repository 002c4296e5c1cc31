#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "qstats/charfun.hpp"
#include "qstats/model_xy.hpp"

namespace qstats {

struct SamplingPlan {
    double t_max = 1.0;
    std::int64_t n_samples = 1;
    std::uint64_t seed = 0;
    int n_chunks = 64;

    void validate() const;
};

/// Uniform times on [0, t_max]. Chunk c owns a contiguous index range and
/// draws from its own generator seeded by (seed, c), so the output depends
/// only on the plan.
Eigen::VectorXd sample_times(const SamplingPlan& plan);

/// sum_k [mean_k + w_k cos(t Lambda_k)]
double evaluate_magnetization(const std::vector<ModeData>& modes, double t);

struct Trajectory {
    Eigen::VectorXd t;
    Eigen::VectorXd value;
};

Trajectory sample_trajectory(const std::vector<ModeData>& modes, const SamplingPlan& plan);

/// Evaluates an arbitrary function of time at the plan's sample times.
Trajectory sample_function(const std::function<double(double)>& f, const SamplingPlan& plan);

/// Modes sharing a frequency (relative tolerance 1e-10) merged into a single
/// random-phase term with weight V = sum of w over the class.
struct FrequencyClass {
    double lambda;
    double v;
    int size;
};

std::vector<FrequencyClass> frequency_classes(const std::vector<ModeData>& modes,
                                              double rel_tol = 1e-10);

/// Merged class amplitudes |V_j| / scale as Bessel weights: the
/// characteristic function of (M(t) - mean) / scale.
WeightVector class_weights(const std::vector<ModeData>& modes, double scale);

struct AnalyticMoments {
    double mean = 0.0;
    double variance = 0.0;  ///< (1/2) sum V_j^2
    Eigen::VectorXd q;      ///< q(p-1) = sum (V_j / 2)^(2p)
    Eigen::VectorXd kappa;  ///< kappa(p-1) = a_2p 2^(2p) q(p-1)
};

AnalyticMoments analytic_moments(const std::vector<ModeData>& modes, int p_max);

struct EmpiricalStats {
    double mean = 0.0;
    double variance = 0.0;     ///< unbiased
    Eigen::VectorXd cumulants;  ///< cumulants(r) for r = 1..8, entry 0 unused
    Eigen::VectorXd std_errors; ///< batch-means standard error per entry of `cumulants`
    std::int64_t n = 0;
    bool low_sample_warning = false;  ///< fewer than 1000 samples

    [[nodiscard]] double excess_kurtosis() const {
        return cumulants(4) / (cumulants(2) * cumulants(2));
    }
};

/// Needs at least two samples. Standard errors come from 32 batch means.
EmpiricalStats empirical_stats(const Eigen::Ref<const Eigen::VectorXd>& samples);

struct Histogram {
    std::vector<double> edges;
    std::vector<std::int64_t> counts;
    std::int64_t n = 0;  ///< samples that fell inside the edges; equals sum of counts
    std::int64_t underflow = 0;
    std::int64_t overflow = 0;
    bool density = false;

    /// counts normalized to a density over the binned samples
    [[nodiscard]] std::vector<double> density_values() const;
};

Histogram histogram(const Eigen::Ref<const Eigen::VectorXd>& samples, std::vector<double> edges);

/// sup |F_n - F| between the empirical cdf of the samples and `cdf`.
double ks_distance(const Eigen::Ref<const Eigen::VectorXd>& samples,
                   const std::function<double(double)>& cdf);

}  // namespace qstats
