#include "qstats/timeseries.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "qstats/charfun.hpp"
#include "qstats/errors.hpp"
#include "qstats/parallel.hpp"

namespace qstats {

namespace {

constexpr int kBatches = 32;

std::int64_t chunk_begin(const SamplingPlan& plan, int c) {
    return plan.n_samples * c / plan.n_chunks;
}

// Raw moments about zero -> cumulants by the recursion
// kappa_n = mu_n - sum_{m<n} C(n-1, m-1) kappa_m mu_{n-m}.
Eigen::VectorXd cumulants_from_moments(const std::array<double, 9>& mu) {
    Eigen::VectorXd k = Eigen::VectorXd::Zero(9);
    for (int n = 1; n <= 8; ++n) {
        double v = mu[n];
        double binom = 1.0;  // C(n-1, m-1)
        for (int m = 1; m < n; ++m) {
            v -= binom * k(m) * mu[n - m];
            binom = binom * (n - m) / m;
        }
        k(n) = v;
    }
    return k;
}

Eigen::VectorXd sample_cumulants(const double* x, std::int64_t n) {
    double mean = 0.0;
    for (std::int64_t i = 0; i < n; ++i) mean += x[i];
    mean /= static_cast<double>(n);
    std::array<double, 9> mu{};
    for (std::int64_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        double p = 1.0;
        for (int r = 1; r <= 8; ++r) {
            p *= d;
            mu[r] += p;
        }
    }
    mu[0] = 1.0;
    for (int r = 1; r <= 8; ++r) mu[r] /= static_cast<double>(n);
    Eigen::VectorXd k = cumulants_from_moments(mu);
    k(1) = mean;
    return k;
}

}  // namespace

void SamplingPlan::validate() const {
    if (!(t_max > 0.0)) throw InvalidArgument("sampling plan: t_max must be positive");
    if (n_samples < 1) throw InvalidArgument("sampling plan: n_samples must be at least 1");
    if (n_chunks < 1) throw InvalidArgument("sampling plan: n_chunks must be at least 1");
}

Eigen::VectorXd sample_times(const SamplingPlan& plan) {
    plan.validate();
    Eigen::VectorXd t(plan.n_samples);
    parallel_for(static_cast<std::size_t>(plan.n_chunks), [&](std::size_t c) {
        const int ci = static_cast<int>(c);
        std::seed_seq seq{static_cast<std::uint32_t>(plan.seed),
                          static_cast<std::uint32_t>(plan.seed >> 32),
                          static_cast<std::uint32_t>(ci)};
        std::mt19937_64 gen(seq);
        for (std::int64_t i = chunk_begin(plan, ci); i < chunk_begin(plan, ci + 1); ++i) {
            // 53 random bits -> [0, 1]
            const double u = static_cast<double>(gen() >> 11) * 0x1p-53;
            t(i) = u * plan.t_max;
        }
    });
    return t;
}

double evaluate_magnetization(const std::vector<ModeData>& modes, double t) {
    double m = 0.0;
    for (const ModeData& mode : modes) m += mode.mean + mode.w * std::cos(t * mode.lambda);
    return m;
}

Trajectory sample_function(const std::function<double(double)>& f, const SamplingPlan& plan) {
    Trajectory out;
    out.t = sample_times(plan);
    out.value.resize(out.t.size());
    parallel_for(static_cast<std::size_t>(out.t.size()), [&](std::size_t i) {
        const auto j = static_cast<Eigen::Index>(i);
        out.value(j) = f(out.t(j));
    });
    return out;
}

Trajectory sample_trajectory(const std::vector<ModeData>& modes, const SamplingPlan& plan) {
    if (modes.empty()) throw InvalidArgument("sample_trajectory: no modes");
    return sample_function([&](double t) { return evaluate_magnetization(modes, t); }, plan);
}

std::vector<FrequencyClass> frequency_classes(const std::vector<ModeData>& modes, double rel_tol) {
    std::vector<std::size_t> order(modes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return modes[a].lambda < modes[b].lambda; });
    std::vector<FrequencyClass> classes;
    for (std::size_t i : order) {
        const ModeData& m = modes[i];
        if (!classes.empty()) {
            FrequencyClass& last = classes.back();
            if (std::abs(m.lambda - last.lambda) <= rel_tol * std::max(std::abs(m.lambda), 1e-300)) {
                last.v += m.w;
                ++last.size;
                continue;
            }
        }
        classes.push_back({m.lambda, m.w, 1});
    }
    return classes;
}

WeightVector class_weights(const std::vector<ModeData>& modes, double scale) {
    if (!(scale > 0.0)) throw InvalidArgument("class_weights: scale must be positive");
    const std::vector<FrequencyClass> classes = frequency_classes(modes);
    std::vector<double> c;
    for (const FrequencyClass& f : classes) {
        if (f.lambda != 0.0 && f.v != 0.0) c.push_back(std::abs(f.v) / scale);
    }
    return WeightVector(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
}

AnalyticMoments analytic_moments(const std::vector<ModeData>& modes, int p_max) {
    if (p_max < 1) throw InvalidArgument("analytic_moments: p_max must be >= 1");
    AnalyticMoments out;
    for (const ModeData& m : modes) out.mean += m.mean;
    const std::vector<FrequencyClass> classes = frequency_classes(modes);
    Eigen::VectorXd half(static_cast<Eigen::Index>(classes.size()));
    for (std::size_t j = 0; j < classes.size(); ++j) {
        // a zero frequency is a constant, not a fluctuation
        half(static_cast<Eigen::Index>(j)) = classes[j].lambda == 0.0 ? 0.0 : 0.5 * classes[j].v;
        if (classes[j].lambda == 0.0) out.mean += classes[j].v;
    }
    const WeightCumulants k = cumulants_from_weights(half, p_max);
    out.q = k.q;
    out.kappa = k.kappa;
    out.variance = 2.0 * half.squaredNorm();
    return out;
}

EmpiricalStats empirical_stats(const Eigen::Ref<const Eigen::VectorXd>& samples) {
    const std::int64_t n = samples.size();
    if (n < 2) throw InvalidArgument("empirical_stats: need at least two samples");
    const Eigen::VectorXd x = samples;  // contiguous copy
    EmpiricalStats s;
    s.n = n;
    s.low_sample_warning = n < 1000;
    s.cumulants = sample_cumulants(x.data(), n);
    s.mean = s.cumulants(1);
    s.variance = s.cumulants(2) * static_cast<double>(n) / static_cast<double>(n - 1);
    s.std_errors = Eigen::VectorXd::Constant(9, std::nan(""));
    if (n >= 2 * kBatches) {
        Eigen::MatrixXd per_batch(9, kBatches);
        for (int b = 0; b < kBatches; ++b) {
            const std::int64_t lo = n * b / kBatches;
            const std::int64_t hi = n * (b + 1) / kBatches;
            per_batch.col(b) = sample_cumulants(x.data() + lo, hi - lo);
        }
        for (int r = 1; r <= 8; ++r) {
            const double m = per_batch.row(r).mean();
            const double var = (per_batch.row(r).array() - m).square().sum() / (kBatches - 1);
            s.std_errors(r) = std::sqrt(var / kBatches);
        }
    }
    return s;
}

std::vector<double> Histogram::density_values() const {
    std::vector<double> d(counts.size(), 0.0);
    if (n == 0) return d;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        d[i] = static_cast<double>(counts[i]) / (static_cast<double>(n) * (edges[i + 1] - edges[i]));
    }
    return d;
}

Histogram histogram(const Eigen::Ref<const Eigen::VectorXd>& samples, std::vector<double> edges) {
    if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()) ||
        std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw InvalidArgument("histogram: edges must be strictly increasing with at least two entries");
    }
    Histogram h;
    h.edges = std::move(edges);
    h.counts.assign(h.edges.size() - 1, 0);
    for (Eigen::Index i = 0; i < samples.size(); ++i) {
        const double v = samples(i);
        if (v < h.edges.front()) {
            ++h.underflow;
        } else if (v > h.edges.back()) {
            ++h.overflow;
        } else {
            auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
            auto bin = static_cast<std::size_t>(std::distance(h.edges.begin(), it)) - 1;
            bin = std::min(bin, h.counts.size() - 1);
            ++h.counts[bin];
            ++h.n;
        }
    }
    return h;
}

double ks_distance(const Eigen::Ref<const Eigen::VectorXd>& samples,
                   const std::function<double(double)>& cdf) {
    std::vector<double> x(samples.data(), samples.data() + samples.size());
    if (x.empty()) throw InvalidArgument("ks_distance: no samples");
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                      std::abs(static_cast<double>(i + 1) / n - f)});
    }
    return d;
}

}  // namespace qstats
