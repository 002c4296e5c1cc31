#include "transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qstats/errors.hpp"
#include "quadrature.hpp"

namespace qstats::detail {

namespace {

constexpr int kPanelOrder = 16;
constexpr int kMaxBisections = 6;
// exp(-27.63) ~ 1e-12: damping at which the regularized integrand is cut.
constexpr double kDampingExponent = 27.63;

struct PanelRule {
    const GaussLegendre& gl = gauss_legendre(kPanelOrder);

    void nodes(double a, double b, std::vector<double>& s, std::vector<double>& w) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            s.push_back(mid + half * gl.nodes[i]);
            w.push_back(half * gl.weights[i]);
        }
    }
};

void add_panel(const std::function<double(double)>& g, double omega, double a, double b, int depth,
               const PanelRule& rule, std::vector<double>& s, std::vector<double>& w,
               std::vector<double>& gv) {
    std::vector<double> ps, pw;
    rule.nodes(a, b, ps, pw);
    std::vector<double> pg(ps.size());
    double whole = 0.0, whole_osc = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        pg[i] = g(ps[i]);
        whole += pw[i] * pg[i];
        whole_osc += pw[i] * pg[i] * std::cos(omega * ps[i]);
    }
    const double mid = 0.5 * (a + b);
    std::vector<double> hs, hw;
    rule.nodes(a, mid, hs, hw);
    rule.nodes(mid, b, hs, hw);
    std::vector<double> hg(hs.size());
    double split = 0.0, split_osc = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        hg[i] = g(hs[i]);
        split += hw[i] * hg[i];
        split_osc += hw[i] * hg[i] * std::cos(omega * hs[i]);
    }
    const double tol = 1e-12 * (b - a);
    const bool converged =
        std::abs(split - whole) <= tol && std::abs(split_osc - whole_osc) <= tol;
    if (converged || depth >= kMaxBisections) {
        s.insert(s.end(), hs.begin(), hs.end());
        w.insert(w.end(), hw.begin(), hw.end());
        gv.insert(gv.end(), hg.begin(), hg.end());
        return;
    }
    add_panel(g, omega, a, mid, depth + 1, rule, s, w, gv);
    add_panel(g, omega, mid, b, depth + 1, rule, s, w, gv);
}

}  // namespace

void fill_levels(TransformPlan& plan, const std::vector<double>& g) {
    const std::size_t levels = plan.regularized ? 3 : 1;
    plan.weighted.assign(levels, std::vector<double>(plan.nodes.size()));
    for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
        const double base = plan.weights[i] * g[i];
        if (!plan.regularized) {
            plan.weighted[0][i] = base;
            continue;
        }
        const double s2 = plan.nodes[i] * plan.nodes[i];
        plan.weighted[0][i] = base * std::exp(-4.0 * plan.eps * s2);
        plan.weighted[1][i] = base * std::exp(-2.0 * plan.eps * s2);
        plan.weighted[2][i] = base * std::exp(-plan.eps * s2);
    }
}

double find_decay_cutoff(const std::function<double(double)>& g, double tol, double start,
                         double limit) {
    int below = 0;
    for (double s = start; s <= limit; s *= 1.05) {
        if (std::abs(g(s)) < tol) {
            if (++below == 3) return s;
        } else {
            below = 0;
        }
    }
    return -1.0;
}

TransformPlan plan_transform(const std::function<double(double)>& g, double omega_max,
                             const InversionOptions& options, const char* what) {
    TransformPlan plan;
    double cutoff = find_decay_cutoff(g, options.decay_tol, options.scan_start, options.scan_limit);
    double eps = 0.0;
    if (cutoff < 0.0) {
        if (options.smoothing <= 0.0) {
            throw TruncationError(std::string(what) +
                                  ": transform has not decayed below tolerance by s = " +
                                  std::to_string(options.scan_limit) + "; set a smoothing width");
        }
        eps = 0.5 * options.smoothing * options.smoothing;
        cutoff = std::sqrt(kDampingExponent / eps);
        plan.regularized = true;
    }
    plan.cutoff = cutoff;

    const double omega = std::max(omega_max, 1.0);
    const double width = 0.5 * std::numbers::pi / omega;
    const auto panels = static_cast<long>(std::ceil(cutoff / width));
    const PanelRule rule;
    std::vector<double> gv;
    for (long p = 0; p < panels; ++p) {
        const double a = cutoff * static_cast<double>(p) / panels;
        const double b = cutoff * static_cast<double>(p + 1) / panels;
        add_panel(g, omega_max, a, b, 0, rule, plan.nodes, plan.weights, gv);
    }

    plan.eps = eps;
    fill_levels(plan, gv);
    return plan;
}

ComplexTransformPlan plan_transform_complex(const std::function<std::complex<double>(double)>& chi,
                                            double omega_max, const InversionOptions& options,
                                            const char* what) {
    ComplexTransformPlan out;
    out.re = plan_transform([&](double s) { return std::abs(chi(s)); }, omega_max, options, what);
    out.im = out.re;
    std::vector<double> re(out.re.nodes.size()), im(out.re.nodes.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        const std::complex<double> v = chi(out.re.nodes[i]);
        re[i] = v.real();
        im[i] = v.imag();
    }
    fill_levels(out.re, re);
    fill_levels(out.im, im);
    return out;
}

}  // namespace qstats::detail
