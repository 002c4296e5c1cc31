#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qstats/charfun.hpp"
#include "qstats/errors.hpp"
#include "qstats/loschmidt.hpp"
#include "qstats/model_xy.hpp"
#include "qstats/perturbation.hpp"
#include "qstats/timeseries.hpp"
#include "qstats/universal.hpp"

namespace qstats::cli {

namespace {

using Column = std::vector<double>;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Column column(const Eigen::Ref<const Eigen::VectorXd>& v) { return Column(v.data(), v.data() + v.size()); }

std::ofstream open_file(const Output& out, const std::string& name) {
    std::ofstream f(out.dir / name);
    if (!f) throw ConfigError("cannot write " + (out.dir / name).string());
    return f;
}

void write_table(const Output& out, const std::string& stem, const std::vector<std::string>& names,
                 const std::vector<Column>& cols) {
    const std::size_t rows = cols.empty() ? 0 : cols.front().size();
    if (out.format == "json") {
        json j = json::object();
        for (std::size_t c = 0; c < names.size(); ++c) j[names[c]] = cols[c];
        open_file(out, stem + ".json") << j.dump(1) << '\n';
        return;
    }
    std::ofstream f = open_file(out, stem + ".csv");
    for (std::size_t c = 0; c < names.size(); ++c) f << (c ? "," : "") << names[c];
    f << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) f << (c ? "," : "") << fmt(cols[c][r]);
        f << '\n';
    }
}

void write_distribution(const Output& out, const std::string& stem, const DistributionTable& t) {
    write_table(out, stem, {"x", "pdf", "cdf"}, {column(t.x), column(t.pdf), column(t.cdf)});
}

void write_json(const Output& out, const std::string& name, const json& j) {
    open_file(out, name) << j.dump(1) << '\n';
}

json distribution_meta(const DistributionTable& t) {
    const TableDiagnostics d = inspect(t);
    return {{"mass", t.mass},
            {"provenance", std::string(to_string(t.provenance))},
            {"cutoff", t.cutoff},
            {"regularized", t.regularized},
            {"min_pdf", d.min_pdf},
            {"max_cdf_drop", d.max_cdf_drop}};
}

QuenchProtocol read_protocol(Section& s) {
    QuenchProtocol p;
    p.L = s.get<int>("L", 1006);
    p.h1 = s.get<double>("h1", 1.0);
    p.gamma1 = s.get<double>("gamma1", 1.0);
    p.h2 = s.get<double>("h2", 1.0003);
    p.gamma2 = s.get<double>("gamma2", 1.0);
    p.bc_offset = s.get<double>("bc_offset", 0.5);
    try {
        p.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

InversionOptions read_inversion(Section& s, double smoothing) {
    InversionOptions o;
    o.smoothing = s.get<double>("smoothing", smoothing);
    o.decay_tol = s.get<double>("decay_tol", o.decay_tol);
    o.normalization_tol = s.get<double>("normalization_tol", o.normalization_tol);
    return o;
}

SamplingPlan read_plan(Section& s, double t_max, std::int64_t n) {
    SamplingPlan plan;
    plan.n_samples = s.get<std::int64_t>("n_samples", n);
    plan.t_max = s.get<double>("t_max", t_max);
    plan.n_chunks = s.get<int>("n_chunks", 64);
    plan.seed = s.get<std::uint64_t>("seed", 1);
    try {
        plan.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return plan;
}

json stats_json(const EmpiricalStats& s) {
    json c = json::object(), e = json::object();
    for (int r = 1; r <= 8; ++r) {
        c[std::to_string(r)] = s.cumulants(r);
        e[std::to_string(r)] = std::isnan(s.std_errors(r)) ? json(nullptr) : json(s.std_errors(r));
    }
    return {{"n", s.n},
            {"mean", s.mean},
            {"variance", s.variance},
            {"cumulants", c},
            {"std_errors", e},
            {"low_sample_warning", s.low_sample_warning}};
}

Histogram symmetric_histogram(const Eigen::VectorXd& v, int bins, double center) {
    if (bins < 1) throw ConfigError("bins must be positive");
    const double lo = v.minCoeff(), hi = v.maxCoeff();
    double r = std::max(std::abs(lo - center), std::abs(hi - center));
    if (r == 0.0) r = 1.0;
    r *= 1.0 + 1e-12;
    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i) edges[static_cast<std::size_t>(i)] = center - r + 2.0 * r * i / bins;
    return histogram(v, edges);
}

json histogram_json(const Histogram& h, const SamplingPlan& plan) {
    return {{"edges", h.edges}, {"counts", h.counts}, {"n", h.n}, {"seed", plan.seed}, {"t_max", plan.t_max}};
}

std::vector<std::vector<std::string>> read_csv(const std::string& path, std::vector<std::string>& header) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            header = cells;
            first = false;
        } else {
            rows.push_back(cells);
        }
    }
    return rows;
}

std::vector<Column> read_columns(const std::string& path, const std::vector<std::string>& expected) {
    std::vector<std::string> header;
    const auto rows = read_csv(path, header);
    if (header != expected) {
        std::string want;
        for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
        throw ConfigError(path + ": expected header " + want);
    }
    std::vector<Column> cols(expected.size());
    for (const auto& row : rows) {
        if (row.size() != expected.size()) throw ConfigError(path + ": ragged row");
        for (std::size_t c = 0; c < row.size(); ++c) {
            try {
                cols[c].push_back(std::stod(row[c]));
            } catch (const std::exception&) {
                throw ConfigError(path + ": not a number: " + row[c]);
            }
        }
    }
    return cols;
}

Eigen::VectorXd to_vector(const Column& c) {
    return Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

Eigen::MatrixXcd read_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    for (const auto& item : j.items()) {
        if (item.key() != "dim" && item.key() != "entries" && item.key() != "hermitian") {
            throw ConfigError(path + ": unknown key " + item.key());
        }
    }
    const auto dim = j.at("dim").get<Eigen::Index>();
    if (dim < 1) throw ConfigError(path + ": dim must be positive");
    if (dim > kMaxDenseDimension) throw DimensionLimit(path + ": dimension exceeds 4096");
    const bool hermitian = j.value("hermitian", false);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& e : j.at("entries")) {
        const auto r = e.at(0).get<Eigen::Index>();
        const auto c = e.at(1).get<Eigen::Index>();
        if (r < 0 || c < 0 || r >= dim || c >= dim) throw ConfigError(path + ": entry out of range");
        const std::complex<double> v(e.at(2).get<double>(), e.at(3).get<double>());
        m(r, c) = v;
        if (hermitian && r != c) m(c, r) = std::conj(v);
    }
    return m;
}

}  // namespace

void run_modes(Section& cfg, const Output& out) {
    Section ps = cfg.child("protocol");
    const QuenchProtocol p = read_protocol(ps);
    cfg.adopt("protocol", ps);
    const ModeTable table = quench_modes(p);
    if (out.format == "json") {
        json j = {{"n", table.index}, {"k", json::array()}, {"theta1", json::array()}, {"theta2", json::array()},
                  {"delta_theta", json::array()}, {"lambda", json::array()}, {"w", json::array()}};
        for (const ModeData& m : table.modes) {
            j["k"].push_back(m.k);
            j["theta1"].push_back(m.theta1);
            j["theta2"].push_back(m.theta2);
            j["delta_theta"].push_back(m.delta_theta);
            j["lambda"].push_back(m.lambda);
            j["w"].push_back(m.w);
        }
        write_json(out, "modes.json", j);
    } else {
        std::ofstream f = open_file(out, "modes.csv");
        write_modes_csv(f, table);
    }
    write_json(out, "modes_report.json", {{"retained", table.modes.size()}, {"warnings", table.warnings}});
}

void run_sim(Section& cfg, const Output& out) {
    Section ps = cfg.child("protocol");
    const QuenchProtocol p = read_protocol(ps);
    cfg.adopt("protocol", ps);
    const SamplingPlan plan = read_plan(cfg, 600000.0, 600000);
    const int bins = cfg.get<int>("bins", 120);
    const std::string rescale = cfg.get<std::string>("rescale", "fluctuation");
    const bool dump = cfg.get<bool>("dump_samples", false);
    const bool compare = cfg.get<bool>("compare_analytic", true);
    const Eigen::Index points = cfg.get<Eigen::Index>("analytic_points", 4001);
    const InversionOptions inv = read_inversion(cfg, 0.0);
    if (rescale != "fluctuation" && rescale != "none") throw ConfigError("rescale must be \"fluctuation\" or \"none\"");

    const ModeTable table = quench_modes(p);
    const Trajectory tr = sample_trajectory(table.modes, plan);
    const AnalyticMoments am = analytic_moments(table.modes, 4);
    double scale = 1.0, center = am.mean;
    Eigen::VectorXd values = tr.value;
    if (rescale == "fluctuation") {
        scale = p.L * std::abs(p.delta_h());
        if (scale == 0.0) throw InvalidArgument("sim: fluctuation rescaling needs h2 != h1");
        values = (tr.value.array() - am.mean) / scale;
        center = 0.0;
    }
    const EmpiricalStats st = empirical_stats(values);
    const Histogram h = symmetric_histogram(values, bins, center);
    write_json(out, "histogram.json", histogram_json(h, plan));
    if (dump) write_table(out, "samples", {"t", "value"}, {column(tr.t), column(values)});

    json stats = {{"empirical", stats_json(st)},
                  {"analytic",
                   {{"mean", am.mean},
                    {"variance", am.variance},
                    {"rescaled_variance", am.variance / (scale * scale)},
                    {"kappa", column(am.kappa)}}},
                  {"rescale", rescale},
                  {"scale", scale},
                  {"modes", table.modes.size()},
                  {"warnings", table.warnings}};
    if (compare && rescale == "fluctuation") {
        const WeightVector w = class_weights(table.modes, scale);
        const double reach = std::min(w.c.sum(), 6.0 * std::sqrt(am.variance) / scale + 1.0);
        const Eigen::VectorXd x = linear_grid(-reach, reach, points);
        const DistributionTable t = pdf_from_charfun([&](double s) { return charfun_value(w, s); }, x, inv);
        write_distribution(out, "analytic_pdf", t);
        stats["analytic"]["distribution"] = distribution_meta(t);
        stats["ks_distance"] = ks_distance(values, [&](double v) { return interpolate_cdf(t, v); });
    }
    write_json(out, "stats.json", stats);
}

void run_charfun(Section& cfg, const Output& out) {
    const bool from_protocol = cfg.has("protocol");
    WeightVector w;
    if (from_protocol) {
        Section ps = cfg.child("protocol");
        const QuenchProtocol p = read_protocol(ps);
        cfg.adopt("protocol", ps);
        const std::string rescale = cfg.get<std::string>("rescale", "fluctuation");
        const ModeTable table = quench_modes(p);
        double scale;
        if (rescale == "fluctuation") {
            scale = p.L * std::abs(p.delta_h());
        } else if (rescale == "standard") {
            scale = std::sqrt(analytic_moments(table.modes, 1).variance);
        } else {
            throw ConfigError("rescale must be \"fluctuation\" or \"standard\"");
        }
        if (!(scale > 0.0)) throw InvalidArgument("charfun: the protocol has no fluctuations");
        w = class_weights(table.modes, scale);
    } else {
        const std::vector<double> c = cfg.require<std::vector<double>>("weights");
        w = WeightVector(to_vector(c));
    }
    const double s_max = cfg.get<double>("s_max", 40.0);
    const Eigen::Index s_points = cfg.get<Eigen::Index>("s_points", 401);
    const double x_min = cfg.get<double>("x_min", -3.0);
    const double x_max = cfg.get<double>("x_max", 3.0);
    const Eigen::Index x_points = cfg.get<Eigen::Index>("x_points", 601);
    const InversionOptions inv = read_inversion(cfg, 0.0);
    if (s_points < 2 || x_points < 2 || !(x_max > x_min)) throw ConfigError("invalid grid");

    const Eigen::VectorXd s = linear_grid(0.0, s_max, s_points);
    write_table(out, "charfun", {"s", "chi"}, {column(s), column(characteristic_function(w, s))});
    const DistributionTable t =
        pdf_from_charfun([&](double v) { return charfun_value(w, v); }, linear_grid(x_min, x_max, x_points), inv);
    write_distribution(out, "pdf", t);
    const WeightCumulants k = cumulants_from_weights(0.5 * w.c, 4);
    write_json(out, "charfun_report.json",
               {{"weights", w.c.size()}, {"kappa", column(k.kappa)}, {"distribution", distribution_meta(t)}});
}

void run_universal(Section& cfg, const Output& out) {
    const double alpha = cfg.require<double>("alpha");
    const int d = cfg.get<int>("d", 1);
    const std::vector<double> b = cfg.get<std::vector<double>>("b", std::vector<double>(static_cast<std::size_t>(std::max(d, 1)), 0.0));
    const int p_max = cfg.get<int>("p_max", 4);
    const int first_index = cfg.get<int>("first_index", 1);
    const long L = cfg.get<long>("L", 0);
    const std::string dist = cfg.get<std::string>("distribution", "none");
    const std::vector<long> sizes = cfg.get<std::vector<long>>("truncation_sizes", {});
    LimitOptions lo;
    lo.points = cfg.get<Eigen::Index>("points", 2001);
    lo.x_max = cfg.get<double>("x_max", 8.0);
    lo.first_index = first_index;
    lo.inversion = read_inversion(cfg, 0.0);
    if (dist != "none" && dist != "observable" && dist != "loschmidt") {
        throw ConfigError("distribution must be \"none\", \"observable\" or \"loschmidt\"");
    }
    try {
        ZetaSpec{alpha, d, b, std::nullopt, first_index}.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }

    const UniversalRatios r = universal_ratios(alpha, d, b, p_max, first_index);
    Column p_col, r_col;
    for (int p = 1; p <= p_max; ++p) p_col.push_back(p);
    std::vector<std::string> names{"p", "R"};
    std::vector<Column> cols{p_col, column(r.R)};
    if (L > 0) {
        names.push_back("R_L");
        cols.push_back(column(finite_size_ratios(alpha, d, b, L, p_max, first_index)));
    }
    write_table(out, "ratios", names, cols);

    json report = {{"branch", r.branch}, {"alpha", alpha}, {"d", d}, {"b", b}, {"first_index", first_index}};
    if (2.0 * alpha > d) report["zeta_2alpha"] = epstein_zeta({2.0 * alpha, d, b, std::nullopt, first_index});
    if (alpha > d) report["zeta_alpha"] = epstein_zeta({alpha, d, b, std::nullopt, first_index});
    if (!sizes.empty()) {
        const TruncationFit f = truncation_law({alpha, d, b, std::nullopt, first_index}, sizes);
        report["truncation"] = {{"law", f.law}, {"exponent", f.exponent}, {"constant", f.constant},
                                {"r2", f.r2}, {"n_points", f.n_points}};
    }
    if (dist != "none") {
        const LimitVariable v = dist == "observable" ? LimitVariable::kObservable : LimitVariable::kLoschmidt;
        const DistributionTable t = limit_distribution(alpha, d, b, v, lo);
        write_distribution(out, "limit_pdf", t);
        report["distribution"] = distribution_meta(t);
        report["distribution"]["mean"] = table_moment(t, 1);
    }
    write_json(out, "universal_report.json", report);
}

void run_le(Section& cfg, const Output& out) {
    SpectralWeights w;
    if (cfg.has("weights_file")) {
        const auto cols = read_columns(cfg.require<std::string>("weights_file"), {"index", "p"});
        w = SpectralWeights(to_vector(cols[1]));
    } else {
        Section cs = cfg.child("critical");
        const double nu = cs.get<double>("nu", 1.0);
        const int d = cs.get<int>("d", 1);
        const std::vector<double> b = cs.get<std::vector<double>>("b", std::vector<double>(static_cast<std::size_t>(std::max(d, 1)), 0.0));
        const long n_modes = cs.get<long>("n_modes", 1000);
        const double delta = cs.get<double>("delta_lambda", 0.5);
        const int first_index = cs.get<int>("first_index", 1);
        cfg.adopt("critical", cs);
        w = critical_weights(nu, d, b, n_modes, delta, first_index);
    }
    const bool drop_ground = cfg.get<bool>("drop_ground", false);
    const bool rescale = cfg.get<bool>("rescale", false);
    const Eigen::Index x_points = cfg.get<Eigen::Index>("x_points", 1001);
    const double x_min_in = cfg.get<double>("x_min", -1.0);
    const double x_max_in = cfg.get<double>("x_max", 0.0);
    const int n_max = cfg.get<int>("n_max", 4);
    const InversionOptions inv = read_inversion(cfg, 5e-4);

    Eigen::VectorXd p = drop_ground ? w.excited() : w.p;
    if (p.size() == 0) throw InvalidArgument("le: no weights left");
    if (rescale) p /= p.norm();  // unit mean echo
    const SpectralWeights used(p);
    const Purities pu = purities(used, n_max);
    // support is [(2 p_max - sum p)^2, (sum p)^2] when one weight dominates
    const double x_max = x_max_in > 0.0 ? x_max_in : std::min(std::pow(p.sum(), 2), 25.0);
    const double x_min = x_min_in >= 0.0 ? x_min_in : std::pow(std::max(0.0, 2.0 * p.maxCoeff() - p.sum()), 2);
    if (!(x_min < x_max)) throw ConfigError("x_min must lie below x_max");
    const DistributionTable t =
        le_pdf([&](double r) { return le_charfun_value(used, r); }, linear_grid(x_min, x_max, x_points), inv);
    write_distribution(out, "le_pdf", t);
    Column idx;
    for (Eigen::Index i = 0; i < w.p.size(); ++i) idx.push_back(static_cast<double>(i));
    write_table(out, "weights", {"index", "p"}, {idx, column(w.p)});
    json report = {{"mean_echo", pu.trace(2)},
                   {"traces", column(pu.trace.tail(pu.trace.size() - 1))},
                   {"T", column(pu.T.tail(pu.T.size() - 1))},
                   {"distribution", distribution_meta(t)}};
    report["distribution"]["mean"] = table_moment(t, 1);
    write_json(out, "le_report.json", report);
}

void run_quasifree(Section& cfg, const Output& out) {
    Eigen::VectorXd alpha, eps;
    if (cfg.has("weights_file")) {
        const auto cols = read_columns(cfg.require<std::string>("weights_file"), {"index", "alpha", "epsilon"});
        alpha = to_vector(cols[1]);
        eps = to_vector(cols[2]);
    } else {
        Section ms = cfg.child("modes");
        alpha = to_vector(ms.require<std::vector<double>>("alpha"));
        eps = to_vector(ms.require<std::vector<double>>("epsilon"));
        cfg.adopt("modes", ms);
    }
    if (alpha.size() != eps.size() || alpha.size() == 0) throw ConfigError("alpha and epsilon need equal, nonzero length");
    if ((alpha.array() < 0.0).any() || (alpha.array() > 1.0).any()) throw ConfigError("alpha must lie in [0, 1]");
    const std::vector<double> times = cfg.get<std::vector<double>>("t_values", {0.0, 0.5, 1.0, 2.0, 5.0, 10.0});
    const SamplingPlan plan = read_plan(cfg, 1e5, 100000);
    const int bins = cfg.get<int>("bins", 100);
    const double lambda_max = cfg.get<double>("lambda_max", 20.0);
    const Eigen::Index lambda_points = cfg.get<Eigen::Index>("lambda_points", 201);

    Column le_vals;
    for (double t : times) le_vals.push_back(quasifree_product_le(alpha, eps, t));
    write_table(out, "le", {"t", "L"}, {times, le_vals});

    const Trajectory tr = sample_function(
        [&](double t) { return std::log(quasifree_product_le(alpha, eps, t)); }, plan);
    const EmpiricalStats st = empirical_stats(tr.value);
    const Eigen::VectorXd finite = tr.value.unaryExpr([](double v) { return std::isfinite(v) ? v : -745.0; });
    write_json(out, "g_histogram.json", histogram_json(symmetric_histogram(finite, bins, finite.mean()), plan));
    json report = {{"empirical", stats_json(st)}, {"mean_echo", (1.0 - 0.5 * alpha.array()).prod()}};
    if ((alpha.array() < 1.0).all()) {
        const Eigen::VectorXd lambda = linear_grid(0.0, lambda_max, lambda_points);
        const Eigen::VectorXcd chi = quasifree_g_charfun(alpha, lambda);
        write_table(out, "g_charfun", {"lambda", "re", "im"}, {column(lambda), column(chi.real()), column(chi.imag())});
        const Eigen::VectorXd k = quasifree_g_cumulants(alpha);
        report["analytic_cumulants"] = column(k.tail(4));
        report["analytic_excess_kurtosis"] = k(4) / (k(2) * k(2));
    } else {
        report["note"] = "alpha = 1 present: the log-echo characteristic function is not evaluated";
    }
    write_json(out, "g_report.json", report);
}

void run_exactdiag(Section& cfg, const Output& out) {
    DenseSystem sys;
    if (cfg.has("random")) {
        Section rs = cfg.child("random");
        const auto dim = rs.get<Eigen::Index>("dim", 50);
        const auto seed = rs.get<std::uint64_t>("seed", 1);
        cfg.adopt("random", rs);
        if (dim < 2 || dim > kMaxDenseDimension) throw ConfigError("random.dim must lie in [2, 4096]");
        sys = {random_symmetric(dim, seed).cast<std::complex<double>>(),
               random_symmetric(dim, seed + 1000).cast<std::complex<double>>(),
               random_symmetric(dim, seed + 2000).cast<std::complex<double>>()};
    } else {
        sys.H0 = read_matrix(cfg.require<std::string>("H0"));
        sys.A = read_matrix(cfg.require<std::string>("A"));
        sys.B = read_matrix(cfg.require<std::string>("B"));
    }
    const double delta = cfg.get<double>("delta_lambda", 1e-4);
    const SamplingPlan plan = read_plan(cfg, 1e6, 100000);
    const bool sample = cfg.get<bool>("sample", false);

    const PerturbativeWeights w = perturbative_weights(sys);
    const Eigen::MatrixXcd H = sys.H0 + delta * sys.B;
    const Eigen::VectorXcd psi0 = ground_state(sys.H0);
    const DiagonalEnsembleReport de = diagonal_ensemble(H, psi0, sys.A);
    json z = json::array();
    for (Eigen::Index i = 0; i < w.Z.size(); ++i) z.push_back({w.Z(i).real(), w.Z(i).imag()});
    json gaps = json::array();
    for (const auto& [a, b] : w.gap_warnings) gaps.push_back({a, b});
    json report = {{"dim", sys.H0.rows()},
                   {"Z", z},
                   {"Q", column(w.Q)},
                   {"Q_merged", column(w.Q_merged)},
                   {"chi_ab", w.chi_ab},
                   {"diam_a", w.diam_a},
                   {"gap_warnings", gaps},
                   {"predicted_variance", w.temporal_variance(delta)},
                   {"exact", {{"mean", de.mean},
                              {"variance", de.variance},
                              {"traces", column(de.traces.tail(8))},
                              {"bound", de.bound},
                              {"bound_holds", de.bound_holds}}}};
    if (sample) {
        const QuenchEvolution ev(H, psi0, sys.A);
        const Trajectory tr = sample_function([&](double t) { return ev.value(t); }, plan);
        report["sampled"] = stats_json(empirical_stats(tr.value));
    }
    write_json(out, "exactdiag_report.json", report);
}

void run_scalingfit(Section& cfg, const Output& out) {
    Column sizes, values;
    if (cfg.has("series_file")) {
        const auto cols = read_columns(cfg.require<std::string>("series_file"), {"size", "value"});
        sizes = cols[0];
        values = cols[1];
    } else {
        sizes = cfg.require<Column>("sizes");
        values = cfg.require<Column>("values");
    }
    const ScalingFit f = scaling_fit(sizes, values);
    write_json(out, "fit.json", {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"r2", f.r2}, {"n_points", f.n_points}});
}

}  // namespace qstats::cli
