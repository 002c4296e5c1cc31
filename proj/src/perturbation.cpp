#include "qstats/perturbation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qstats/errors.hpp"

namespace qstats {

namespace {

void check_hermitian(const Eigen::MatrixXcd& m, const char* name) {
    if (m.rows() != m.cols()) throw InvalidArgument(std::string(name) + " must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw InvalidArgument(std::string(name) + " is not Hermitian within 1e-12");
    }
}

// Groups sorted values into runs whose neighbours differ by at most tol.
std::vector<std::pair<Eigen::Index, Eigen::Index>> runs(const std::vector<double>& sorted, double tol) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] - sorted[j - 1] <= tol) ++j;
        out.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        i = j;
    }
    return out;
}

}  // namespace

void DenseSystem::validate() const {
    if (H0.rows() > kMaxDenseDimension) throw DimensionLimit("dense system: dimension exceeds 4096");
    check_hermitian(H0, "H0");
    check_hermitian(A, "A");
    check_hermitian(B, "B");
    if (A.rows() != H0.rows() || B.rows() != H0.rows()) {
        throw InvalidArgument("dense system: H0, A and B must have the same dimension");
    }
    if (H0.rows() < 2) throw InvalidArgument("dense system: dimension must be at least 2");
}

PerturbativeWeights perturbative_weights(const DenseSystem& system) {
    system.validate();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(system.H0);
    const Eigen::VectorXd& E = solver.eigenvalues();
    const Eigen::MatrixXcd& V = solver.eigenvectors();
    const Eigen::Index n = E.size();
    const double scale = E.cwiseAbs().maxCoeff();
    if (E(1) - E(0) <= 1e-10 * scale) {
        throw DegenerateGroundState("perturbative_weights: ground state is degenerate");
    }
    const Eigen::VectorXcd a0 = V.adjoint() * (system.A * V.col(0));  // A_{n0}
    const Eigen::VectorXcd b0 = V.adjoint() * (system.B * V.col(0));  // B_{n0}
    PerturbativeWeights w;
    w.Z.resize(n - 1);
    w.gaps.resize(n - 1);
    for (Eigen::Index k = 1; k < n; ++k) {
        w.gaps(k - 1) = E(k) - E(0);
        w.Z(k - 1) = std::conj(a0(k)) * b0(k) / w.gaps(k - 1);
    }
    w.chi_ab = 2.0 * w.Z.real().sum();

    // gaps are already ascending
    std::vector<double> g(w.gaps.data(), w.gaps.data() + w.gaps.size());
    const double tol = 1e-8 * g.back();
    const auto classes = runs(g, tol);
    w.Z_merged.resize(static_cast<Eigen::Index>(classes.size()));
    w.merged_gaps.resize(static_cast<Eigen::Index>(classes.size()));
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto [lo, hi] = classes[c];
        w.Z_merged(static_cast<Eigen::Index>(c)) = w.Z.segment(lo, hi - lo).sum();
        w.merged_gaps(static_cast<Eigen::Index>(c)) = w.gaps(lo);
        for (Eigen::Index i = lo; i + 1 < hi; ++i) w.gap_warnings.emplace_back(i + 1, i + 2);
    }
    w.Q.resize(4);
    w.Q_merged.resize(4);
    for (int p = 1; p <= 4; ++p) {
        w.Q(p - 1) = w.Z.cwiseAbs().array().pow(2.0 * p).sum();
        w.Q_merged(p - 1) = w.Z_merged.cwiseAbs().array().pow(2.0 * p).sum();
    }
    const Eigen::VectorXd ea = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(system.A, Eigen::EigenvaluesOnly).eigenvalues();
    w.diam_a = ea.maxCoeff() - ea.minCoeff();
    return w;
}

DiagonalEnsembleReport diagonal_ensemble(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& psi0,
                                         const Eigen::MatrixXcd& A) {
    check_hermitian(H, "H");
    check_hermitian(A, "A");
    if (H.rows() > kMaxDenseDimension) throw DimensionLimit("diagonal_ensemble: dimension exceeds 4096");
    if (psi0.size() != H.rows() || A.rows() != H.rows()) {
        throw InvalidArgument("diagonal_ensemble: dimension mismatch");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw UnnormalizedState("diagonal_ensemble: |psi0| != 1");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    const Eigen::VectorXd& E = solver.eigenvalues();
    const Eigen::MatrixXcd& V = solver.eigenvectors();
    const Eigen::VectorXcd c = V.adjoint() * psi0;
    const Eigen::MatrixXcd a = V.adjoint() * A * V;
    const Eigen::Index n = E.size();
    const double scale = std::max(E.cwiseAbs().maxCoeff(), 1e-300);

    std::vector<double> energies(E.data(), E.data() + n);
    const auto levels = runs(energies, 1e-10 * scale);
    Eigen::VectorXd p(static_cast<Eigen::Index>(levels.size()));
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const auto [lo, hi] = levels[l];
        p(static_cast<Eigen::Index>(l)) = c.segment(lo, hi - lo).squaredNorm();
    }

    DiagonalEnsembleReport r;
    r.weights = SpectralWeights(p);
    r.traces = Eigen::VectorXd::Zero(9);
    for (int m = 1; m <= 8; ++m) r.traces(m) = p.array().pow(m).sum();

    // <A>(t) = sum_{n,m} conj(c_n) c_m a_nm exp(i (E_n - E_m) t): group terms by frequency
    struct Term {
        double omega;
        std::complex<double> amp;
    };
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(n * n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            terms.push_back({E(i) - E(j), std::conj(c(i)) * c(j) * a(i, j)});
        }
    }
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.omega < y.omega; });
    std::vector<double> omegas(terms.size());
    std::transform(terms.begin(), terms.end(), omegas.begin(), [](const Term& t) { return t.omega; });
    for (const auto& [lo, hi] : runs(omegas, 1e-10 * scale)) {
        std::complex<double> amp = 0.0;
        for (Eigen::Index k = lo; k < hi; ++k) amp += terms[static_cast<std::size_t>(k)].amp;
        if (std::abs(terms[static_cast<std::size_t>(lo)].omega) <= 1e-10 * scale &&
            std::abs(terms[static_cast<std::size_t>(hi - 1)].omega) <= 1e-10 * scale) {
            r.mean = amp.real();
        } else {
            r.variance += std::norm(amp);
        }
    }
    const Eigen::VectorXd ea = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(A, Eigen::EigenvaluesOnly).eigenvalues();
    r.diam_a = ea.maxCoeff() - ea.minCoeff();
    r.bound = r.diam_a * r.diam_a * r.traces(2);
    r.bound_holds = r.variance <= r.bound;
    return r;
}

DenseXY build_xy_dense(int L, double h, double gamma) {
    if (L < 2) throw InvalidArgument("build_xy_dense: L must be at least 2");
    if (L > 12) throw DimensionLimit("build_xy_dense: L must not exceed 12");
    const Eigen::Index dim = Eigen::Index{1} << L;
    DenseXY out{Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
    for (Eigen::Index s = 0; s < dim; ++s) {
        double mz = 0.0;
        for (int j = 0; j < L; ++j) mz += ((s >> j) & 1) ? -1.0 : 1.0;
        out.M(s, s) = mz;
        out.H(s, s) -= h * mz;
        for (int j = 0; j < L; ++j) {
            const int k = (j + 1) % L;
            const Eigen::Index flipped = s ^ (Eigen::Index{1} << j) ^ (Eigen::Index{1} << k);
            const bool equal = ((s >> j) & 1) == ((s >> k) & 1);
            // sx sx + sy sy parts: equal bits give (1+g)/2 - (1-g)/2 = g, different bits give 1
            out.H(flipped, s) -= equal ? gamma : 1.0;
        }
    }
    return out;
}

QuenchEvolution::QuenchEvolution(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& psi0,
                                 const Eigen::MatrixXcd& A) {
    check_hermitian(H, "H");
    if (psi0.size() != H.rows() || A.rows() != H.rows()) throw InvalidArgument("quench evolution: dimension mismatch");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    const Eigen::VectorXcd c = solver.eigenvectors().adjoint() * psi0;
    std::vector<Eigen::Index> keep;
    const double cmax = c.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (std::abs(c(i)) > 1e-14 * cmax) keep.push_back(i);
    }
    const auto m = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXcd v(H.rows(), m);
    energies_.resize(m);
    amplitudes_.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        v.col(i) = solver.eigenvectors().col(keep[static_cast<std::size_t>(i)]);
        energies_(i) = solver.eigenvalues()(keep[static_cast<std::size_t>(i)]);
        amplitudes_(i) = c(keep[static_cast<std::size_t>(i)]);
    }
    a_ = v.adjoint() * A * v;
    // the time average keeps the diagonal of every degenerate block
    average_ = 0.0;
    const double scale = std::max(energies_.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (std::abs(energies_(i) - energies_(j)) <= 1e-10 * scale) {
                average_ += (std::conj(amplitudes_(i)) * amplitudes_(j) * a_(i, j)).real();
            }
        }
    }
}

double QuenchEvolution::value(double t) const {
    const Eigen::VectorXcd f =
        (amplitudes_.array() * (std::complex<double>(0.0, -t) * energies_.cast<std::complex<double>>()).array().exp())
            .matrix();
    return (f.adjoint() * a_ * f)(0, 0).real();
}

Eigen::MatrixXd random_symmetric(Eigen::Index dim, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(dim)));
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            m(i, j) = normal(gen);
            m(j, i) = m(i, j);
        }
        m(i, i) *= std::sqrt(2.0);
    }
    return m;
}

Eigen::VectorXcd ground_state(const Eigen::MatrixXcd& H) {
    check_hermitian(H, "H");
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(H).eigenvectors().col(0);
}

}  // namespace qstats
