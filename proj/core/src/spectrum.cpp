#include "deltasolve/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "deltasolve/errors.hpp"

namespace deltasolve {
namespace {

constexpr int kScanPoints = 2048;
constexpr double kBisectTol = 1e-12;
constexpr double kMergeTol = 1e-9;

Eigen::VectorXd sorted_eigenvalues(const InteractionConfig& config, double kappa) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma_imaginary_axis(config, kappa), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

Eigen::MatrixXd gram(const InteractionConfig& config, double kappa) {
    const auto n = static_cast<Eigen::Index>(config.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < n; ++l) g(j, l) = yukawa_overlap(kappa, config.distance(j, l));
    return g;
}

// Sign fix so results are reproducible: the largest-magnitude entry is positive.
void canonical_sign(Eigen::VectorXd& v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (v(k) < 0.0) v = -v;
}

}  // namespace

Eigen::MatrixXd gamma_imaginary_axis(const InteractionConfig& config, double kappa) {
    const auto n = static_cast<Eigen::Index>(config.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        g(j, j) = config.alpha(j) + kappa / kFourPi;
        for (Eigen::Index l = j + 1; l < n; ++l) {
            const double d = config.distance(j, l);
            g(j, l) = g(l, j) = -std::exp(-kappa * d) / (kFourPi * d);
        }
    }
    return g;
}

double default_kappa_max(const InteractionConfig& config) {
    double amax = 0.0;
    for (double a : config.alphas()) amax = std::max(amax, std::abs(a));
    double off = 0.0;
    if (config.size() > 1) off = static_cast<double>(config.size() - 1) / (kFourPi * config.min_distance());
    return kFourPi * (amax + off) + 10.0;
}

double yukawa_overlap(double kappa, double d) {
    if (!(kappa > 0.0)) throw DomainError("yukawa_overlap: requires kappa > 0");
    return std::exp(-kappa * d) / (8.0 * kPi * kappa);
}

std::vector<Eigenpair> find_eigenvalues(const InteractionConfig& config, std::optional<double> kappa_max) {
    const double kmax = kappa_max.value_or(default_kappa_max(config));
    if (!(kmax > 0.0)) throw DomainError("find_eigenvalues: kappa_max must be positive");
    const auto n = static_cast<Eigen::Index>(config.size());

    // Each sorted eigenvalue of Gamma(i kappa) increases strictly with kappa
    // (d/dkappa Gamma is positive definite), so branch i has a root iff it
    // starts negative and ends positive.
    std::vector<double> grid(kScanPoints);
    grid[0] = 0.0;
    const double lo = std::log(kmax * 1e-9);
    const double hi = std::log(kmax);
    for (int k = 1; k < kScanPoints; ++k) grid[k] = std::exp(lo + (hi - lo) * (k - 1) / (kScanPoints - 2));
    std::vector<Eigen::VectorXd> vals;
    vals.reserve(grid.size());
    for (double k : grid) vals.push_back(sorted_eigenvalues(config, k));

    std::vector<double> roots;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(vals[0](i) < 0.0)) continue;
        std::size_t k = 1;
        while (k < grid.size() && vals[k](i) < 0.0) ++k;
        if (k == grid.size()) continue;  // beyond kappa_max
        double a = grid[k - 1];
        double b = grid[k];
        for (int it = 0; it < 200 && b - a > kBisectTol * std::max(1.0, b); ++it) {
            const double m = 0.5 * (a + b);
            if (sorted_eigenvalues(config, m)(i) < 0.0)
                a = m;
            else
                b = m;
        }
        roots.push_back(0.5 * (a + b));
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());

    std::vector<Eigenpair> out;
    for (std::size_t r = 0; r < roots.size();) {
        std::size_t e = r + 1;
        double sum = roots[r];
        while (e < roots.size() && roots[r] - roots[e] <= kMergeTol * std::max(1.0, roots[r])) sum += roots[e++];
        const double kappa = sum / static_cast<double>(e - r);
        const int mult = static_cast<int>(e - r);

        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma_imaginary_axis(config, kappa));
        std::vector<Eigen::Index> order(n);
        for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) {
            return std::abs(es.eigenvalues()(a)) < std::abs(es.eigenvalues()(b));
        });

        Eigenpair p;
        p.kappa = kappa;
        p.energy = -kappa * kappa;
        p.multiplicity = mult;
        p.norm_matrix = gram(config, kappa);
        // Gram-Schmidt in the metric of the Yukawa overlaps.
        for (int m = 0; m < mult; ++m) {
            Eigen::VectorXd v = es.eigenvectors().col(order[m]);
            for (const auto& u : p.nullvecs) v -= (u.transpose() * p.norm_matrix * v).value() * u;
            v /= std::sqrt((v.transpose() * p.norm_matrix * v).value());
            canonical_sign(v);
            p.nullvecs.push_back(v);
        }
        out.push_back(std::move(p));
        r = e;
    }
    return out;
}

BoundState::BoundState(const InteractionConfig& config, double kappa, Eigen::VectorXd coeffs)
    : centers_(config.centers()), kappa_(kappa), coeffs_(std::move(coeffs)) {}

cplx BoundState::operator()(const Vec3& x) const {
    double v = 0.0;
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        const double r = distance(x, centers_[j]);
        if (r < kCoincidenceRadius)
            throw CenterCoincidence("eigenfunction evaluated at center " + std::to_string(j), static_cast<int>(j));
        v += coeffs_(static_cast<Eigen::Index>(j)) * std::exp(-kappa_ * r) / (kFourPi * r);
    }
    return v;
}

InitialData BoundState::as_initial_data() const {
    InitialData f;
    for (std::size_t j = 0; j < centers_.size(); ++j)
        if (coeffs_(static_cast<Eigen::Index>(j)) != 0.0)
            f.add(YukawaTerm{coeffs_(static_cast<Eigen::Index>(j)), centers_[j], kappa_});
    return f;
}

BoundState eigenfunction(const InteractionConfig& config, const Eigenpair& pair, std::size_t which) {
    if (which >= pair.nullvecs.size()) throw DomainError("eigenfunction: index exceeds multiplicity");
    return BoundState(config, pair.kappa, pair.nullvecs[which]);
}

std::vector<SpectralProjection> project_point_spectrum(const InteractionConfig& config, const InitialData& f,
                                                       std::optional<double> kappa_max) {
    std::vector<SpectralProjection> out;
    for (const auto& pair : find_eigenvalues(config, kappa_max)) {
        // <phi, f> = sum_j a_j int Y_kappa(y - y_j) f(y) dy = sum_j a_j (R_0(-kappa^2) f)(y_j)
        Eigen::VectorXcd q(static_cast<Eigen::Index>(config.size()));
        for (std::size_t j = 0; j < config.size(); ++j)
            q(static_cast<Eigen::Index>(j)) = f.free_resolvent(config.center(j), cplx(0.0, pair.kappa));
        for (std::size_t m = 0; m < pair.nullvecs.size(); ++m) {
            const cplx c = (pair.nullvecs[m].cast<cplx>().transpose() * q).value();
            out.push_back({pair, m, eigenfunction(config, pair, m), c});
        }
    }
    return out;
}

}  // namespace deltasolve
