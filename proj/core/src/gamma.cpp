#include "deltasolve/gamma.hpp"

#include <limits>
#include <sstream>

#include "deltasolve/errors.hpp"

namespace deltasolve {
namespace {

constexpr double kCNorm = 1.0 / (kFourPi * kFourPi);

double one_norm(const Eigen::MatrixXcd& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

Eigen::MatrixXcd checked_inverse(const Eigen::MatrixXcd& g, cplx z, const GammaOptions& opts) {
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(g);
    Eigen::MatrixXcd inv = lu.inverse();
    double cond = one_norm(g) * one_norm(inv);
    if (!std::isfinite(cond)) cond = std::numeric_limits<double>::infinity();
    if (!(cond <= opts.condition_cap)) {
        std::ostringstream os;
        os << "Gamma(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i) is not invertible (condition " << cond
           << " exceeds cap " << opts.condition_cap << ")";
        throw SingularGamma(os.str(), cond);
    }
    // Gamma is complex symmetric, so its inverse is too; remove the LU rounding asymmetry.
    return 0.5 * (inv + inv.transpose()).eval();
}

Eigen::MatrixXcd phase_matrix(const InteractionConfig& config, double mu) {
    const auto n = static_cast<Eigen::Index>(config.size());
    Eigen::MatrixXcd e(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        e(j, j) = 1.0;
        for (Eigen::Index l = j + 1; l < n; ++l)
            e(j, l) = e(l, j) = std::polar(1.0, mu * config.distance(j, l));
    }
    return e;
}

}  // namespace

GammaMatrix build_gamma(const InteractionConfig& config, cplx z) {
    const auto n = static_cast<Eigen::Index>(config.size());
    GammaMatrix g{z, Eigen::MatrixXcd(n, n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        g.entries(j, j) = config.alpha(j) - kI * z / kFourPi;
        for (Eigen::Index l = j + 1; l < n; ++l) {
            const double d = config.distance(j, l);
            g.entries(j, l) = g.entries(l, j) = -std::exp(kI * z * d) / (kFourPi * d);
        }
    }
    return g;
}

cplx det_gamma(const InteractionConfig& config, cplx z) { return build_gamma(config, z).entries.determinant(); }

Eigen::MatrixXcd gamma_inverse(const InteractionConfig& config, cplx z, const GammaOptions& opts) {
    return checked_inverse(build_gamma(config, z).entries, z, opts);
}

double gamma_condition(const InteractionConfig& config, cplx z) {
    const Eigen::MatrixXcd g = build_gamma(config, z).entries;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(g);
    const double cond = one_norm(g) * one_norm(lu.inverse());
    return std::isfinite(cond) ? cond : std::numeric_limits<double>::infinity();
}

CoeffMatrix inv_coeffs(const InteractionConfig& config, double mu, const GammaOptions& opts) {
    CoeffMatrix out;
    out.mu = mu;
    out.c = kCNorm * gamma_inverse(config, mu, opts);
    const double jb = japanese(mu);
    const cplx lead = kCNorm * kFourPi * kI;
    out.d = out.c;
    out.d_odd = out.c;
    out.d.diagonal().array() -= lead / jb;
    out.d_odd.diagonal().array() -= lead * mu / (jb * jb);
    return out;
}

void coeffs_with_derivative(const InteractionConfig& config, double mu, Eigen::MatrixXcd& c, Eigen::MatrixXcd& dc,
                            const GammaOptions& opts) {
    c = kCNorm * gamma_inverse(config, mu, opts);
    const Eigen::MatrixXcd p = c * phase_matrix(config, mu) * c;
    dc = (0.5 * kFourPi * kI) * (p + p.transpose());
}

CoeffMatrix coeff_derivative(const InteractionConfig& config, double mu, const GammaOptions& opts) {
    CoeffMatrix out;
    out.mu = mu;
    Eigen::MatrixXcd c;
    coeffs_with_derivative(config, mu, c, out.c, opts);
    const double jb2 = 1.0 + mu * mu;
    const cplx lead = kCNorm * kFourPi * kI;
    out.d = out.c;
    out.d_odd = out.c;
    // d/dmu <mu>^{-1} = -mu <mu>^{-3};  d/dmu mu <mu>^{-2} = (1 - mu^2) <mu>^{-4}
    out.d.diagonal().array() += lead * mu / (jb2 * std::sqrt(jb2));
    out.d_odd.diagonal().array() -= lead * (1.0 - mu * mu) / (jb2 * jb2);
    return out;
}

}  // namespace deltasolve
