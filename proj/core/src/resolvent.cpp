#include "deltasolve/resolvent.hpp"

#include <array>

#include "deltasolve/errors.hpp"

namespace deltasolve {
namespace {

void require_upper(cplx z, const char* who) {
    if (z.imag() < 0.0) throw DomainError(std::string(who) + ": requires Im z >= 0");
}

cplx outgoing(double r, cplx z) { return std::exp(kI * z * r) / (kFourPi * r); }

double center_distance(const InteractionConfig& config, const Vec3& x, std::size_t j, const char* who) {
    const double r = distance(x, config.center(j));
    if (r < kCoincidenceRadius)
        throw CenterCoincidence(std::string(who) + ": point coincides with center " + std::to_string(j), static_cast<int>(j));
    return r;
}

}  // namespace

cplx free_kernel(const Vec3& x, const Vec3& y, cplx z) {
    require_upper(z, "free_kernel");
    const double r = distance(x, y);
    if (r < kCoincidenceRadius) throw CenterCoincidence("free_kernel: x and y coincide", -1);
    return outgoing(r, z);
}

cplx free_resolvent_at(const InitialData& f, const Vec3& x, cplx z) {
    require_upper(z, "free_resolvent_at");
    return f.free_resolvent(x, z);
}

cplx krein_kernel(const InteractionConfig& config, const Vec3& x, const Vec3& y, cplx z, const GammaOptions& opts) {
    require_upper(z, "krein_kernel");
    const std::size_t n = config.size();
    Eigen::VectorXcd gx(n), gy(n);
    for (std::size_t j = 0; j < n; ++j) {
        gx(j) = outgoing(center_distance(config, x, j, "krein_kernel"), z);
        gy(j) = outgoing(center_distance(config, y, j, "krein_kernel"), z);
    }
    const Eigen::MatrixXcd inv = gamma_inverse(config, z, opts);
    return free_kernel(x, y, z) + (gx.transpose() * (inv * gy)).value();
}

ResolventField::ResolventField(const InteractionConfig& config, InitialData f, cplx z, const GammaOptions& opts)
    : config_(config), f_(std::move(f)), z_(z) {
    require_upper(z, "resolvent_apply");
    const std::size_t n = config.size();
    Eigen::VectorXcd q(n);
    for (std::size_t l = 0; l < n; ++l) q(l) = f_.free_resolvent(config.center(l), z);
    charges_ = gamma_inverse(config, z, opts) * q;
}

cplx ResolventField::operator()(const Vec3& x) const {
    cplx v = f_.free_resolvent(x, z_);
    for (std::size_t j = 0; j < config_.size(); ++j)
        v += charges_(j) * outgoing(center_distance(config_, x, j, "resolvent_apply"), z_);
    return v;
}

cplx resolvent_apply(const InteractionConfig& config, const InitialData& f, const Vec3& x, cplx z,
                     const GammaOptions& opts) {
    return ResolventField(config, f, z, opts)(x);
}

BoundaryResidual boundary_residual(const InteractionConfig& config, const Field& psi, std::size_t j) {
    static const std::array<Vec3, 6> dirs{{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};
    const Vec3& y = config.center(j);
    const double a = kFourPi * config.alpha(j);
    const std::array<double, 3> radii{1e-2, 1e-3, 1e-4};
    std::array<cplx, 3> bracket{};
    double scale = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double r = radii[k];
        const double h = 0.1 * r;
        cplx sum = 0.0;
        for (const auto& e : dirs) {
            auto rpsi = [&](double rho) { return rho * psi(y + rho * e); };
            const cplx g0 = rpsi(r);
            const cplx dg = (rpsi(r + h) - rpsi(r - h)) / (2.0 * h);
            sum += dg - a * g0;
            if (k + 1 == radii.size()) scale = std::max({scale, std::abs(g0), std::abs(dg)});
        }
        bracket[k] = sum / 6.0;
    }
    // The bracket is B0 + B1 r + O(r^2) after the direction average; remove B1.
    const cplx limit = (10.0 * bracket[2] - bracket[1]) / 9.0;
    return {std::abs(limit), scale};
}

}  // namespace deltasolve
