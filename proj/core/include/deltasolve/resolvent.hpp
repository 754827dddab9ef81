#pragma once

#include <functional>

#include <Eigen/Dense>

#include "deltasolve/data.hpp"
#include "deltasolve/gamma.hpp"
#include "deltasolve/types.hpp"

namespace deltasolve {

using Field = std::function<cplx(const Vec3&)>;

// Free resolvent kernel e^{iz|x-y|}/(4 pi |x-y|).
cplx free_kernel(const Vec3& x, const Vec3& y, cplx z);

// (R_0(z^2) f)(x), Im z >= 0; real z gives the boundary value from Im z > 0.
cplx free_resolvent_at(const InitialData& f, const Vec3& x, cplx z);

// Kernel of R_{alpha,Y}(z^2):
//   free_kernel(x,y,z) + sum_{jl} [Gamma(z)^{-1}]_{jl} G_z(x - y_j) G_z(y - y_l),
// G_z(r) = e^{iz|r|}/(4 pi |r|), decaying for Im z > 0. Real z > 0 gives the
// limiting-absorption value with Gamma evaluated at z itself.
cplx krein_kernel(const InteractionConfig& config, const Vec3& x, const Vec3& y, cplx z, const GammaOptions& opts = {});

// (R_{alpha,Y}(z^2) f)(x).
cplx resolvent_apply(const InteractionConfig& config, const InitialData& f, const Vec3& x, cplx z,
                     const GammaOptions& opts = {});

// R_{alpha,Y}(z^2) f prepared once for evaluation at many points:
// the free part plus sum_j q_j G_z(x - y_j) with charges q = Gamma^{-1} F.
class ResolventField {
public:
    ResolventField(const InteractionConfig& config, InitialData f, cplx z, const GammaOptions& opts = {});

    cplx operator()(const Vec3& x) const;
    const Eigen::VectorXcd& charges() const { return charges_; }
    cplx z() const { return z_; }

private:
    InteractionConfig config_;
    InitialData f_;
    cplx z_;
    Eigen::VectorXcd charges_;
};

struct BoundaryResidual {
    double residual;  // |lim_{r->0} [d(r psi)/dr - 4 pi alpha_j r psi]|
    double scale;     // magnitude of r psi and d(r psi)/dr near y_j
};

// Richardson-extrapolated boundary-condition bracket at center j, from radii
// 1e-2, 1e-3, 1e-4 averaged over the six coordinate directions.
BoundaryResidual boundary_residual(const InteractionConfig& config, const Field& psi, std::size_t j);

}  // namespace deltasolve
