#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "deltasolve/data.hpp"
#include "deltasolve/gamma.hpp"
#include "deltasolve/spectrum.hpp"
#include "deltasolve/types.hpp"

namespace deltasolve {

// Free kernel S(x; t) = e^{i|x|^2/(4t)} / (4 pi i t)^{3/2}, principal branch
// (it)^{3/2} = t^{3/2} e^{3 pi i/4}. It integrates to one, so U(t) -> 1 as t -> 0.
cplx free_propagator_kernel(const Vec3& x, double t);
cplx free_propagator_kernel(double r, double t);

cplx free_evolve(const InitialData& f, const Vec3& x, double t);

// int_0^inf e^{-bs} (s + sign c) S(s + sign c; t) ds for b > 0, c >= 0.
cplx laplace_integral(double b, double c, double t, int sign);
// The same integral by adaptive quadrature (rotated ray where that is stable).
cplx laplace_integral_quadrature(double b, double c, double t, int sign);

// Kernel of U(t) for one center at the origin with strength alpha, x, y != 0.
// For alpha < 0 the standing wave Psi(x) Psi(y) e^{it(4 pi alpha)^2} is included
// unless continuous_only is set.
cplx n1_kernel(double alpha, const Vec3& x, const Vec3& y, double t, bool continuous_only = false);
// As above for the single center of `config`.
cplx n1_kernel(const InteractionConfig& config, const Vec3& x, const Vec3& y, double t, bool continuous_only = false);

// (U(t) f)(x) for N = 1 from the closed-form kernel, integrating f radially
// about the center.
cplx n1_evolve(const InteractionConfig& config, const InitialData& f, const Vec3& x, double t,
               bool continuous_only = false);

// N = 1 standing wave Psi_alpha(x) = sqrt(-2 alpha) e^{4 pi alpha |x|}/|x|, alpha < 0.
double n1_standing_wave(double alpha, const Vec3& x);

enum class CutoffProfile {
    smooth_step,  // g(1-u)/(g(1-u)+g(u)), g(v) = e^{-1/v}
    steep_step,   // same with g(v) = e^{-3/v}
};

// psi(mu/M): even, 1 on [0,1], 0 beyond 2, C-infinity.
struct CutoffSpec {
    double M = 8.0;
    CutoffProfile profile = CutoffProfile::smooth_step;

    double shape(double s) const;
    double shape_derivative(double s) const;
};

struct SpectralOptions {
    double tol = 1e-6;
    int max_doublings = 6;
    double mu_step = 0.02;    // sampling step of the mu-integrand before the transform
    double crop = 1e-13;      // dual-grid entries below crop * max are dropped
    GammaOptions gamma;
};

// Continuous-spectrum evolution at a fixed cutoff M. The correction term
//   -(2/(t r_j)) int e^{-it mu^2 + i mu r_j} [H_j' psi + i r_j H_j psi + H_j psi'/M] dmu,
//   H_j = sum_l c_jl(mu) (R_0(mu^2) f)(y_l),
// is evaluated through the Fourier transform in mu, computed once, so that
// each (x, t) costs one chirp sum over the dual variable A:
//   int e^{-it mu^2 + i mu r} G(mu) dmu = sqrt(pi/(it)) int G^(A) e^{i(r + A)^2/(4t)} dA.
class SpectralTransform {
public:
    // Resolution is chosen for every t >= t_min and every distance to a center <= r_max.
    SpectralTransform(const InteractionConfig& config, const InitialData& f, const CutoffSpec& cutoff, double t_min,
                      double r_max, const SpectralOptions& opts = {});

    bool covers(double t, double r_max) const;
    double t_min() const { return t_min_; }
    double r_max() const { return r_max_; }
    double cutoff() const { return cutoff_.M; }
    double dual_step() const { return dA_; }
    std::size_t dual_size() const { return A_.size(); }

    // P_ac U(t) f at x minus the free evolution.
    cplx correction(const Vec3& x, double t) const;
    cplx evolve(const Vec3& x, double t) const;

private:
    void build(double dA);
    std::size_t stride(double t, double r) const;

    InteractionConfig config_;
    InitialData f_;
    CutoffSpec cutoff_;
    SpectralOptions opts_;
    double t_min_;
    double r_max_;
    double dA_ = 0.0;
    double a_ext_ = 0.0;
    std::vector<double> A_;
    std::vector<std::vector<cplx>> p_;  // per center
    std::vector<std::vector<cplx>> q_;
};

struct SpectralValue {
    cplx value;
    double error;  // |U_M - U_{M/2}| at the accepted rung
    double M;
};

// P_ac U(t) f at x with the cutoff doubled from cutoff.M until two rungs
// agree to opts.tol relative to max(|value|, |free part|). Throws
// ConvergenceFailure when the ladder is exhausted and SingularGamma when
// Gamma(mu) is not invertible on the sampled mu.
SpectralValue spectral_evolve(const InteractionConfig& config, const InitialData& f, const Vec3& x, double t,
                              const CutoffSpec& cutoff = {}, const SpectralOptions& opts = {});

enum class EvolveMode { automatic, closed_form, spectral };

struct EvolveOptions {
    EvolveMode mode = EvolveMode::automatic;  // automatic: closed form for N = 1, spectral otherwise
    bool continuous_only = false;             // apply P_ac
    CutoffSpec cutoff;
    SpectralOptions spectral;
};

struct EvolveResult {
    std::vector<cplx> values;
    double M = 0.0;      // cutoff accepted by the spectral ladder (0 for closed form)
    double error = 0.0;  // ladder discrepancy relative to the weighted grid maximum
};

// U(t) f (or P_ac U(t) f) on point sets; bound states are found once and
// spectral transforms are cached per cutoff.
class Propagator {
public:
    Propagator(InteractionConfig config, InitialData f, EvolveOptions opts = {});

    const InteractionConfig& config() const { return config_; }
    const InitialData& data() const { return f_; }
    const std::vector<SpectralProjection>& bound_states() const { return bound_; }

    EvolveResult evaluate(const std::vector<Vec3>& points, double t) const;
    cplx evaluate(const Vec3& x, double t) const;

private:
    bool use_closed_form() const;
    const SpectralTransform& transform(double M, double t, double r_max) const;
    std::vector<cplx> continuous(const std::vector<Vec3>& points, double t, double M, double r_max) const;

    InteractionConfig config_;
    InitialData f_;
    EvolveOptions opts_;
    std::vector<SpectralProjection> bound_;
    mutable std::map<double, std::unique_ptr<SpectralTransform>> cache_;
};

// Single-point U(t) f with the options above.
cplx full_evolve(const InteractionConfig& config, const InitialData& f, const Vec3& x, double t,
                 const EvolveOptions& opts = {});

}  // namespace deltasolve
