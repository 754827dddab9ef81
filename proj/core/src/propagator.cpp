#include "deltasolve/propagator.hpp"

#include <cmath>

#include "deltasolve/errors.hpp"
#include "deltasolve/quadrature.hpp"
#include "deltasolve/specialfn.hpp"

namespace deltasolve {
namespace {

constexpr double kSqrtPi = 1.772453850905516027298167483341145;

// (4 pi i t)^{3/2} on the principal branch.
cplx free_norm(double t) { return std::pow(kFourPi * t, 1.5) * std::polar(1.0, 0.75 * kPi); }

void require_time(double t, const char* who) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(who) + ": requires t > 0");
}

cplx laplace_integrand(double b, double u0, double t, cplx s) {
    const cplx v = s + u0;
    return std::exp(-b * s + kI * v * v / (4.0 * t)) * v / free_norm(t);
}

}  // namespace

cplx free_propagator_kernel(double r, double t) {
    require_time(t, "free_propagator_kernel");
    return std::polar(1.0, r * r / (4.0 * t)) / free_norm(t);
}

cplx free_propagator_kernel(const Vec3& x, double t) { return free_propagator_kernel(norm(x), t); }

cplx free_evolve(const InitialData& f, const Vec3& x, double t) {
    require_time(t, "free_evolve");
    return f.free_evolve(x, t);
}

cplx laplace_integral(double b, double c, double t, int sign) {
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("laplace_integral: requires b > 0");
    if (!(c >= 0.0)) throw DomainError("laplace_integral: requires c >= 0");
    if (sign != 1 && sign != -1) throw DomainError("laplace_integral: sign must be +1 or -1");
    require_time(t, "laplace_integral");

    // Completing the square in e^{-bs + ip(s+u0)^2} turns the integral into
    // erfc of z = i zeta (u0 + ib/(2p)), zeta = e^{-i pi/4} sqrt(p).
    const double p = 0.25 / t;
    const double u0 = sign * c;
    const cplx zeta = std::polar(std::sqrt(p), -0.25 * kPi);
    const cplx z = kI * zeta * cplx(u0, b / (2.0 * p));
    const cplx pre = 1.0 / (free_norm(t) * cplx(0.0, 2.0 * p));
    const cplx chirp = std::polar(1.0, p * u0 * u0);
    if (z.imag() >= 0.0) {
        // -1 + b sqrt(pi) w(z)/(2 zeta) = (q - 1) + q R(z) with q = b/(b - 2ipu0);
        // this form keeps full accuracy when b sqrt(pi) w/(2 zeta) is close to 1.
        const cplx den(b, -2.0 * p * u0);
        const cplx q = b / den;
        return pre * chirp * (cplx(0.0, 2.0 * p * u0) / den + q * faddeeva_remainder(z));
    }
    const cplx e = std::exp(cplx(b * u0, b * b / (4.0 * p)));
    return pre * (-chirp + b * kSqrtPi / (2.0 * zeta) * (2.0 * e - chirp * faddeeva(-z)));
}

cplx laplace_integral_quadrature(double b, double c, double t, int sign) {
    if (!(b > 0.0)) throw DomainError("laplace_integral_quadrature: requires b > 0");
    if (sign != 1 && sign != -1) throw DomainError("laplace_integral_quadrature: sign must be +1 or -1");
    require_time(t, "laplace_integral_quadrature");
    const double u0 = sign * c;
    // Real segment up to the stationary point s = -u0, then the ray at angle pi/4
    // on which e^{i(s+u0)^2/(4t)} becomes a real Gaussian.
    const double s0 = std::max(0.0, -u0);
    std::vector<double> x;
    std::vector<double> w;
    cplx sum = 0.0;
    if (s0 > 0.0) {
        const double freq = s0 / (2.0 * t) + b;
        append_gauss_legendre_width(0.0, s0, std::min(1.0, 3.0 * kPi / freq), x, w);
        for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * laplace_integrand(b, u0, t, x[i]);
    }
    const cplx dir = std::polar(1.0, 0.25 * kPi);
    const double end = std::min(std::sqrt(160.0 * t), 57.0 / b) + std::sqrt(t);
    x.clear();
    w.clear();
    append_gauss_legendre_width(0.0, end, 0.25 * std::min(std::sqrt(t), 1.0 / b + 1.0 / (std::abs(u0) / (2.0 * t) + 1e-300)),
                                x, w);
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * dir * laplace_integrand(b, u0, t, s0 + dir * x[i]);
    return sum;
}

double n1_standing_wave(double alpha, const Vec3& x) {
    if (!(alpha < 0.0)) throw DomainError("n1_standing_wave: requires alpha < 0");
    const double r = norm(x);
    if (r < kCoincidenceRadius) throw CenterCoincidence("n1_standing_wave: point sits on the center", 0);
    return std::sqrt(-2.0 * alpha) * std::exp(kFourPi * alpha * r) / r;
}

namespace {

// Correction part of the N = 1 kernel as a function of rho = |x| + |y|,
// before division by |x||y|.
cplx n1_radial_correction(double alpha, double rho, double t) {
    if (alpha > 0.0) return laplace_integral(kFourPi * alpha, rho, t, 1);
    if (alpha == 0.0) return cplx(0.0, 2.0 * t) * free_propagator_kernel(rho, t);
    return laplace_integral(-kFourPi * alpha, rho, t, -1);
}

}  // namespace

cplx n1_kernel(double alpha, const Vec3& x, const Vec3& y, double t, bool continuous_only) {
    require_time(t, "n1_kernel");
    const double r1 = norm(x);
    const double r2 = norm(y);
    if (r1 < kCoincidenceRadius || r2 < kCoincidenceRadius)
        throw CenterCoincidence("n1_kernel: point sits on the center", 0);
    cplx k = free_propagator_kernel(x - y, t) + n1_radial_correction(alpha, r1 + r2, t) / (r1 * r2);
    if (alpha < 0.0 && !continuous_only) {
        const double e = kFourPi * alpha;
        k += n1_standing_wave(alpha, x) * n1_standing_wave(alpha, y) * std::polar(1.0, t * e * e);
    }
    return k;
}

cplx n1_kernel(const InteractionConfig& config, const Vec3& x, const Vec3& y, double t, bool continuous_only) {
    if (config.size() != 1) throw DomainError("n1_kernel: requires a single center");
    const Vec3& c = config.center(0);
    return n1_kernel(config.alpha(0), x - c, y - c, t, continuous_only);
}

cplx n1_evolve(const InteractionConfig& config, const InitialData& f, const Vec3& x, double t, bool continuous_only) {
    if (config.size() != 1) throw DomainError("n1_evolve: requires a single center");
    require_time(t, "n1_evolve");
    const Vec3& c = config.center(0);
    const double alpha = config.alpha(0);
    const double r1 = distance(x, c);
    if (r1 < kCoincidenceRadius) throw CenterCoincidence("n1_evolve: point sits on the center", 0);

    // The kernel correction depends on y only through |y - c|, so f enters
    // through its radial density about the center. Panels span at most 3 pi of
    // the chirp e^{i(r1 + s)^2/(4t)}.
    const double ext = f.radial_extent(c);
    std::vector<double> s;
    std::vector<cplx> w;
    f.radial_rule(c, 6.0 * kPi * t / (r1 + ext), s, w);
    cplx corr = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) corr += w[i] / s[i] * n1_radial_correction(alpha, r1 + s[i], t);

    cplx u = f.free_evolve(x, t) + corr / r1;
    if (alpha < 0.0 && !continuous_only) {
        const double kappa = -kFourPi * alpha;
        // Psi = 4 pi sqrt(-2 alpha) Y_kappa, so <Psi, f> is a free resolvent at i kappa.
        const cplx overlap = kFourPi * std::sqrt(-2.0 * alpha) * f.free_resolvent(c, cplx(0.0, kappa));
        u += overlap * n1_standing_wave(alpha, x - c) * std::polar(1.0, t * kappa * kappa);
    }
    return u;
}

double CutoffSpec::shape(double s) const {
    s = std::abs(s);
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    const double a = profile == CutoffProfile::smooth_step ? 1.0 : 3.0;
    const double u = s - 1.0;
    // g(1-u)/(g(1-u)+g(u)) with g(v) = e^{-a/v}, written as a logistic.
    return 1.0 / (1.0 + std::exp(a * (1.0 / (1.0 - u) - 1.0 / u)));
}

double CutoffSpec::shape_derivative(double s) const {
    const double as = std::abs(s);
    if (as <= 1.0 || as >= 2.0) return 0.0;
    const double a = profile == CutoffProfile::smooth_step ? 1.0 : 3.0;
    const double u = as - 1.0;
    const double v = shape(as);
    const double d = -v * (1.0 - v) * a * (1.0 / ((1.0 - u) * (1.0 - u)) + 1.0 / (u * u));
    return s < 0.0 ? -d : d;
}

}  // namespace deltasolve
