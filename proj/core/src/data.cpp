#include "deltasolve/data.hpp"

#include <cmath>
#include <string>

#include "deltasolve/errors.hpp"
#include "deltasolve/quadrature.hpp"
#include "deltasolve/specialfn.hpp"

namespace deltasolve {
namespace {

constexpr double kSqrtPi = 1.772453850905516027298167483341145;
constexpr double kPi32 = 5.568327996831707845284817982118835;  // pi^{3/2}
const cplx kEighthTurn = std::polar(1.0, 0.25 * kPi);

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check(const GaussianTerm& g, std::size_t k) {
    if (!finite(g.amplitude)) throw InvalidConfig("gaussians[" + std::to_string(k) + "].amplitude is not finite");
    for (double c : g.center)
        if (!std::isfinite(c)) throw InvalidConfig("gaussians[" + std::to_string(k) + "].center is not finite");
    if (!(g.sigma > 0.0) || !std::isfinite(g.sigma))
        throw InvalidConfig("gaussians[" + std::to_string(k) + "].sigma must be positive");
}

void check(const YukawaTerm& y, std::size_t k) {
    if (!finite(y.amplitude)) throw InvalidConfig("yukawas[" + std::to_string(k) + "].amplitude is not finite");
    for (double c : y.center)
        if (!std::isfinite(c)) throw InvalidConfig("yukawas[" + std::to_string(k) + "].center is not finite");
    if (!(y.kappa > 0.0) || !std::isfinite(y.kappa))
        throw InvalidConfig("yukawas[" + std::to_string(k) + "].kappa must be positive");
}

// (e^z - 1)/z
cplx phi1(cplx z) {
    if (std::abs(z) < 1e-8) return 1.0 + 0.5 * z;
    return expm1(z) / z;
}

// d/dz (e^z - 1)/z = (z e^z - e^z + 1)/z^2
cplx phi1_prime(cplx z) {
    if (std::abs(z) < 0.1) {
        cplx sum = 0.0;
        cplx zn = 1.0;
        double fact = 2.0;  // (n+2)!
        for (int n = 0; n <= 14; ++n) {
            sum += zn * static_cast<double>(n + 1) / fact;
            zn *= z;
            fact *= static_cast<double>(n + 3);
        }
        return sum;
    }
    return (z * std::exp(z) - expm1(z)) / (z * z);
}

// int_0^inf e^{iks} (e^{-(s-D)^2/s^2} - e^{-(s+D)^2/s^2}) ds scaled by a sigma^2/(4D):
// the free resolvent of one Gaussian at distance D from its center.
cplx gaussian_resolvent(const GaussianTerm& g, double D, cplx k, bool derivative) {
    const double sig = g.sigma;
    const double c = 0.5 * sig * kSqrtPi;
    const double eps = D / sig;
    if (eps < 1e-3) {
        const auto w = faddeeva_derivatives<4>(0.5 * k * sig);
        const cplx pre = g.amplitude * (0.5 * sig) * c * kI;
        if (!derivative) return pre * (-w[1] + eps * eps * (w[3] / 6.0 + w[1]));
        return pre * (0.5 * sig) * (-w[2] + eps * eps * (w[4] / 6.0 + w[2]));
    }
    auto term = [&](double m) -> cplx {
        const cplx Z = 0.5 * k * sig - kI * (m / sig);
        const double g0 = std::exp(-(m * m) / (sig * sig));
        if (Z.imag() >= 0.0) {
            if (!derivative) return c * g0 * faddeeva(Z);
            return c * g0 * (0.5 * sig) * faddeeva_derivatives<1>(Z)[1];
        }
        const cplx e = std::exp(kI * k * m - 0.25 * k * k * sig * sig);
        if (!derivative) return c * (2.0 * e - g0 * faddeeva(-Z));
        return c * (2.0 * (kI * m - 0.5 * k * sig * sig) * e + g0 * (0.5 * sig) * faddeeva_derivatives<1>(-Z)[1]);
    };
    return g.amplitude * sig * sig / (4.0 * D) * (term(D) - term(-D));
}

cplx yukawa_resolvent(const YukawaTerm& y, double d, cplx k, bool derivative) {
    const double kap = y.kappa;
    const cplx beta = kI * k + kap;
    const cplx kp = k + kI * kap;
    const cplx pre = y.amplitude * kI * std::exp(-kap * d) / kFourPi;
    if (!derivative) return pre * phi1(beta * d) / kp;
    return pre * (kI * d * phi1_prime(beta * d) / kp - phi1(beta * d) / (kp * kp));
}

cplx gaussian_free_evolve(const GaussianTerm& g, const Vec3& x, double t) {
    const double tau = 0.25 * g.sigma * g.sigma;
    const cplx s = tau + kI * t;
    const Vec3 dx = x - g.center;
    return g.amplitude * std::pow(tau / s, 1.5) * std::exp(-dot(dx, dx) / (4.0 * s));
}

cplx yukawa_free_evolve(const YukawaTerm& y, const Vec3& x, double t) {
    const double r = distance(x, y.center);
    const double rt = std::sqrt(t);
    const cplx z0 = rt * kEighthTurn * cplx(0.0, y.kappa);
    const cplx delta = kEighthTurn * (r / (2.0 * rt));
    const cplx chirp = std::polar(1.0, r * r / (4.0 * t));
    if (std::abs(delta) < 1e-3) {
        const auto w = faddeeva_derivatives<4>(z0);
        return y.amplitude * chirp * (kEighthTurn / (2.0 * rt)) / (8.0 * kPi) * (-2.0 * w[1] - delta * delta * w[3] / 3.0);
    }
    return y.amplitude * chirp / (8.0 * kPi * r) * (faddeeva(z0 - delta) - faddeeva(z0 + delta));
}

// Radial density about q (the integral of the term over the sphere |y - q| = s).
cplx gaussian_density(const GaussianTerm& g, double D, double s) {
    const double sig2 = g.sigma * g.sigma;
    const double gauss = std::exp(-(s - D) * (s - D) / sig2);
    if (D == 0.0) return g.amplitude * (4.0 * kPi * s * s * gauss);
    return g.amplitude * (kPi * sig2 * s * gauss * (-std::expm1(-4.0 * s * D / sig2)) / D);
}

cplx yukawa_density(const YukawaTerm& y, double D, double s) {
    const double kap = y.kappa;
    if (D == 0.0) return y.amplitude * (s * std::exp(-kap * s));
    const double lo = std::min(s, D);
    const double hi = std::max(s, D);
    // (e^{-kap|s-D|} - e^{-kap(s+D)})/(2 kap D) = e^{-kap hi} sinh(kap lo)/(kap D)
    return y.amplitude * (s * std::exp(-kap * hi) * std::sinh(kap * lo) / (kap * D));
}

bool common_phase(const std::vector<cplx>& amps) {
    cplx ref = 0.0;
    for (cplx a : amps)
        if (std::abs(a) > 0.0) {
            ref = a / std::abs(a);
            break;
        }
    for (cplx a : amps) {
        const cplx r = a * std::conj(ref);
        if (std::abs(r.imag()) > 1e-14 * std::abs(a) || r.real() < 0.0) return false;
    }
    return true;
}

}  // namespace

InitialData::InitialData(std::vector<GaussianTerm> gaussians, std::vector<YukawaTerm> yukawas)
    : gaussians_(std::move(gaussians)), yukawas_(std::move(yukawas)) {
    for (std::size_t k = 0; k < gaussians_.size(); ++k) check(gaussians_[k], k);
    for (std::size_t k = 0; k < yukawas_.size(); ++k) check(yukawas_[k], k);
}

InitialData& InitialData::add(const GaussianTerm& g) {
    check(g, gaussians_.size());
    gaussians_.push_back(g);
    return *this;
}

InitialData& InitialData::add(const YukawaTerm& y) {
    check(y, yukawas_.size());
    yukawas_.push_back(y);
    return *this;
}

InitialData InitialData::scaled(cplx s) const {
    InitialData out = *this;
    for (auto& g : out.gaussians_) g.amplitude *= s;
    for (auto& y : out.yukawas_) y.amplitude *= s;
    return out;
}

InitialData InitialData::operator+(const InitialData& other) const {
    InitialData out = *this;
    out.gaussians_.insert(out.gaussians_.end(), other.gaussians_.begin(), other.gaussians_.end());
    out.yukawas_.insert(out.yukawas_.end(), other.yukawas_.begin(), other.yukawas_.end());
    return out;
}

cplx InitialData::value(const Vec3& x) const {
    cplx v = 0.0;
    for (const auto& g : gaussians_) {
        const Vec3 d = x - g.center;
        v += g.amplitude * std::exp(-dot(d, d) / (g.sigma * g.sigma));
    }
    for (const auto& y : yukawas_) {
        const double r = distance(x, y.center);
        if (r < kCoincidenceRadius) throw CenterCoincidence("InitialData::value: point sits on a Yukawa center", -1);
        v += y.amplitude * std::exp(-y.kappa * r) / (kFourPi * r);
    }
    return v;
}

bool InitialData::is_real() const {
    for (const auto& g : gaussians_)
        if (g.amplitude.imag() != 0.0) return false;
    for (const auto& y : yukawas_)
        if (y.amplitude.imag() != 0.0) return false;
    return true;
}

NormValue InitialData::l1_norm() const {
    std::vector<cplx> amps;
    cplx signed_sum = 0.0;
    double bound = 0.0;
    for (const auto& g : gaussians_) {
        const double m = kPi32 * g.sigma * g.sigma * g.sigma;
        amps.push_back(g.amplitude);
        signed_sum += g.amplitude * m;
        bound += std::abs(g.amplitude) * m;
    }
    for (const auto& y : yukawas_) {
        const double m = 1.0 / (y.kappa * y.kappa);
        amps.push_back(y.amplitude);
        signed_sum += y.amplitude * m;
        bound += std::abs(y.amplitude) * m;
    }
    if (common_phase(amps)) return {std::abs(signed_sum), true};
    return {bound, false};
}

double InitialData::l2_norm() const {
    cplx sum = 0.0;
    for (const auto& a : gaussians_) {
        for (const auto& b : gaussians_) {
            const double s = 1.0 / (a.sigma * a.sigma) + 1.0 / (b.sigma * b.sigma);
            const Vec3 d = a.center - b.center;
            sum += std::conj(a.amplitude) * b.amplitude * std::pow(kPi / s, 1.5) *
                   std::exp(-dot(d, d) / (a.sigma * a.sigma + b.sigma * b.sigma));
        }
        for (const auto& y : yukawas_) {
            const GaussianTerm unit{1.0, a.center, a.sigma};
            const cplx overlap = gaussian_resolvent(unit, distance(a.center, y.center), cplx(0.0, y.kappa), false);
            sum += 2.0 * (std::conj(a.amplitude) * y.amplitude * overlap).real();
        }
    }
    for (const auto& a : yukawas_)
        for (const auto& b : yukawas_) {
            const double d = distance(a.center, b.center);
            double overlap;
            const double k1 = a.kappa;
            const double k2 = b.kappa;
            if (std::abs(k1 - k2) <= 1e-8 * (k1 + k2)) {
                const double k = 0.5 * (k1 + k2);
                overlap = std::exp(-k * d) / (8.0 * kPi * k);
            } else if (d == 0.0) {
                overlap = 1.0 / (kFourPi * (k1 + k2));
            } else {
                overlap = (std::exp(-k1 * d) - std::exp(-k2 * d)) / (kFourPi * d * (k2 * k2 - k1 * k1));
            }
            sum += std::conj(a.amplitude) * b.amplitude * overlap;
        }
    return std::sqrt(std::max(0.0, sum.real()));
}

NormValue InitialData::weighted_l1_norm(const InteractionConfig& config) const {
    // int |f| (1 + 1/|y - y_j|) summed over the centers; each term is positive,
    // so with a common phase the integrals combine exactly.
    std::vector<cplx> amps;
    cplx signed_sum = 0.0;
    double bound = 0.0;
    const double n = static_cast<double>(config.size());
    for (const auto& g : gaussians_) {
        const double s3 = g.sigma * g.sigma * g.sigma;
        double m = n * kPi32 * s3;
        for (const auto& yj : config.centers()) {
            const double D = distance(g.center, yj);
            m += D < 1e-12 * g.sigma ? 2.0 * kPi * g.sigma * g.sigma : kPi32 * s3 * std::erf(D / g.sigma) / D;
        }
        amps.push_back(g.amplitude);
        signed_sum += g.amplitude * m;
        bound += std::abs(g.amplitude) * m;
    }
    for (const auto& y : yukawas_) {
        const double k = y.kappa;
        double m = n / (k * k);
        for (const auto& yj : config.centers()) {
            const double D = distance(y.center, yj);
            m += D * k < 1e-12 ? 1.0 / k : -std::expm1(-k * D) / (k * k * D);
        }
        amps.push_back(y.amplitude);
        signed_sum += y.amplitude * m;
        bound += std::abs(y.amplitude) * m;
    }
    if (common_phase(amps)) return {std::abs(signed_sum), true};
    return {bound, false};
}

cplx InitialData::free_resolvent(const Vec3& q, cplx k) const {
    if (k.imag() < 0.0) throw DomainError("free_resolvent: requires Im k >= 0");
    cplx v = 0.0;
    for (const auto& g : gaussians_) v += gaussian_resolvent(g, distance(g.center, q), k, false);
    for (const auto& y : yukawas_) v += yukawa_resolvent(y, distance(y.center, q), k, false);
    return v;
}

cplx InitialData::free_resolvent_dk(const Vec3& q, cplx k) const {
    if (k.imag() < 0.0) throw DomainError("free_resolvent_dk: requires Im k >= 0");
    cplx v = 0.0;
    for (const auto& g : gaussians_) v += gaussian_resolvent(g, distance(g.center, q), k, true);
    for (const auto& y : yukawas_) v += yukawa_resolvent(y, distance(y.center, q), k, true);
    return v;
}

cplx InitialData::free_evolve(const Vec3& x, double t) const {
    if (!(t > 0.0)) throw DomainError("free_evolve: requires t > 0");
    cplx v = 0.0;
    for (const auto& g : gaussians_) v += gaussian_free_evolve(g, x, t);
    for (const auto& y : yukawas_) v += yukawa_free_evolve(y, x, t);
    return v;
}

void InitialData::radial_rule(const Vec3& q, double max_width, std::vector<double>& s, std::vector<cplx>& w) const {
    std::vector<double> x;
    std::vector<double> wx;
    for (const auto& g : gaussians_) {
        const double D = distance(g.center, q);
        x.clear();
        wx.clear();
        append_gauss_legendre_width(std::max(0.0, D - 9.0 * g.sigma), D + 9.0 * g.sigma,
                                    std::min(max_width, 2.0 * g.sigma), x, wx);
        for (std::size_t i = 0; i < x.size(); ++i) {
            s.push_back(x[i]);
            w.push_back(wx[i] * gaussian_density(g, D, x[i]));
        }
    }
    for (const auto& y : yukawas_) {
        const double D = distance(y.center, q);
        const double width = std::min(max_width, 4.0 / y.kappa);
        x.clear();
        wx.clear();
        append_gauss_legendre_width(0.0, D, width, x, wx);
        append_gauss_legendre_width(D, D + 40.0 / y.kappa, width, x, wx);
        for (std::size_t i = 0; i < x.size(); ++i) {
            s.push_back(x[i]);
            w.push_back(wx[i] * yukawa_density(y, D, x[i]));
        }
    }
}

double InitialData::radial_extent(const Vec3& q) const {
    double ext = 0.0;
    for (const auto& g : gaussians_) ext = std::max(ext, distance(g.center, q) + 9.0 * g.sigma);
    for (const auto& y : yukawas_) ext = std::max(ext, distance(y.center, q) + 40.0 / y.kappa);
    return ext;
}

}  // namespace deltasolve
