#include "deltasolve/specialfn.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include "deltasolve/errors.hpp"

namespace deltasolve {
namespace {

constexpr double kInvSqrtPi = 0.56418958354775628694807945156077259;

// Truncated Taylor series sum_n c[n] (z - z0)^n; arithmetic closes on K+1 coefficients.
template <int K>
struct Jet {
    std::array<cplx, K + 1> c{};

    Jet() = default;
    Jet(cplx v) { c[0] = v; }  // NOLINT: implicit constants keep the shared algorithm readable

    cplx value() const { return c[0]; }

    friend Jet operator+(Jet a, const Jet& b) {
        for (int i = 0; i <= K; ++i) a.c[i] += b.c[i];
        return a;
    }
    friend Jet operator-(Jet a, const Jet& b) {
        for (int i = 0; i <= K; ++i) a.c[i] -= b.c[i];
        return a;
    }
    friend Jet operator-(Jet a) {
        for (auto& v : a.c) v = -v;
        return a;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int i = 0; i <= K; ++i)
            for (int j = 0; i + j <= K; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet r;
        for (int n = 0; n <= K; ++n) {
            cplx s = a.c[n];
            for (int k = 1; k <= n; ++k) s -= b.c[k] * r.c[n - k];
            r.c[n] = s / b.c[0];
        }
        return r;
    }
    friend Jet exp(const Jet& f) {
        Jet g;
        g.c[0] = std::exp(f.c[0]);
        for (int n = 1; n <= K; ++n) {
            cplx s = 0.0;
            for (int k = 1; k <= n; ++k) s += static_cast<double>(k) * f.c[k] * g.c[n - k];
            g.c[n] = s / static_cast<double>(n);
        }
        return g;
    }
};

inline cplx value_of(cplx z) { return z; }
template <int K>
cplx value_of(const Jet<K>& z) { return z.value(); }

constexpr double kStep = 0.4;
constexpr int kHalfNodes = static_cast<int>(6.5 / kStep) + 2;

struct TrapezoidNodes {
    std::array<double, 2 * kHalfNodes + 1> t[2];
    std::array<double, 2 * kHalfNodes + 1> weight[2];
    TrapezoidNodes() {
        for (int g = 0; g < 2; ++g)
            for (int n = -kHalfNodes; n <= kHalfNodes; ++n) {
                const double tn = (n + 0.5 * g) * kStep;
                t[g][n + kHalfNodes] = tn;
                weight[g][n + kHalfNodes] = std::exp(-tn * tn);
            }
    }
};

const TrapezoidNodes& nodes() {
    static const TrapezoidNodes table;
    return table;
}

// Trapezoid rule for (i/pi) int e^{-t^2}/(z-t) dt with the pole correction;
// valid for Im z >= 0. The node grid (integer or half-integer multiples of h)
// is chosen to stay at least h/4 away from Re z.
template <class T>
T w_trapezoid(const T& z) {
    const cplx z0 = value_of(z);
    double frac = std::fmod(z0.real() / kStep, 1.0);
    if (frac < 0.0) frac += 1.0;
    const int g = (frac < 0.25 || frac > 0.75) ? 1 : 0;
    const auto& tab = nodes();
    T sum(0.0);
    for (std::size_t n = 0; n < tab.t[g].size(); ++n) sum = sum + T(tab.weight[g][n]) / (z - T(tab.t[g][n]));
    sum = T(cplx(0.0, kStep / kPi)) * sum;
    const T e = exp(T(cplx(0.0, -2.0 * kPi / kStep)) * z);
    const T denom = g == 0 ? T(1.0) - e : T(1.0) + e;
    return sum + T(2.0) * exp(-(z * z)) / denom;
}

// Laplace continued fraction; returns the tail K with w = (i/sqrt(pi)) / (z - K).
template <class T>
T cf_tail(const T& z) {
    T r(0.0);
    for (int k = 60; k >= 1; --k) r = T(0.5 * k) / (z - r);
    return r;
}

constexpr double kCfRadius = 8.0;

template <class T>
T w_upper(const T& z) {
    if (std::abs(value_of(z)) > kCfRadius) return T(cplx(0.0, kInvSqrtPi)) / (z - cf_tail(z));
    return w_trapezoid(z);
}

template <class T>
T w_any(const T& z) {
    if (value_of(z).imag() >= 0.0) return w_upper(z);
    return T(2.0) * exp(-(z * z)) - w_upper(-z);
}

}  // namespace

cplx faddeeva(cplx z) {
    const cplx w = w_any(z);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw DomainError("faddeeva: value overflows at this argument");
    return w;
}

template <int K>
std::array<cplx, K + 1> faddeeva_derivatives(cplx z) {
    Jet<K> x(z);
    x.c[1] = 1.0;
    const Jet<K> w = w_any(x);
    std::array<cplx, K + 1> out{};
    double fact = 1.0;
    for (int n = 0; n <= K; ++n) {
        if (n > 0) fact *= n;
        out[n] = fact * w.c[n];
        if (!std::isfinite(out[n].real()) || !std::isfinite(out[n].imag()))
            throw DomainError("faddeeva_derivatives: value overflows at this argument");
    }
    return out;
}

template std::array<cplx, 2> faddeeva_derivatives<1>(cplx);
template std::array<cplx, 5> faddeeva_derivatives<4>(cplx);

cplx faddeeva_remainder(cplx z) {
    if (z.imag() < 0.0) throw DomainError("faddeeva_remainder: requires Im z >= 0");
    if (std::abs(z) > kCfRadius) {
        const cplx k = cf_tail(z);
        return k / (z - k);
    }
    return z * faddeeva(z) / cplx(0.0, kInvSqrtPi) - 1.0;
}

cplx expm1(cplx z) {
    const double x = z.real();
    const double y = z.imag();
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

double bessel_k0(double s) {
    if (!(s > 0.0)) throw DomainError("bessel_k0: argument must be positive");
    return boost::math::cyl_bessel_k(0, s);
}

}  // namespace deltasolve
