#pragma once

#include <vector>

#include "deltasolve/types.hpp"

namespace deltasolve {

// a * exp(-|y - c|^2 / sigma^2)
struct GaussianTerm {
    cplx amplitude;
    Vec3 center;
    double sigma;
};

// a * exp(-kappa |y - c|) / (4 pi |y - c|); the shape of a bound state, so
// eigenfunctions can be fed back in as initial data.
struct YukawaTerm {
    cplx amplitude;
    Vec3 center;
    double kappa;
};

struct NormValue {
    double value;
    bool exact;  // false: triangle-inequality upper bound over the terms
};

// Initial datum f as a finite sum of isotropic Gaussians and Yukawa terms.
class InitialData {
public:
    InitialData() = default;
    explicit InitialData(std::vector<GaussianTerm> gaussians, std::vector<YukawaTerm> yukawas = {});

    const std::vector<GaussianTerm>& gaussians() const { return gaussians_; }
    const std::vector<YukawaTerm>& yukawas() const { return yukawas_; }
    bool empty() const { return gaussians_.empty() && yukawas_.empty(); }

    InitialData& add(const GaussianTerm& g);
    InitialData& add(const YukawaTerm& y);
    InitialData scaled(cplx s) const;
    InitialData operator+(const InitialData& other) const;

    // Pointwise value; Yukawa terms are singular at their centers.
    cplx value(const Vec3& x) const;

    NormValue l1_norm() const;
    double l2_norm() const;
    // ||w f||_1 with w(y) = sum_j (1 + 1/|y - y_j|).
    NormValue weighted_l1_norm(const InteractionConfig& config) const;

    // True when every amplitude is real, so that conj(f) = f.
    bool is_real() const;

    // (R_0(k^2) f)(q) = int e^{ik|y-q|}/(4 pi |y-q|) f(y) dy for Im k >= 0, and its k-derivative.
    cplx free_resolvent(const Vec3& q, cplx k) const;
    cplx free_resolvent_dk(const Vec3& q, cplx k) const;

    // (e^{-it Delta} f)(x) = int S(x - y; t) f(y) dy.
    cplx free_evolve(const Vec3& x, double t) const;

    // Quadrature in s = |y - q|: int f(y) h(|y - q|) dy ~ sum_i w_i h(s_i) for
    // smooth h. Panels never exceed max_width.
    void radial_rule(const Vec3& q, double max_width, std::vector<double>& s, std::vector<cplx>& w) const;
    // Largest s = |y - q| reached by radial_rule.
    double radial_extent(const Vec3& q) const;

private:
    std::vector<GaussianTerm> gaussians_;
    std::vector<YukawaTerm> yukawas_;
};

using GaussianSum = InitialData;

}  // namespace deltasolve
