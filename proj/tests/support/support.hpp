#pragma once

#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "deltasolve/resolvent.hpp"
#include "deltasolve/types.hpp"

namespace testsupport {

using deltasolve::cplx;
using deltasolve::Vec3;

inline nlohmann::json load_table(const std::string& name) {
    const std::string path = std::string(DELTASOLVE_TEST_DATA) + "/" + name;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing reference table " + path);
    return nlohmann::json::parse(in);
}

inline cplx as_cplx(const nlohmann::json& v) { return {v.at(0).get<double>(), v.at(1).get<double>()}; }
inline Vec3 as_vec(const nlohmann::json& v) { return {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()}; }

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

inline Vec3 random_point(std::mt19937_64& rng, double half_width) {
    std::uniform_real_distribution<double> u(-half_width, half_width);
    return {u(rng), u(rng), u(rng)};
}

// Centers at least `min_gap` apart inside a cube, strengths in [lo, hi].
inline deltasolve::InteractionConfig random_config(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                                                   double hi = 1.0, double min_gap = 0.5) {
    std::uniform_real_distribution<double> a(lo, hi);
    std::vector<Vec3> centers;
    while (centers.size() < n) {
        const Vec3 c = random_point(rng, 1.5);
        bool ok = true;
        for (const auto& o : centers) ok = ok && deltasolve::distance(c, o) >= min_gap;
        if (ok) centers.push_back(c);
    }
    std::vector<double> alphas(n);
    for (auto& v : alphas) v = a(rng);
    return {centers, alphas};
}

// (R(z1^2) R(z2^2) f)(x) by applying the Krein resolvent twice. The inner
// result is the Gaussian part R_0(z2^2) f plus point charges q_l G_{z2}(. - y_l);
// the free resolvent acts on both pieces through R_0(a) R_0(b) = (R_0(a) - R_0(b))/(a - b).
inline cplx nested_resolvent(const deltasolve::InteractionConfig& config, const deltasolve::InitialData& f,
                             const Vec3& x, cplx z1, cplx z2) {
    using namespace deltasolve;
    const cplx dz2 = z1 * z1 - z2 * z2;
    const ResolventField inner(config, f, z2);
    const auto& q = inner.charges();
    const std::size_t n = config.size();
    auto green_diff = [&](double r) {
        if (r < kCoincidenceRadius) return kI * (z1 - z2) / kFourPi;
        return (std::exp(kI * z1 * r) - std::exp(kI * z2 * r)) / (kFourPi * r);
    };
    // (R_0(z1^2) g)(p) for the inner result g
    auto free_on_inner = [&](const Vec3& p) {
        cplx v = free_resolvent_at(f, p, z1) - free_resolvent_at(f, p, z2);
        for (std::size_t l = 0; l < n; ++l) v += q(static_cast<Eigen::Index>(l)) * green_diff(distance(p, config.center(l)));
        return v / dz2;
    };
    Eigen::VectorXcd F(static_cast<Eigen::Index>(n));
    for (std::size_t l = 0; l < n; ++l) F(static_cast<Eigen::Index>(l)) = free_on_inner(config.center(l));
    const Eigen::VectorXcd charges = gamma_inverse(config, z1) * F;
    cplx v = free_on_inner(x);
    for (std::size_t j = 0; j < n; ++j) {
        const double r = distance(x, config.center(j));
        v += charges(static_cast<Eigen::Index>(j)) * std::exp(kI * z1 * r) / (kFourPi * r);
    }
    return v;
}

}  // namespace testsupport
