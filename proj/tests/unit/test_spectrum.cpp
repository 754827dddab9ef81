#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "deltasolve/propagator.hpp"
#include "deltasolve/quadrature.hpp"
#include "deltasolve/resolvent.hpp"
#include "deltasolve/spectrum.hpp"
#include "support.hpp"

using namespace deltasolve;

TEST(FindEigenvalues, SingleCenter) {
    const auto pairs = find_eigenvalues(InteractionConfig({{0, 0, 0}}, {-1.0}));
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_NEAR(pairs[0].kappa, kFourPi, 1e-12 * kFourPi);
    EXPECT_NEAR(pairs[0].energy, -kFourPi * kFourPi, 1e-10 * kFourPi * kFourPi);
    EXPECT_EQ(pairs[0].multiplicity, 1);
    EXPECT_TRUE(find_eigenvalues(InteractionConfig({{0, 0, 0}}, {1.0})).empty());
    EXPECT_TRUE(find_eigenvalues(InteractionConfig({{0, 0, 0}}, {0.0})).empty());
}

TEST(FindEigenvalues, SymmetricPairMatchesScalarRoots) {
    for (const auto& row : testsupport::load_table("n2_pair.json")) {
        const double alpha = row["alpha"].get<double>();
        const double d = row["d"].get<double>();
        auto ref = row["kappas"].get<std::vector<double>>();
        const auto pairs = find_eigenvalues(InteractionConfig({{0, 0, 0}, {d, 0, 0}}, {alpha, alpha}));
        std::vector<double> kappas;
        for (const auto& p : pairs)
            for (int m = 0; m < p.multiplicity; ++m) kappas.push_back(p.kappa);
        std::sort(kappas.begin(), kappas.end());
        std::sort(ref.begin(), ref.end());
        ASSERT_EQ(kappas.size(), ref.size()) << "alpha " << alpha << " d " << d;
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(kappas[i], ref[i], 1e-10 * ref[i]);
    }
}

TEST(FindEigenvalues, RootCertificationAndMultiplicityBound) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const auto cfg = testsupport::random_config(rng, n, -2.0, 0.5, 0.3);
        const auto pairs = find_eigenvalues(cfg);
        int total = 0;
        for (const auto& p : pairs) {
            total += p.multiplicity;
            const Eigen::MatrixXd g = gamma_imaginary_axis(cfg, p.kappa);
            // Gamma itself vanishes at a root when N = 1, so measure against its entry scale
            double scale = p.kappa / kFourPi;
            for (double a : cfg.alphas()) scale = std::max(scale, p.kappa / kFourPi + std::abs(a));
            for (const auto& v : p.nullvecs) EXPECT_LE((g * v).norm(), 1e-10 * scale * v.norm());
        }
        EXPECT_LE(total, static_cast<int>(n));
    }
}

TEST(FindEigenvalues, DegenerateTriangleMultiplicity) {
    // Equilateral triangle with equal strengths: the two non-symmetric modes are
    // degenerate, and bound once alpha < -1/(4 pi).
    const double h = std::sqrt(3.0) / 2.0;
    const InteractionConfig cfg({{0, 0, 0}, {1, 0, 0}, {0.5, h, 0}}, {-0.3, -0.3, -0.3});
    const auto pairs = find_eigenvalues(cfg);
    int total = 0;
    bool found_double = false;
    for (const auto& p : pairs) {
        total += p.multiplicity;
        found_double = found_double || p.multiplicity == 2;
        EXPECT_EQ(p.nullvecs.size(), static_cast<std::size_t>(p.multiplicity));
    }
    EXPECT_EQ(total, 3);
    EXPECT_TRUE(found_double);
}

TEST(Eigenfunction, SingleCenterStandingWave) {
    const double alpha = -1.0;
    const InteractionConfig cfg({{0, 0, 0}}, {alpha});
    const BoundState phi = eigenfunction(cfg, find_eigenvalues(cfg)[0], 0);
    for (const Vec3& x : {Vec3{0.01, 0, 0}, Vec3{0, 0.2, 0.1}, Vec3{0.5, 0.5, 0.5}}) {
        const double ref = n1_standing_wave(alpha, x);
        EXPECT_NEAR(std::abs(phi(x)), ref, 1e-10 * ref);
    }
}

TEST(Eigenfunction, NormalizedByQuadrature) {
    const InteractionConfig cfg({{0, 0, 0}, {0.6, 0, 0}}, {-0.4, -0.6});
    const auto pairs = find_eigenvalues(cfg);
    ASSERT_FALSE(pairs.empty());
    const BoundState phi = eigenfunction(cfg, pairs[0], 0);
    const double kappa = phi.kappa();
    const double a = 0.3;  // half the center distance
    // |phi|^2 = sum_jl a_j a_l Y_j Y_l. Diagonal terms in spherical coordinates
    // about their center, the cross term in prolate spheroidal coordinates
    // where the volume element a r_1 r_2 dxi deta dphi absorbs 1/(r_1 r_2).
    auto yuk = [&](double r) { return std::exp(-kappa * r) / (kFourPi * r); };
    std::vector<double> r;
    std::vector<double> w;
    append_gauss_legendre(0.0, 40.0 / kappa, 40, r, w);
    double diag = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) diag += w[i] * kFourPi * r[i] * r[i] * yuk(r[i]) * yuk(r[i]);
    std::vector<double> xi;
    std::vector<double> wx;
    append_gauss_legendre(1.0, 1.0 + 40.0 / (2.0 * a * kappa), 40, xi, wx);
    std::vector<double> eta;
    std::vector<double> we;
    append_gauss_legendre(-1.0, 1.0, 2, eta, we);
    double cross = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i)
        for (std::size_t k = 0; k < eta.size(); ++k) {
            const double r1 = a * (xi[i] + eta[k]);
            const double r2 = a * (xi[i] - eta[k]);
            cross += wx[i] * we[k] * 2.0 * kPi * a * a * a * (xi[i] * xi[i] - eta[k] * eta[k]) * yuk(r1) * yuk(r2);
        }
    const auto& c = phi.coeffs();
    const double total = (c(0) * c(0) + c(1) * c(1)) * diag + 2.0 * c(0) * c(1) * cross;
    EXPECT_NEAR(total, 1.0, 1e-6);
    // and the evaluator agrees with the coefficients it reports
    const Vec3 x{0.2, 0.3, -0.1};
    EXPECT_NEAR(phi(x).real(), c(0) * yuk(norm(x)) + c(1) * yuk(distance(x, {0.6, 0, 0})), 1e-12 * std::abs(phi(x)));
}

TEST(YukawaOverlap, MatchesReferenceQuadrature) {
    for (const auto& row : testsupport::load_table("yukawa_overlap.json")) {
        const double ref = row["value"].get<double>();
        EXPECT_NEAR(yukawa_overlap(row["kappa"].get<double>(), row["d"].get<double>()), ref, 1e-10 * ref);
    }
    EXPECT_NEAR(yukawa_overlap(1.0, 1.0), std::exp(-1.0) / (8.0 * kPi), 1e-17);
    EXPECT_NEAR(yukawa_overlap(2.0, 0.0), 1.0 / (16.0 * kPi), 1e-16);
    double prev = INFINITY;
    for (int k = 0; k < 50; ++k) {
        const double v = yukawa_overlap(1.3, 0.1 * k);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(ProjectPointSpectrum, EmptyForRepulsive) {
    InitialData f;
    f.add(GaussianTerm{1.0, {0, 0, 0}, 0.3});
    EXPECT_TRUE(project_point_spectrum(InteractionConfig({{0, 0, 0}}, {0.5}), f).empty());
}

TEST(ProjectPointSpectrum, Linearity) {
    const InteractionConfig cfg({{0, 0, 0}, {1, 0, 0}}, {-0.5, -0.3});
    InitialData f1;
    f1.add(GaussianTerm{1.0, {0.2, 0, 0}, 0.2});
    InitialData f2;
    f2.add(GaussianTerm{cplx(0, 1), {0.7, 0.1, 0}, 0.4});
    const cplx a(0.3, -1.2);
    const cplx b(2.0, 0.5);
    const auto p1 = project_point_spectrum(cfg, f1);
    const auto p2 = project_point_spectrum(cfg, f2);
    const auto p = project_point_spectrum(cfg, f1.scaled(a) + f2.scaled(b));
    ASSERT_EQ(p.size(), p1.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        const cplx expect = a * p1[k].coefficient + b * p2[k].coefficient;
        EXPECT_LE(std::abs(p[k].coefficient - expect), 1e-12 * std::abs(expect));
    }
}

TEST(ProjectPointSpectrum, SingleCenterOverlapByQuadrature) {
    const double alpha = -1.0;
    const InteractionConfig cfg({{0, 0, 0}}, {alpha});
    InitialData f;
    f.add(GaussianTerm{1.0, {0, 0, 0}, 0.05});
    const auto p = project_point_spectrum(cfg, f);
    ASSERT_EQ(p.size(), 1u);
    // radial quadrature of Psi f
    std::vector<double> r;
    std::vector<double> w;
    append_gauss_legendre(0.0, 0.5, 40, r, w);
    double ref = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        ref += w[i] * kFourPi * r[i] * r[i] * n1_standing_wave(alpha, {r[i], 0, 0}) * std::exp(-r[i] * r[i] / 0.0025);
    EXPECT_NEAR(std::abs(p[0].coefficient), ref, 1e-6 * ref);
}
