#include <gtest/gtest.h>

#include <cmath>

#include "deltasolve/errors.hpp"
#include "deltasolve/specialfn.hpp"
#include "support.hpp"

using namespace deltasolve;
using testsupport::as_cplx;

TEST(Faddeeva, MatchesReferenceTable) {
    const auto table = testsupport::load_table("faddeeva.json");
    ASSERT_EQ(table.size(), 200u);
    for (const auto& row : table) {
        const cplx z = as_cplx(row["z"]);
        const cplx ref = as_cplx(row["w"]);
        EXPECT_LE(std::abs(faddeeva(z) - ref), 1e-12 * std::abs(ref)) << "z = " << z;
    }
}

TEST(Faddeeva, SpecialValues) {
    EXPECT_NEAR(std::abs(faddeeva(0.0) - 1.0), 0.0, 1e-15);
    // e erfc(1)
    EXPECT_NEAR(faddeeva(kI).real(), 0.42758357615580700442, 1e-15);
    EXPECT_NEAR(faddeeva(kI).imag(), 0.0, 1e-15);
}

TEST(Faddeeva, RealPositiveDecreasingOnImaginaryAxis) {
    double prev = 2.0;
    for (int k = 0; k <= 200; ++k) {
        const cplx w = faddeeva(cplx(0.0, 0.05 * k));
        EXPECT_LE(std::abs(w.imag()), 1e-14 * w.real());
        EXPECT_GT(w.real(), 0.0);
        EXPECT_LT(w.real(), prev);
        prev = w.real();
    }
}

TEST(Faddeeva, ReflectionSymmetry) {
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const cplx z(-9.0 + 2.0 * i, 0.1 + 1.0 * j);
            const cplx a = faddeeva(-std::conj(z));
            const cplx b = std::conj(faddeeva(z));
            EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(b));
        }
}

TEST(Faddeeva, DerivativesMatchRecurrence) {
    // w' = -2 z w + 2i/sqrt(pi), w'' = -2 w - 2 z w'
    for (cplx z : {cplx(0.3, 0.2), cplx(-2.0, 1.0), cplx(5.0, 0.5), cplx(1.0, -0.7)}) {
        const auto d = faddeeva_derivatives<4>(z);
        const cplx w1 = -2.0 * z * d[0] + 2.0 * kI / std::sqrt(kPi);
        const cplx w2 = -2.0 * d[0] - 2.0 * z * d[1];
        EXPECT_LE(std::abs(d[1] - w1), 1e-12 * std::abs(w1));
        EXPECT_LE(std::abs(d[2] - w2), 1e-11 * std::abs(w2));
    }
}

TEST(Faddeeva, RemainderAvoidsCancellation) {
    for (double r : {10.0, 100.0, 1e4}) {
        const cplx z(r, 0.5 * r);
        EXPECT_LE(std::abs(faddeeva_remainder(z) * 2.0 * z * z - 1.0), 3.0 / (std::norm(z)));
    }
    EXPECT_THROW(faddeeva_remainder(cplx(1.0, -1.0)), DomainError);
}

TEST(ComplexExpm1, SmallArgument) {
    const cplx z(1e-10, -2e-10);
    const cplx e = deltasolve::expm1(z);
    EXPECT_LE(std::abs(e - (z + 0.5 * z * z)), 1e-25);
}

TEST(BesselK0, MatchesReferenceTable) {
    for (const auto& row : testsupport::load_table("bessel_k0.json")) {
        const double s = row["s"].get<double>();
        EXPECT_LE(std::abs(bessel_k0(s) - row["k0"].get<double>()), 1e-10 * row["k0"].get<double>()) << s;
    }
}

TEST(BesselK0, EndpointBounds) {
    EXPECT_NEAR(bessel_k0(1.0), 0.42102443824070833, 1e-12);
    const double ratio = bessel_k0(0.01) / std::abs(std::log(0.01));
    EXPECT_GT(ratio, 0.9);
    EXPECT_LT(ratio, 1.1);
    EXPECT_LE(bessel_k0(20.0), 2.0 * std::exp(-20.0) / std::sqrt(20.0));
}

TEST(BesselK0, PositiveDecreasing) {
    double prev = INFINITY;
    for (int k = 1; k <= 500; ++k) {
        const double v = bessel_k0(0.1 * k);
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(BesselK0, DomainError) {
    EXPECT_THROW(bessel_k0(0.0), DomainError);
    EXPECT_THROW(bessel_k0(-1.0), DomainError);
}
