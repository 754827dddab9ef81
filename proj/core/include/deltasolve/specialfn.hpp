#pragma once

#include <array>

#include "deltasolve/types.hpp"

namespace deltasolve {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), entire.
// Relative accuracy about 1e-15 on |z| <= 10; throws DomainError if the
// value overflows (deep in the lower half plane).
cplx faddeeva(cplx z);

// w and its first K derivatives at z, each to nearly full relative accuracy.
// Derivatives are propagated as truncated Taylor series through the same
// algorithm, which avoids the cancellation in w' = -2zw + 2i/sqrt(pi) at large |z|.
template <int K>
std::array<cplx, K + 1> faddeeva_derivatives(cplx z);

extern template std::array<cplx, 2> faddeeva_derivatives<1>(cplx);
extern template std::array<cplx, 5> faddeeva_derivatives<4>(cplx);

// R(z) = sqrt(pi) z w(z) / i - 1 for Im z >= 0. Tends to 1/(2z^2) at infinity;
// computed without the cancellation of the defining formula when |z| is large.
cplx faddeeva_remainder(cplx z);

// exp(z) - 1 without cancellation near z = 0.
cplx expm1(cplx z);

// Modified Bessel function K_0(s), s > 0.
double bessel_k0(double s);

}  // namespace deltasolve
