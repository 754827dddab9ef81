#pragma once

#include <Eigen/Dense>

#include "deltasolve/types.hpp"

namespace deltasolve {

struct GammaOptions {
    // Gamma is declared singular when its 1-norm condition number exceeds this.
    double condition_cap = 1e12;
};

// Gamma_{alpha,Y}(z): alpha_j - iz/(4 pi) on the diagonal,
// -e^{iz|y_j - y_l|}/(4 pi |y_j - y_l|) off it.
struct GammaMatrix {
    cplx z;
    Eigen::MatrixXcd entries;
};

// c(mu) = (4 pi)^{-2} Gamma(mu)^{-1} and the two remainders of its
// large-mu expansion,
//   d     = c - (4 pi)^{-2} 4 pi i delta <mu>^{-1}
//   d_odd = c - (4 pi)^{-2} 4 pi i delta mu <mu>^{-2}.
// coeff_derivative fills the same fields with the mu-derivatives.
struct CoeffMatrix {
    double mu = 0.0;
    Eigen::MatrixXcd c;
    Eigen::MatrixXcd d;
    Eigen::MatrixXcd d_odd;
};

GammaMatrix build_gamma(const InteractionConfig& config, cplx z);
cplx det_gamma(const InteractionConfig& config, cplx z);

// Raw inverse Gamma(z)^{-1}; throws SingularGamma above the condition cap.
Eigen::MatrixXcd gamma_inverse(const InteractionConfig& config, cplx z, const GammaOptions& opts = {});

// 1-norm condition number of Gamma(z) (infinity when exactly singular).
double gamma_condition(const InteractionConfig& config, cplx z);

CoeffMatrix inv_coeffs(const InteractionConfig& config, double mu, const GammaOptions& opts = {});
CoeffMatrix coeff_derivative(const InteractionConfig& config, double mu, const GammaOptions& opts = {});

// c(mu) and c'(mu) from a single factorization; c' = 4 pi i c E c with
// E_{jl} = e^{i mu |y_j - y_l|}.
void coeffs_with_derivative(const InteractionConfig& config, double mu, Eigen::MatrixXcd& c, Eigen::MatrixXcd& dc,
                            const GammaOptions& opts = {});

}  // namespace deltasolve
