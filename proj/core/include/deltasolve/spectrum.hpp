#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "deltasolve/data.hpp"
#include "deltasolve/types.hpp"

namespace deltasolve {

// Negative eigenvalue E = -kappa^2 with the null space of Gamma(i kappa).
struct Eigenpair {
    double kappa = 0.0;
    double energy = 0.0;
    int multiplicity = 0;
    std::vector<Eigen::VectorXd> nullvecs;  // orthonormal in the Yukawa Gram metric
    Eigen::MatrixXd norm_matrix;            // Gram matrix of e^{-kappa|x-y_j|}/(4 pi |x-y_j|)
};

// Normalized eigenfunction phi(x) = sum_j a_j e^{-kappa|x-y_j|}/(4 pi |x-y_j|).
class BoundState {
public:
    BoundState(const InteractionConfig& config, double kappa, Eigen::VectorXd coeffs);

    double kappa() const { return kappa_; }
    double energy() const { return -kappa_ * kappa_; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    cplx operator()(const Vec3& x) const;
    // The same function as initial data (one Yukawa term per center).
    InitialData as_initial_data() const;

private:
    std::vector<Vec3> centers_;
    double kappa_;
    Eigen::VectorXd coeffs_;
};

// Real symmetric Gamma(i kappa).
Eigen::MatrixXd gamma_imaginary_axis(const InteractionConfig& config, double kappa);

// Upper bound on the binding wavenumber from Gershgorin discs, plus a margin.
double default_kappa_max(const InteractionConfig& config);

// All kappa in (0, kappa_max] with det Gamma(i kappa) = 0.
std::vector<Eigenpair> find_eigenvalues(const InteractionConfig& config, std::optional<double> kappa_max = std::nullopt);

BoundState eigenfunction(const InteractionConfig& config, const Eigenpair& pair, std::size_t which);

// int Y(x - a) Y(x - b) dx for Y(r) = e^{-kappa r}/(4 pi r), d = |a - b|.
double yukawa_overlap(double kappa, double d);

struct SpectralProjection {
    Eigenpair pair;
    std::size_t which;
    BoundState state;
    cplx coefficient;  // <phi, f>
};

std::vector<SpectralProjection> project_point_spectrum(const InteractionConfig& config, const InitialData& f,
                                                       std::optional<double> kappa_max = std::nullopt);

}  // namespace deltasolve
