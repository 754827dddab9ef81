#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace deltasolve {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kFourPi = 4.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

// Points closer than this to a center are treated as sitting on it.
inline constexpr double kCoincidenceRadius = 1e-12;

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Japanese bracket <mu> = (1 + mu^2)^{1/2}.
inline double japanese(double mu) { return std::hypot(1.0, mu); }

// Centers y_j and strengths alpha_j of H_{alpha,Y}.
class InteractionConfig {
public:
    InteractionConfig(std::vector<Vec3> centers, std::vector<double> alphas);

    std::size_t size() const { return centers_.size(); }
    const std::vector<Vec3>& centers() const { return centers_; }
    const std::vector<double>& alphas() const { return alphas_; }
    const Vec3& center(std::size_t j) const { return centers_[j]; }
    double alpha(std::size_t j) const { return alphas_[j]; }

    double distance(std::size_t j, std::size_t l) const { return dist_[j * size() + l]; }
    double min_distance() const { return min_dist_; }
    double max_distance() const { return max_dist_; }

    // Index of the center within kCoincidenceRadius of x, or -1.
    int coincident_center(const Vec3& x) const;

private:
    std::vector<Vec3> centers_;
    std::vector<double> alphas_;
    std::vector<double> dist_;
    double min_dist_ = 0.0;
    double max_dist_ = 0.0;
};

}  // namespace deltasolve
