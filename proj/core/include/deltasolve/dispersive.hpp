#pragma once

#include <functional>
#include <vector>

#include "deltasolve/data.hpp"
#include "deltasolve/propagator.hpp"
#include "deltasolve/types.hpp"

namespace deltasolve {

// w(x) = sum_j (1 + 1/|x - y_j|).
double weight(const InteractionConfig& config, const Vec3& x);

// Deterministic sample set for the weighted sup-norm: shells around every
// center (log-spaced radii times a fixed set of directions) plus a cubic box.
// Each refinement level doubles the radii and directions count and adds
// (box - 1) points per box edge.
struct SampleGrid {
    double r_min = 1e-3;
    double r_max = 50.0;
    int radii = 24;
    int refinement = 0;
    int box = 7;
    double box_half_width = 50.0;

    std::vector<Vec3> points(const InteractionConfig& config) const;
    SampleGrid refined() const;
};

// 26 unit directions: faces, edges and corners of the cube. Refinement adds
// rotated copies.
std::vector<Vec3> sample_directions(int refinement);

struct WeightedSup {
    double value = 0.0;
    Vec3 argmax{};
};

WeightedSup weighted_sup(const InteractionConfig& config, const std::vector<Vec3>& points,
                         const std::vector<cplx>& values);
WeightedSup weighted_sup(const InteractionConfig& config, const std::function<cplx(const Vec3&)>& field,
                         const SampleGrid& grid);

struct DecayRecord {
    std::vector<double> times;
    std::vector<double> norms;
    double slope = 0.0;
    double constant = 0.0;  // e^{intercept}: norms ~ constant * t^slope
    double r2 = 0.0;
    // max_t norm(t) t^{3/2} / ||w f||_1 (filled by decay_scan)
    double dispersive_constant = 0.0;
    NormValue data_norm{};
    std::vector<double> cutoffs;  // accepted M per time (0 for closed form)
    std::vector<double> errors;   // ladder discrepancy per time
};

// Least squares of log norm against log t. Needs >= 8 samples spanning at
// least 1.5 decades; throws DegenerateFit on vanishing norms.
DecayRecord decay_fit(const std::vector<double>& times, const std::vector<double>& norms);

// t_k log-spaced on [t0, t1], inclusive.
std::vector<double> log_times(double t0, double t1, int count);

// Evolves f with `prop`, records the weighted sup on `grid` at each time and fits.
DecayRecord decay_scan(const Propagator& prop, const std::vector<double>& times, const SampleGrid& grid);
DecayRecord decay_scan(const InteractionConfig& config, const InitialData& f, const std::vector<double>& times,
                       const SampleGrid& grid, const EvolveOptions& opts);

}  // namespace deltasolve
