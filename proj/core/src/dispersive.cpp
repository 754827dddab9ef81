#include "deltasolve/dispersive.hpp"

#include <algorithm>
#include <cmath>

#include "deltasolve/errors.hpp"

namespace deltasolve {

double weight(const InteractionConfig& config, const Vec3& x) {
    double w = 0.0;
    for (std::size_t j = 0; j < config.size(); ++j) {
        const double r = distance(x, config.center(j));
        if (r < kCoincidenceRadius) throw CenterCoincidence("weight: point sits on a center", static_cast<int>(j));
        w += 1.0 + 1.0 / r;
    }
    return w;
}

namespace {

Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
    // Rodrigues' formula, axis of unit length.
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const Vec3 cross{axis[1] * v[2] - axis[2] * v[1], axis[2] * v[0] - axis[0] * v[2], axis[0] * v[1] - axis[1] * v[0]};
    const double d = dot(axis, v);
    return c * v + s * cross + ((1.0 - c) * d) * axis;
}

}  // namespace

std::vector<Vec3> sample_directions(int refinement) {
    std::vector<Vec3> base;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            for (int k = -1; k <= 1; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                const Vec3 v{double(i), double(j), double(k)};
                base.push_back((1.0 / norm(v)) * v);
            }
    std::vector<Vec3> out = base;
    const double a = 1.0 / std::sqrt(14.0);
    const Vec3 axis{a, 2.0 * a, 3.0 * a};
    const int copies = (1 << std::max(0, refinement)) - 1;
    for (int c = 1; c <= copies; ++c) {
        const double angle = 0.5 * static_cast<double>(c) / static_cast<double>(copies + 1);
        for (const auto& v : base) out.push_back(rotate(v, axis, angle));
    }
    return out;
}

std::vector<Vec3> SampleGrid::points(const InteractionConfig& config) const {
    if (!(r_min > 0.0) || !(r_max > r_min) || radii < 2 || box < 1 || refinement < 0)
        throw DomainError("SampleGrid: invalid parameters");
    const int scale = 1 << refinement;
    const int nr = (radii - 1) * scale + 1;
    const auto dirs = sample_directions(refinement);
    std::vector<Vec3> pts;
    for (const auto& c : config.centers()) {
        for (int i = 0; i < nr; ++i) {
            const double r = r_min * std::pow(r_max / r_min, static_cast<double>(i) / (nr - 1));
            for (const auto& d : dirs) pts.push_back(c + r * d);
        }
    }
    Vec3 mid{0.0, 0.0, 0.0};
    for (const auto& c : config.centers()) mid = mid + (1.0 / static_cast<double>(config.size())) * c;
    const int nb = (box - 1) * scale + 1;
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < nb; ++k) {
                auto coord = [&](int n) { return nb == 1 ? 0.0 : box_half_width * (2.0 * n / (nb - 1) - 1.0); };
                const Vec3 x = mid + Vec3{coord(i), coord(j), coord(k)};
                bool near = false;
                for (const auto& c : config.centers()) near = near || distance(x, c) < r_min;
                if (!near) pts.push_back(x);
            }
    return pts;
}

SampleGrid SampleGrid::refined() const {
    SampleGrid g = *this;
    ++g.refinement;
    return g;
}

WeightedSup weighted_sup(const InteractionConfig& config, const std::vector<Vec3>& points,
                         const std::vector<cplx>& values) {
    if (points.size() != values.size()) throw DomainError("weighted_sup: points and values differ in length");
    WeightedSup best;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double v = std::abs(values[i]) / weight(config, points[i]);
        if (v > best.value || i == 0) best = {v, points[i]};
    }
    return best;
}

WeightedSup weighted_sup(const InteractionConfig& config, const std::function<cplx(const Vec3&)>& field,
                         const SampleGrid& grid) {
    const auto pts = grid.points(config);
    std::vector<cplx> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = field(pts[i]);
    return weighted_sup(config, pts, vals);
}

DecayRecord decay_fit(const std::vector<double>& times, const std::vector<double>& norms) {
    if (times.size() != norms.size()) throw DomainError("decay_fit: times and norms differ in length");
    if (times.size() < 8) throw DomainError("decay_fit: needs at least 8 samples");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw DomainError("decay_fit: times must be positive");
        if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("decay_fit: times must increase strictly");
    }
    if (std::log10(times.back() / times.front()) < 1.5) throw DomainError("decay_fit: times span less than 1.5 decades");
    for (double n : norms)
        if (!(n > 0.0) || !std::isfinite(n)) throw DegenerateFit("decay_fit: norms must be positive and finite");

    const auto n = static_cast<double>(times.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        mx += std::log(times[i]);
        my += std::log(norms[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double dx = std::log(times[i]) - mx;
        const double dy = std::log(norms[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    DecayRecord rec;
    rec.times = times;
    rec.norms = norms;
    rec.slope = sxy / sxx;
    rec.constant = std::exp(my - rec.slope * mx);
    double ssr = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double e = std::log(norms[i]) - my - rec.slope * (std::log(times[i]) - mx);
        ssr += e * e;
    }
    rec.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return rec;
}

std::vector<double> log_times(double t0, double t1, int count) {
    if (!(t0 > 0.0) || !(t1 > t0) || count < 2) throw DomainError("log_times: needs 0 < t0 < t1 and count >= 2");
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) t[static_cast<std::size_t>(i)] = t0 * std::pow(t1 / t0, double(i) / (count - 1));
    t.back() = t1;
    return t;
}

DecayRecord decay_scan(const Propagator& prop, const std::vector<double>& times, const SampleGrid& grid) {
    const auto pts = grid.points(prop.config());
    std::vector<double> norms;
    std::vector<double> cutoffs;
    std::vector<double> errors;
    for (double t : times) {
        const EvolveResult res = prop.evaluate(pts, t);
        norms.push_back(weighted_sup(prop.config(), pts, res.values).value);
        cutoffs.push_back(res.M);
        errors.push_back(res.error);
    }
    DecayRecord rec = decay_fit(times, norms);
    rec.cutoffs = std::move(cutoffs);
    rec.errors = std::move(errors);
    rec.data_norm = prop.data().weighted_l1_norm(prop.config());
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) worst = std::max(worst, norms[i] * std::pow(times[i], 1.5));
    rec.dispersive_constant = worst / rec.data_norm.value;
    return rec;
}

DecayRecord decay_scan(const InteractionConfig& config, const InitialData& f, const std::vector<double>& times,
                       const SampleGrid& grid, const EvolveOptions& opts) {
    return decay_scan(Propagator(config, f, opts), times, grid);
}

}  // namespace deltasolve
