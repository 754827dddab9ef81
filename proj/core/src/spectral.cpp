#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "deltasolve/dispersive.hpp"
#include "deltasolve/errors.hpp"
#include "deltasolve/propagator.hpp"

namespace deltasolve {
namespace {

constexpr std::size_t kMaxTransformSize = std::size_t{1} << 24;
constexpr int kChirpReset = 64;

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

std::size_t next_pow2(double n) {
    std::size_t p = 4;
    while (static_cast<double>(p) < n) {
        p <<= 1;
        if (p > kMaxTransformSize) throw DomainError("spectral transform: dual grid too fine (t too small or r too large)");
    }
    return p;
}

double dual_resolution(double M, double t, double r) { return kPi / (2.0 * M + r / (2.0 * t)); }

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
        if (data == nullptr) throw std::bad_alloc();
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~FftwBuffer() {
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fftw_destroy_plan(plan);
        }
        fftw_free(data);
    }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* data;
    fftw_plan plan;
};

}  // namespace

SpectralTransform::SpectralTransform(const InteractionConfig& config, const InitialData& f, const CutoffSpec& cutoff,
                                     double t_min, double r_max, const SpectralOptions& opts)
    : config_(config), f_(f), cutoff_(cutoff), opts_(opts), t_min_(t_min), r_max_(r_max) {
    if (!(t_min > 0.0)) throw DomainError("SpectralTransform: requires t > 0");
    if (!(cutoff.M > 0.0)) throw DomainError("SpectralTransform: cutoff M must be positive");
    if (!(opts.mu_step > 0.0)) throw DomainError("SpectralTransform: mu_step must be positive");
    // First pass with a generous guess for the dual extent, then tighten once
    // the actual extent is known.
    build(std::min(0.05, dual_resolution(cutoff.M, t_min, r_max + 50.0)));
    const double need = dual_resolution(cutoff.M, t_min, r_max + a_ext_);
    if (need < dA_) build(need);
}

bool SpectralTransform::covers(double t, double r_max) const { return t >= t_min_ && r_max <= r_max_; }

void SpectralTransform::build(double dA) {
    const std::size_t nc = config_.size();
    const double M = cutoff_.M;
    double h = opts_.mu_step;
    for (int attempt = 0;; ++attempt) {
        const std::size_t n = std::max(next_pow2(2.0 * kPi / (h * dA)), next_pow2(4.0 * M / h + 8.0));
        const auto half = static_cast<std::ptrdiff_t>(n / 2);
        const double dA_eff = 2.0 * kPi / (static_cast<double>(n) * h);

        // Samples of P_j = H_j' psi + H_j psi'/M and Q_j = H_j psi on mu_k = (k - n/2) h,
        // with the (-1)^k that centers the transform.
        std::vector<std::vector<cplx>> P(nc, std::vector<cplx>(n, 0.0));
        std::vector<std::vector<cplx>> Q(nc, std::vector<cplx>(n, 0.0));
        Eigen::MatrixXcd c;
        Eigen::MatrixXcd dc;
        Eigen::VectorXcd F(static_cast<Eigen::Index>(nc));
        Eigen::VectorXcd dF(static_cast<Eigen::Index>(nc));
        const auto kmax = static_cast<std::ptrdiff_t>(std::ceil(2.0 * M / h));
        for (std::ptrdiff_t k = -kmax; k <= kmax; ++k) {
            const double mu = static_cast<double>(k) * h;
            const double psi = cutoff_.shape(mu / M);
            if (psi == 0.0) continue;
            const double dpsi = cutoff_.shape_derivative(mu / M) / M;
            coeffs_with_derivative(config_, mu, c, dc, opts_.gamma);
            for (std::size_t l = 0; l < nc; ++l) {
                F(static_cast<Eigen::Index>(l)) = f_.free_resolvent(config_.center(l), mu);
                dF(static_cast<Eigen::Index>(l)) = f_.free_resolvent_dk(config_.center(l), mu);
            }
            const Eigen::VectorXcd H = c * F;
            const Eigen::VectorXcd dH = dc * F + c * dF;
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            const auto idx = static_cast<std::size_t>(k + half);
            for (std::size_t j = 0; j < nc; ++j) {
                const auto jj = static_cast<Eigen::Index>(j);
                P[j][idx] = sgn * (dH(jj) * psi + H(jj) * dpsi);
                Q[j][idx] = sgn * H(jj) * psi;
            }
        }

        FftwBuffer buf(n);
        const double scale = h / (2.0 * kPi);
        auto transform = [&](std::vector<cplx>& v) {
            std::copy(v.begin(), v.end(), reinterpret_cast<cplx*>(buf.data));
            fftw_execute(buf.plan);
            const auto* out = reinterpret_cast<const cplx*>(buf.data);
            for (std::size_t m = 0; m < n; ++m) v[m] = ((m % 2 == 0) ? scale : -scale) * out[m];
        };
        double vmax = 0.0;
        for (std::size_t j = 0; j < nc; ++j) {
            transform(P[j]);
            transform(Q[j]);
            for (std::size_t m = 0; m < n; ++m) vmax = std::max({vmax, std::abs(P[j][m]), std::abs(Q[j][m])});
        }

        const double floor = opts_.crop * vmax;
        std::size_t lo = n;
        std::size_t hi = 0;
        for (std::size_t m = 0; m < n; ++m) {
            bool keep = false;
            for (std::size_t j = 0; j < nc && !keep; ++j) keep = std::abs(P[j][m]) > floor || std::abs(Q[j][m]) > floor;
            if (keep) {
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
        }
        if (lo > hi) {
            // Zero datum: nothing to transform.
            lo = hi = static_cast<std::size_t>(half);
        }
        if ((lo == 0 || hi == n - 1) && vmax > 0.0) {
            // The dual function wraps around the period 2 pi/h: sample mu finer.
            if (attempt >= 4) throw DomainError("spectral transform: mu sampling does not resolve the integrand");
            h *= 0.5;
            continue;
        }

        dA_ = dA_eff;
        A_.clear();
        for (std::size_t m = lo; m <= hi; ++m)
            A_.push_back(static_cast<double>(static_cast<std::ptrdiff_t>(m) - half) * dA_eff);
        a_ext_ = std::max(std::abs(A_.front()), std::abs(A_.back()));
        p_.assign(nc, {});
        q_.assign(nc, {});
        for (std::size_t j = 0; j < nc; ++j) {
            p_[j].assign(P[j].begin() + static_cast<std::ptrdiff_t>(lo), P[j].begin() + static_cast<std::ptrdiff_t>(hi) + 1);
            q_[j].assign(Q[j].begin() + static_cast<std::ptrdiff_t>(lo), Q[j].begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        }
        return;
    }
}

std::size_t SpectralTransform::stride(double t, double r) const {
    const double h = dual_resolution(cutoff_.M, t, r + a_ext_);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(h / dA_)));
}

cplx SpectralTransform::correction(const Vec3& x, double t) const {
    if (!(t > 0.0)) throw DomainError("SpectralTransform: requires t > 0");
    if (t < t_min_) throw DomainError("SpectralTransform: t below the resolved range");
    // sqrt(pi/(it)) on the principal branch.
    const cplx root = std::sqrt(kPi / t) * std::polar(1.0, -0.25 * kPi);
    const double inv4t = 0.25 / t;
    cplx total = 0.0;
    for (std::size_t j = 0; j < config_.size(); ++j) {
        const double r = distance(x, config_.center(j));
        if (r < kCoincidenceRadius) throw CenterCoincidence("SpectralTransform: point sits on a center", j);
        const std::size_t s = stride(t, r);
        const double step = static_cast<double>(s) * dA_;
        const cplx turn = std::polar(1.0, 2.0 * step * step * inv4t);
        cplx accP = 0.0;
        cplx accQ = 0.0;
        cplx e;
        cplx f;
        int since = kChirpReset;
        for (std::size_t m = 0; m < A_.size(); m += s) {
            const double v = r + A_[m];
            if (since == kChirpReset) {
                e = std::polar(1.0, v * v * inv4t);
                f = std::polar(1.0, (2.0 * v * step + step * step) * inv4t);
                since = 0;
            }
            accP += p_[j][m] * e;
            accQ += q_[j][m] * e;
            e *= f;
            f *= turn;
            ++since;
        }
        const cplx IP = root * step * accP;
        const cplx IQ = root * step * accQ;
        total += -2.0 / (t * r) * (IP + kI * r * IQ);
    }
    return total;
}

cplx SpectralTransform::evolve(const Vec3& x, double t) const { return f_.free_evolve(x, t) + correction(x, t); }

namespace {

double max_center_distance(const InteractionConfig& config, const std::vector<Vec3>& points) {
    double r = 0.0;
    for (const auto& x : points)
        for (const auto& c : config.centers()) r = std::max(r, distance(x, c));
    return r;
}

}  // namespace

SpectralValue spectral_evolve(const InteractionConfig& config, const InitialData& f, const Vec3& x, double t,
                              const CutoffSpec& cutoff, const SpectralOptions& opts) {
    const double r_max = max_center_distance(config, {x});
    const cplx free = f.free_evolve(x, t);
    CutoffSpec cs = cutoff;
    cplx prev = SpectralTransform(config, f, cs, t, r_max, opts).correction(x, t);
    double rel = 0.0;
    for (int k = 0; k < opts.max_doublings; ++k) {
        cs.M *= 2.0;
        const cplx cur = SpectralTransform(config, f, cs, t, r_max, opts).correction(x, t);
        const double diff = std::abs(cur - prev);
        const double scale = std::max(std::abs(free + cur), std::abs(free));
        rel = scale > 0.0 ? diff / scale : diff;
        if (diff <= opts.tol * scale) return {free + cur, diff, cs.M};
        prev = cur;
    }
    throw ConvergenceFailure("spectral_evolve: cutoff ladder did not converge", t, cs.M, rel);
}

Propagator::Propagator(InteractionConfig config, InitialData f, EvolveOptions opts)
    : config_(std::move(config)), f_(std::move(f)), opts_(opts) {
    bound_ = project_point_spectrum(config_, f_);
}

bool Propagator::use_closed_form() const {
    switch (opts_.mode) {
        case EvolveMode::closed_form:
            if (config_.size() != 1) throw DomainError("Propagator: closed form needs a single center");
            return true;
        case EvolveMode::spectral:
            return false;
        case EvolveMode::automatic:
            break;
    }
    return config_.size() == 1;
}

const SpectralTransform& Propagator::transform(double M, double t, double r_max) const {
    auto it = cache_.find(M);
    if (it != cache_.end() && it->second->covers(t, r_max)) return *it->second;
    double t_min = t;
    double r = r_max;
    if (it != cache_.end()) {
        // Widen rather than replace so alternating requests do not thrash.
        t_min = std::min(t_min, it->second->t_min());
        r = std::max(r, it->second->r_max());
    }
    CutoffSpec cs = opts_.cutoff;
    cs.M = M;
    auto built = std::make_unique<SpectralTransform>(config_, f_, cs, t_min, r, opts_.spectral);
    const SpectralTransform& ref = *built;
    cache_[M] = std::move(built);
    return ref;
}

std::vector<cplx> Propagator::continuous(const std::vector<Vec3>& points, double t, double M, double r_max) const {
    const SpectralTransform& tr = transform(M, t, r_max);
    std::vector<cplx> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = tr.correction(points[i], t);
    return out;
}

EvolveResult Propagator::evaluate(const std::vector<Vec3>& points, double t) const {
    EvolveResult res;
    res.values.resize(points.size());
    if (use_closed_form()) {
        for (std::size_t i = 0; i < points.size(); ++i)
            res.values[i] = n1_evolve(config_, f_, points[i], t, opts_.continuous_only);
        return res;
    }

    std::vector<cplx> free(points.size());
    std::vector<double> w(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        free[i] = f_.free_evolve(points[i], t);
        w[i] = weight(config_, points[i]);
    }
    const double r_max = max_center_distance(config_, points);
    double M = opts_.cutoff.M;
    std::vector<cplx> prev = continuous(points, t, M, r_max);
    double rel = 0.0;
    bool done = false;
    for (int k = 0; k < opts_.spectral.max_doublings && !done; ++k) {
        M *= 2.0;
        std::vector<cplx> cur = continuous(points, t, M, r_max);
        double disc = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            disc = std::max(disc, std::abs(cur[i] - prev[i]) / w[i]);
            scale = std::max({scale, std::abs(free[i] + cur[i]) / w[i], std::abs(free[i]) / w[i]});
        }
        rel = scale > 0.0 ? disc / scale : disc;
        done = disc <= opts_.spectral.tol * scale;
        prev = std::move(cur);
    }
    if (!done) throw ConvergenceFailure("Propagator: cutoff ladder did not converge", t, M, rel);
    res.M = M;
    res.error = rel;
    for (std::size_t i = 0; i < points.size(); ++i) {
        cplx u = free[i] + prev[i];
        if (!opts_.continuous_only)
            for (const auto& b : bound_) u += std::polar(1.0, -t * b.state.energy()) * b.coefficient * b.state(points[i]);
        res.values[i] = u;
    }
    return res;
}

cplx Propagator::evaluate(const Vec3& x, double t) const { return evaluate(std::vector<Vec3>{x}, t).values.front(); }

cplx full_evolve(const InteractionConfig& config, const InitialData& f, const Vec3& x, double t,
                 const EvolveOptions& opts) {
    return Propagator(config, f, opts).evaluate(x, t);
}

}  // namespace deltasolve
