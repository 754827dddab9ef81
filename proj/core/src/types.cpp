#include "deltasolve/types.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "deltasolve/errors.hpp"

namespace deltasolve {

InteractionConfig::InteractionConfig(std::vector<Vec3> centers, std::vector<double> alphas)
    : centers_(std::move(centers)), alphas_(std::move(alphas)) {
    const std::size_t n = centers_.size();
    if (n == 0) throw InvalidConfig("interaction needs at least one center");
    if (alphas_.size() != n) {
        std::ostringstream os;
        os << "interaction has " << n << " centers but " << alphas_.size() << " strengths";
        throw InvalidConfig(os.str());
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(alphas_[j])) throw InvalidConfig("strength alpha[" + std::to_string(j) + "] is not finite");
        for (double c : centers_[j])
            if (!std::isfinite(c)) throw InvalidConfig("center[" + std::to_string(j) + "] is not finite");
    }

    dist_.assign(n * n, 0.0);
    min_dist_ = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = j + 1; l < n; ++l) {
            const double d = deltasolve::distance(centers_[j], centers_[l]);
            if (d <= kCoincidenceRadius) {
                std::ostringstream os;
                os << "centers " << j << " and " << l << " coincide";
                throw InvalidConfig(os.str());
            }
            dist_[j * n + l] = dist_[l * n + j] = d;
            min_dist_ = std::min(min_dist_, d);
            max_dist_ = std::max(max_dist_, d);
        }
    }
}

int InteractionConfig::coincident_center(const Vec3& x) const {
    for (std::size_t j = 0; j < centers_.size(); ++j)
        if (deltasolve::distance(x, centers_[j]) < kCoincidenceRadius) return static_cast<int>(j);
    return -1;
}

}  // namespace deltasolve
