#include "deltasolve/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace deltasolve {

void append_gauss_legendre(double a, double b, int panels, std::vector<double>& x, std::vector<double>& w) {
    using rule = boost::math::quadrature::gauss<double, 16>;
    const auto& abscissa = rule::abscissa();
    const auto& weight = rule::weights();
    if (panels < 1 || !(b > a)) return;
    const double h = (b - a) / panels;
    x.reserve(x.size() + 16 * static_cast<std::size_t>(panels));
    w.reserve(w.size() + 16 * static_cast<std::size_t>(panels));
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < abscissa.size(); ++i) {
            x.push_back(mid - 0.5 * h * abscissa[i]);
            w.push_back(0.5 * h * weight[i]);
            x.push_back(mid + 0.5 * h * abscissa[i]);
            w.push_back(0.5 * h * weight[i]);
        }
    }
}

void append_gauss_legendre_width(double a, double b, double max_width, std::vector<double>& x, std::vector<double>& w) {
    if (!(b > a)) return;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    append_gauss_legendre(a, b, panels, x, w);
}

}  // namespace deltasolve
