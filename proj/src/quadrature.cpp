#include "alloy/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "alloy/error.hpp"

namespace alloy {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

// 4096 panels per piece at most; the error estimate reports any shortfall
constexpr unsigned max_depth = 12;

QuadResult plain(const std::function<double(double)>& f, double a, double b, double tol) {
    QuadResult r;
    r.value = GK::integrate(f, a, b, max_depth, tol, &r.error);
    return r;
}

// integral over [p, p + h] (h may be negative) with the singularity at p
QuadResult from_singular(const std::function<double(double)>& f, double p, double h, double beta, double tol) {
    auto g = [&](double t) {
        if (t <= 0) return 0.0;
        double tb = std::pow(t, beta);
        double v = f(p + h * tb) * std::abs(h) * beta * tb / t;
        return std::isfinite(v) ? v : 0.0;
    };
    QuadResult r;
    r.value = GK::integrate(g, 0.0, 1.0, max_depth, tol, &r.error);
    return r;
}

}  // namespace

QuadResult integrate_singular(const std::function<double(double)>& f, double a, double b,
                              const std::vector<double>& singular, const std::vector<double>& breaks,
                              double max_exponent, double rel_tol) {
    require(a <= b, "integration bounds out of order");
    require(max_exponent >= 0 && max_exponent < 1, "singularity exponent must lie in [0, 1)");
    QuadResult total;
    if (a == b) return total;
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    const double merge = 1e-13 * scale;

    std::vector<double> sing;
    for (double p : singular)
        if (std::isfinite(p) && p >= a - merge && p <= b + merge) sing.push_back(std::clamp(p, a, b));
    std::vector<double> pts{a, b};
    pts.insert(pts.end(), sing.begin(), sing.end());
    for (double p : breaks)
        if (p > a && p < b) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    std::vector<double> nodes;
    for (double p : pts)
        if (nodes.empty() || p - nodes.back() > merge) nodes.push_back(p);
    if (nodes.back() < b - merge) nodes.push_back(b);

    auto is_singular = [&](double p) {
        return std::any_of(sing.begin(), sing.end(), [&](double s) { return std::abs(s - p) <= merge; });
    };
    const double beta = 1.0 / (1.0 - max_exponent);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double p = nodes[i], q = nodes[i + 1];
        const bool sp = is_singular(p), sq = is_singular(q);
        QuadResult parts[2];
        if (!sp && !sq) {
            parts[0] = plain(f, p, q, rel_tol);
        } else {
            const double m = 0.5 * (p + q);
            parts[0] = sp ? from_singular(f, p, m - p, beta, rel_tol) : plain(f, p, m, rel_tol);
            parts[1] = sq ? from_singular(f, q, m - q, beta, rel_tol) : plain(f, m, q, rel_tol);
        }
        for (const QuadResult& r : parts) {
            total.value += r.value;
            total.error += r.error;
        }
    }
    return total;
}

}  // namespace alloy
