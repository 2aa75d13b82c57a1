#include "alloy/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "alloy/error.hpp"

namespace alloy {

namespace {
constexpr double two_pi = 2 * std::numbers::pi;
}

Density Density::uniform(double a, double b) {
    require(a < b, "uniform density needs a < b");
    Density d;
    d.kind_ = Kind::uniform;
    d.lo_ = a;
    d.hi_ = b;
    return d;
}

Density Density::raised_cosine(double a, double b) {
    require(a < b, "raised cosine density needs a < b");
    Density d;
    d.kind_ = Kind::raised_cosine;
    d.lo_ = a;
    d.hi_ = b;
    return d;
}

Density Density::piecewise_linear(std::vector<double> x, std::vector<double> y) {
    require(x.size() >= 2 && x.size() == y.size(), "piecewise linear density needs >= 2 knots");
    double mass = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        require(x[i] < x[i + 1], "knots must be strictly increasing");
        mass += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    }
    for (double v : y) require(v >= 0 && std::isfinite(v), "density values must be >= 0");
    require(mass > 0, "piecewise linear density has zero mass");
    for (double& v : y) v /= mass;
    Density d;
    d.kind_ = Kind::piecewise_linear;
    d.lo_ = x.front();
    d.hi_ = x.back();
    d.x_ = std::move(x);
    d.y_ = std::move(y);
    return d;
}

Density Density::from_spec(const std::string& kind, const std::vector<double>& p) {
    if (kind == "uniform" || kind == "raised_cosine") {
        require(p.size() == 2, kind + " density takes params [a, b]");
        return kind == "uniform" ? uniform(p[0], p[1]) : raised_cosine(p[0], p[1]);
    }
    if (kind == "piecewise_linear") {
        require(p.size() >= 4 && p.size() % 2 == 0,
                "piecewise_linear density takes params [x0, y0, x1, y1, ...]");
        std::vector<double> x, y;
        for (std::size_t i = 0; i < p.size(); i += 2) {
            x.push_back(p[i]);
            y.push_back(p[i + 1]);
        }
        return piecewise_linear(x, y);
    }
    if (kind == "discrete")
        throw precondition_error("atomic disorder measures are not supported: a density is required");
    throw precondition_error("unknown density kind '" + kind + "'");
}

std::string Density::name() const {
    switch (kind_) {
        case Kind::uniform: return "uniform";
        case Kind::raised_cosine: return "raised_cosine";
        case Kind::piecewise_linear: return "piecewise_linear";
    }
    return "?";
}

double Density::radius() const { return std::max(std::abs(lo_), std::abs(hi_)); }

double Density::pdf(double t) const {
    if (t < lo_ || t > hi_) return 0.0;
    const double w = hi_ - lo_;
    switch (kind_) {
        case Kind::uniform: return 1.0 / w;
        case Kind::raised_cosine: return (1 - std::cos(two_pi * (t - lo_) / w)) / w;
        case Kind::piecewise_linear: {
            auto it = std::upper_bound(x_.begin(), x_.end(), t);
            std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin() - 1, 0), x_.size() - 2);
            double f = (t - x_[i]) / (x_[i + 1] - x_[i]);
            return y_[i] + f * (y_[i + 1] - y_[i]);
        }
    }
    return 0.0;
}

double Density::cdf(double t) const {
    if (t <= lo_) return 0.0;
    if (t >= hi_) return 1.0;
    const double w = hi_ - lo_;
    switch (kind_) {
        case Kind::uniform: return (t - lo_) / w;
        case Kind::raised_cosine: {
            double tau = (t - lo_) / w;
            return tau - std::sin(two_pi * tau) / two_pi;
        }
        case Kind::piecewise_linear: {
            double acc = 0;
            for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
                double h = x_[i + 1] - x_[i];
                if (t >= x_[i + 1]) {
                    acc += 0.5 * (y_[i] + y_[i + 1]) * h;
                    continue;
                }
                double dt = t - x_[i];
                double slope = (y_[i + 1] - y_[i]) / h;
                return acc + y_[i] * dt + 0.5 * slope * dt * dt;
            }
            return 1.0;
        }
    }
    return 0.0;
}

double Density::quantile(double p) const {
    require(p >= 0 && p <= 1, "quantile level outside [0,1]");
    const double w = hi_ - lo_;
    switch (kind_) {
        case Kind::uniform: return lo_ + p * w;
        case Kind::raised_cosine: {
            if (p <= 0) return lo_;
            if (p >= 1) return hi_;
            auto f = [&](double tau) { return tau - std::sin(two_pi * tau) / two_pi - p; };
            boost::uintmax_t iters = 200;
            auto tol = boost::math::tools::eps_tolerance<double>(52);
            auto [a, b] = boost::math::tools::toms748_solve(f, 0.0, 1.0, -p, 1.0 - p, tol, iters);
            return lo_ + 0.5 * (a + b) * w;
        }
        case Kind::piecewise_linear: {
            double acc = 0;
            for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
                double h = x_[i + 1] - x_[i];
                double seg = 0.5 * (y_[i] + y_[i + 1]) * h;
                if (acc + seg < p && i + 2 < x_.size()) {
                    acc += seg;
                    continue;
                }
                // solve y_i dt + slope dt^2 / 2 = p - acc on [0, h]
                double q = std::clamp(p - acc, 0.0, seg);
                double slope = (y_[i + 1] - y_[i]) / h;
                double dt;
                if (std::abs(slope) < 1e-300) {
                    dt = y_[i] > 0 ? q / y_[i] : 0.0;
                } else {
                    double disc = std::max(0.0, y_[i] * y_[i] + 2 * slope * q);
                    dt = 2 * q / (y_[i] + std::sqrt(disc));
                }
                return x_[i] + std::clamp(dt, 0.0, h);
            }
            return hi_;
        }
    }
    return lo_;
}

double Density::sup_norm() const {
    const double w = hi_ - lo_;
    switch (kind_) {
        case Kind::uniform: return 1.0 / w;
        case Kind::raised_cosine: return 2.0 / w;
        case Kind::piecewise_linear: return *std::max_element(y_.begin(), y_.end());
    }
    return 0.0;
}

double Density::var_norm() const {
    const double w = hi_ - lo_;
    switch (kind_) {
        case Kind::uniform: return 2.0 / w;
        case Kind::raised_cosine: return 4.0 / w;
        case Kind::piecewise_linear: {
            double v = y_.front() + y_.back();
            for (std::size_t i = 0; i + 1 < y_.size(); ++i) v += std::abs(y_[i + 1] - y_[i]);
            return v;
        }
    }
    return 0.0;
}

std::optional<double> Density::deriv_l1() const {
    switch (kind_) {
        case Kind::uniform: return std::nullopt;
        case Kind::raised_cosine: return 4.0 / (hi_ - lo_);
        case Kind::piecewise_linear:
            if (y_.front() != 0.0 || y_.back() != 0.0) return std::nullopt;
            return var_norm();
    }
    return std::nullopt;
}

std::vector<double> Density::breakpoints() const {
    if (kind_ == Kind::piecewise_linear) return x_;
    return {lo_, hi_};
}

}  // namespace alloy
