#include "alloy/potential.hpp"

#include <cmath>

#include "alloy/error.hpp"

namespace alloy {

SingleSitePotential::SingleSitePotential(int d, std::map<Site, double> core, std::optional<Tail> tail)
    : d_(d), tail_(tail) {
    require(d >= 1, "potential dimension must be >= 1");
    for (auto& [k, v] : core) {
        require(static_cast<int>(k.size()) == d, "support site of wrong dimension");
        require(std::isfinite(v), "non-finite potential value");
    }
    if (tail_) {
        require(tail_->C > 0 && tail_->alpha > 0, "tail needs C > 0 and alpha > 0");
        require(tail_->radius >= 0, "truncation radius must be >= 0");
        for (auto& [k, v] : core) {
            double env = tail_->C * std::exp(-tail_->alpha * norm1(k));
            require(std::abs(v) <= env * (1 + 1e-12),
                    "core value at " + to_string(k) + " exceeds the exponential envelope");
        }
        const Box cube = Box::cube(tail_->radius, origin(d));
        for (const Site& k : cube.sites()) {
            if (core.count(k)) continue;
            double sign = (tail_->alternating && norm1(k) % 2) ? -1.0 : 1.0;
            core[k] = sign * tail_->C * std::exp(-tail_->alpha * norm1(k));
        }
    }
    for (auto& [k, v] : core)
        if (v != 0.0) values_.emplace(k, v);
    require(!values_.empty(), "single-site potential must not vanish identically");
    require(values_.count(origin(d)) != 0, "the support must contain 0");
}

SingleSitePotential SingleSitePotential::delta(int d, double value) {
    return SingleSitePotential(d, {{origin(d), value}});
}

SingleSitePotential SingleSitePotential::chain(const std::vector<double>& values) {
    std::map<Site, double> m;
    for (std::size_t k = 0; k < values.size(); ++k) m[{static_cast<int>(k)}] = values[k];
    return SingleSitePotential(1, m);
}

SingleSitePotential SingleSitePotential::exponential(int d, double C, double alpha, int radius) {
    return SingleSitePotential(d, {}, Tail{C, alpha, radius, false});
}

double SingleSitePotential::operator()(const Site& k) const {
    auto it = values_.find(k);
    return it == values_.end() ? 0.0 : it->second;
}

Box SingleSitePotential::support() const {
    std::vector<Site> s;
    for (auto& [k, v] : values_) s.push_back(k);
    return Box(d_, std::move(s));
}

double SingleSitePotential::sum() const {
    double s = 0;
    for (auto& [k, v] : values_) s += v;
    return s;
}

double SingleSitePotential::l1_norm() const {
    double s = 0;
    for (auto& [k, v] : values_) s += std::abs(v);
    return s;
}

int SingleSitePotential::diameter_l1() const {
    int diam = 0;
    for (auto& [a, va] : values_)
        for (auto& [b, vb] : values_) diam = std::max(diam, norm1(a - b));
    return diam;
}

double SingleSitePotential::tail_mass() const {
    if (!tail_) return 0.0;
    // sum over Z of e^{-alpha|j|} minus the part with |j| <= radius, per coordinate
    const double q = std::exp(-tail_->alpha);
    const double full = (1 + q) / (1 - q);
    const double inner = 1 + 2 * q * (1 - std::pow(q, tail_->radius)) / (1 - q);
    return tail_->C * (std::pow(full, d_) - std::pow(inner, d_));
}

SingleSitePotential SingleSitePotential::scaled(double c) const {
    std::map<Site, double> m;
    for (auto& [k, v] : values_) m[k] = c * v;
    SingleSitePotential out;
    out.d_ = d_;
    out.values_ = std::move(m);
    if (tail_) {
        out.tail_ = tail_;
        out.tail_->C *= std::abs(c);
    }
    require(c != 0.0, "scaling a potential by zero");
    return out;
}

}  // namespace alloy
