#pragma once

#include <map>
#include <optional>

#include "alloy/lattice.hpp"

namespace alloy {

// Exponential tail u(k) = sign(k) C exp(-alpha |k|_1) outside the explicit core,
// truncated to the cube of the given radius.
struct Tail {
    double C = 1.0;
    double alpha = 1.0;
    int radius = 0;
    bool alternating = false;  // sign(k) = (-1)^{|k|_1} instead of +1
};

// Single-site potential u : Z^d -> R with finite (possibly truncated) support.
class SingleSitePotential {
public:
    SingleSitePotential() = default;
    SingleSitePotential(int d, std::map<Site, double> core, std::optional<Tail> tail = std::nullopt);

    static SingleSitePotential delta(int d, double value = 1.0);
    // d = 1 convenience: u(k) = values[k] for k = 0..n-1
    static SingleSitePotential chain(const std::vector<double>& values);
    // u(k) = C exp(-alpha |k|_1) on the cube of the given radius
    static SingleSitePotential exponential(int d, double C, double alpha, int radius);

    int dim() const { return d_; }
    double operator()(const Site& k) const;
    // Nonzero values of the effective support.
    const std::map<Site, double>& values() const { return values_; }
    const std::optional<Tail>& tail() const { return tail_; }
    // Support Theta as a sorted box.
    Box support() const;

    double sum() const;      // u-bar
    double l1_norm() const;
    // l1 diameter of the support
    int diameter_l1() const;
    // l1 mass of the exponential envelope outside the truncation cube; 0 without tail.
    double tail_mass() const;

    SingleSitePotential scaled(double c) const;

private:
    int d_ = 0;
    std::map<Site, double> values_;
    std::optional<Tail> tail_;
};

}  // namespace alloy
