#pragma once

#include <optional>
#include <string>
#include <vector>

namespace alloy {

// Compactly supported probability density of the single-site couplings.
// Atomic measures have no density and are rejected at construction.
class Density {
public:
    enum class Kind { uniform, raised_cosine, piecewise_linear };

    static Density uniform(double a, double b);
    // rho(t) = (1 - cos(2 pi (t-a)/(b-a))) / (b-a) on [a, b]
    static Density raised_cosine(double a, double b);
    // Linear interpolation of (x_i, y_i), y >= 0, normalised to unit mass.
    static Density piecewise_linear(std::vector<double> x, std::vector<double> y);
    // kind in {uniform, raised_cosine, piecewise_linear}; "discrete" is rejected.
    static Density from_spec(const std::string& kind, const std::vector<double>& params);

    Kind kind() const { return kind_; }
    std::string name() const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    // R with supp rho in [-R, R]
    double radius() const;

    double pdf(double t) const;
    double cdf(double t) const;
    double quantile(double p) const;

    double sup_norm() const;
    double l1_norm() const { return 1.0; }
    // total variation of rho on R, jumps at the support edges included
    double var_norm() const;
    // L1 norm of rho', defined when rho is absolutely continuous on R
    std::optional<double> deriv_l1() const;
    // points where rho is not smooth (support edges and knots)
    std::vector<double> breakpoints() const;

private:
    Kind kind_ = Kind::uniform;
    double lo_ = 0, hi_ = 1;
    std::vector<double> x_, y_;  // piecewise linear data, y normalised
};

}  // namespace alloy
