#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "alloy/density.hpp"
#include "alloy/potential.hpp"

namespace alloy {

// Constants of the one-dimensional decay bound for a connected support
// {0, ..., n-1}. Moments are taken with exponent s/n.
struct OneDConstants {
    int n = 0;
    double s = 0, lambda = 0;
    double C_u = 0, C_rho = 0, C = 0;  // C = C_u C_rho / lambda^s
    double C_u_plus = 0, C_rho_plus = 0, C_plus = 0;
    double mu = 0;                // -ln C
    double threshold_lambda = 0;  // C < 1 exactly when lambda exceeds this
    double moment_exponent() const { return s / n; }
    // C_plus exp(-mu floor(dist / n)); meaningful for dist >= 2n
    double bound(int dist) const;
};

OneDConstants one_d_constants(const SingleSitePotential& u, const Density& rho, double lambda, double s);

// Constants for a support {0, ..., n-1} with gaps; r is the largest gap length.
// alpha is a point of [0,1]^{r+1} far from every hyperplane
// sum_k alpha_k u(i - k) = 0, i = 0..n-1+r, found by seeded random search.
struct GapConstants {
    int n = 0, r = 0;
    double s = 0, lambda = 0;
    std::vector<double> alpha;
    double min_distance = 0;       // of alpha to the hyperplanes
    double required_distance = 0;  // 1 / (2 (n+r) (r+1)^{r/2})
    double D_alpha = 0;            // bound on the (n+r)-step factor evaluated at alpha
    double D_bound = 0;            // closed-form upper bound valid for any admissible alpha
    double D_plus_alpha = 0;       // end-piece factor evaluated at alpha, max over lengths
    double D_plus_bound = 0;       // its closed-form upper bound
    double m = 0;                  // -ln D_alpha
    double moment_exponent() const { return s / (n + r); }
    // D_plus_alpha exp(-m floor(dist / (n+r))); meaningful for dist >= 2(n+r)
    double bound(int dist) const;
};

// Largest number of consecutive missing sites strictly inside the support.
int largest_gap(const SingleSitePotential& u);

GapConstants gap_constants(const SingleSitePotential& u, const Density& rho, double lambda, double s,
                           std::uint64_t seed = 1, int samples = 10000);

// Does p(x) = sum_k u(k) x^k have no root on [0, inf)? A positive verdict is
// certified by a multiplier alpha (coefficients of +-((1+x)/2)^N) with
// w = u * alpha >= 0 and w(0), w(N+n-1) > 0.
struct RootCriterion {
    bool no_root_on_halfline = false;
    bool ambiguous = false;
    double nearest_distance = 0;  // distance of the closest root to [0, inf)
    std::vector<std::complex<double>> roots;
    int N = -1;                   // multiplier degree when certified
    std::vector<double> alpha;    // multiplier coefficients
    std::vector<double> w;        // u * alpha
};

RootCriterion polynomial_root_criterion(const SingleSitePotential& u, int max_degree = 4000);

}  // namespace alloy
