#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "alloy/potential.hpp"

namespace alloy {

// Interval-arithmetic constants for u on {0, ..., n-1} with every value nonzero
// and couplings in [0, 1]: conditioning V(-1), V(n-1) near s_plus pins V(0)
// to [m - c delta, m + c delta].
struct PinningConstants {
    int n = 0;
    std::set<int> positive, negative;  // where u > 0, u < 0
    std::set<int> theta1, theta0;
    double s_plus = 0;  // sum of the positive values
    double m = 0;       // sum of u over theta1
    double c = 0;       // n u_max / u_min
    bool degenerate = false;  // n = 1: V(n-1) is V(0) itself
};
PinningConstants pinning_constants(const SingleSitePotential& u);

struct PinningReport {
    PinningConstants constants;
    long attempts = 0;
    long accepted_left = 0, accepted_right = 0;
    long pairs = 0;       // all combinations, or zipped pairs when there are too many
    long violations = 0;  // V(0) outside [m - c delta, m + c delta]
    double violation_fraction = 0;
    bool inconclusive = false;  // acceptance rate below 1e-6 on a block
};
// Uniform(0,1) couplings. V(-1) only sees omega_{-n..-1} and V(n-1) only
// omega_{0..n-1}, so the two conditions are sampled block by block with
// `attempts` draws each and accepted draws are combined.
PinningReport pinning_check(const SingleSitePotential& u, double delta, double delta_prime, long attempts,
                                  std::uint64_t seed);

// A_l is l x (l+1) with 1 on the diagonal and u_{-1} right of it.
Eigen::MatrixXd a_matrix(double u_m1, int l);
// s_l = sum_{i=0}^{l} u_{-1}^{2i}; the determinant of A_l A_l^T.
double s_value(double u_m1, int l);
// sum_{i=1}^{l} u_{-1}^{2i}, the sum starting at 1
double s_value_from_one(double u_m1, int l);

struct ALDeterminant {
    int l = 0;
    double det = 0;          // by LU
    double s = 0;            // s_l as above
    double s_from_one = 0;   // for comparison
    double corner_first = 0, corner_last = 0;  // (A A^T)^{-1}(1,1), (l,l)
    double corner_expected = 0;                // s_{l-1} / s_l
};
ALDeterminant a_l_determinants(double u_m1, int l);

// Law of V(0) given V(-m..-1) = v_minus and V(1..l) = v_plus for
// Theta = {-1, 0}, u(0) = 1, Gaussian couplings N(0, sigma^2).
struct GaussianConditional {
    int l = 0, m = 0;
    double u_m1 = 0, sigma = 0;
    double variance = 0;        // sigma^2 (u^2 - 1 + 1/s_m + 1/s_l)
    double mean = 0;
    Eigen::VectorXd mean_weights;   // over (v_minus, v_plus)
    double oracle_variance = 0;     // cov(Y,Y) - cov(Y,W) cov(W,W)^{-1} cov(W,Y)
    double oracle_mean = 0;
    Eigen::VectorXd oracle_weights;
};
GaussianConditional gaussian_conditional(double u_m1, double sigma, int l, int m, const Eigen::VectorXd& v_minus,
                                         const Eigen::VectorXd& v_plus);

// Conditional standard deviation of V(x) given V on the rest of {-L..L},
// minimised over x.
struct HolderProbe {
    int L = 0;
    double min_std = 0;
    int argmin = 0;
};
std::vector<HolderProbe> holder_constant_probe(double u_m1, double sigma, const std::vector<int>& Ls);

}  // namespace alloy
