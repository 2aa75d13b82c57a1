#pragma once

#include <map>
#include <vector>

#include "alloy/lattice.hpp"
#include "alloy/potential.hpp"

namespace alloy {

// Nonnegative integer vector; J <= I componentwise, J < I means J <= I and J != I.
struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e);
    static MultiIndex zero(int d) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0)); }

    int dim() const { return static_cast<int>(entries.size()); }
    int total() const;
    bool operator==(const MultiIndex& o) const { return entries == o.entries; }
    bool operator!=(const MultiIndex& o) const { return entries != o.entries; }
};
bool leq(const MultiIndex& a, const MultiIndex& b);
bool less(const MultiIndex& a, const MultiIndex& b);
// All I with |I| = n, lexicographically increasing.
std::vector<MultiIndex> indices_of_degree(int d, int n);
// All J <= I except I itself.
std::vector<MultiIndex> strictly_below(const MultiIndex& I);

// prod_j k_j (k_j - 1) ... (k_j - i_j + 1)
double falling_factorial(const Site& k, const MultiIndex& I);
// prod_j k_j^{i_j} with 0^0 = 1
double monomial(const Site& k, const MultiIndex& I);

// D^I F(1) for F(z) = sum_k u(-k) z^k, an exact finite sum over the (truncated) support.
double generating_derivative(const SingleSitePotential& u, const MultiIndex& I);

struct LeadingDerivative {
    MultiIndex I0;
    double c_u = 0;
    int degree_cap = 0;
    double tolerance = 0;         // at degree |I0|
    double truncation_error = 0;  // bound on the tail left out of D^{I0} F(1)
};
// Smallest total degree with a non-vanishing derivative; lexicographically
// smallest index within that degree.
LeadingDerivative find_I0(const SingleSitePotential& u, int degree_cap = 8);

// sum_k k^I u(x - k) over the effective support
double leading_index_sum(const SingleSitePotential& u, const MultiIndex& I, const Site& x);

struct ExhaustionRadius {
    double R = 0;
    int box_radius = 0;  // ceil(R)
};
// R_l = max{2l + (2/alpha) ln(2 3^d C / (|c_u| (1 - e^{-alpha/2}))), 8 (d + |I0|)^2 / alpha^2}
ExhaustionRadius compute_R_l(int d, double C, double alpha, double c_u, int I0_total, int l);
// Exponential potentials use the formula above; finite ones the smallest box
// covering x - supp u for every x in Lambda_l.
ExhaustionRadius exhaustion_radius(const SingleSitePotential& u, const LeadingDerivative& lead, int l);

// min over x in Lambda_l of (2/c_u) sum_{k in Lambda_R} k^{I0} u(x - k)
double covering_sum_min(const SingleSitePotential& u, int l);

struct WegnerCoefficients {
    LeadingDerivative lead;
    ExhaustionRadius radius;
    std::map<Site, double> t;  // t_{j,l}(k) = 2 k^{I0} / c_u on Lambda_R (same for every j)
    double t_l1 = 0;           // ||t_{j,l}||_1
    double sum_l1 = 0;         // sum over j in Lambda_l
    double bound_exponent = 0; // |I0|: t grows like R^{|I0|}
};
WegnerCoefficients wegner_coefficients(const SingleSitePotential& u, int l);

struct PowerExpGuard {
    bool guard = false;        // n >= 8 M^2 / alpha^2
    bool inequality = false;   // n^M < e^{alpha n / 2}
};
PowerExpGuard power_exp_guard(double M, double alpha, double n);

}  // namespace alloy
