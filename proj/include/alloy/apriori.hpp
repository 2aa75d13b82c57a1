#pragma once

#include <map>

#include "alloy/density.hpp"
#include "alloy/lattice.hpp"
#include "alloy/potential.hpp"

namespace alloy {

// Bound on E|G_Lambda(z; x, y)|^s valid for any finite box when u-bar != 0 and
// rho is absolutely continuous:
//   8 / ubar^s * s^{-s}/(1-s) * ||rho'||_1^s * C^s * lambda^{-s}
// with c = ln(1 + ubar/(2||u||_1)) / n, n = l1 diameter of the support, and
// C = ((e^c + 1)/(e^c - 1))^d. A negative u-bar is handled by flipping u.
struct NonlocalBound {
    double ubar = 0;  // after the sign flip
    double u_l1 = 0;
    int n = 0;
    double c = 0;
    double C = 0;
    double rho_deriv_l1 = 0;
    double bound = 0;
};
NonlocalBound nonlocal_apriori_bound(const SingleSitePotential& u, const Density& rho, double lambda, double s);

// alpha(k) = (exp(-c|k-x|_1) + exp(-c|k-y|_1)) / 2 and
// W(k) = sum_j alpha(j) u(k - j) on a window. The margins must be >= 0.
struct WeightedPotential {
    std::map<Site, double> alpha;
    std::map<Site, double> W;
    double min_margin = 0;  // min over window of W(k) - alpha(k) ubar / 2
    double margin_x = 0;    // W(x) - ubar/4
    double margin_y = 0;    // W(y) - ubar/4
};
WeightedPotential w_xy(const SingleSitePotential& u, const Site& x, const Site& y, const Box& window);

}  // namespace alloy
