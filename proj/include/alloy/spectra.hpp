#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "alloy/model.hpp"
#include "alloy/parallel.hpp"
#include "alloy/poscomb.hpp"

namespace alloy {

// Full spectrum of a symmetric matrix, ascending.
std::vector<double> eigenvalues(const Eigen::MatrixXd& h);
// Eigenvalues in the closed interval [a, b].
int count_in_interval(const Eigen::MatrixXd& h, double a, double b);
int count_in_interval(const std::vector<double>& spectrum, double a, double b);

struct WegnerReport {
    double a = 0, b = 0;
    int l = 0;
    long sites = 0;
    double mean = 0, std_error = 0;
    long trials = 0;
    double abstract_bound = 0;
    bool bound_satisfied = false;  // mean + 3 stderr <= abstract_bound
    WegnerCoefficients coefficients;
    // same run on the half-length interval with the same centre
    std::optional<double> half_mean, half_std_error, linear_scaling_ratio;
};

// (1 / (2 lambda)) ||rho||_Var |I| sum_j ||t_{j,l}||_1
double abstract_wegner_bound(const ModelConfig& model, const WegnerCoefficients& w, double length);

// Monte Carlo mean eigenvalue count of H on Lambda_l = [-l, l]^d in [a, b].
WegnerReport wegner_mc(const ModelConfig& model, int l, double a, double b, long trials, std::uint64_t seed,
                       bool with_half = false, Exec exec = Exec::parallel);

// 4C/pi |b - a|^s |Lambda|
double apriori_wegner_bound(double C, double s, long volume, double length);

// sup over x in the box, E on an even grid of [a, b] and eps in eps_list of
// mean + 3 stderr of E|G(E + i eps; x, x)|^s, the C of the moment-to-Wegner step.
double diagonal_moment_sup(const ModelConfig& model, const Box& box, double a, double b, int energies,
                           const std::vector<double>& eps_list, double s, long trials, std::uint64_t seed,
                           Exec exec = Exec::parallel);

// (m, E)-regularity of Lambda_{L,x}: E not in the spectrum and
// sup_{w in interior boundary} |G(E; x, w)| <= e^{-mL}. Computed from the
// eigendecomposition; E within 1e-12 (relative) of an eigenvalue counts as
// singular and so not regular.
struct Regularity {
    bool regular = false;
    bool singular = false;
    double sup_green = 0;
};
Regularity regularity_check(const ModelConfig& model, const Configuration& omega, int L, const Site& x, double E,
                            double m);

struct RegularityReport {
    int L = 0;
    Site x, y;
    double m = 0;
    std::vector<double> energies;
    double grid_spacing = 0;
    std::vector<double> per_energy;  // frequency of "x-box or y-box regular" at each E
    double all_energies = 0;         // frequency of "for every grid E, one of the boxes is regular"
    double std_error = 0;
    long trials = 0;
};
// The continuum of energies is replaced by the grid, so all_energies is
// biased upwards.
RegularityReport pair_regularity_probability(const ModelConfig& model, int L, const Site& x, const Site& y, double a,
                                             double b, int grid_points, double m, long trials, std::uint64_t seed,
                                             Exec exec = Exec::parallel);

struct EigenDecay {
    double energy = 0;
    double slope = 0;  // of log|psi| against sup-distance from the peak
    int points = 0;
};
// Eigenpairs with energy in [lo, hi]; boxes of a single site are skipped.
std::vector<EigenDecay> eigenfunction_decay(const ModelConfig& model, const Configuration& omega, const Box& g,
                                            double lo, double hi);

}  // namespace alloy
