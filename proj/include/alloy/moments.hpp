#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "alloy/annulus.hpp"
#include "alloy/model.hpp"
#include "alloy/parallel.hpp"

namespace alloy {

using cplx = std::complex<double>;

// Disorder average of |G(z; x, y)|^exponent.
struct MomentEstimate {
    double mean = 0;
    double std_error = 0;
    long trials = 0;
    double exponent = 0;
    Site x, y;
    cplx z;
};

// Per-trial samples |G_gamma(z; x, y)|^exponent for every y in gamma (one
// column solve per trial). Trial t uses couplings keyed by trial_seed(seed, t).
// A failed solve is retried once with Im z enlarged by a relative 1e-6, then
// the error propagates.
Eigen::MatrixXd moment_samples(const ModelConfig& model, const Box& gamma, cplx z, double exponent, const Site& x,
                               long trials, std::uint64_t seed, Exec exec = Exec::parallel);

MomentEstimate estimate_moment(const ModelConfig& model, const Box& gamma, cplx z, double exponent, const Site& x,
                               const Site& y, long trials, std::uint64_t seed, Exec exec = Exec::parallel);

// Weighted least-squares fit of log(mean) against distance; rate = -slope.
struct DecayFit {
    double rate = 0;
    double intercept = 0;
    double residual = 0;  // weighted RMS residual
    int min_distance = 0, max_distance = 0;
};
DecayFit fit_decay(const std::vector<int>& distance, const std::vector<MomentEstimate>& est);

// One-dimensional profile on the chain {0, ..., sites-1} from x = 0. The moment
// exponent is s/n for connected supports and s/(n+r) with gaps; the bound
// column comes from the matching closed-form constants (NaN below the
// distance where the bound applies, or when lambda = 0).
struct DecayProfile {
    double exponent = 0;
    int min_bound_distance = 0;
    std::vector<int> distance;
    std::vector<MomentEstimate> estimate;
    std::vector<double> bound;
    DecayFit fit;
};
DecayProfile decay_profile(const ModelConfig& model, int sites, cplx z, double s, long trials, std::uint64_t seed,
                           Exec exec = Exec::parallel);

// Boundary sum of the finite-volume criterion around x inside lambda_set:
// sum over bonds (w', w) with w' in W_x and w in the component of x in
// lambda_set \ W_x of E|G_{lambda_set \ W_x}(z; x, w)|^{s/(2|theta|)}.
// The unknown prefactor is left out; scaled multiplies by
// L^{3(d-1)} Xi_s(lambda) / lambda^{2s/(2|theta|)}.
struct FiniteVolumeSum {
    double raw_sum = 0;
    double std_error = 0;
    double scaled = 0;
    double xi = 0;
    double exponent = 0;
    long trials = 0;
    AnnulusGeometry geometry;
    std::vector<std::pair<Site, Site>> bonds;  // (w' in W, w inside)
};
FiniteVolumeSum finite_volume_sum(const ModelConfig& model, const Box& lambda_set, const Site& x, cplx z, double s,
                                  int L, long trials, std::uint64_t seed, Exec exec = Exec::parallel);

// max{lambda^{-s/(2|theta|)}, lambda^{-2s}}
double xi_factor(double lambda, double s, int theta_size);

}  // namespace alloy
