#pragma once

#include <cstdint>
#include <map>

#include <Eigen/Dense>

#include "alloy/density.hpp"
#include "alloy/lattice.hpp"
#include "alloy/potential.hpp"

namespace alloy {

struct ModelConfig {
    int d = 1;
    double lambda = 1.0;
    SingleSitePotential u;
    Density rho;

    // throws precondition_error unless d >= 1, lambda > 0 and u has dimension d
    void validate() const;
    // Same model at another coupling. lambda = 0 is allowed here for the
    // disorder-free reference runs.
    ModelConfig with_lambda(double lambda) const;
};

// Couplings omega_k on a finite set of sites.
struct Configuration {
    std::map<Site, double> values;
    std::uint64_t seed = 0;

    double at(const Site& k) const;
};

// V(x) = sum_k omega_k u(x - k); throws if a needed omega_k is missing.
double potential_value(const SingleSitePotential& u, const Configuration& omega, const Site& x);

// Sites k with u(x - k) != 0 for some x in g.
Box lambda_plus(const Box& g, const SingleSitePotential& u);

// Hopping matrix of the box: 1 for l1-neighbours inside the box, else 0.
Eigen::MatrixXd adjacency(const Box& g);

// H = -Delta + lambda V restricted to g (no diagonal -2d term).
Eigen::MatrixXd assemble_hamiltonian(const ModelConfig& model, const Configuration& omega, const Box& g);

// One coupling per site drawn from rho, keyed by (seed, site).
double draw_coupling(const Density& rho, std::uint64_t seed, const Site& k);
Configuration sample_configuration(const ModelConfig& model, const Box& sites, std::uint64_t seed);

// Precomputed layout for repeated sampling on one box: H(omega) = -Delta + lambda S omega
// with S(x, k) = u(x - k) for x in the box and k in lambda_plus.
class DisorderedBox {
public:
    DisorderedBox(const ModelConfig& model, Box g);

    const Box& box() const { return box_; }
    const Box& plus() const { return plus_; }
    const ModelConfig& model() const { return model_; }

    Eigen::VectorXd sample(std::uint64_t seed) const;
    Eigen::VectorXd potential(const Eigen::VectorXd& omega) const { return stencil_ * omega; }
    Eigen::MatrixXd hamiltonian(const Eigen::VectorXd& omega) const;
    Configuration configuration(const Eigen::VectorXd& omega, std::uint64_t seed = 0) const;

private:
    ModelConfig model_;
    Box box_;
    Box plus_;
    Eigen::MatrixXd stencil_;
    Eigen::MatrixXd minus_laplacian_;
};

}  // namespace alloy
