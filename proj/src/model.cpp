#include "alloy/model.hpp"

#include <set>

#include "alloy/error.hpp"
#include "alloy/rng.hpp"

namespace alloy {

void ModelConfig::validate() const {
    require(d >= 1, "dimension must be >= 1");
    require(lambda > 0, "coupling lambda must be > 0");
    require(u.dim() == d, "potential dimension does not match the model dimension");
}

ModelConfig ModelConfig::with_lambda(double l) const {
    require(l >= 0, "coupling must be >= 0");
    ModelConfig m = *this;
    m.lambda = l;
    return m;
}

double Configuration::at(const Site& k) const {
    auto it = values.find(k);
    if (it == values.end())
        throw precondition_error("configuration has no coupling at site " + to_string(k));
    return it->second;
}

double potential_value(const SingleSitePotential& u, const Configuration& omega, const Site& x) {
    double v = 0;
    for (auto& [t, ut] : u.values()) v += omega.at(x - t) * ut;
    return v;
}

Box lambda_plus(const Box& g, const SingleSitePotential& u) {
    if (g.empty()) return g;
    std::set<Site> s;
    for (const Site& x : g.sites())
        for (auto& [t, ut] : u.values()) s.insert(x - t);
    return Box(g.dim(), std::vector<Site>(s.begin(), s.end()));
}

Eigen::MatrixXd adjacency(const Box& g) {
    const long n = static_cast<long>(g.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (long i = 0; i < n; ++i)
        for (const Site& y : neighbours(g[i])) {
            long j = g.index_of(y);
            if (j >= 0) a(i, j) = 1.0;
        }
    return a;
}

Eigen::MatrixXd assemble_hamiltonian(const ModelConfig& model, const Configuration& omega, const Box& g) {
    Eigen::MatrixXd h = -adjacency(g);
    for (std::size_t i = 0; i < g.size(); ++i)
        h(i, i) = model.lambda * potential_value(model.u, omega, g[i]);
    return h;
}

double draw_coupling(const Density& rho, std::uint64_t seed, const Site& k) {
    return rho.quantile(to_unit(site_key(seed, k)));
}

Configuration sample_configuration(const ModelConfig& model, const Box& sites, std::uint64_t seed) {
    Configuration c;
    c.seed = seed;
    for (const Site& k : sites.sites()) c.values[k] = draw_coupling(model.rho, seed, k);
    return c;
}

DisorderedBox::DisorderedBox(const ModelConfig& model, Box g)
    : model_(model), box_(std::move(g)), plus_(lambda_plus(box_, model.u)) {
    const long n = static_cast<long>(box_.size());
    stencil_ = Eigen::MatrixXd::Zero(n, static_cast<long>(plus_.size()));
    for (long i = 0; i < n; ++i)
        for (auto& [t, ut] : model.u.values()) stencil_(i, plus_.index_of(box_[i] - t)) += ut;
    minus_laplacian_ = -adjacency(box_);
}

Eigen::VectorXd DisorderedBox::sample(std::uint64_t seed) const {
    Eigen::VectorXd w(static_cast<long>(plus_.size()));
    for (std::size_t k = 0; k < plus_.size(); ++k) w[k] = draw_coupling(model_.rho, seed, plus_[k]);
    return w;
}

Eigen::MatrixXd DisorderedBox::hamiltonian(const Eigen::VectorXd& omega) const {
    Eigen::MatrixXd h = minus_laplacian_;
    h.diagonal() += model_.lambda * (stencil_ * omega);
    return h;
}

Configuration DisorderedBox::configuration(const Eigen::VectorXd& omega, std::uint64_t seed) const {
    Configuration c;
    c.seed = seed;
    for (std::size_t k = 0; k < plus_.size(); ++k) c.values[plus_[k]] = omega[k];
    return c;
}

}  // namespace alloy
