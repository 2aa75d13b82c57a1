#include "alloy/green.hpp"

#include "alloy/error.hpp"

namespace alloy {

namespace {

Eigen::MatrixXcd shifted(const Eigen::MatrixXd& h, cplx z) {
    Eigen::MatrixXcd a = h.cast<cplx>();
    a.diagonal().array() -= z;
    return a;
}

Eigen::MatrixXcd inverse_checked(const Eigen::MatrixXcd& a) {
    if (a.rows() == 0) return a;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    if (!(lu.rcond() > 1e-14)) throw solve_error("resolvent solve is numerically singular");
    return lu.inverse();
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<long> indices(const Box& g, const Box& sub) {
    std::vector<long> idx;
    idx.reserve(sub.size());
    for (const Site& s : sub.sites()) {
        long i = g.index_of(s);
        if (i < 0) throw precondition_error("site " + to_string(s) + " is not in the enclosing box");
        idx.push_back(i);
    }
    return idx;
}

}  // namespace

Eigen::MatrixXcd green(const Eigen::MatrixXd& h, cplx z) {
    require(h.rows() == h.cols(), "Hamiltonian must be square");
    return inverse_checked(shifted(h, z));
}

Eigen::MatrixXd restrict(const Eigen::MatrixXd& m, const Box& g, const Box& rows, const Box& cols) {
    auto r = indices(g, rows);
    auto c = indices(g, cols);
    return m(r, c);
}

Eigen::MatrixXd restrict(const Eigen::MatrixXd& m, const Box& g, const Box& sub) {
    return restrict(m, g, sub, sub);
}

Eigen::MatrixXcd restrict(const Eigen::MatrixXcd& m, const Box& g, const Box& sub) {
    auto r = indices(g, sub);
    return m(r, r);
}

DepletedOperators depleted(const Box& gamma, const Box& lambda, const Eigen::MatrixXd& h) {
    require(is_subset(lambda, gamma), "depleted set must be a subset of the box");
    const long n = static_cast<long>(gamma.size());
    DepletedOperators out{h, Eigen::MatrixXd::Zero(n, n)};
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            if (i == j || lambda.contains(gamma[i]) == lambda.contains(gamma[j])) continue;
            if (norm1(gamma[i] - gamma[j]) != 1) continue;
            out.coupling(i, j) = 1.0;
            out.depleted(i, j) = 0.0;
        }
    }
    return out;
}

DepletedOperators depleted(const Box& gamma, const Box& lambda, const ModelConfig& model,
                           const Configuration& omega) {
    return depleted(gamma, lambda, assemble_hamiltonian(model, omega, gamma));
}

Eigen::MatrixXcd schur_B(const Box& gamma, const Box& lambda, const ModelConfig& model,
                         const Configuration& omega, cplx z) {
    require(is_subset(lambda, gamma), "Schur set must be a subset of the box");
    const long n = static_cast<long>(lambda.size());
    Box ext = set_difference(gamma, lambda);
    if (ext.empty() || n == 0) return Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXd hop = adjacency(gamma);
    Eigen::MatrixXcd out_hop = restrict(hop, gamma, lambda, ext).cast<cplx>();
    Eigen::MatrixXcd in_hop = restrict(hop, gamma, ext, lambda).cast<cplx>();
    Eigen::MatrixXcd a = shifted(assemble_hamiltonian(model, omega, ext), z);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    if (!(lu.rcond() > 1e-14)) throw solve_error("exterior block is numerically singular");
    return out_hop * lu.solve(in_hop);
}

double verify_schur_identity(const Box& gamma, const Box& lambda, const ModelConfig& model,
                             const Configuration& omega, cplx z) {
    Eigen::MatrixXcd g = green(assemble_hamiltonian(model, omega, gamma), z);
    Eigen::MatrixXcd lhs = restrict(g, gamma, lambda);
    Eigen::MatrixXcd b = schur_B(gamma, lambda, model, omega, z);
    Eigen::MatrixXcd m = shifted(assemble_hamiltonian(model, omega, lambda), z) - b;
    return max_abs(lhs - inverse_checked(m));
}

double verify_two_step_schur(const Box& gamma, const Box& lambda1, const Box& lambda2,
                             const ModelConfig& model, const Configuration& omega, cplx z) {
    require(is_subset(lambda1, lambda2) && is_subset(lambda2, gamma),
            "two-step Schur needs Lambda1 in Lambda2 in Gamma");
    if (lambda1.sorted() == lambda2.sorted()) return verify_schur_identity(gamma, lambda2, model, omega, z);
    require(!lambda1.empty(), "two-step Schur needs a nonempty inner set");
    Box inner_edge = set_intersection(interior_boundary(lambda2), lambda1);
    if (!inner_edge.empty())
        throw precondition_error("interior boundary of the middle set meets the inner set at " +
                                 to_string(inner_edge[0]));

    Box rest = set_difference(lambda2, lambda1);
    Eigen::MatrixXcd b2 = schur_B(gamma, lambda2, model, omega, z);
    Eigen::MatrixXcd b_rest = restrict(b2, lambda2, rest);
    Eigen::MatrixXcd m_rest = shifted(assemble_hamiltonian(model, omega, rest), z) - b_rest;

    Eigen::MatrixXd hop = adjacency(lambda2);
    Eigen::MatrixXcd out_hop = restrict(hop, lambda2, lambda1, rest).cast<cplx>();
    Eigen::MatrixXcd in_hop = restrict(hop, lambda2, rest, lambda1).cast<cplx>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m_rest);
    Eigen::MatrixXcd inner = shifted(assemble_hamiltonian(model, omega, lambda1), z) - out_hop * lu.solve(in_hop);

    Eigen::MatrixXcd g = green(assemble_hamiltonian(model, omega, gamma), z);
    return max_abs(restrict(g, gamma, lambda1) - inverse_checked(inner));
}

ResolventResiduals verify_resolvent_identities(const Box& gamma, const Box& lambda, const ModelConfig& model,
                                               const Configuration& omega, cplx z) {
    Eigen::MatrixXd h = assemble_hamiltonian(model, omega, gamma);
    DepletedOperators dep = depleted(gamma, lambda, h);
    Eigen::MatrixXcd g = green(h, z);
    Eigen::MatrixXcd gl = green(dep.depleted, z);
    Eigen::MatrixXcd t = dep.coupling.cast<cplx>();
    ResolventResiduals r;
    r.first_order = max_abs(g - (gl + g * t * gl));
    r.second_order = max_abs(g - (gl + gl * t * gl + gl * t * g * t * gl));
    return r;
}

}  // namespace alloy
