#pragma once

#include <cmath>
#include <vector>

#include "alloy/lattice.hpp"
#include "alloy/model.hpp"

namespace testing_helpers {

inline alloy::Box line(int a, int b) {
    std::vector<alloy::Site> s;
    for (int i = a; i <= b; ++i) s.push_back({i});
    return alloy::Box(1, s);
}

inline alloy::ModelConfig make_model(alloy::SingleSitePotential u, alloy::Density rho, double lambda) {
    alloy::ModelConfig m;
    m.d = u.dim();
    m.lambda = lambda;
    m.u = std::move(u);
    m.rho = std::move(rho);
    return m;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace testing_helpers
