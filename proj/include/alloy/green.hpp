#pragma once

#include <complex>

#include <Eigen/Dense>

#include "alloy/model.hpp"

namespace alloy {

using cplx = std::complex<double>;

// (H - z)^{-1}. Throws solve_error when H - z is numerically singular.
Eigen::MatrixXcd green(const Eigen::MatrixXd& h, cplx z);

// Rows/columns of m selected by the sites of `sub`, in sub's order.
Eigen::MatrixXd restrict(const Eigen::MatrixXd& m, const Box& g, const Box& sub);
Eigen::MatrixXcd restrict(const Eigen::MatrixXcd& m, const Box& g, const Box& sub);
Eigen::MatrixXd restrict(const Eigen::MatrixXd& m, const Box& g, const Box& rows, const Box& cols);

// H^Lambda with all bonds between Lambda and its complement in Gamma removed, and
// the removed hopping T = Delta - Delta^Lambda, so that H = H^Lambda - T.
struct DepletedOperators {
    Eigen::MatrixXd depleted;
    Eigen::MatrixXd coupling;
};
DepletedOperators depleted(const Box& gamma, const Box& lambda, const Eigen::MatrixXd& h);
DepletedOperators depleted(const Box& gamma, const Box& lambda, const ModelConfig& model,
                           const Configuration& omega);

// Exterior feedback on Lambda: P_Lambda Delta (H_{Gamma\Lambda} - z)^{-1} Delta P_Lambda,
// built from the hopping of Gamma and the Hamiltonian of Gamma\Lambda alone.
Eigen::MatrixXcd schur_B(const Box& gamma, const Box& lambda, const ModelConfig& model,
                         const Configuration& omega, cplx z);

// max |P G_Gamma P* - (H_Lambda - B - z)^{-1}| over Lambda x Lambda
double verify_schur_identity(const Box& gamma, const Box& lambda, const ModelConfig& model,
                             const Configuration& omega, cplx z);

// Nested complement through Lambda1 in Lambda2 in Gamma. Needs the interior
// boundary of Lambda2 to avoid Lambda1; Lambda1 = Lambda2 falls back to the
// single-step identity on Lambda2.
double verify_two_step_schur(const Box& gamma, const Box& lambda1, const Box& lambda2,
                             const ModelConfig& model, const Configuration& omega, cplx z);

// Residuals of G = G^L + G T G^L and G = G^L + G^L T G^L + G^L T G T G^L.
struct ResolventResiduals {
    double first_order = 0;
    double second_order = 0;
};
ResolventResiduals verify_resolvent_identities(const Box& gamma, const Box& lambda, const ModelConfig& model,
                                               const Configuration& omega, cplx z);

}  // namespace alloy
