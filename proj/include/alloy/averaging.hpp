#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "alloy/density.hpp"
#include "alloy/parallel.hpp"

namespace alloy {

// An average compared against its closed-form upper bound. `error` is the
// quadrature error estimate, or the Monte Carlo standard error when trials > 0.
struct AverageCheck {
    double integral = 0;
    double error = 0;
    double bound = 0;
    double margin = 0;  // bound - integral
    long trials = 0;

    // integral <= bound + slack, where slack is 3 standard errors for Monte
    // Carlo results and max(abs_tol, error) otherwise
    bool holds(double abs_tol = 1e-6) const;
};

// int |xi - beta|^{-s} rho(xi) d xi  vs  ||rho||_inf^s 2^s s^{-s} / (1 - s)
AverageCheck scalar_singular_check(const Density& rho, double s, std::complex<double> beta);

// int |det(A + rV)|^{-s/n} rho(r) dr  vs  |det V|^{-s/n} ||rho||_inf^s 2^s s^{-s} / (1 - s)
AverageCheck det_average_check(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& v, const Density& rho, double s);

// (N+1)-fold average of |det(A + sum r_i V_i)|^{-t/n} by Monte Carlo vs the bound
// with the alpha-ratio factor and (2R)^{Nt}. Trial i uses its own stream.
AverageCheck multi_determinant_check(const Eigen::MatrixXcd& a, const std::vector<Eigen::MatrixXcd>& v,
                          const std::vector<double>& alpha, const Density& rho, double t, long trials,
                          std::uint64_t seed, Exec exec = Exec::parallel);

struct NormInverseCheck {
    double lhs = 0;  // ||V^{-1}||
    double rhs = 0;  // ||V||^{n-1} / |det V|
};
NormInverseCheck norm_inverse_check(const Eigen::MatrixXcd& v);

// int ||(A + rV)^{-1}||^{s/n} rho(r) dr  vs the bound with (||A|| + R||V||)^{s(n-1)/n}
AverageCheck resolvent_average_check(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& v, const Density& rho,
                                     double s);

// Monotone averaging with a non-explicit constant: reports the integral of
// ||M1 (A + rV)^{-1} M2||^s and the smallest c with
// integral <= (n c ||M1 V^{-1/2}|| ||M2 V^{-1/2}|| ||rho||_inf)^s / (1 - s).
struct DissipativeFit {
    double integral = 0;
    double error = 0;
    double fitted_c = 0;
};
DissipativeFit dissipative_average_check(const Eigen::MatrixXcd& a, const Eigen::VectorXd& v_diag,
                                         const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2, const Density& rho,
                                         double s);

// int |<x, (A + tW)^{-1} y>|^s rho(t) dt for A with nonnegative imaginary part
// (any spectral shift already folded into A) and W >= 0 diagonal with
// W(x), W(y) > 0, vs 8 4^{-s} [W(x) W(y)]^{-s/2} ||rho||_inf^s 2^s s^{-s} / (1 - s).
AverageCheck nonmonotone_average_check(const Eigen::MatrixXcd& a, const Eigen::VectorXd& w_diag, const Density& rho,
                                       double s, long x, long y);

// 2^s s^{-s} / (1 - s)
double singular_average_constant(double s);

}  // namespace alloy
