#include "alloy/averaging.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "alloy/error.hpp"
#include "alloy/quadrature.hpp"
#include "alloy/rng.hpp"

namespace alloy {

using cplx = std::complex<double>;

namespace {

void check_exponent(double s) { require(s > 0 && s < 1, "averaging exponent must lie in (0, 1)"); }

double abs_det(const Eigen::MatrixXcd& m) { return std::abs(Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant()); }

double op_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

double min_singular(const Eigen::MatrixXcd& m) {
    auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
    return sv(sv.size() - 1);
}

void require_invertible(const Eigen::MatrixXcd& v, const char* what) {
    require(v.rows() == v.cols() && v.rows() > 0, std::string(what) + " must be a nonempty square matrix");
    double smin = min_singular(v);
    require(smin > 1e-12 * std::max(1.0, op_norm(v)), std::string(what) + " must be invertible");
}

// Real parts of the roots r of det(A + rV), i.e. eigenvalues of -V^{-1} A.
std::vector<double> pencil_roots(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& v) {
    Eigen::MatrixXcd m = -v.partialPivLu().solve(a);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<double> out;
    for (long i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i).real());
    return out;
}

AverageCheck finish(double integral, double error, double bound) {
    AverageCheck c;
    c.integral = integral;
    c.error = error;
    c.bound = bound;
    c.margin = bound - integral;
    return c;
}

QuadResult against_density(const std::function<double(double)>& f, const Density& rho,
                           const std::vector<double>& singular, double exponent) {
    auto g = [&](double r) { return f(r) * rho.pdf(r); };
    return integrate_singular(g, rho.lo(), rho.hi(), singular, rho.breakpoints(), exponent);
}

}  // namespace

bool AverageCheck::holds(double abs_tol) const {
    double slack = trials > 0 ? 3 * error : std::max(abs_tol, error);
    return integral <= bound + slack;
}

double singular_average_constant(double s) { return std::pow(2.0, s) * std::pow(s, -s) / (1 - s); }

AverageCheck scalar_singular_check(const Density& rho, double s, cplx beta) {
    check_exponent(s);
    auto f = [&](double xi) { return std::pow(std::abs(xi - beta), -s); };
    QuadResult q = against_density(f, rho, {beta.real()}, s);
    double bound = std::pow(rho.sup_norm(), s) * std::pow(rho.l1_norm(), 1 - s) * singular_average_constant(s);
    return finish(q.value, q.error, bound);
}

AverageCheck det_average_check(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& v, const Density& rho, double s) {
    check_exponent(s);
    require_invertible(v, "V");
    require(a.rows() == v.rows() && a.cols() == v.cols(), "A and V must have the same shape");
    const double n = static_cast<double>(v.rows());
    auto f = [&](double r) { return std::pow(abs_det(a + r * v), -s / n); };
    QuadResult q = against_density(f, rho, pencil_roots(a, v), s);
    double bound = std::pow(abs_det(v), -s / n) * std::pow(rho.sup_norm(), s) * singular_average_constant(s);
    return finish(q.value, q.error, bound);
}

AverageCheck multi_determinant_check(const Eigen::MatrixXcd& a, const std::vector<Eigen::MatrixXcd>& v,
                          const std::vector<double>& alpha, const Density& rho, double t, long trials,
                          std::uint64_t seed, Exec exec) {
    check_exponent(t);
    require(!v.empty() && v.size() == alpha.size(), "need one alpha per V_k");
    require(alpha[0] != 0.0, "alpha_0 must be nonzero");
    require(trials >= 2, "need at least two Monte Carlo trials");
    const long n = a.rows();
    Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < v.size(); ++k) {
        require(v[k].rows() == n && v[k].cols() == n, "V_k shape mismatch");
        combo += alpha[k] * v[k];
    }
    require_invertible(combo, "sum alpha_k V_k");

    const double N = static_cast<double>(v.size() - 1);
    double ratio = 0;
    for (std::size_t k = 1; k < alpha.size(); ++k) ratio = std::max(ratio, std::abs(alpha[k] / alpha[0]));
    const double R = rho.radius();
    double bound = std::pow(abs_det(combo), -t / n) * std::pow(std::abs(alpha[0]), t) * std::pow(1 + ratio, N * t) *
                   singular_average_constant(t) * std::pow(2 * R, N * t) * std::pow(rho.sup_norm(), (N + 1) * t);

    Eigen::MatrixXd samples = map_trials(trials, 1, exec, [&](long trial) {
        Stream st(trial_seed(seed, static_cast<std::uint64_t>(trial)));
        Eigen::MatrixXcd m = a;
        for (const auto& vk : v) m += rho.quantile(st.uniform()) * vk;
        Eigen::VectorXd out(1);
        out[0] = std::pow(abs_det(m), -t / n);
        return out;
    });
    SampleStats st = summarize(samples);
    AverageCheck c = finish(st.mean, st.std_error, bound);
    c.trials = trials;
    return c;
}

NormInverseCheck norm_inverse_check(const Eigen::MatrixXcd& v) {
    require_invertible(v, "V");
    NormInverseCheck c;
    c.lhs = 1.0 / min_singular(v);
    c.rhs = std::pow(op_norm(v), static_cast<double>(v.rows() - 1)) / abs_det(v);
    return c;
}

AverageCheck resolvent_average_check(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& v, const Density& rho,
                                     double s) {
    check_exponent(s);
    require_invertible(v, "V");
    require(a.rows() == v.rows() && a.cols() == v.cols(), "A and V must have the same shape");
    const double n = static_cast<double>(v.rows());
    auto f = [&](double r) { return std::pow(min_singular(a + r * v), -s / n); };
    QuadResult q = against_density(f, rho, pencil_roots(a, v), s);
    const double R = rho.radius();
    double bound = std::pow(rho.sup_norm(), s) * std::pow(op_norm(a) + R * op_norm(v), s * (n - 1) / n) /
                   (std::pow(s, s) * std::pow(2.0, -s) * (1 - s) * std::pow(abs_det(v), s / n));
    return finish(q.value, q.error, bound);
}

DissipativeFit dissipative_average_check(const Eigen::MatrixXcd& a, const Eigen::VectorXd& v_diag,
                                         const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2, const Density& rho,
                                         double s) {
    check_exponent(s);
    const long n = a.rows();
    require(v_diag.size() == n && (v_diag.array() > 0).all(), "V must be diagonal and strictly positive");
    Eigen::MatrixXcd im = (a - a.adjoint()) / cplx(0, 2);
    double im_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(im, Eigen::EigenvaluesOnly).eigenvalues()(0);
    require(im_min >= -1e-12, "A must be dissipative (imaginary part positive semidefinite)");

    Eigen::MatrixXcd v = v_diag.cast<cplx>().asDiagonal();
    auto f = [&](double r) {
        Eigen::MatrixXcd res = m1 * (a + r * v).partialPivLu().solve(m2);
        return std::pow(op_norm(res), s);
    };
    QuadResult q = against_density(f, rho, pencil_roots(a, v), s);
    Eigen::MatrixXcd v_half_inv = v_diag.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal();
    double scale = static_cast<double>(n) * op_norm(m1 * v_half_inv) * op_norm(m2 * v_half_inv) * rho.sup_norm();
    DissipativeFit fit;
    fit.integral = q.value;
    fit.error = q.error;
    fit.fitted_c = scale > 0 ? std::pow((1 - s) * q.value, 1 / s) / scale : 0.0;
    return fit;
}

AverageCheck nonmonotone_average_check(const Eigen::MatrixXcd& a, const Eigen::VectorXd& w_diag, const Density& rho,
                                       double s, long x, long y) {
    check_exponent(s);
    const long n = a.rows();
    require(w_diag.size() == n && (w_diag.array() >= 0).all(), "W must be a nonnegative multiplication");
    require(x >= 0 && x < n && y >= 0 && y < n, "site index out of range");
    require(w_diag[x] > 0 && w_diag[y] > 0, "W must be positive at x and y");
    Eigen::MatrixXcd im = (a - a.adjoint()) / cplx(0, 2);
    double im_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(im, Eigen::EigenvaluesOnly).eigenvalues()(0);
    require(im_min >= -1e-12, "A must have positive semidefinite imaginary part");

    Eigen::MatrixXcd w = w_diag.cast<cplx>().asDiagonal();
    Eigen::VectorXcd ey = Eigen::VectorXcd::Unit(n, y);
    auto f = [&](double t) {
        Eigen::VectorXcd col = (a + t * w).partialPivLu().solve(ey);
        return std::pow(std::abs(col[x]), s);
    };
    std::vector<double> sing;
    if ((w_diag.array() > 0).all()) sing = pencil_roots(a, w);
    QuadResult q = against_density(f, rho, sing, s);
    double bound = 8 * std::pow(4.0, -s) * std::pow(w_diag[x] * w_diag[y], -s / 2) * std::pow(rho.sup_norm(), s) *
                   singular_average_constant(s);
    return finish(q.value, q.error, bound);
}

}  // namespace alloy
