#include "alloy/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alloy/error.hpp"
#include "alloy/rng.hpp"

namespace alloy {

PinningConstants pinning_constants(const SingleSitePotential& u) {
    require(u.dim() == 1, "needs d = 1");
    require(!u.tail(), "needs a finite support");
    PinningConstants k;
    int hi = -1;
    for (auto& [t, v] : u.values()) {
        require(t[0] >= 0, "support must be {0, ..., n-1}");
        hi = std::max(hi, t[0]);
    }
    k.n = hi + 1;
    double umax = 0, umin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k.n; ++i) {
        double v = u({i});
        require(v != 0.0, "every u(k) on {0, ..., n-1} must be nonzero");
        (v > 0 ? k.positive : k.negative).insert(i);
        umax = std::max(umax, std::abs(v));
        umin = std::min(umin, std::abs(v));
        if (v > 0) k.s_plus += v;
    }
    if (!k.positive.count(k.n - 1)) {
        for (int p : k.positive) k.theta1.insert(p + 1);
    } else {
        for (int p : k.positive)
            if (p + 1 < k.n) k.theta1.insert(p + 1);
        k.theta1.insert(0);
    }
    for (int i = 0; i < k.n; ++i)
        if (!k.theta1.count(i)) k.theta0.insert(i);
    for (int t : k.theta1) k.m += u({t});
    k.c = k.n * umax / umin;
    k.degenerate = k.n == 1;
    return k;
}

PinningReport pinning_check(const SingleSitePotential& u, double delta, double delta_prime, long attempts,
                                  std::uint64_t seed) {
    require(delta_prime > 0 && delta >= delta_prime, "need delta >= delta' > 0");
    require(attempts >= 1, "need at least one attempt");
    PinningReport rep;
    rep.constants = pinning_constants(u);
    rep.attempts = attempts;
    const int n = rep.constants.n;
    const double lo = rep.constants.s_plus - delta_prime, hi = rep.constants.s_plus;

    // V(-1) = sum_k u(k) omega_{-1-k}: block omega_{-n..-1}; V(n-1): block omega_{0..n-1}
    std::vector<std::vector<double>> left, right;
    Stream sl(combine(seed, 1)), sr(combine(seed, 2));
    std::vector<double> w(static_cast<std::size_t>(n));
    for (long a = 0; a < attempts; ++a) {
        for (auto& x : w) x = sl.uniform();  // w[j] = omega_{-n+j}
        double v = 0;
        for (int k = 0; k < n; ++k) v += u({k}) * w[static_cast<std::size_t>(n - 1 - k)];
        if (v >= lo && v <= hi) left.push_back(w);
    }
    for (long a = 0; a < attempts; ++a) {
        for (auto& x : w) x = sr.uniform();  // w[j] = omega_j
        double v = 0;
        for (int k = 0; k < n; ++k) v += u({k}) * w[static_cast<std::size_t>(n - 1 - k)];
        if (v >= lo && v <= hi) right.push_back(w);
    }
    rep.accepted_left = static_cast<long>(left.size());
    rep.accepted_right = static_cast<long>(right.size());
    const double rate = std::min(rep.accepted_left, rep.accepted_right) / double(attempts);
    rep.inconclusive = rate < 1e-6;
    if (rep.inconclusive) return rep;

    const double m = rep.constants.m, c = rep.constants.c;
    // V(0) = sum_k u(k) omega_{-k}; omega_0 lies in the right block, omega_{-k} (k >= 1) in the left
    auto check = [&](const std::vector<double>& L, const std::vector<double>& R) {
        double v0 = u({0}) * R[0];
        for (int k = 1; k < n; ++k) v0 += u({k}) * L[static_cast<std::size_t>(n - k)];
        ++rep.pairs;
        if (v0 < m - c * delta || v0 > m + c * delta) ++rep.violations;
    };
    if (double(left.size()) * double(right.size()) <= 4e6) {
        for (const auto& L : left)
            for (const auto& R : right) check(L, R);
    } else {
        // too many combinations: pair them up in order instead
        for (std::size_t i = 0; i < std::min(left.size(), right.size()); ++i) check(left[i], right[i]);
    }
    rep.violation_fraction = rep.pairs ? double(rep.violations) / double(rep.pairs) : 0.0;
    return rep;
}

Eigen::MatrixXd a_matrix(double u_m1, int l) {
    require(l >= 0, "l must be >= 0");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(l, l + 1);
    for (int i = 0; i < l; ++i) {
        a(i, i) = 1.0;
        a(i, i + 1) = u_m1;
    }
    return a;
}

double s_value(double u_m1, int l) {
    double s = 0, p = 1;
    for (int i = 0; i <= l; ++i, p *= u_m1 * u_m1) s += p;
    return s;
}

double s_value_from_one(double u_m1, int l) { return s_value(u_m1, l) - 1.0; }

ALDeterminant a_l_determinants(double u_m1, int l) {
    require(l >= 1, "l must be >= 1");
    ALDeterminant r;
    r.l = l;
    Eigen::MatrixXd a = a_matrix(u_m1, l);
    Eigen::MatrixXd g = a * a.transpose();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(g);
    r.det = lu.determinant();
    r.s = s_value(u_m1, l);
    r.s_from_one = s_value_from_one(u_m1, l);
    Eigen::MatrixXd inv = lu.inverse();
    r.corner_first = inv(0, 0);
    r.corner_last = inv(l - 1, l - 1);
    r.corner_expected = s_value(u_m1, l - 1) / r.s;
    return r;
}

GaussianConditional gaussian_conditional(double u_m1, double sigma, int l, int m, const Eigen::VectorXd& v_minus,
                                         const Eigen::VectorXd& v_plus) {
    require(l >= 0 && m >= 0, "l and m must be >= 0");
    require(sigma > 0, "sigma must be > 0");
    require(v_minus.size() == m && v_plus.size() == l, "conditioning vectors must have lengths m and l");
    GaussianConditional g;
    g.l = l;
    g.m = m;
    g.u_m1 = u_m1;
    g.sigma = sigma;
    const double s2 = sigma * sigma;

    // closed form
    g.variance = s2 * (u_m1 * u_m1 - 1 + 1 / s_value(u_m1, m) + 1 / s_value(u_m1, l));
    g.mean_weights = Eigen::VectorXd::Zero(m + l);
    if (m > 0) {
        Eigen::MatrixXd inv = (a_matrix(u_m1, m) * a_matrix(u_m1, m).transpose()).inverse();
        g.mean_weights.head(m) = u_m1 * inv.row(m - 1).transpose();
    }
    if (l > 0) {
        Eigen::MatrixXd inv = (a_matrix(u_m1, l) * a_matrix(u_m1, l).transpose()).inverse();
        g.mean_weights.tail(l) = u_m1 * inv.row(0).transpose();
    }
    Eigen::VectorXd v(m + l);
    v << v_minus, v_plus;
    g.mean = g.mean_weights.dot(v);

    // covariance algebra on X = omega_{-m..l+1}; V(k) = omega_k + u_{-1} omega_{k+1}
    const int nx = m + l + 2;
    auto row = [&](int k) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(nx);
        r(k + m) = 1.0;
        r(k + 1 + m) = u_m1;
        return r;
    };
    Eigen::RowVectorXd a = row(0);
    Eigen::MatrixXd B(m + l, nx);
    int i = 0;
    for (int k = -m; k <= -1; ++k) B.row(i++) = row(k);
    for (int k = 1; k <= l; ++k) B.row(i++) = row(k);
    const double cyy = s2 * a.squaredNorm();
    if (m + l == 0) {
        g.oracle_variance = cyy;
        g.oracle_weights = Eigen::VectorXd::Zero(0);
        return g;
    }
    Eigen::MatrixXd cww = s2 * B * B.transpose();
    Eigen::VectorXd cwy = s2 * B * a.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(cww);
    require(lu.isInvertible(), "cov(W, W) is singular");
    g.oracle_weights = lu.solve(cwy);
    g.oracle_variance = cyy - cwy.dot(g.oracle_weights);
    g.oracle_mean = g.oracle_weights.dot(v);
    return g;
}

std::vector<HolderProbe> holder_constant_probe(double u_m1, double sigma, const std::vector<int>& Ls) {
    std::vector<HolderProbe> out;
    for (int L : Ls) {
        require(L >= 1, "L must be >= 1");
        HolderProbe p;
        p.L = L;
        p.min_std = std::numeric_limits<double>::infinity();
        for (int x = -L; x <= L; ++x) {
            const int m = x + L, l = L - x;
            double var = sigma * sigma * (u_m1 * u_m1 - 1 + 1 / s_value(u_m1, m) + 1 / s_value(u_m1, l));
            double sd = std::sqrt(std::max(var, 0.0));
            if (sd < p.min_std) {
                p.min_std = sd;
                p.argmin = x;
            }
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace alloy
