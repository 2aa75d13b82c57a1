#include "alloy/oned.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "alloy/averaging.hpp"
#include "alloy/error.hpp"
#include "alloy/rng.hpp"

namespace alloy {

namespace {

// u(0..n-1) for a one-dimensional potential supported in {0, ..., n-1}.
std::vector<double> chain_values(const SingleSitePotential& u) {
    require(u.dim() == 1, "one-dimensional constants need d = 1");
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (auto& [k, v] : u.values()) {
        lo = std::min(lo, k[0]);
        hi = std::max(hi, k[0]);
    }
    require(lo == 0, "support must have minimum 0");
    std::vector<double> vals(static_cast<std::size_t>(hi + 1), 0.0);
    for (auto& [k, v] : u.values()) vals[static_cast<std::size_t>(k[0])] = v;
    return vals;
}

double u_at(const std::vector<double>& vals, int i) {
    return (i >= 0 && i < static_cast<int>(vals.size())) ? vals[static_cast<std::size_t>(i)] : 0.0;
}

}  // namespace

double OneDConstants::bound(int dist) const { return C_plus * std::exp(-mu * std::floor(double(dist) / n)); }

OneDConstants one_d_constants(const SingleSitePotential& u, const Density& rho, double lambda, double s) {
    require(s > 0 && s < 1, "s must lie in (0, 1)");
    require(lambda > 0, "lambda must be > 0");
    std::vector<double> vals = chain_values(u);
    for (double v : vals) require(v != 0.0, "support is not connected; use the gap constants instead");
    OneDConstants c;
    c.n = static_cast<int>(vals.size());
    c.s = s;
    c.lambda = lambda;
    const double n = c.n, rinf = rho.sup_norm();
    double prod = 1, worst = 0;
    for (double v : vals) {
        prod *= v;
        worst = std::max(worst, std::pow(std::abs(prod), -s / n));
    }
    c.C_u = std::pow(std::abs(prod), -s / n);
    c.C_rho = std::pow(rinf, s) * singular_average_constant(s);
    c.C = c.C_u * c.C_rho / std::pow(lambda, s);
    c.C_u_plus = worst;
    c.C_rho_plus = std::max(std::pow(rinf, s), std::pow(rinf, s / n)) * singular_average_constant(s);
    c.C_plus = c.C_u_plus * c.C_rho_plus * std::max(std::pow(lambda, -s), std::pow(lambda, -s / n));
    c.mu = -std::log(c.C);
    c.threshold_lambda = rinf / (std::pow(1 - s, 1 / s) * (s / 2) * std::pow(std::abs(prod), 1 / n));
    return c;
}

double GapConstants::bound(int dist) const {
    return D_plus_alpha * std::exp(-m * std::floor(double(dist) / (n + r)));
}

int largest_gap(const SingleSitePotential& u) {
    std::vector<double> vals = chain_values(u);
    int best = 0, run = 0;
    for (double v : vals) {
        run = (v == 0.0) ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best;
}

GapConstants gap_constants(const SingleSitePotential& u, const Density& rho, double lambda, double s,
                           std::uint64_t seed, int samples) {
    require(s > 0 && s < 1, "s must lie in (0, 1)");
    require(lambda > 0, "lambda must be > 0");
    require(samples > 0, "need a positive number of search samples");
    std::vector<double> vals = chain_values(u);
    GapConstants g;
    g.n = static_cast<int>(vals.size());
    g.r = largest_gap(u);
    g.s = s;
    g.lambda = lambda;
    const int n = g.n, r = g.r, rows = n + r;
    const double nr = rows, rinf = rho.sup_norm(), R = rho.radius();
    const double scale = 2 * nr * std::pow(r + 1.0, r / 2.0);
    g.required_distance = 1 / scale;

    // u_i = (u(i - k))_{k=0..r}
    std::vector<Eigen::VectorXd> ui(static_cast<std::size_t>(rows), Eigen::VectorXd(r + 1));
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k <= r; ++k) ui[i][k] = u_at(vals, i - k);

    Stream st(combine(seed, 0x67617073ULL));
    Eigen::VectorXd best(r + 1), cand(r + 1);
    double best_dist = -1;
    for (int t = 0; t < samples; ++t) {
        for (int k = 0; k <= r; ++k) cand[k] = st.uniform();
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& v : ui) dist = std::min(dist, std::abs(cand.dot(v)) / v.norm());
        if (dist > best_dist) {
            best_dist = dist;
            best = cand;
        }
    }
    if (best_dist < g.required_distance)
        throw std::runtime_error("alpha search did not reach the required hyperplane distance");
    g.min_distance = best_dist;
    g.alpha.assign(best.data(), best.data() + best.size());

    const double a0 = best[0];
    double ratio = 0;
    for (int k = 1; k <= r; ++k) ratio = std::max(ratio, std::abs(best[k] / a0));
    const double gc = singular_average_constant(s);

    // factor over the full block of n + r sites
    double logprod = 0, logsq = 0;
    for (const auto& v : ui) {
        logprod += std::log(std::abs(lambda * best.dot(v)));
        logsq += std::log(v.squaredNorm());
    }
    g.D_alpha = std::pow(rinf, (r + 1) * s) * std::pow(2 * R, r * s) * gc * std::pow(a0, s) *
                std::pow(1 + ratio, r * s) * std::exp(-s / nr * logprod);
    g.D_bound = std::pow(rinf, (r + 1) * s) * std::pow(2 * R, r * s) * gc * std::pow(1 + scale, r * s) *
                std::pow(scale, s) * std::exp(-s / (2 * nr) * logsq) / std::pow(lambda, s);
    g.m = -std::log(g.D_alpha);

    // end pieces of length l + 1 <= n + r
    double lp = 0, ls = 0;
    for (int l = 0; l < rows; ++l) {
        lp += std::log(std::abs(lambda * best.dot(ui[l])));
        ls += std::log(ui[l].squaredNorm());
        const double e = s * (l + 1) / nr;
        double at_alpha = std::pow(rinf, (r + 1) * e) * std::pow(2 * R, r * e) * gc * std::pow(a0, e) *
                          std::pow(1 + ratio, r * e) * std::exp(-s / nr * lp);
        double closed = std::pow(rinf, (r + 1) * e) * std::pow(2 * R, r * e) * gc * std::pow(1 + scale, s * r) *
                        std::pow(scale, e) * std::pow(lambda, -e) * std::exp(-s / (2 * nr) * ls);
        g.D_plus_alpha = std::max(g.D_plus_alpha, at_alpha);
        g.D_plus_bound = std::max(g.D_plus_bound, closed);
    }
    return g;
}

RootCriterion polynomial_root_criterion(const SingleSitePotential& u, int max_degree) {
    std::vector<double> vals = chain_values(u);
    for (double v : vals) require(v != 0.0, "root criterion needs a connected support {0..n-1}");
    RootCriterion out;
    const int deg = static_cast<int>(vals.size()) - 1;
    if (deg > 0) {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
        for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -vals[i] / vals[deg];
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        for (long i = 0; i < deg; ++i) out.roots.push_back(es.eigenvalues()[i]);
    }
    out.nearest_distance = std::numeric_limits<double>::infinity();
    bool exact_hit = false;
    for (auto z : out.roots) {
        double d = z.real() >= 0 ? std::abs(z.imag()) : std::abs(z);
        if (d == 0.0) exact_hit = true;
        out.nearest_distance = std::min(out.nearest_distance, d);
    }
    const double tol = 1e-9;

    // certificate: w = sign * p * ((1+x)/2)^N with nonnegative coefficients
    const double sign = vals[0] > 0 ? 1.0 : -1.0;
    std::vector<double> q{1.0};
    if (out.nearest_distance > tol && sign * vals[static_cast<std::size_t>(deg)] > 0) {
        for (int N = 0; N <= max_degree; ++N) {
            std::vector<double> w(vals.size() + q.size() - 1, 0.0);
            for (std::size_t i = 0; i < vals.size(); ++i)
                for (std::size_t j = 0; j < q.size(); ++j) w[i + j] += sign * vals[i] * q[j];
            double wmax = 0;
            for (double x : w) wmax = std::max(wmax, std::abs(x));
            bool ok = w.front() > 0 && w.back() > 0;
            for (double& x : w) {
                if (std::abs(x) <= 1e-14 * wmax) x = 0.0;
                ok = ok && x >= 0;
            }
            if (ok) {
                out.N = N;
                out.alpha.resize(q.size());
                for (std::size_t j = 0; j < q.size(); ++j) out.alpha[j] = sign * q[j];
                out.w = w;
                break;
            }
            std::vector<double> next(q.size() + 1, 0.0);
            for (std::size_t j = 0; j < q.size(); ++j) {
                next[j] += 0.5 * q[j];
                next[j + 1] += 0.5 * q[j];
            }
            q.swap(next);
            if (q.front() == 0.0) break;  // underflow: give up
        }
    }
    const bool sign_change = deg > 0 && vals[0] * vals[static_cast<std::size_t>(deg)] < 0;
    if (out.N >= 0) {
        out.no_root_on_halfline = true;
    } else if (exact_hit || sign_change) {
        out.no_root_on_halfline = false;
    } else if (out.nearest_distance <= tol) {
        // a root within tolerance of the half-line, but not exactly on it
        out.no_root_on_halfline = false;
        out.ambiguous = true;
    } else {
        // roots stay away from the half-line but no certificate was found
        out.no_root_on_halfline = true;
        out.ambiguous = true;
    }
    return out;
}

}  // namespace alloy
