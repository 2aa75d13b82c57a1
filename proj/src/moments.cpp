#include "alloy/moments.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "alloy/error.hpp"
#include "alloy/green.hpp"
#include "alloy/oned.hpp"
#include "alloy/rng.hpp"

namespace alloy {

namespace {

// Column x of (H - z)^{-1}.
Eigen::VectorXcd green_column(const Eigen::MatrixXd& h, cplx z, long x) {
    Eigen::MatrixXcd a = h.cast<cplx>();
    a.diagonal().array() -= z;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    if (!(lu.rcond() > 1e-14)) throw solve_error("resolvent solve is numerically singular");
    return lu.solve(Eigen::VectorXcd::Unit(h.rows(), x));
}

Eigen::VectorXcd green_column_retry(const Eigen::MatrixXd& h, cplx z, long x) {
    try {
        return green_column(h, z, x);
    } catch (const solve_error&) {
        return green_column(h, cplx(z.real(), z.imag() * (1 + 1e-6) + (z.imag() == 0 ? 1e-12 : 0.0)), x);
    }
}

}  // namespace

Eigen::MatrixXd moment_samples(const ModelConfig& model, const Box& gamma, cplx z, double exponent, const Site& x,
                               long trials, std::uint64_t seed, Exec exec) {
    require(exponent > 0 && exponent < 1, "moment exponent must lie in (0, 1)");
    require(trials >= 1, "need at least one trial");
    require(model.lambda >= 0, "lambda must be >= 0");
    const long ix = gamma.index_of(x);
    require(ix >= 0, "x is not in the box");
    DisorderedBox dbox(model, gamma);
    const long n = static_cast<long>(gamma.size());
    return map_trials(trials, n, exec, [&](long t) {
        Eigen::VectorXd omega = dbox.sample(trial_seed(seed, static_cast<std::uint64_t>(t)));
        Eigen::VectorXcd col = green_column_retry(dbox.hamiltonian(omega), z, ix);
        Eigen::VectorXd out(n);
        for (long i = 0; i < n; ++i) out[i] = std::pow(std::abs(col[i]), exponent);
        return out;
    });
}

MomentEstimate estimate_moment(const ModelConfig& model, const Box& gamma, cplx z, double exponent, const Site& x,
                               const Site& y, long trials, std::uint64_t seed, Exec exec) {
    const long iy = gamma.index_of(y);
    require(iy >= 0, "y is not in the box");
    Eigen::MatrixXd samples = moment_samples(model, gamma, z, exponent, x, trials, seed, exec);
    SampleStats st = summarize(samples, iy);
    return MomentEstimate{st.mean, st.std_error, trials, exponent, x, y, z};
}

DecayFit fit_decay(const std::vector<int>& distance, const std::vector<MomentEstimate>& est) {
    require(distance.size() == est.size(), "distance/estimate length mismatch");
    // weights 1 / var(log mean) with var(log mean) ~ (stderr / mean)^2
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    DecayFit fit;
    fit.min_distance = std::numeric_limits<int>::max();
    std::vector<double> xs, ys, ws;
    for (std::size_t i = 0; i < est.size(); ++i) {
        if (!(est[i].mean > 0)) continue;
        double rel = est[i].std_error / est[i].mean;
        double w = 1.0 / std::max(rel * rel, 1e-12);
        double xv = distance[i], yv = std::log(est[i].mean);
        xs.push_back(xv);
        ys.push_back(yv);
        ws.push_back(w);
        sw += w;
        sx += w * xv;
        sy += w * yv;
        sxx += w * xv * xv;
        sxy += w * xv * yv;
        fit.min_distance = std::min(fit.min_distance, distance[i]);
        fit.max_distance = std::max(fit.max_distance, distance[i]);
    }
    require(xs.size() >= 2, "decay fit needs two positive means");
    double det = sw * sxx - sx * sx;
    double slope = (sw * sxy - sx * sy) / det;
    fit.intercept = (sy - slope * sx) / sw;
    fit.rate = -slope;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (fit.intercept + slope * xs[i]);
        ss += ws[i] * e * e;
    }
    fit.residual = std::sqrt(ss / sw);
    return fit;
}

DecayProfile decay_profile(const ModelConfig& model, int sites, cplx z, double s, long trials, std::uint64_t seed,
                           Exec exec) {
    require(model.d == 1, "decay profiles are one-dimensional");
    require(sites >= 2, "need at least two sites");
    std::vector<Site> chain;
    for (int i = 0; i < sites; ++i) chain.push_back({i});
    Box gamma(1, chain);

    DecayProfile p;
    const int gap = largest_gap(model.u);
    const int span = model.u.support().diameter() + 1;
    p.exponent = s / (span + gap);
    p.min_bound_distance = 2 * (span + gap);
    std::function<double(int)> bound = [](int) { return std::numeric_limits<double>::quiet_NaN(); };
    if (model.lambda > 0) {
        if (gap == 0) {
            OneDConstants c = one_d_constants(model.u, model.rho, model.lambda, s);
            bound = [c](int d) { return c.bound(d); };
        } else {
            GapConstants g = gap_constants(model.u, model.rho, model.lambda, s, seed);
            bound = [g](int d) { return g.bound(d); };
        }
    }
    Eigen::MatrixXd samples = moment_samples(model, gamma, z, p.exponent, {0}, trials, seed, exec);
    for (int y = 1; y < sites; ++y) {
        SampleStats st = summarize(samples, y);
        p.distance.push_back(y);
        p.estimate.push_back(MomentEstimate{st.mean, st.std_error, trials, p.exponent, {0}, {y}, z});
        p.bound.push_back(y >= p.min_bound_distance ? bound(y) : std::numeric_limits<double>::quiet_NaN());
    }
    p.fit = fit_decay(p.distance, p.estimate);
    return p;
}

double xi_factor(double lambda, double s, int theta_size) {
    return std::max(std::pow(lambda, -s / (2.0 * theta_size)), std::pow(lambda, -2 * s));
}

FiniteVolumeSum finite_volume_sum(const ModelConfig& model, const Box& lambda_set, const Site& x, cplx z, double s,
                                  int L, long trials, std::uint64_t seed, Exec exec) {
    require(s > 0 && s < 1, "s must lie in (0, 1)");
    require(model.lambda > 0, "lambda must be > 0");
    require(lambda_set.contains(x), "x must lie in the region");
    Box theta = model.u.support();
    FiniteVolumeSum out;
    out.geometry = annulus(lambda_set, x, L, theta);
    require(!out.geometry.W.contains(x), "x lies inside the separating shell; enlarge L");
    Box region = set_difference(lambda_set, out.geometry.W);
    Box inner;
    for (const Box& c : components(region))
        if (c.contains(x)) inner = c;
    for (const Site& w : inner.sites())
        for (const Site& nb : neighbours(w))
            if (out.geometry.W.contains(nb)) out.bonds.emplace_back(nb, w);

    const int theta_size = static_cast<int>(theta.size());
    out.exponent = s / (2.0 * theta_size);
    out.trials = trials;
    out.xi = xi_factor(model.lambda, s, theta_size);

    std::vector<long> targets;
    for (auto& [wp, w] : out.bonds) targets.push_back(region.index_of(w));
    Eigen::MatrixXd samples = moment_samples(model, region, z, out.exponent, x, trials, seed, exec);
    Eigen::MatrixXd sums(trials, 1);
    for (long t = 0; t < trials; ++t) {
        double acc = 0;
        for (long i : targets) acc += samples(t, i);
        sums(t, 0) = acc;
    }
    SampleStats st = summarize(sums);
    out.raw_sum = st.mean;
    out.std_error = st.std_error;
    out.scaled = out.raw_sum * std::pow(double(L), 3.0 * (model.d - 1)) * out.xi /
                 std::pow(model.lambda, 2 * s / (2.0 * theta_size));
    return out;
}

}  // namespace alloy
