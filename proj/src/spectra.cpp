#include "alloy/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "alloy/error.hpp"
#include "alloy/moments.hpp"
#include "alloy/rng.hpp"

namespace alloy {

std::vector<double> eigenvalues(const Eigen::MatrixXd& h) {
    require(h.rows() == h.cols(), "matrix must be square");
    require((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()),
            "matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

int count_in_interval(const std::vector<double>& spectrum, double a, double b) {
    require(a <= b, "interval must have a <= b");
    int c = 0;
    for (double e : spectrum) c += (e >= a && e <= b);
    return c;
}

int count_in_interval(const Eigen::MatrixXd& h, double a, double b) { return count_in_interval(eigenvalues(h), a, b); }

double abstract_wegner_bound(const ModelConfig& model, const WegnerCoefficients& w, double length) {
    return model.rho.var_norm() * length * w.sum_l1 / (2 * model.lambda);
}

WegnerReport wegner_mc(const ModelConfig& model, int l, double a, double b, long trials, std::uint64_t seed,
                       bool with_half, Exec exec) {
    require(a <= b, "interval must have a <= b");
    require(trials >= 2, "need at least two trials");
    model.validate();
    WegnerReport r;
    r.a = a;
    r.b = b;
    r.l = l;
    r.trials = trials;
    r.coefficients = wegner_coefficients(model.u, l);
    r.abstract_bound = abstract_wegner_bound(model, r.coefficients, b - a);

    DisorderedBox dbox(model, Box::cube(l, origin(model.d)));
    r.sites = static_cast<long>(dbox.box().size());
    const double mid = (a + b) / 2, q = (b - a) / 4;
    Eigen::MatrixXd counts = map_trials(trials, 2, exec, [&](long t) {
        Eigen::VectorXd omega = dbox.sample(trial_seed(seed, static_cast<std::uint64_t>(t)));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dbox.hamiltonian(omega), Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        std::vector<double> spec(ev.data(), ev.data() + ev.size());
        Eigen::VectorXd out(2);
        out[0] = count_in_interval(spec, a, b);
        out[1] = count_in_interval(spec, mid - q, mid + q);
        return out;
    });
    SampleStats full = summarize(counts, 0);
    r.mean = full.mean;
    r.std_error = full.std_error;
    r.bound_satisfied = r.mean + 3 * r.std_error <= r.abstract_bound;
    if (with_half) {
        SampleStats half = summarize(counts, 1);
        r.half_mean = half.mean;
        r.half_std_error = half.std_error;
        if (half.mean > 0) r.linear_scaling_ratio = full.mean / half.mean;
    }
    return r;
}

double apriori_wegner_bound(double C, double s, long volume, double length) {
    require(C >= 0 && length >= 0 && volume >= 0, "bad a-priori Wegner inputs");
    return 4 * C / M_PI * std::pow(length, s) * static_cast<double>(volume);
}

double diagonal_moment_sup(const ModelConfig& model, const Box& box, double a, double b, int energies,
                           const std::vector<double>& eps_list, double s, long trials, std::uint64_t seed,
                           Exec exec) {
    require(energies >= 1 && !eps_list.empty(), "need energies and eps values");
    double best = 0;
    for (int i = 0; i < energies; ++i) {
        double E = energies == 1 ? (a + b) / 2 : a + (b - a) * i / (energies - 1);
        for (double eps : eps_list) {
            for (const Site& x : box.sites()) {
                // one column solve per trial; the diagonal entry is what we need
                Eigen::MatrixXd samples = moment_samples(model, box, cplx(E, eps), s, x, trials, seed, exec);
                SampleStats st = summarize(samples, box.index_of(x));
                best = std::max(best, st.mean + 3 * st.std_error);
            }
        }
    }
    return best;
}

Regularity regularity_check(const ModelConfig& model, const Configuration& omega, int L, const Site& x, double E,
                            double m) {
    require(L >= 1, "L must be >= 1");
    require(m >= 0, "m must be >= 0");
    Box cube = Box::cube(L, x);
    Eigen::MatrixXd h = assemble_hamiltonian(model, omega, cube);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto& ev = es.eigenvalues();
    const auto& vec = es.eigenvectors();
    Regularity r;
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (long n = 0; n < ev.size(); ++n)
        if (std::abs(ev[n] - E) <= 1e-12 * scale) r.singular = true;
    if (r.singular) {
        r.sup_green = std::numeric_limits<double>::infinity();
        return r;
    }
    const long ix = cube.index_of(x);
    const Box rim = interior_boundary(cube);
    for (const Site& w : rim.sites()) {
        const long iw = cube.index_of(w);
        double g = 0;
        for (long n = 0; n < ev.size(); ++n) g += vec(ix, n) * vec(iw, n) / (ev[n] - E);
        r.sup_green = std::max(r.sup_green, std::abs(g));
    }
    r.regular = r.sup_green <= std::exp(-m * L);
    return r;
}

RegularityReport pair_regularity_probability(const ModelConfig& model, int L, const Site& x, const Site& y, double a,
                                             double b, int grid_points, double m, long trials, std::uint64_t seed,
                                             Exec exec) {
    require(grid_points >= 1, "need at least one grid point");
    require(a <= b, "interval must have a <= b");
    const int sep = 2 * L + model.u.support().diameter() + 1;
    require(norm_inf(x - y) >= sep, "boxes too close: need |x - y|_inf >= 2L + diam(theta) + 1");
    RegularityReport rep;
    rep.L = L;
    rep.x = x;
    rep.y = y;
    rep.m = m;
    rep.trials = trials;
    for (int i = 0; i < grid_points; ++i)
        rep.energies.push_back(grid_points == 1 ? (a + b) / 2 : a + (b - a) * i / (grid_points - 1));
    rep.grid_spacing = grid_points == 1 ? 0.0 : (b - a) / (grid_points - 1);

    Box both = set_union(Box::cube(L, x), Box::cube(L, y));
    Box plus = lambda_plus(both, model.u);
    const long k = grid_points + 1;
    Eigen::MatrixXd hits = map_trials(trials, k, exec, [&](long t) {
        Configuration omega = sample_configuration(model, plus, trial_seed(seed, static_cast<std::uint64_t>(t)));
        Eigen::VectorXd out(k);
        bool all = true;
        for (int i = 0; i < grid_points; ++i) {
            double E = rep.energies[static_cast<std::size_t>(i)];
            bool ok = regularity_check(model, omega, L, x, E, m).regular ||
                      regularity_check(model, omega, L, y, E, m).regular;
            out[i] = ok;
            all = all && ok;
        }
        out[grid_points] = all;
        return out;
    });
    for (int i = 0; i < grid_points; ++i) rep.per_energy.push_back(summarize(hits, i).mean);
    SampleStats st = summarize(hits, grid_points);
    rep.all_energies = st.mean;
    rep.std_error = st.std_error;
    return rep;
}

std::vector<EigenDecay> eigenfunction_decay(const ModelConfig& model, const Configuration& omega, const Box& g,
                                            double lo, double hi) {
    std::vector<EigenDecay> out;
    if (g.size() < 2) return out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(assemble_hamiltonian(model, omega, g));
    const auto& ev = es.eigenvalues();
    const auto& vec = es.eigenvectors();
    for (long n = 0; n < ev.size(); ++n) {
        if (ev[n] < lo || ev[n] > hi) continue;
        Eigen::Index peak;
        vec.col(n).cwiseAbs().maxCoeff(&peak);
        int far = 0;
        std::vector<int> dist(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            dist[i] = norm_inf(g[i] - g[static_cast<std::size_t>(peak)]);
            far = std::max(far, dist[i]);
        }
        // outer half: distances from far/2 on
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (2 * dist[i] < far) continue;
            double yv = std::log(std::max(std::abs(vec(static_cast<long>(i), n)), 1e-300));
            sx += dist[i];
            sy += yv;
            sxx += double(dist[i]) * dist[i];
            sxy += dist[i] * yv;
            ++cnt;
        }
        double det = cnt * sxx - sx * sx;
        if (cnt < 2 || det <= 0) continue;
        out.push_back(EigenDecay{ev[n], (cnt * sxy - sx * sy) / det, cnt});
    }
    return out;
}

}  // namespace alloy
