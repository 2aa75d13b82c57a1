// One PASS/FAIL line per acceptance criterion. Tolerances and runtime limits
// are fixed here; the process exits nonzero if any line fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "alloy/apriori.hpp"
#include "alloy/averaging.hpp"
#include "alloy/gaussian.hpp"
#include "alloy/green.hpp"
#include "alloy/moments.hpp"
#include "alloy/oned.hpp"
#include "alloy/poscomb.hpp"
#include "alloy/rng.hpp"
#include "alloy/spectra.hpp"

using namespace alloy;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

ModelConfig model_of(SingleSitePotential u, Density rho, double lambda) {
    ModelConfig m;
    m.d = u.dim();
    m.lambda = lambda;
    m.u = std::move(u);
    m.rho = std::move(rho);
    return m;
}

Box chain(int a, int b) {
    std::vector<Site> s;
    for (int i = a; i <= b; ++i) s.push_back({i});
    return Box(1, s);
}

Eigen::MatrixXcd random_matrix(Stream& st, int n) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(st.uniform(-1, 1), st.uniform(-1, 1));
    return m;
}

Density random_density(Stream& st) {
    double a = st.uniform(-1, 1), b = a + st.uniform(0.2, 2);
    int kind = static_cast<int>(st.uniform() * 3);
    if (kind == 0) return Density::uniform(a, b);
    if (kind == 1) return Density::raised_cosine(a, b);
    return Density::piecewise_linear({a, 0.5 * (a + b), b}, {st.uniform(0.1, 1), st.uniform(0.1, 1), st.uniform(0.1, 1)});
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Schur complement, two-step Schur and both resolvent identities.
Outcome exact_identities() {
    Stream st(101);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const int d = 1 + t % 2;
        std::map<Site, double> core;
        core[origin(d)] = st.uniform(0.5, 1.5);
        for (int i = 0; i < 3; ++i) {
            Site k(static_cast<std::size_t>(d));
            for (auto& c : k) c = static_cast<int>(st.uniform() * 3) - 1;
            core[k] = st.uniform(-1, 1);
        }
        if (core[origin(d)] == 0.0) core[origin(d)] = 1.0;
        ModelConfig m = model_of(SingleSitePotential(d, core), Density::uniform(-1, 1), st.uniform(0.5, 5));
        const int R = d == 1 ? 20 + static_cast<int>(st.uniform() * 80) : 3 + static_cast<int>(st.uniform() * 4);
        const int r2 = std::max(2, static_cast<int>(R * st.uniform(0.3, 0.8)));
        const int r1 = std::max(0, r2 - 1 - static_cast<int>(st.uniform() * 3));
        Box G = Box::cube(R, origin(d));
        Box L2 = Box::cube(r2, origin(d)), L1 = Box::cube(r1, origin(d));
        Configuration c = sample_configuration(m, lambda_plus(G, m.u), 1000 + t);
        cplx z(st.uniform(-3, 3), st.uniform(0.1, 2));
        worst = std::max(worst, verify_schur_identity(G, L2, m, c, z));
        worst = std::max(worst, verify_two_step_schur(G, L1, L2, m, c, z));
        ResolventResiduals rr = verify_resolvent_identities(G, L2, m, c, z);
        worst = std::max({worst, rr.first_order, rr.second_order});
    }
    return {worst <= 1e-8, fmt("instances=100 max_discrepancy=%.3e tol=1e-8", worst)};
}

// The leading multi-index sum is the constant c_u at every x and lower ones vanish.
Outcome leading_sum_exactness() {
    Stream st(202);
    int accepted = 0, draws = 0;
    double worst_lead = 0, worst_lower = 0;
    while (accepted < 50 && draws < 10000) {
        ++draws;
        const int d = 1 + draws % 2;
        std::map<Site, double> core;
        for (int i = 0; i < 4; ++i) {
            Site k(static_cast<std::size_t>(d));
            for (auto& c : k) c = static_cast<int>(st.uniform() * 5) - 2;
            core[k] = st.uniform(0.5, 2) * (st.uniform() < 0.5 ? -1 : 1);
        }
        // every other draw has zero mean, forcing a higher-degree leading index
        double rest = 0;
        for (auto& [k, v] : core)
            if (k != origin(d)) rest += v;
        core[origin(d)] = (draws % 4 < 2 || rest == 0.0) ? st.uniform(0.5, 2) : -rest;
        SingleSitePotential u(d, core);
        LeadingDerivative lead = find_I0(u);
        if (std::abs(lead.c_u) <= 1e-6) continue;
        ++accepted;
        auto lower = strictly_below(lead.I0);
        for (int r = 0; r < 20; ++r) {
            Site x(static_cast<std::size_t>(d));
            for (auto& c : x) c = static_cast<int>(st.uniform() * 101) - 50;
            worst_lead = std::max(worst_lead, std::abs(leading_index_sum(u, lead.I0, x) - lead.c_u));
            for (const MultiIndex& J : lower) worst_lower = std::max(worst_lower, std::abs(leading_index_sum(u, J, x)));
        }
    }
    bool ok = accepted == 50 && worst_lead <= 1e-9 && worst_lower <= 1e-9;
    return {ok, fmt("potentials=%.0f lead_err=%.3e lower_err=%.3e tol=1e-9", accepted, worst_lead, worst_lower)};
}

// Truncated covering sum over the exhaustion box stays above one.
Outcome covering_sum() {
    double worst_slack = 1e300;
    bool ok = true;
    for (int d : {1, 2})
        for (double alpha : {0.5, 1.0, 2.0}) {
            int radius = static_cast<int>(std::ceil((d == 1 ? 40.0 : 24.0) / alpha));
            SingleSitePotential u = SingleSitePotential::exponential(d, 1.0, alpha, radius);
            LeadingDerivative lead = find_I0(u);
            for (int l : {2, 5, 8}) {
                double v = covering_sum_min(u, l);
                double need = 1 - 10 * lead.truncation_error;
                ok = ok && v >= need;
                worst_slack = std::min(worst_slack, v - need);
            }
        }
    return {ok, fmt("cases=18 min(value - (1 - 10 tail))=%.3e", worst_slack)};
}

// Five averaging bounds on 200 random instances each, plus one spot value.
Outcome averaging_bounds() {
    Stream st(303);
    int fails[5] = {0, 0, 0, 0, 0};
    double worst[5] = {1e300, 1e300, 1e300, 1e300, 1e300};
    auto note = [&](int i, const AverageCheck& c) {
        if (!c.holds(1e-6)) ++fails[i];
        worst[i] = std::min(worst[i], c.bound - c.integral);
    };
    for (int t = 0; t < 200; ++t) {
        Density rho = random_density(st);
        const double s = st.uniform(0.1, 0.9);
        const int n = 1 + t % 4;
        note(0, scalar_singular_check(rho, s, cplx(st.uniform(rho.lo() - 0.5, rho.hi() + 0.5), t % 3 ? 0.0 : st.uniform(0, 0.3))));
        note(1, det_average_check(random_matrix(st, n), random_matrix(st, n), rho, s));
        note(2, resolvent_average_check(random_matrix(st, n), random_matrix(st, n), rho, s));
        std::vector<Eigen::MatrixXcd> vs;
        std::vector<double> alpha;
        for (int k = 0; k < 1 + t % 3; ++k) {
            vs.push_back(random_matrix(st, n));
            alpha.push_back(st.uniform(0.2, 1));
        }
        note(3, multi_determinant_check(random_matrix(st, n), vs, alpha, rho, s, 400, 5000 + t));
        Eigen::MatrixXcd a = random_matrix(st, n);
        Eigen::MatrixXcd herm = (a + a.adjoint()) / 2.0;
        for (int i = 0; i < n; ++i) herm(i, i) += cplx(0, st.uniform(0.01, 0.5));
        Eigen::VectorXd w(n);
        for (int i = 0; i < n; ++i) w[i] = st.uniform(0.2, 2);
        note(4, nonmonotone_average_check(herm, w, rho, s, static_cast<long>(st.uniform() * n),
                                          static_cast<long>(st.uniform() * n)));
    }
    AverageCheck spot = scalar_singular_check(Density::uniform(0, 1), 0.5, cplx(0.5, 0));
    bool spot_ok = std::abs(spot.integral - 2 * std::sqrt(2.0)) < 1e-6 && std::abs(spot.bound - 4) < 1e-12;
    bool ok = spot_ok;
    for (int f : fails) ok = ok && f == 0;
    std::string d = fmt("instances=200x5 failures(scalar,det,norm,multidet,positive)=%.0f,%.0f,%.0f", fails[0], fails[1],
                        fails[2]) +
                    fmt(",%.0f,%.0f", fails[3], fails[4]) + fmt(" spot=%.6f/%.1f", spot.integral, spot.bound);
    return {ok, d};
}

// One-dimensional decay of E|G|^{s/n} against C+ exp(-mu floor(dist/n)).
Outcome one_d_decay() {
    ModelConfig m = model_of(SingleSitePotential::chain({1, -0.5}), Density::uniform(0, 1), 50);
    OneDConstants c = one_d_constants(m.u, m.rho, m.lambda, 0.5);
    DecayProfile p = decay_profile(m, 60, cplx(0, 0.5), 0.5, 5000, 11);
    bool ok = true;
    double worst = 1e300;
    int checked = 0;
    for (std::size_t i = 0; i < p.distance.size(); ++i) {
        if (p.distance[i] < 4) continue;
        double lhs = p.estimate[i].mean + 3 * p.estimate[i].std_error;
        ok = ok && lhs <= p.bound[i];
        worst = std::min(worst, std::log(p.bound[i]) - std::log(lhs));
        ++checked;
    }
    OneDConstants delta = one_d_constants(SingleSitePotential::delta(1), Density::uniform(0, 1), 64, 0.5);
    bool sanity = std::abs(delta.C - 0.5) < 1e-12 && std::abs(delta.mu - std::log(2.0)) < 1e-12;
    bool thr = std::abs(c.threshold_lambda - 22.63) < 0.01;
    return {ok && sanity && thr && checked == 56,
            fmt("distances=%.0f min_log_margin=%.3f threshold=%.3f", checked, worst, c.threshold_lambda) +
                fmt(" delta-check C=%.6f mu=%.6f", delta.C, delta.mu)};
}

// Nonlocal a-priori bound for a potential with nonzero mean.
Outcome nonlocal_apriori() {
    ModelConfig m = model_of(SingleSitePotential::chain({1, -0.25}), Density::raised_cosine(0, 1), 10);
    const double s = 1.0 / 3;
    NonlocalBound nb = nonlocal_apriori_bound(m.u, m.rho, m.lambda, s);
    bool ok = std::abs(nb.rho_deriv_l1 - 4) < 1e-9;
    double worst = 1e300;
    int pairs = 0;
    std::uint64_t seed = 600;
    for (int n : {5, 10, 20, 40}) {
        Box g = chain(0, n - 1);
        for (double im : {0.1, 0.5, 1.0})
            for (double re : {-1.0, 1.5, 4.0})
                for (int x : {0, n / 2}) {
                    Eigen::MatrixXd smp = moment_samples(m, g, cplx(re, im), s, {x}, 600, ++seed);
                    for (long y = 0; y < smp.cols(); ++y) {
                        SampleStats st = summarize(smp, y);
                        ok = ok && st.mean <= nb.bound + 3 * st.std_error;
                        worst = std::min(worst, nb.bound - st.mean);
                        ++pairs;
                    }
                }
    }
    return {ok, fmt("pairs=%.0f bound=%.4f min_margin=%.4f", pairs, nb.bound, worst)};
}

// Wegner bound at the band centre window and linear growth with the interval.
Outcome wegner() {
    ModelConfig m = model_of(SingleSitePotential::exponential(1, 1.0, 1.0, 30), Density::uniform(0, 1), 1.0);
    WegnerReport r = wegner_mc(m, 6, -0.1, 0.1, 2000, 21);
    const double centre = 0.5 * m.u.sum();
    WegnerReport lin = wegner_mc(m, 6, centre - 0.5, centre + 0.5, 2000, 22, true);
    bool resolved = lin.mean > 20 * lin.std_error && *lin.half_mean > 20 * *lin.half_std_error;
    double ratio = *lin.linear_scaling_ratio;
    bool ok = r.bound_satisfied && resolved && ratio >= 1.5 && ratio <= 2.5;
    return {ok, fmt("mean=%.4f+3*%.4f bound=%.3f", r.mean, r.std_error, r.abstract_bound) +
                    fmt(" ratio=%.3f at E=%.3f", ratio, centre)};
}

// Closed-form Gaussian conditional against covariance algebra, and the Gram determinants.
Outcome gaussian() {
    Stream st(909);
    double worst = 0;
    for (double u : {0.5, 1.0, 2.0})
        for (double sigma : {0.5, 1.0})
            for (int l = 0; l <= 6; ++l)
                for (int mm = 0; mm <= 6; ++mm) {
                    Eigen::VectorXd vm(mm), vp(l);
                    for (int i = 0; i < mm; ++i) vm[i] = st.uniform(-2, 2);
                    for (int i = 0; i < l; ++i) vp[i] = st.uniform(-2, 2);
                    GaussianConditional g = gaussian_conditional(u, sigma, l, mm, vm, vp);
                    worst = std::max(worst, std::abs(g.variance - g.oracle_variance));
                    worst = std::max(worst, std::abs(g.mean - g.oracle_mean));
                    if (l + mm > 0) worst = std::max(worst, (g.mean_weights - g.oracle_weights).cwiseAbs().maxCoeff());
                }
    double det_worst = 0;
    for (double u : {0.5, 1.0, 2.0})
        for (int l = 2; l <= 8; ++l) {
            ALDeterminant a = a_l_determinants(u, l);
            det_worst = std::max(det_worst, std::abs(a.det - a.s) / a.s);
        }
    return {worst <= 1e-10 && det_worst <= 1e-10,
            fmt("formula_vs_oracle=%.3e det_rel_err=%.3e tol=1e-10", worst, det_worst)};
}

Outcome pinning() {
    PinningReport r = pinning_check(SingleSitePotential::chain({1, -1}), 0.05, 0.05, 100000, 31);
    return {!r.inconclusive && r.pairs > 0 && r.violations == 0,
            fmt("accepted=%.0f/%.0f violations=%.0f", r.accepted_left, r.accepted_right, r.violations) +
                fmt(" pairs=%.0f", r.pairs)};
}

Outcome free_spectra() {
    double worst = 0;
    for (int n = 2; n <= 50; ++n) {
        auto ev = eigenvalues(-adjacency(chain(1, n)));
        for (int k = 1; k <= n; ++k) worst = std::max(worst, std::abs(ev[k - 1] + 2 * std::cos(M_PI * k / (n + 1))));
    }
    return {worst <= 1e-10, fmt("n=2..50 max_err=%.3e tol=1e-10", worst)};
}

Outcome weighted_positivity() {
    double worst = 1e300;
    int cases = 0;
    for (auto vals : std::vector<std::vector<double>>{{1, 1}, {1, -0.25}}) {
        SingleSitePotential u = SingleSitePotential::chain(vals);
        for (auto [x, y] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {-3, 4}, {-10, 10}, {2, -7}}) {
            WeightedPotential w = w_xy(u, {x}, {y}, Box::cube(15, {0}));
            worst = std::min({worst, w.min_margin, w.margin_x, w.margin_y});
            ++cases;
        }
    }
    return {worst >= -1e-12, fmt("cases=%.0f min_margin=%.3e tol=1e-12", cases, worst)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all = {
        {"exact-identities", 30, exact_identities},
        {"leading-sum-exactness", 5, leading_sum_exactness},
        {"covering-sum", 5, covering_sum},
        {"averaging-bounds", 120, averaging_bounds},
        {"one-d-decay", 180, one_d_decay},
        {"nonlocal-apriori", 120, nonlocal_apriori},
        {"wegner-count", 120, wegner},
        {"gaussian-conditionals", 5, gaussian},
        {"pinning-negative-example", 10, pinning},
        {"free-spectra", 1, free_spectra},
        {"weighted-positivity", 1, weighted_positivity},
    };
    int failed = 0, i = 0;
    for (auto& c : all) {
        ++i;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass && secs < c.limit_s;
        if (!pass) ++failed;
        std::printf("%s %2d %-26s %s (%.2fs, limit %.0fs)\n", pass ? "PASS" : "FAIL", i, c.name, o.detail.c_str(),
                    secs, c.limit_s);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
