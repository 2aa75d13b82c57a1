#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "alloy/apriori.hpp"
#include "alloy/averaging.hpp"
#include "alloy/error.hpp"
#include "alloy/gaussian.hpp"
#include "alloy/green.hpp"
#include "alloy/moments.hpp"
#include "alloy/oned.hpp"
#include "alloy/poscomb.hpp"
#include "alloy/rng.hpp"
#include "alloy/spectra.hpp"

using namespace alloy;

namespace lab {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

Site at(int d, int first) {
    Site s(static_cast<std::size_t>(d), 0);
    s[0] = first;
    return s;
}

std::string site_str(const Site& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
    return out;
}

SummaryRow upper(std::string check, double value, double bound) {
    return {std::move(check), value, bound, true, value <= bound};
}

SummaryRow lower(std::string check, double value, double bound) {
    return {std::move(check), value, bound, true, value >= bound, true};
}

SummaryRow info(std::string check, double value) { return {std::move(check), value, nan_v, false, true}; }

Eigen::MatrixXcd random_matrix(Stream& st, int n) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(st.uniform(-1, 1), st.uniform(-1, 1));
    return m;
}

}  // namespace

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.10e}", v);
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        const std::string& c = cells[i];
        if (c.find_first_of(",\"\n") == std::string::npos) {
            out += c;
        } else {
            out += '"';
            for (char ch : c) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            out += '"';
        }
    }
    return out;
}

Loaded load(const Common& c, bool need_seed) {
    if (c.config.empty()) throw config_error("--config is required");
    ModelFile f = load_model(c.config);
    Loaded out;
    out.model = f.model;
    if (c.lambda) out.model = out.model.with_lambda(*c.lambda);
    if (c.seed)
        out.seed = *c.seed;
    else if (f.seed)
        out.seed = *f.seed;
    else if (need_seed)
        throw config_error("a seed is required (--seed or `seed:` in " + c.config + ")");
    return out;
}

Result cmd_spectrum(const Common& c, const Params& p) {
    Loaded ld = load(c, true);
    Result r;
    r.anchor = "finite-volume Hamiltonian spectrum";
    Box g = Box::cube(p.L, origin(ld.model.d));
    Configuration w = sample_configuration(ld.model, lambda_plus(g, ld.model.u), ld.seed);
    std::vector<double> ev = eigenvalues(assemble_hamiltonian(ld.model, w, g));
    r.csv.header = {"index", "eigenvalue"};
    for (std::size_t i = 0; i < ev.size(); ++i) r.csv.rows.push_back({std::to_string(i), num(ev[i])});
    r.summary.push_back(info("eigenvalue count", static_cast<double>(ev.size())));
    if (ld.model.lambda == 0.0 && ld.model.d == 1) {
        r.anchor = "free path spectrum -2cos(pi k/(n+1))";
        const double n = static_cast<double>(ev.size());
        double worst = 0;
        for (std::size_t k = 1; k <= ev.size(); ++k)
            worst = std::max(worst, std::abs(ev[k - 1] + 2 * std::cos(M_PI * k / (n + 1))));
        r.summary.push_back(upper("max deviation from the free spectrum", worst, 1e-10));
    }
    return r;
}

Result cmd_green_identities(const Common& c, const Params& p) {
    Loaded ld = load(c, true);
    const ModelConfig& m = ld.model;
    Result r;
    r.anchor = "Schur complement identity; two-step Schur identity; first/second-order resolvent identities";
    require(p.L >= 2, "--L must be >= 2");
    Box G = Box::cube(p.L + 2, origin(m.d));
    Box L2 = Box::cube(p.L, origin(m.d)), L1 = Box::cube(p.L - 1, origin(m.d));
    Stream st(combine(ld.seed, 0x6964));
    r.csv.header = {"instance", "re_z", "im_z", "schur", "two_step", "first_order", "second_order"};
    double worst = 0;
    for (long i = 0; i < p.instances; ++i) {
        Configuration w = sample_configuration(m, lambda_plus(G, m.u), trial_seed(ld.seed, i));
        cplx z(st.uniform(-3, 3), st.uniform(0.1, 2));
        double s1 = verify_schur_identity(G, L2, m, w, z);
        double s2 = verify_two_step_schur(G, L1, L2, m, w, z);
        ResolventResiduals rr = verify_resolvent_identities(G, L2, m, w, z);
        worst = std::max({worst, s1, s2, rr.first_order, rr.second_order});
        r.csv.rows.push_back({std::to_string(i), num(z.real()), num(z.imag()), num(s1), num(s2), num(rr.first_order),
                              num(rr.second_order)});
    }
    r.summary.push_back(upper("max identity discrepancy", worst, 1e-8));
    return r;
}

Result cmd_averaging(const Common& c, const Params& p) {
    Loaded ld = load(c, true);
    const Density& rho = ld.model.rho;
    Result r;
    r.anchor = "scalar singular average; determinant average; resolvent-norm average; multi-variable determinant "
               "average; averaging along a positive direction";
    Stream st(combine(ld.seed, 0x6176));
    r.csv.header = {"bound", "instance", "n", "integral", "error", "bound_value", "pass"};
    const char* names[5] = {"scalar", "determinant", "resolvent-norm", "multi-determinant", "positive-direction"};
    double worst[5];
    std::fill(worst, worst + 5, std::numeric_limits<double>::infinity());
    int fails[5] = {0, 0, 0, 0, 0};
    for (long i = 0; i < p.instances; ++i) {
        const int n = 1 + static_cast<int>(i % 3);
        AverageCheck k[5];
        k[0] = scalar_singular_check(rho, p.s, cplx(st.uniform(rho.lo() - 0.5, rho.hi() + 0.5), 0.0));
        k[1] = det_average_check(random_matrix(st, n), random_matrix(st, n), rho, p.s);
        k[2] = resolvent_average_check(random_matrix(st, n), random_matrix(st, n), rho, p.s);
        k[3] = multi_determinant_check(random_matrix(st, n), {random_matrix(st, n), random_matrix(st, n)}, {1.0, 0.5}, rho, p.s,
                            p.trials, trial_seed(ld.seed, i));
        Eigen::MatrixXcd a = random_matrix(st, n);
        Eigen::MatrixXcd herm = (a + a.adjoint()) / 2.0;
        for (int j = 0; j < n; ++j) herm(j, j) += cplx(0, 0.1);
        k[4] = nonmonotone_average_check(herm, Eigen::VectorXd::Ones(n), rho, p.s, 0, n - 1);
        for (int j = 0; j < 5; ++j) {
            bool ok = k[j].holds();
            if (!ok) ++fails[j];
            worst[j] = std::min(worst[j], k[j].margin);
            r.csv.rows.push_back({names[j], std::to_string(i), std::to_string(n), num(k[j].integral), num(k[j].error),
                                  num(k[j].bound), ok ? "true" : "false"});
        }
    }
    for (int j = 0; j < 5; ++j) {
        SummaryRow row{std::string(names[j]) + " bound violations", double(fails[j]), 0.0, true, fails[j] == 0};
        r.summary.push_back(row);
        r.summary.push_back(info(std::string(names[j]) + " smallest margin", worst[j]));
    }
    return r;
}

Result cmd_moments(const Common& c, const Params& p) {
    Loaded ld = load(c, true);
    const ModelConfig& m = ld.model;
    Result r;
    r.anchor = "fractional moment E|G(z;x,y)|^s on a cube";
    Box g = Box::cube(p.L, origin(m.d));
    Site x = at(m.d, p.x);
    Eigen::MatrixXd smp = moment_samples(m, g, cplx(p.re, p.im), p.s, x, p.trials, ld.seed);
    std::optional<NonlocalBound> nb;
    if (m.u.sum() != 0.0 && !m.u.tail() && m.rho.deriv_l1()) nb = nonlocal_apriori_bound(m.u, m.rho, m.lambda, p.s);
    r.csv.header = {"y", "distance", "mean", "stderr"};
    double worst = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < smp.cols(); ++i) {
        SampleStats st = summarize(smp, i);
        const Site& y = g[static_cast<std::size_t>(i)];
        r.csv.rows.push_back({site_str(y), std::to_string(norm1(y - x)), num(st.mean), num(st.std_error)});
        worst = std::max(worst, st.mean - 3 * st.std_error);
    }
    if (nb) {
        r.anchor += "; nonlocal a-priori bound";
        r.summary.push_back(upper("max (mean - 3 stderr) vs nonlocal a-priori bound", worst, nb->bound));
    } else {
        r.summary.push_back(info("max (mean - 3 stderr)", worst));
        r.notes.push_back("no closed-form bound: needs a finite potential with nonzero sum and a smooth density");
    }
    return r;
}

Result cmd_decay(const Common& c, const Params& p) {
    Loaded ld = load(c, true);
    const ModelConfig& m = ld.model;
    Result r;
    const bool gaps = largest_gap(m.u) > 0;
    r.anchor = gaps ? "one-dimensional exponential decay (support with gaps)"
                    : "one-dimensional exponential decay (connected support)";
    DecayProfile pr = decay_profile(m, p.sites, cplx(p.re, p.im), p.s, p.trials, ld.seed);
    r.csv.header = {"distance", "mean", "stderr", "bound", "pass"};
    double worst = -std::numeric_limits<double>::infinity();
    int bad = 0, checked = 0;
    for (std::size_t i = 0; i < pr.distance.size(); ++i) {
        const MomentEstimate& e = pr.estimate[i];
        const double lhs = e.mean + 3 * e.std_error, bd = pr.bound[i];
        std::string pass = "n/a";
        if (!std::isnan(bd)) {
            ++checked;
            pass = lhs <= bd ? "true" : "false";
            if (lhs > bd) ++bad;
            worst = std::max(worst, lhs / bd);
        }
        r.csv.rows.push_back({std::to_string(pr.distance[i]), num(e.mean), num(e.std_error), num(bd), pass});
    }
    r.notes.push_back(fmt::format("moment exponent {:.6f}; bound applies from distance {}", pr.exponent,
                                  pr.min_bound_distance));
    if (checked) {
        r.summary.push_back(upper("max (mean + 3 stderr) / bound", worst, 1.0));
        r.summary.push_back(info("distances checked", checked));
    } else {
        r.notes.push_back("no distance reaches the range of the bound (or lambda = 0)");
    }
    if (!gaps && m.lambda > 0) {
        OneDConstants k = one_d_constants(m.u, m.rho, m.lambda, p.s);
        r.summary.push_back(info("C", k.C));
        r.summary.push_back(info("mu", k.mu));
        r.summary.push_back(info("threshold lambda", k.threshold_lambda));
        if (k.C >= 1) r.notes.push_back("C >= 1: lambda is below the decay threshold, the bound does not decay");
    }
    r.summary.push_back(info("fitted rate", pr.fit.rate));
    return r;
}

Result cmd_finite_volume(const Common& c, const Params& p) {
    Loaded ld = load(c, true);
    const ModelConfig& m = ld.model;
    Result r;
    r.anchor = "finite-volume criterion boundary sum (prefactor left out)";
    Box region = Box::cube(p.R, origin(m.d));
    Site x = origin(m.d);
    cplx z(p.re, p.im);
    FiniteVolumeSum a = finite_volume_sum(m, region, x, z, p.s, p.L, p.trials, ld.seed);
    FiniteVolumeSum b = finite_volume_sum(m.with_lambda(2 * m.lambda), region, x, z, p.s, p.L, p.trials, ld.seed);
    r.csv.header = {"lambda", "raw_sum", "stderr", "scaled", "xi", "exponent", "bonds"};
    for (auto* f : {&a, &b})
        r.csv.rows.push_back({num(f == &a ? m.lambda : 2 * m.lambda), num(f->raw_sum), num(f->std_error),
                              num(f->scaled), num(f->xi), num(f->exponent), std::to_string(f->bonds.size())});
    r.summary.push_back(info("scaled sum", a.scaled));
    // doubling lambda should not increase the raw moment sum beyond noise
    r.summary.push_back(upper("raw sum at 2 lambda minus 3 stderr vs raw sum at lambda", b.raw_sum - 3 * b.std_error,
                              a.raw_sum + 3 * a.std_error));
    return r;
}

Result cmd_wegner(const Common& c, const Params& p) {
    Loaded ld = load(c, true);
    Result r;
    r.anchor = "abstract Wegner estimate with positive combinations";
    WegnerReport w = wegner_mc(ld.model, p.l, p.a, p.b, p.trials, ld.seed, true);
    r.csv.header = {"a", "b", "sites", "mean", "stderr", "bound", "half_mean", "half_stderr"};
    r.csv.rows.push_back({num(w.a), num(w.b), std::to_string(w.sites), num(w.mean), num(w.std_error),
                          num(w.abstract_bound), num(w.half_mean.value_or(nan_v)),
                          num(w.half_std_error.value_or(nan_v))});
    r.summary.push_back(upper("mean + 3 stderr vs bound", w.mean + 3 * w.std_error, w.abstract_bound));
    r.summary.push_back(info("c_u", w.coefficients.lead.c_u));
    r.summary.push_back(info("box radius R_l", w.coefficients.radius.box_radius));
    if (w.linear_scaling_ratio) r.summary.push_back(info("count ratio full/half interval", *w.linear_scaling_ratio));
    return r;
}

Result cmd_poscomb(const Common& c, const Params& p) {
    Loaded ld = load(c, false);
    const SingleSitePotential& u = ld.model.u;
    Result r;
    r.anchor = "leading derivative of the generating function; covering sum on the exhaustion box";
    WegnerCoefficients w = wegner_coefficients(u, p.l);
    double pm = covering_sum_min(u, p.l);
    std::string i0;
    for (int e : w.lead.I0.entries) i0 += (i0.empty() ? "" : " ") + std::to_string(e);
    r.notes.push_back("I0 = (" + i0 + ")");
    r.notes.push_back(fmt::format("c_u = {:.12g}", w.lead.c_u));
    r.notes.push_back(fmt::format("R_l = {:.12g} (box radius {})", w.radius.R, w.radius.box_radius));
    r.notes.push_back(fmt::format("covering sum min = {:.12g}", pm));
    r.csv.header = {"k", "t"};
    for (auto& [k, v] : w.t) r.csv.rows.push_back({site_str(k), num(v)});
    r.summary.push_back(info("c_u", w.lead.c_u));
    r.summary.push_back(info("R_l", w.radius.R));
    r.summary.push_back(info("sum of t l1 norms", w.sum_l1));
    r.summary.push_back(lower("covering sum min vs 1 - 10 tail", pm, 1 - 10 * w.lead.truncation_error));
    return r;
}

Result cmd_regularity(const Common& c, const Params& p) {
    Loaded ld = load(c, true);
    const ModelConfig& m = ld.model;
    Result r;
    r.anchor = "pair regularity probability on an energy grid (upper-biased)";
    int sep = p.sep > 0 ? p.sep : 2 * p.L + m.u.diameter_l1() + 1;
    RegularityReport rep = pair_regularity_probability(m, p.L, origin(m.d), at(m.d, sep), p.a, p.b, p.grid, p.m,
                                                       p.trials, ld.seed);
    r.csv.header = {"energy", "frequency"};
    for (std::size_t i = 0; i < rep.energies.size(); ++i)
        r.csv.rows.push_back({num(rep.energies[i]), num(rep.per_energy[i])});
    r.notes.push_back("the energy continuum is replaced by the grid; the joint frequency is biased upwards");
    r.summary.push_back(info("joint frequency over the grid", rep.all_energies));
    r.summary.push_back(info("stderr", rep.std_error));
    r.summary.push_back(info("grid spacing", rep.grid_spacing));
    return r;
}

Result cmd_conditional(const Common& c, const Params& p) {
    Result r;
    r.anchor = "Gaussian conditional variance and mean; band Gram determinants";
    Stream st(combine(c.seed.value_or(1), 0x6763));
    r.csv.header = {"l", "m", "variance", "oracle_variance", "mean", "oracle_mean"};
    double worst = 0;
    const int first = p.literal_index ? 1 : 0;
    for (int l = first; l <= p.lmax; ++l)
        for (int mm = first; mm <= p.lmax; ++mm) {
            Eigen::VectorXd vm(mm), vp(l);
            for (int i = 0; i < mm; ++i) vm[i] = st.uniform(-1, 1);
            for (int i = 0; i < l; ++i) vp[i] = st.uniform(-1, 1);
            GaussianConditional g = gaussian_conditional(p.u, p.sigma, l, mm, vm, vp);
            if (p.literal_index)
                g.variance = p.sigma * p.sigma *
                             (p.u * p.u - 1 + 1 / s_value_from_one(p.u, mm) + 1 / s_value_from_one(p.u, l));
            worst = std::max({worst, std::abs(g.variance - g.oracle_variance), std::abs(g.mean - g.oracle_mean)});
            r.csv.rows.push_back({std::to_string(l), std::to_string(mm), num(g.variance), num(g.oracle_variance),
                                  num(g.mean), num(g.oracle_mean)});
        }
    if (p.literal_index) r.notes.push_back("s_l summed from i = 1; the oracle uses det(A_l A_l^T), summed from i = 0");
    r.summary.push_back(upper("formula vs covariance oracle", worst, 1e-10));
    double det_worst = 0;
    for (int l = 2; l <= 8; ++l) {
        ALDeterminant a = a_l_determinants(p.u, l);
        det_worst = std::max(det_worst, std::abs(a.det - a.s) / a.s);
    }
    r.summary.push_back(upper("relative det(A A^T) - s_l", det_worst, 1e-10));
    if (!c.config.empty()) {
        r.anchor += "; pinning counterexample for sign-changing potentials";
        Loaded ld = load(c, true);
        PinningReport n = pinning_check(ld.model.u, p.delta, p.delta_prime, p.attempts, ld.seed);
        if (n.constants.degenerate) r.notes.push_back("n = 1: the pinning construction is degenerate");
        if (n.inconclusive) {
            r.notes.push_back("acceptance rate below 1e-6: inconclusive");
            r.summary.push_back(info("pinning accepted pairs", double(n.pairs)));
        } else {
            r.summary.push_back(upper("pinning violations", double(n.violations), 0.0));
        }
        r.notes.push_back(fmt::format("pinning: m = {:.6g}, c = {:.6g}, accepted {}/{} of {} draws", n.constants.m,
                                      n.constants.c, n.accepted_left, n.accepted_right, n.attempts));
    }
    return r;
}

Result cmd_apriori(const Common& c, const Params& p) {
    Loaded ld = load(c, true);
    const ModelConfig& m = ld.model;
    require(m.d == 1, "apriori runs on chains (d = 1)");
    Result r;
    r.anchor = "nonlocal a-priori bound for potentials with nonzero sum; weighted potential positivity";
    NonlocalBound nb = nonlocal_apriori_bound(m.u, m.rho, m.lambda, p.s);
    r.csv.header = {"sites", "x", "y", "mean", "stderr", "bound", "pass"};
    double worst = -std::numeric_limits<double>::infinity();
    std::uint64_t k = 0;
    for (int n : p.ladder) {
        std::vector<Site> sites;
        for (int i = 0; i < n; ++i) sites.push_back({i});
        Box g(1, sites);
        Eigen::MatrixXd smp = moment_samples(m, g, cplx(p.re, p.im), p.s, {0}, p.trials, trial_seed(ld.seed, k++));
        for (long y = 0; y < smp.cols(); ++y) {
            SampleStats st = summarize(smp, y);
            bool ok = st.mean <= nb.bound + 3 * st.std_error;
            worst = std::max(worst, st.mean - 3 * st.std_error);
            r.csv.rows.push_back({std::to_string(n), "0", std::to_string(y), num(st.mean), num(st.std_error),
                                  num(nb.bound), ok ? "true" : "false"});
        }
    }
    r.summary.push_back(upper("max (mean - 3 stderr) vs bound", worst, nb.bound));
    WeightedPotential w = w_xy(m.u, {0}, {p.sep > 0 ? p.sep : 5}, Box::cube(15, {0}));
    r.summary.push_back(lower("weighted potential margin", std::min({w.min_margin, w.margin_x, w.margin_y}), -1e-12));
    return r;
}

}  // namespace lab
