#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "alloy/apriori.hpp"
#include "alloy/error.hpp"
#include "alloy/green.hpp"
#include "alloy/moments.hpp"
#include "alloy/oned.hpp"
#include "alloy/quadrature.hpp"

using namespace alloy;
using testing_helpers::line;
using testing_helpers::make_model;

TEST_CASE("moment estimate without disorder") {
    auto u = SingleSitePotential::chain({1.0, -0.5});
    ModelConfig m = make_model(u, Density::uniform(0, 1), 1.0).with_lambda(0.0);
    Box g = line(0, 9);
    cplx z(0.3, 0.5);
    MomentEstimate e = estimate_moment(m, g, z, 0.5, {0}, {4}, 50, 1);
    Eigen::MatrixXcd G = green(-adjacency(g), z);
    CHECK(std::abs(e.mean - std::pow(std::abs(G(0, 4)), 0.5)) < 1e-14);
    CHECK(e.std_error < 1e-15);
}

TEST_CASE("single-site moment matches quadrature") {
    ModelConfig m = make_model(SingleSitePotential::delta(1), Density::uniform(0, 1), 1.0);
    MomentEstimate e = estimate_moment(m, line(0, 0), cplx(0, 1), 0.5, {0}, {0}, 20000, 3);
    // E |omega - i|^{-1/2}
    QuadResult q = integrate_singular([](double w) { return std::pow(w * w + 1, -0.25); }, 0, 1, {}, {}, 0.5);
    CHECK(std::abs(e.mean - q.value) <= 3 * e.std_error);
}

TEST_CASE("moment estimate reproducibility and scaling") {
    auto u = SingleSitePotential::chain({1.0, 0.4});
    ModelConfig m = make_model(u, Density::uniform(0, 1), 3.0);
    Box g = line(0, 11);
    MomentEstimate s = estimate_moment(m, g, cplx(0, 0.5), 0.4, {2}, {9}, 400, 5, Exec::serial);
    MomentEstimate p = estimate_moment(m, g, cplx(0, 0.5), 0.4, {2}, {9}, 400, 5, Exec::parallel);
    CHECK(s.mean == p.mean);
    CHECK(s.std_error == p.std_error);

    MomentEstimate half = estimate_moment(m, g, cplx(0, 0.5), 0.4, {2}, {9}, 2000, 6);
    MomentEstimate full = estimate_moment(m, g, cplx(0, 0.5), 0.4, {2}, {9}, 4000, 6);
    double ratio = half.std_error / full.std_error;
    CHECK(ratio > std::sqrt(2.0) * 0.8);
    CHECK(ratio < std::sqrt(2.0) * 1.2);

    // relabelling the box does not change the estimate
    std::vector<Site> rev(g.sites().rbegin(), g.sites().rend());
    MomentEstimate r = estimate_moment(m, Box(1, rev), cplx(0, 0.5), 0.4, {2}, {9}, 400, 5);
    CHECK(std::abs(r.mean - s.mean) < 1e-12 * s.mean);

    CHECK_THROWS_AS(estimate_moment(m, g, cplx(0, 0.5), 1.0, {2}, {9}, 10, 5), precondition_error);
    CHECK_THROWS_AS(estimate_moment(m, g, cplx(0, 0.5), 0.5, {20}, {9}, 10, 5), precondition_error);
}

TEST_CASE("one-dimensional constants") {
    Density u01 = Density::uniform(0, 1);
    OneDConstants c = one_d_constants(SingleSitePotential::delta(1), u01, 64, 0.5);
    CHECK(c.C_u == doctest::Approx(1.0));
    CHECK(c.C_rho == doctest::Approx(4.0));
    CHECK(c.C == doctest::Approx(0.5));
    CHECK(c.mu == doctest::Approx(std::log(2.0)));
    CHECK(c.threshold_lambda == doctest::Approx(16.0));
    OneDConstants big = one_d_constants(SingleSitePotential::delta(1), u01, 1e8, 0.5);
    CHECK(big.C < 1e-3);

    // threshold consistency on a sign-changing potential
    auto u = SingleSitePotential::chain({1.0, -0.5});
    OneDConstants k = one_d_constants(u, u01, 50, 0.5);
    CHECK(k.threshold_lambda == doctest::Approx(22.627).epsilon(1e-4));
    CHECK(k.C < 1);
    CHECK(k.mu > 0);
    CHECK(k.moment_exponent() == 0.25);
    OneDConstants below = one_d_constants(u, u01, 0.99 * k.threshold_lambda, 0.5);
    OneDConstants above = one_d_constants(u, u01, 1.01 * k.threshold_lambda, 0.5);
    CHECK(below.C > 1);
    CHECK(above.C < 1);

    CHECK_THROWS_AS(one_d_constants(SingleSitePotential::chain({1.0, 0.0, 1.0}), u01, 50, 0.5),
                    precondition_error);
}

TEST_CASE("gap constants") {
    CHECK(largest_gap(SingleSitePotential::chain({1, 2, 3})) == 0);
    CHECK(largest_gap(SingleSitePotential::chain({1, 0, -1})) == 1);
    CHECK(largest_gap(SingleSitePotential::chain({1, 0, 0, 2})) == 2);
    Density u01 = Density::uniform(0, 1);
    GapConstants g = gap_constants(SingleSitePotential::chain({1, 0, -1}), u01, 100, 0.5, 3);
    CHECK(g.r == 1);
    CHECK(g.alpha.size() == 2);
    CHECK(g.alpha[0] >= 1 / (2 * 3 * std::sqrt(2.0)));
    CHECK(g.min_distance >= g.required_distance);
    CHECK(g.D_alpha <= g.D_bound * (1 + 1e-12));
    CHECK(g.D_plus_alpha <= g.D_plus_bound * (1 + 1e-12));
    GapConstants g0 = gap_constants(SingleSitePotential::chain({1, 2, 3}), u01, 100, 0.5, 3);
    CHECK(g0.r == 0);
}

TEST_CASE("decay profile") {
    auto u = SingleSitePotential::chain({1.0, -0.5});
    ModelConfig m = make_model(u, Density::uniform(0, 1), 50.0);
    DecayProfile p = decay_profile(m, 20, cplx(0, 0.5), 0.5, 600, 7);
    CHECK(p.exponent == 0.25);
    CHECK(p.min_bound_distance == 4);
    for (std::size_t i = 0; i < p.distance.size(); ++i) {
        if (p.distance[i] < 4) {
            CHECK(std::isnan(p.bound[i]));
            continue;
        }
        CHECK(p.estimate[i].mean + 3 * p.estimate[i].std_error <= p.bound[i]);
    }
    CHECK(p.fit.rate > 0);

    DecayProfile flat = decay_profile(m.with_lambda(0.0), 12, cplx(0, 0.5), 0.5, 10, 7);
    Eigen::MatrixXcd G = green(-adjacency(line(0, 11)), cplx(0, 0.5));
    for (std::size_t i = 0; i < flat.distance.size(); ++i)
        CHECK(std::abs(flat.estimate[i].mean - std::pow(std::abs(G(0, flat.distance[i])), 0.25)) < 1e-14);
}

TEST_CASE("finite-volume boundary sum") {
    CHECK(xi_factor(1.0, 0.5, 3) == 1.0);
    ModelConfig m = make_model(SingleSitePotential::delta(1), Density::uniform(0, 1), 4.0);
    FiniteVolumeSum f = finite_volume_sum(m, line(-10, 10), {0}, cplx(0, 0.5), 0.5, 2, 400, 2);
    CHECK(f.bonds.size() == 2);
    CHECK(f.exponent == 0.25);
    CHECK(f.raw_sum > 0);
    CHECK(f.scaled == doctest::Approx(f.raw_sum * f.xi / std::pow(4.0, 0.5)));

    FiniteVolumeSum f2 = finite_volume_sum(m.with_lambda(8.0), line(-10, 10), {0}, cplx(0, 0.5), 0.5, 2, 400, 2);
    CHECK(f2.scaled < f.scaled);
    CHECK_THROWS_AS(finite_volume_sum(m, line(-10, 10), {0}, cplx(0, 0.5), 0.5, 1, 10, 2), precondition_error);
}

TEST_CASE("non-local a-priori bound") {
    Density rc = Density::raised_cosine(0, 1);
    NonlocalBound b = nonlocal_apriori_bound(SingleSitePotential::chain({1, 1}), rc, 10, 0.5);
    CHECK(b.ubar == 2);
    CHECK(b.u_l1 == 2);
    CHECK(b.c == doctest::Approx(std::log(1.5)));
    CHECK(b.C == doctest::Approx(5.0));

    NonlocalBound b2 = nonlocal_apriori_bound(SingleSitePotential::chain({1, -0.25}), rc, 10, 1.0 / 3);
    CHECK(b2.c == doctest::Approx(std::log(1.3)));
    CHECK(b2.C == doctest::Approx(2.3 / 0.3));
    double want = 8 / std::pow(0.75, 1.0 / 3) * std::pow(1.0 / 3, -1.0 / 3) / (2.0 / 3) * std::pow(4.0, 1.0 / 3) *
                  std::pow(2.3 / 0.3, 1.0 / 3) * std::pow(10.0, -1.0 / 3);
    CHECK(b2.bound == doctest::Approx(want));
    CHECK(nonlocal_apriori_bound(SingleSitePotential::chain({1, -0.25}), rc, 1e12, 1.0 / 3).bound < 1e-2);

    // negative mass is flipped
    NonlocalBound neg = nonlocal_apriori_bound(SingleSitePotential::chain({-1, -1}), rc, 10, 0.5);
    CHECK(neg.bound == doctest::Approx(b.bound));
    CHECK_THROWS_AS(nonlocal_apriori_bound(SingleSitePotential::chain({1, -1}), rc, 10, 0.5), precondition_error);
    CHECK_THROWS_AS(nonlocal_apriori_bound(SingleSitePotential::delta(1), rc, 10, 0.5), precondition_error);
    CHECK_THROWS_AS(nonlocal_apriori_bound(SingleSitePotential::chain({1, 1}), Density::uniform(0, 1), 10, 0.5),
                    precondition_error);
}

TEST_CASE("weighted potential positivity") {
    auto u = SingleSitePotential::chain({1, 1});
    WeightedPotential w = w_xy(u, {0}, {0}, Box::cube(5, {0}));
    CHECK(w.min_margin >= 0);
    CHECK(w.margin_x >= 0);
    CHECK(w.W.at({0}) >= 0.5);
    WeightedPotential a = w_xy(u, {-4}, {5}, Box::cube(6, {0}));
    WeightedPotential b = w_xy(u, {5}, {-4}, Box::cube(6, {0}));
    for (auto& [k, v] : a.W) CHECK(v == b.W.at(k));
    CHECK_THROWS_AS(w_xy(SingleSitePotential::delta(1, 2.0), {0}, {0}, Box::cube(2, {0})), precondition_error);
}

TEST_CASE("polynomial root criterion") {
    RootCriterion one = polynomial_root_criterion(SingleSitePotential::delta(1));
    CHECK(one.no_root_on_halfline);
    CHECK(one.N == 0);
    CHECK(one.alpha == std::vector<double>{1.0});
    CHECK_FALSE(polynomial_root_criterion(SingleSitePotential::chain({1, -1})).no_root_on_halfline);
    CHECK_FALSE(polynomial_root_criterion(SingleSitePotential::chain({2, -1})).no_root_on_halfline);
    RootCriterion pos = polynomial_root_criterion(SingleSitePotential::chain({1, 1}));
    CHECK(pos.no_root_on_halfline);
    CHECK_FALSE(pos.ambiguous);

    // 1 - x + x^2 has complex roots only; the certificate needs a multiplier
    RootCriterion q = polynomial_root_criterion(SingleSitePotential::chain({1, -1, 1}));
    CHECK(q.no_root_on_halfline);
    CHECK(q.N > 0);
    for (double c : q.w) CHECK(c >= 0);
    CHECK(q.w.front() > 0);
    CHECK(q.w.back() > 0);
    // w is the convolution of u with alpha
    std::vector<double> conv(q.alpha.size() + 2, 0.0);
    std::vector<double> uu{1, -1, 1};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < q.alpha.size(); ++j) conv[i + j] += uu[i] * q.alpha[j];
    double scale = *std::max_element(q.w.begin(), q.w.end());
    for (std::size_t i = 0; i < conv.size(); ++i) CHECK(std::abs(conv[i] - q.w[i]) <= 1e-13 * scale);

    // (x - 1)^2 + 1e-12: roots within the tolerance of the half-line
    RootCriterion amb = polynomial_root_criterion(SingleSitePotential::chain({1 + 1e-12, -2, 1}));
    CHECK(amb.ambiguous);
}
