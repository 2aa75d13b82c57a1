#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

#include "alloy/error.hpp"
#include "alloy/model.hpp"
#include "alloy/quadrature.hpp"
#include "alloy/rng.hpp"

using namespace alloy;
using testing_helpers::line;
using testing_helpers::make_model;

TEST_CASE("cubes") {
    CHECK(Box::cube(0, {0}).size() == 1);
    Box c1 = Box::cube(1, {0});
    CHECK(c1.sites() == std::vector<Site>{{-1}, {0}, {1}});
    Box c2 = Box::cube(2, {1, 1});
    CHECK(c2.size() == 25);
    CHECK(c2[0] == Site{-1, -1});
    CHECK(c2[1] == Site{-1, 0});  // last coordinate fastest
    for (std::size_t i = 0; i < c2.size(); ++i) CHECK(c2.index_of(c2[i]) == long(i));
    CHECK(c2.index_of({10, 10}) == -1);
    CHECK_THROWS_AS(Box(1, {{0}, {0}}), precondition_error);
}

TEST_CASE("boundaries") {
    Box g = line(-1, 1);
    CHECK(interior_boundary(g).sites() == std::vector<Site>{{-1}, {1}});
    CHECK(exterior_boundary(g).sites() == std::vector<Site>{{-2}, {2}});
    CHECK(interior_boundary(line(0, 0)).sites() == std::vector<Site>{{0}});
    Box sq = Box::cube(1, {0, 0});
    CHECK(interior_boundary(sq).size() == 8);
    Box ext = exterior_boundary(sq);
    CHECK(ext.size() == 12);
    for (const Site& s : ext.sites()) {
        CHECK_FALSE(sq.contains(s));
        bool adj = false;
        for (const Site& nb : neighbours(s)) adj = adj || sq.contains(nb);
        CHECK(adj);
    }
    CHECK_THROWS_AS(interior_boundary(Box()), precondition_error);
    CHECK_THROWS_AS(exterior_boundary(Box()), precondition_error);
}

TEST_CASE("set algebra and components") {
    Box a = line(0, 5), b = line(3, 8);
    CHECK(set_union(a, b).size() == 9);
    CHECK(set_intersection(a, b).sites() == std::vector<Site>{{3}, {4}, {5}});
    CHECK(set_difference(a, b).sites() == std::vector<Site>{{0}, {1}, {2}});
    CHECK(is_subset(line(1, 2), a));
    Box split = set_difference(line(-5, 5), Box(1, {{0}}));
    CHECK(components(split).size() == 2);
}

TEST_CASE("lambda_plus") {
    auto d0 = SingleSitePotential::delta(1);
    Box g = line(2, 6);
    CHECK(lambda_plus(g, d0) == g);
    auto u01 = SingleSitePotential::chain({1.0, 0.5});
    CHECK(lambda_plus(line(0, 5), u01) == line(-1, 5));
    auto tail = SingleSitePotential::exponential(1, 1.0, 1.0, 3);
    CHECK(lambda_plus(line(0, 0), tail) == line(-3, 3));
}

TEST_CASE("potential values") {
    auto u = SingleSitePotential::chain({1.0, -1.0});
    Configuration w;
    w.values = {{{-1}, 2.0}, {{0}, 3.0}};
    CHECK(potential_value(u, w, {0}) == doctest::Approx(1.0));
    Configuration zero;
    zero.values = {{{-1}, 0.0}, {{0}, 0.0}};
    CHECK(potential_value(u, zero, {0}) == 0.0);
    auto d0 = SingleSitePotential::delta(1);
    CHECK(potential_value(d0, w, {0}) == 3.0);
    Configuration missing;
    missing.values = {{{0}, 1.0}};
    CHECK_THROWS_AS(potential_value(u, missing, {0}), precondition_error);

    // linear in omega and in u
    auto u2 = SingleSitePotential::chain({0.3, 0.7, -0.2});
    ModelConfig m = make_model(u2, Density::uniform(0, 1), 1.0);
    Box sites = line(-4, 4);
    Configuration a = sample_configuration(m, sites, 1), b = sample_configuration(m, sites, 2), ab;
    for (auto& [k, v] : a.values) ab.values[k] = v + 2 * b.at(k);
    for (int x = -2; x <= 2; ++x) {
        CHECK(potential_value(u2, ab, {x}) ==
              doctest::Approx(potential_value(u2, a, {x}) + 2 * potential_value(u2, b, {x})).epsilon(1e-13));
        CHECK(potential_value(u2.scaled(3.0), a, {x}) == doctest::Approx(3 * potential_value(u2, a, {x})));
    }
}

TEST_CASE("potential construction") {
    CHECK_THROWS_AS(SingleSitePotential(1, {{{1}, 1.0}}), precondition_error);  // 0 not in support
    auto e = SingleSitePotential::exponential(1, 1.0, 1.0, 30);
    CHECK(e.sum() == doctest::Approx(1 + 2 * std::exp(-1.0) * (1 - std::exp(-30.0)) / (1 - std::exp(-1.0))));
    for (auto& [k, v] : e.values()) CHECK(std::abs(v) <= std::exp(-norm1(k)) * (1 + 1e-15));
    // tail mass of e^{-|k|} beyond radius 30: 2 e^{-31} / (1 - e^{-1})
    CHECK(e.tail_mass() == doctest::Approx(2 * std::exp(-31.0) / (1 - std::exp(-1.0))).epsilon(1e-8));
    CHECK(SingleSitePotential::delta(2).tail_mass() == 0.0);
}

TEST_CASE("hamiltonian assembly") {
    auto d0 = SingleSitePotential::delta(1);
    ModelConfig m0 = make_model(d0, Density::uniform(0, 1), 1.0).with_lambda(0.0);
    Configuration w;
    w.values = {{{0}, 0.1}, {{1}, 0.2}};
    Eigen::MatrixXd h = assemble_hamiltonian(m0, w, line(0, 1));
    CHECK(h(0, 0) == 0.0);
    CHECK(h(0, 1) == -1.0);
    CHECK(h(1, 0) == -1.0);

    ModelConfig m2 = make_model(d0, Density::uniform(0, 1), 2.0);
    Configuration one;
    one.values = {{{0}, 1.5}};
    CHECK(assemble_hamiltonian(m2, one, line(0, 0))(0, 0) == 3.0);

    // 5x5 tridiagonal display
    ModelConfig m = make_model(d0, Density::uniform(0, 1), 3.0);
    Box g = line(-2, 2);
    Configuration c = sample_configuration(m, g, 9);
    Eigen::MatrixXd h5 = assemble_hamiltonian(m, c, g);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            if (i == j) CHECK(h5(i, j) == 3.0 * c.at({i - 2}));
            else if (std::abs(i - j) == 1) CHECK(h5(i, j) == -1.0);
            else CHECK(h5(i, j) == 0.0);
        }
}

TEST_CASE("hamiltonian structure in d = 2") {
    auto u = SingleSitePotential(2, {{{0, 0}, 1.0}, {{1, 0}, -0.4}, {{0, 1}, 0.3}});
    ModelConfig m = make_model(u, Density::uniform(-1, 1), 1.7);
    Box g = Box::cube(2, {0, 0});
    Configuration c = sample_configuration(m, lambda_plus(g, u), 3);
    Eigen::MatrixXd h = assemble_hamiltonian(m, c, g);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
    int minus_ones = 0, pairs = 0;
    for (long i = 0; i < h.rows(); ++i)
        for (long j = 0; j < h.cols(); ++j) {
            if (i != j && h(i, j) == -1.0) ++minus_ones;
            if (i < j && norm1(g[i] - g[j]) == 1) ++pairs;
        }
    CHECK(minus_ones == 2 * pairs);
    for (long i = 0; i < h.rows(); ++i) CHECK(h(i, i) == doctest::Approx(1.7 * potential_value(u, c, g[i])));

    // the precomputed layout agrees with direct assembly
    DisorderedBox db(m, g);
    Eigen::VectorXd om = db.sample(3);
    CHECK((db.hamiltonian(om) - h).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("free path spectrum") {
    auto d0 = SingleSitePotential::delta(1);
    ModelConfig m = make_model(d0, Density::uniform(0, 1), 1.0).with_lambda(0.0);
    for (int n = 2; n <= 12; ++n) {
        Box g = line(0, n - 1);
        Eigen::MatrixXd h = assemble_hamiltonian(m, sample_configuration(m, g, 1), g);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        std::vector<double> want;
        for (int k = 1; k <= n; ++k) want.push_back(-2 * std::cos(M_PI * k / (n + 1)));
        std::sort(want.begin(), want.end());
        for (int k = 0; k < n; ++k) CHECK(std::abs(es.eigenvalues()[k] - want[k]) < 1e-10);
    }
}

TEST_CASE("sampling is keyed by site") {
    ModelConfig m = make_model(SingleSitePotential::delta(1), Density::uniform(0, 1), 1.0);
    Configuration a = sample_configuration(m, line(0, 9), 42), b = sample_configuration(m, line(0, 9), 42);
    CHECK(a.values == b.values);
    Configuration c = sample_configuration(m, line(5, 14), 42);
    for (int i = 5; i <= 9; ++i) CHECK(a.at({i}) == c.at({i}));
    std::set<double> distinct;
    for (auto& [k, v] : a.values) distinct.insert(v);
    CHECK(distinct.size() == 10);

    double sum = 0;
    const int N = 100000;
    for (int i = 0; i < N; ++i) sum += draw_coupling(m.rho, 5, {i});
    CHECK(std::abs(sum / N - 0.5) < 0.01);
}

TEST_CASE("densities") {
    auto check_mass = [](const Density& d) {
        QuadResult q = integrate_singular([&](double t) { return d.pdf(t); }, d.lo(), d.hi(), {}, d.breakpoints(), 0.5);
        CHECK(std::abs(q.value - 1.0) < 1e-10);
    };
    Density u = Density::uniform(-0.5, 1.5), rc = Density::raised_cosine(0, 1);
    Density pl = Density::piecewise_linear({0, 1, 3}, {0, 2, 0});
    check_mass(u);
    check_mass(rc);
    check_mass(pl);
    CHECK(u.radius() == 1.5);
    CHECK(u.sup_norm() == 0.5);
    CHECK(u.var_norm() == 1.0);
    CHECK_FALSE(u.deriv_l1().has_value());
    CHECK(rc.sup_norm() == doctest::Approx(2.0));
    // closed-form ||rho'||_1 for 1 - cos(2 pi t) against quadrature of |rho'|
    QuadResult dq = integrate_singular(
        [](double t) { return std::abs(2 * M_PI * std::sin(2 * M_PI * t)); }, 0, 1, {}, {0.5}, 0.5);
    CHECK(std::abs(*rc.deriv_l1() - dq.value) < 1e-10);
    CHECK(std::abs(*rc.deriv_l1() - 4.0) < 1e-12);
    for (double p : {0.01, 0.3, 0.5, 0.77, 0.99}) {
        CHECK(std::abs(rc.cdf(rc.quantile(p)) - p) < 1e-12);
        CHECK(std::abs(pl.cdf(pl.quantile(p)) - p) < 1e-12);
        CHECK(std::abs(u.cdf(u.quantile(p)) - p) < 1e-12);
    }
    CHECK_THROWS_AS(Density::from_spec("discrete", {0, 1}), precondition_error);
    CHECK_THROWS_AS(Density::uniform(1, 0), precondition_error);
}

TEST_CASE("counter-based streams") {
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
    Stream a(7), b(7);
    for (int i = 0; i < 10; ++i) CHECK(a.uniform() == b.uniform());
    for (int i = 0; i < 1000; ++i) {
        double v = to_unit(mix64(i));
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}
