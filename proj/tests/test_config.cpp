#include <string>

#include "doctest.h"

#include "alloy/config.hpp"

using namespace alloy;

TEST_CASE("model file parse") {
    ModelFile f = parse_model(R"(
dimension: 1
lambda: 50
potential:
  support: [[0, 1.0], [1, -0.5]]
density: {kind: uniform, params: [0, 1]}
seed: 7
)");
    CHECK(f.model.d == 1);
    CHECK(f.model.lambda == 50.0);
    CHECK(f.model.u({1}) == -0.5);
    CHECK(f.model.rho.sup_norm() == doctest::Approx(1.0));
    REQUIRE(f.seed);
    CHECK(*f.seed == 7u);

    ModelFile g = parse_model(R"(
dimension: 2
lambda: 3
potential:
  support: [[[0, 0], 2], [[1, 0], -1], [[0, 1], -1]]
density: {kind: raised_cosine, params: [-1, 1]}
)");
    CHECK(g.model.d == 2);
    CHECK(g.model.u({0, 1}) == -1.0);
    CHECK_FALSE(g.seed);

    ModelFile t = parse_model(R"(
dimension: 1
lambda: 1
potential:
  tail: {C: 1, alpha: 1, radius: 10}
density: {kind: uniform, params: [0, 1]}
)");
    CHECK(t.model.u.tail());
}

TEST_CASE("model file errors") {
    try {
        parse_model("dimension: 1\nlambda: 1\npotential: {support: [[0, 1]]}\ndensity: {kind: uniform, params: [0, 1]}\n"
                    "lamda: 3\n",
                    "bad.yaml");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("bad.yaml:5") != std::string::npos);
        CHECK(msg.find("lamda") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_model("dimension: 1\nlambda: 1\npotential: {support: [[0, 1]]}\n"
                                "density: {kind: discrete, params: [0, 1]}\n"),
                    config_error);
    CHECK_THROWS_AS(parse_model("dimension: 2\nlambda: 1\npotential: {support: [[0, 1]]}\n"
                                "density: {kind: uniform, params: [0, 1]}\n"),
                    config_error);
    CHECK_THROWS_AS(parse_model("dimension: 1\nlambda: 1\ndensity: {kind: uniform, params: [0, 1]}\n"), config_error);
    CHECK_THROWS_AS(load_model("/nonexistent/model.yaml"), config_error);
}
