#include <doctest.h>

#include <random>
#include <sstream>

#include "bellik/io.hpp"
#include "test_support.hpp"

using namespace bellik;
using namespace bellik::testing;
using nlohmann::json;

TEST_CASE("frame descriptors round-trip and validate") {
    auto frame = Frame::make({"T", "F"});
    auto j = frame_to_json(*frame);
    CHECK(j.dump() == R"({"labels":["T","F"]})");
    CHECK(*frame_from_json(j) == *frame);
    CHECK_THROWS_AS((void)frame_from_json(json::parse(R"({"label":1})")),
                    std::invalid_argument);
}

TEST_CASE("mass JSON round-trips through label arrays") {
    std::mt19937_64 gen(321);
    auto frame = Frame::make({"red", "green", "blue"});
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_mass(frame, gen);
        auto parsed = mass_from_json(mass_to_json(m));
        REQUIRE(parsed.focal_count() == m.focal_count());
        for (const auto& [set, mass] : m.focal()) {
            CHECK(parsed.mass(SubsetMask(parsed.domain(), set.bits())) ==
                  doctest::Approx(mass).epsilon(1e-15));
        }
    }
}

TEST_CASE("mass JSON parser enforces the validity rules") {
    CHECK_THROWS_AS(
        (void)mass_from_json(json::parse(
            R"({"frame":{"labels":["T","F"]},"focal":[{"set":["T"],"mass":0.5},{"set":["F"],"mass":0.6}]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)mass_from_json(json::parse(
            R"({"frame":{"labels":["T","F"]},"focal":[{"set":[],"mass":1.0}]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)mass_from_json(json::parse(
            R"({"frame":{"labels":["T","F"]},"focal":[{"set":["T"],"mass":-0.2},{"set":["F"],"mass":1.2}]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)mass_from_json(json::parse(
            R"({"frame":{"labels":["T","F"]},"focal":[{"set":["T"],"mass":0.5},{"set":["T"],"mass":0.5}]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)mass_from_json(json::parse(
            R"({"frame":{"labels":["T","F"]},"focal":[{"set":["X"],"mass":1.0}]})")),
        std::invalid_argument);
}

TEST_CASE("product mass JSON carries factor frames and tuple sets") {
    auto m = bernoulli_mass(0.5, 0.3);
    std::vector<MassFunction> trials{m, m};
    auto combined = combine_many(trials, CombinationRule::conjunctive);
    auto j = mass_to_json(combined);
    auto parsed = product_mass_from_json(j);
    REQUIRE(parsed.focal_count() == combined.focal_count());
    for (const auto& [set, mass] : combined.focal()) {
        CHECK(parsed.mass(ProductSubset(parsed.domain(), set.bits())) ==
              doctest::Approx(mass).epsilon(1e-15));
    }
}

TEST_CASE("unnormalized mass JSON includes the conflict slot") {
    auto combined = combine_conjunctive(bernoulli_mass(0.9, 0.1), bernoulli_mass(0.1, 0.9));
    auto j = mass_to_json(combined);
    CHECK(j.at("conflict").get<double>() == doctest::Approx(0.82).epsilon(1e-12));
    CHECK(j.at("focal").size() == 2);
}

TEST_CASE("fit results round-trip through model JSON") {
    FitResult result;
    result.params = {0.4055, -1.25, 0.75};
    result.which = LikelihoodKind::upper;
    result.objective = -0.125;
    result.converged = true;
    result.boundary_hit = true;
    result.kkt.stationarity_residual = 3e-7;
    result.kkt.mu_beta2_lower = 4.0;
    result.kkt.active = {"beta2>=min"};
    result.active_constraints = {"beta2>=min"};
    result.iterations = 42;
    result.excluded_missing = 3;

    auto parsed = fit_result_from_json(fit_result_to_json(result));
    CHECK(parsed.params.beta0 == result.params.beta0);
    CHECK(parsed.params.beta1 == result.params.beta1);
    CHECK(parsed.params.beta2 == result.params.beta2);
    CHECK(parsed.which == result.which);
    CHECK(parsed.objective == result.objective);
    CHECK(parsed.converged == result.converged);
    CHECK(parsed.boundary_hit == result.boundary_hit);
    CHECK(parsed.kkt.stationarity_residual == result.kkt.stationarity_residual);
    CHECK(parsed.kkt.mu_beta2_lower == result.kkt.mu_beta2_lower);
    CHECK(parsed.kkt.active == result.kkt.active);
    CHECK(parsed.iterations == result.iterations);
    CHECK(parsed.excluded_missing == result.excluded_missing);
}

TEST_CASE("dataset CSV parses the x,y schema") {
    std::istringstream in("x,y\n0.5,1\n1.25,0\n2.5,NA\n");
    auto data = dataset_from_csv(in);
    REQUIRE(data.size() == 3);
    CHECK(data.rows()[0].x == 0.5);
    CHECK(data.rows()[0].y == 1);
    CHECK(data.rows()[1].y == 0);
    CHECK_FALSE(data.rows()[2].y.has_value());

    std::ostringstream out;
    dataset_to_csv(out, data);
    std::istringstream back(out.str());
    auto reread = dataset_from_csv(back);
    CHECK(reread.size() == 3);
    CHECK(reread.rows()[1].x == 1.25);

    std::istringstream bad_header("a,b\n1,0\n");
    CHECK_THROWS_AS((void)dataset_from_csv(bad_header), std::invalid_argument);
    std::istringstream bad_y("x,y\n1.0,2\n");
    CHECK_THROWS_AS((void)dataset_from_csv(bad_y), std::invalid_argument);
    std::istringstream bad_x("x,y\nabc,1\n");
    CHECK_THROWS_AS((void)dataset_from_csv(bad_x), std::invalid_argument);
}

TEST_CASE("surface CSV has the grid rows plus argmax summary") {
    auto surface = bernoulli_surface({2, 4}, 0.25);
    std::ostringstream out;
    surface_to_csv(out, surface);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "p,q,lower,upper");
    std::size_t rows = 0;
    std::size_t comments = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("# argmax_", 0) == 0) {
            ++comments;
        } else {
            ++rows;
        }
    }
    CHECK(rows == surface.points.size());
    CHECK(comments == 2);
}

TEST_CASE("verification report JSON lists every claim") {
    auto report = verify_factorization(2, 3, 11);
    auto j = report_to_json(report);
    CHECK(j.at("n") == 2);
    CHECK(j.at("trials") == 3);
    CHECK(j.at("seed") == 11);
    CHECK(j.at("claims").size() == 6);
    CHECK(j.at("proven_claims_ok").get<bool>());
    for (const auto& claim : j.at("claims")) {
        CHECK(claim.contains("claim"));
        CHECK(claim.contains("proven"));
        CHECK(claim.contains("max_discrepancy"));
        CHECK(claim.contains("checks"));
    }
}

TEST_CASE("17-digit formatting reproduces doubles exactly") {
    std::mt19937_64 gen(54321);
    for (int trial = 0; trial < 1000; ++trial) {
        const double value = (rng::uniform01(gen) - 0.5) * std::pow(10.0, rng::uniform(gen, -12.0, 12.0));
        CHECK(std::stod(format_double(value)) == value);
    }
    CHECK(std::stod(format_double(0.1)) == 0.1);
}
