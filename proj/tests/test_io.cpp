#include <doctest.h>

#include <stdexcept>

#include "haargreedy/constructions.hpp"
#include "haargreedy/io.hpp"
#include "haargreedy/verify.hpp"

using namespace haargreedy;

TEST_SUITE("io") {

TEST_CASE("expansion JSON round trip preserves every coefficient") {
    HaarExpansion f = build_f_n_eps(8, Rational(1, 96));
    Json object = expansion_to_json(f);
    CHECK(object.at("dim") == 2);
    CHECK(object.at("constant") == "1/1");
    CHECK(object.at("coeffs").size() == f.spectrum_size());
    CHECK(object.at("coeffs")[0].at("cube") == "d2:n0:(0,0)");
    CHECK(expansion_from_json(object) == f);

    HaarExpansion random = gen_expansion(271, 3, 3, 12, 4);
    CHECK(expansion_from_json(expansion_to_json(random)) == random);
}

TEST_CASE("expansion JSON rejects explicit zero coefficients") {
    Json object{{"dim", 2},
                {"constant", "0/1"},
                {"coeffs", Json::array({Json{{"cube", "d2:n1:(0,0)"},
                                             {"j", 1},
                                             {"value", "0/1"}}})}};
    CHECK_THROWS_AS(expansion_from_json(object), std::invalid_argument);
}

TEST_CASE("grid JSON round trip") {
    HaarExpansion f = gen_expansion(277, 2, 2, 5, 3);
    std::vector<Rational> grid = to_grid(f, 3);
    Json object = grid_to_json(grid, 2, 3);
    int dim = 0;
    int level = 0;
    CHECK(grid_from_json(object, dim, level) == grid);
    CHECK(dim == 2);
    CHECK(level == 3);
}

TEST_CASE("trace serialization is deterministic and carries both scales") {
    HaarExpansion f = build_f_n(3);
    GreedyParams params{Rational(3, 4), Rational(1, 2), StepRule::RuleA, std::nullopt,
                        true};
    GreedyTrace trace = run_greedy(f, params);
    std::string jsonl = trace_to_jsonl(trace);
    CHECK(jsonl == trace_to_jsonl(run_greedy(f, params)));

    std::istringstream lines(jsonl);
    std::string line;
    REQUIRE(std::getline(lines, line));
    Json header = Json::parse(line);
    CHECK(header.at("record") == "header");
    CHECK(header.at("terminated") == true);
    CHECK(header.at("boundary_regime") == false);
    CHECK(header.at("input_norm") == "1/1");
    CHECK(header.at("input_norm_decimal") == "1.0000000000000000e+00");
    std::size_t steps = 0;
    while (std::getline(lines, line)) {
        Json step = Json::parse(line);
        CHECK(step.at("record") == "step");
        CHECK(step.contains("removed_value"));
        CHECK(step.contains("approximant_norm_decimal"));
        ++steps;
    }
    CHECK(steps == trace.steps.size());

    std::string csv = trace_to_csv(trace);
    std::size_t rows = static_cast<std::size_t>(
        std::count(csv.begin(), csv.end(), '\n'));
    CHECK(rows == trace.steps.size() + 1);
    CHECK(csv.rfind("m,residual_norm,approximant_norm,ratio\n", 0) == 0);
}

TEST_CASE("boundary traces are flagged in the header") {
    HaarExpansion g = build_g_n_eps(4, Rational(1, 8), Rational(1, 2));
    GreedyParams params{Rational(1, 2), Rational(1, 2), StepRule::RuleA, std::nullopt,
                        true};
    std::string jsonl = trace_to_jsonl(run_greedy(g, params));
    Json header = Json::parse(jsonl.substr(0, jsonl.find('\n')));
    CHECK(header.at("boundary_regime") == true);
}

TEST_CASE("missing expansion files raise") {
    CHECK_THROWS_AS(read_expansion_file("/nonexistent/path.json"), std::runtime_error);
}

}  // TEST_SUITE
