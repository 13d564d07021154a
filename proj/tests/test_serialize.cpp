#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "enas/error.hpp"
#include "enas/serialize.hpp"
#include "fixtures.hpp"

using namespace enas;

TEST_CASE("genotype JSON") {
    const auto g = fixtures::worked_genotype();
    const auto j = genotype_to_json(g);
    CHECK(j.dump() == R"({"M":3,"cells":[[0,3,0],[1,3,0]],"r":2})");
    CHECK(genotype_from_json(j) == g);

    CHECK_THROWS_AS(genotype_from_json(Json::parse(R"({"M":3,"r":2,"cells":[[0,3,0]]})")), ParameterError);
    CHECK_THROWS_AS(genotype_from_json(Json::parse(R"({"M":3,"r":2,"cells":[[0,3,0],[1,-3,0]]})")), ParameterError);
    CHECK_THROWS_AS(genotype_from_json(Json::parse(R"({"M":3,"r":2,"cells":[[0,3,0],[1,3]]})")), ParameterError);
    CHECK_THROWS_AS(genotype_from_json(Json::parse(R"({"M":3,"r":2,"cells":[[0,3,0],[1,3.5,0]]})")), ParameterError);
    CHECK_THROWS_AS(genotype_from_json(Json::parse(R"({"M":3,"r":2,"cells":[[0,3,0],[1,"3",0]]})")), ParameterError);
    CHECK_THROWS_AS(genotype_from_json(Json::parse(R"({"M":3,"cells":[[0,3,0],[1,3,0]]})")), ParameterError);
    CHECK_THROWS_AS(genotype_from_json(Json::parse(R"({"M":1,"r":2,"cells":[]})")), ParameterError);
    CHECK_THROWS_AS(genotype_from_json(Json::parse(R"({"M":3,"r":2,"cells":[[0,3,0],[1,3,0]],"x":1})")),
                    ParameterError);
    CHECK_THROWS_AS(genotype_from_json(Json::parse("[1,2]")), ParameterError);
}

TEST_CASE("problem and breakdown JSON") {
    const auto p = make_problem(5, 4);
    CHECK(problem_from_json(problem_to_json(p)) == p);
    CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"M":"five","r":4})")), ParameterError);

    const auto fb = fitness(fixtures::worked_genotype());
    const auto back = breakdown_from_json(breakdown_to_json(fb));
    CHECK(back.i_per_cell == fb.i_per_cell);
    CHECK(back.j_per_cell == fb.j_per_cell);
    CHECK(back.epsilon == 1);
    CHECK(back.i_total == 6);
    CHECK(back.j_total == 5);
    CHECK(back.fitness == fb.fitness);
    CHECK_THROWS_AS(breakdown_from_json(Json::object()), ParameterError);
}

TEST_CASE("forward JSON") {
    const auto out = forward(make_problem(3, 2), Bits{1, 1});
    const auto j = forward_to_json(out);
    CHECK(j.at("predicted_class") == 2);
    CHECK(j.at("h").size() == 3);
    CHECK(j.at("P").size() == 3);
}

TEST_CASE("assignment JSON") {
    auto asg = fixtures::table_assignment();
    asg.push_back({1, BlockType::C, Target::wasted()});
    asg.push_back({2, BlockType::C, Target::triangle(8)});
    const auto j = assignment_to_json(asg);
    CHECK(j[0].dump() == R"({"cell":1,"target":{"k":1,"part":"sector"},"type":"B"})");
    CHECK(j[7].at("target") == "wasted");
    CHECK(assignment_from_json(j) == asg);

    CHECK_THROWS_AS(assignment_from_json(Json::parse(R"({"cell":1})")), ParameterError);
    CHECK_THROWS_AS(assignment_from_json(Json::parse(R"([{"cell":1,"type":"D","target":"wasted"}])")),
                    ParameterError);
    CHECK_THROWS_AS(assignment_from_json(Json::parse(R"([{"cell":1,"type":"A","target":"lost"}])")),
                    ParameterError);
    CHECK_THROWS_AS(assignment_from_json(Json::parse(R"([{"cell":1,"type":"A","target":{"k":1,"part":"arc"}}])")),
                    ParameterError);
}

TEST_CASE("experiment config JSON") {
    ExperimentConfig cfg;
    cfg.M_values = {2, 4};
    cfg.r_values = {10};
    cfg.evolution.mutation.outer = OuterMutation::BitWise;
    cfg.evolution.mutation.inner = InnerMutation::Global;
    cfg.evolution.mutation.global_shifted = true;
    cfg.evolution.lambda = 4;
    cfg.evolution.crossover = Crossover::OnePoint;
    cfg.evolution.s = 7;
    cfg.runs = 12;
    cfg.master_seed = 99;
    cfg.threads = 3;
    const auto back = experiment_config_from_json(experiment_config_to_json(cfg));
    CHECK(back.M_values == cfg.M_values);
    CHECK(back.r_values == cfg.r_values);
    CHECK(back.evolution.mutation.outer == OuterMutation::BitWise);
    CHECK(back.evolution.mutation.inner == InnerMutation::Global);
    CHECK(back.evolution.mutation.global_shifted);
    CHECK(back.evolution.lambda == 4);
    CHECK(back.evolution.crossover == Crossover::OnePoint);
    CHECK(back.evolution.s == 7);
    CHECK(back.runs == 12);
    CHECK(back.master_seed == 99);
    CHECK(back.threads == 3);

    const auto minimal = experiment_config_from_json(Json::parse(R"({"M":[3],"r":[2]})"));
    CHECK(minimal.runs == 1000);
    CHECK_FALSE(minimal.evolution.s.has_value());
    CHECK(experiment_config_from_json(Json::parse(R"({"M":[3],"r":[2],"s":null})")).evolution.s == std::nullopt);

    CHECK_THROWS_AS(experiment_config_from_json(Json::parse(R"({"M":[3]})")), ParameterError);
    CHECK_THROWS_AS(experiment_config_from_json(Json::parse(R"({"M":[3],"r":[2],"outer":"twobit"})")),
                    ParameterError);
    CHECK_THROWS_AS(experiment_config_from_json(Json::parse(R"({"M":[3],"r":[2],"speed":1})")), ParameterError);
    CHECK_THROWS_AS(experiment_config_from_json(Json::parse(R"({"M":3,"r":[2]})")), ParameterError);
}

TEST_CASE("read_json_file") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto good = dir / "enas_test_good.json";
    const auto bad = dir / "enas_test_bad.json";
    std::ofstream(good) << R"({"M":3,"r":2,"cells":[[0,3,0],[1,3,0]]})";
    std::ofstream(bad) << "{ not json";
    CHECK(genotype_from_json(read_json_file(good)) == fixtures::worked_genotype());
    CHECK_THROWS_AS(read_json_file(bad), ParameterError);
    CHECK_THROWS_AS(read_json_file(dir / "enas_test_missing.json"), IoError);
    std::filesystem::remove(good);
    std::filesystem::remove(bad);
}
