#include "enas/serialize.hpp"

#include <fstream>
#include <set>
#include <string>

#include "enas/error.hpp"

namespace enas {

namespace {

// nlohmann throws its own exception hierarchy; map everything to our domain error.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParameterError&) {
        throw;
    } catch (const Json::exception& e) {
        throw ParameterError(std::string("malformed ") + what + ": " + e.what());
    }
}

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const char* what) {
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw ParameterError(std::string("unknown key '") + item.key() + "' in " + what);
}

const char* part_name(Target::Kind k) {
    switch (k) {
        case Target::Kind::Triangle: return "tri";
        case Target::Kind::Segment: return "seg";
        case Target::Kind::Sector: return "sector";
        case Target::Kind::Wasted: break;
    }
    return "wasted";
}

}  // namespace

Json problem_to_json(const ProblemParams& p) { return {{"M", p.M}, {"r", p.r}}; }

ProblemParams problem_from_json(const Json& j) {
    return guarded("problem", [&] { return make_problem(j.at("M").get<int>(), j.at("r").get<int>()); });
}

Json genotype_to_json(const Genotype& g) {
    Json cells = Json::array();
    for (const auto& cell : g.cells()) cells.push_back({cell.a, cell.b, cell.c});
    return {{"M", g.problem().M}, {"r", g.problem().r}, {"cells", cells}};
}

Genotype genotype_from_json(const Json& j) {
    return guarded("genotype", [&] {
        if (!j.is_object()) throw ParameterError("genotype must be a JSON object");
        reject_unknown_keys(j, {"M", "r", "cells"}, "genotype");
        const auto p = problem_from_json(j);
        const auto& arr = j.at("cells");
        if (!arr.is_array()) throw ParameterError("genotype 'cells' must be an array");
        std::vector<CellCounts> cells;
        for (const auto& c : arr) {
            if (!c.is_array() || c.size() != 3) throw ParameterError("each cell must be [n_A, n_B, n_C]");
            for (const auto& v : c)
                if (!v.is_number_integer()) throw ParameterError("cell counts must be integers");
            cells.push_back({c[0].get<std::int64_t>(), c[1].get<std::int64_t>(), c[2].get<std::int64_t>()});
        }
        return Genotype(p, std::move(cells));
    });
}

Json breakdown_to_json(const FitnessBreakdown& fb) {
    return {{"i_per_cell", fb.i_per_cell}, {"j_per_cell", fb.j_per_cell}, {"epsilon", fb.epsilon},
            {"i_total", fb.i_total},       {"j_total", fb.j_total},       {"fitness", fb.fitness}};
}

FitnessBreakdown breakdown_from_json(const Json& j) {
    return guarded("fitness breakdown", [&] {
        FitnessBreakdown fb;
        fb.i_per_cell = j.at("i_per_cell").get<std::vector<int>>();
        fb.j_per_cell = j.at("j_per_cell").get<std::vector<int>>();
        fb.epsilon = j.at("epsilon").get<int>();
        fb.i_total = j.at("i_total").get<int>();
        fb.j_total = j.at("j_total").get<int>();
        fb.fitness = j.at("fitness").get<double>();
        return fb;
    });
}

Json forward_to_json(const ForwardOutput& out) {
    return {{"h", out.h}, {"P", out.P}, {"predicted_class", out.predicted_class}};
}

Json assignment_to_json(const Assignment& a) {
    Json out = Json::array();
    for (const auto& block : a) {
        const char* type = block.type == BlockType::A ? "A" : block.type == BlockType::B ? "B" : "C";
        Json target = block.target.kind == Target::Kind::Wasted
                          ? Json("wasted")
                          : Json{{"k", block.target.sector}, {"part", part_name(block.target.kind)}};
        out.push_back({{"cell", block.cell}, {"type", type}, {"target", target}});
    }
    return out;
}

Assignment assignment_from_json(const Json& j) {
    return guarded("assignment", [&] {
        if (!j.is_array()) throw ParameterError("assignment must be a JSON array");
        Assignment out;
        for (const auto& item : j) {
            BlockAssignment block;
            block.cell = item.at("cell").get<int>();
            const auto type = item.at("type").get<std::string>();
            if (type == "A") block.type = BlockType::A;
            else if (type == "B") block.type = BlockType::B;
            else if (type == "C") block.type = BlockType::C;
            else throw ParameterError("unknown block type '" + type + "'");

            const auto& t = item.at("target");
            if (t.is_string()) {
                if (t.get<std::string>() != "wasted") throw ParameterError("target string must be \"wasted\"");
                block.target = Target::wasted();
            } else {
                const int k = t.at("k").get<int>();
                const auto part = t.at("part").get<std::string>();
                if (part == "tri") block.target = Target::triangle(k);
                else if (part == "seg") block.target = Target::segment(k);
                else if (part == "sector") block.target = Target::sector_of(k);
                else throw ParameterError("unknown target part '" + part + "'");
            }
            out.push_back(block);
        }
        return out;
    });
}

Json experiment_config_to_json(const ExperimentConfig& cfg) {
    const auto& ev = cfg.evolution;
    return {{"M", cfg.M_values},
            {"r", cfg.r_values},
            {"outer", to_string(ev.mutation.outer)},
            {"inner", inner_name(ev.mutation)},
            {"lambda", ev.lambda},
            {"crossover", to_string(ev.crossover)},
            {"s", ev.s ? Json(*ev.s) : Json(nullptr)},
            {"max_generations", ev.max_generations},
            {"runs", cfg.runs},
            {"master_seed", cfg.master_seed},
            {"threads", cfg.threads}};
}

ExperimentConfig experiment_config_from_json(const Json& j) {
    return guarded("experiment config", [&] {
        if (!j.is_object()) throw ParameterError("experiment config must be a JSON object");
        reject_unknown_keys(j,
                            {"M", "r", "outer", "inner", "lambda", "crossover", "s", "max_generations", "runs",
                             "master_seed", "threads"},
                            "experiment config");
        ExperimentConfig cfg;
        cfg.M_values = j.at("M").get<std::vector<int>>();
        cfg.r_values = j.at("r").get<std::vector<int>>();
        auto& ev = cfg.evolution;
        if (j.contains("outer")) ev.mutation.outer = parse_outer(j["outer"].get<std::string>());
        if (j.contains("inner")) parse_inner(j["inner"].get<std::string>(), ev.mutation);
        if (j.contains("lambda")) ev.lambda = j["lambda"].get<int>();
        if (j.contains("crossover")) ev.crossover = parse_crossover(j["crossover"].get<std::string>());
        if (j.contains("s") && !j["s"].is_null()) ev.s = j["s"].get<std::int64_t>();
        if (j.contains("max_generations")) ev.max_generations = j["max_generations"].get<std::int64_t>();
        if (j.contains("runs")) cfg.runs = j["runs"].get<std::int64_t>();
        if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        validate(cfg);
        return cfg;
    });
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParameterError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

}  // namespace enas
