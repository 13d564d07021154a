#pragma once

#include <filesystem>

#include <json.hpp>

#include "enas/experiment.hpp"
#include "enas/genotype.hpp"
#include "enas/network.hpp"

// JSON wire formats. Parsing errors surface as ParameterError; file access
// errors as IoError.

namespace enas {

using Json = nlohmann::json;

Json problem_to_json(const ProblemParams& p);
ProblemParams problem_from_json(const Json& j);

/// {"M": 3, "r": 2, "cells": [[nA, nB, nC], ...]}
Json genotype_to_json(const Genotype& g);
Genotype genotype_from_json(const Json& j);

Json breakdown_to_json(const FitnessBreakdown& fb);
FitnessBreakdown breakdown_from_json(const Json& j);

Json forward_to_json(const ForwardOutput& out);

/// [{"cell": m, "type": "A", "target": {"k": 4, "part": "seg"}}, {"cell": 1, "type": "B", "target": "wasted"}, ...]
Json assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const Json& j);

/// Mirrors ExperimentConfig:
/// {"M": [..], "r": [..], "outer": "onebit", "inner": "local", "lambda": 1,
///  "crossover": "none", "s": null, "max_generations": 10000000,
///  "runs": 1000, "master_seed": 42, "threads": 1}
Json experiment_config_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);

}  // namespace enas
