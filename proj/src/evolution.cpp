#include "enas/evolution.hpp"

#include <algorithm>
#include <limits>

#include "enas/error.hpp"

namespace enas {

void validate(const EvolutionConfig& cfg) {
    if (cfg.lambda < 1) throw ParameterError("lambda must be >= 1");
    if (cfg.crossover != Crossover::None && cfg.lambda < 2)
        throw ParameterError("crossover requires lambda >= 2");
    if (cfg.s && *cfg.s < 1) throw ParameterError("initialization bound s must be >= 1");
    if (cfg.max_generations < 0) throw ParameterError("max_generations must be >= 0");
}

std::string to_string(OuterMutation v) { return v == OuterMutation::OneBit ? "onebit" : "bitwise"; }

std::string inner_name(const MutationConfig& m) {
    if (m.inner == InnerMutation::Local) return "local";
    return m.global_shifted ? "global-shifted" : "global";
}

std::string to_string(Crossover v) {
    switch (v) {
        case Crossover::None: return "none";
        case Crossover::OnePoint: return "onepoint";
        case Crossover::Uniform: return "uniform";
    }
    return "none";
}

OuterMutation parse_outer(std::string_view s) {
    if (s == "onebit") return OuterMutation::OneBit;
    if (s == "bitwise") return OuterMutation::BitWise;
    throw ParameterError("unknown outer mutation '" + std::string(s) + "' (onebit|bitwise)");
}

void parse_inner(std::string_view s, MutationConfig& m) {
    if (s == "local") {
        m.inner = InnerMutation::Local;
        m.global_shifted = false;
    } else if (s == "global") {
        m.inner = InnerMutation::Global;
        m.global_shifted = false;
    } else if (s == "global-shifted") {
        m.inner = InnerMutation::Global;
        m.global_shifted = true;
    } else {
        throw ParameterError("unknown inner mutation '" + std::string(s) + "' (local|global|global-shifted)");
    }
}

Crossover parse_crossover(std::string_view s) {
    if (s == "none") return Crossover::None;
    if (s == "onepoint") return Crossover::OnePoint;
    if (s == "uniform") return Crossover::Uniform;
    throw ParameterError("unknown crossover '" + std::string(s) + "' (none|onepoint|uniform)");
}

// ---------------------------------------------------------------------------

MutationEvent draw_mutation(SplitMix64& rng) {
    MutationEvent ev;
    ev.v = static_cast<int>(uniform_below(rng, 3));
    ev.op = static_cast<MutationOp>(uniform_below(rng, 3));
    if (ev.op == MutationOp::Modification) {
        const int other = static_cast<int>(uniform_below(rng, 2));
        ev.w = other >= ev.v ? other + 1 : other;
    }
    return ev;
}

namespace {

std::int64_t& count_of(CellCounts& cell, int type) {
    switch (type) {
        case 0: return cell.a;
        case 1: return cell.b;
        default: return cell.c;
    }
}

void increment(std::int64_t& n) {
    if (n == std::numeric_limits<std::int64_t>::max()) throw ParameterError("block count overflow");
    ++n;
}

}  // namespace

CellCounts apply_mutation(CellCounts cell, const MutationEvent& ev) {
    auto& nv = count_of(cell, ev.v);
    switch (ev.op) {
        case MutationOp::Addition:
            increment(nv);
            break;
        case MutationOp::Deletion:
            if (nv > 0) --nv;
            break;
        case MutationOp::Modification:
            if (nv > 0) {
                --nv;
                increment(count_of(cell, ev.w));
            }
            break;
    }
    return cell;
}

CellCounts mutate_cell_once(const CellCounts& cell, SplitMix64& rng) {
    return apply_mutation(cell, draw_mutation(rng));
}

CellCounts inner_mutation(const CellCounts& cell, InnerMutation mode, bool shifted, SplitMix64& rng) {
    if (mode == InnerMutation::Local) return mutate_cell_once(cell, rng);
    int times = poisson_unit(rng) + (shifted ? 1 : 0);
    CellCounts out = cell;
    while (times-- > 0) out = mutate_cell_once(out, rng);
    return out;
}

std::vector<std::size_t> select_cells(std::size_t cells, OuterMutation outer, SplitMix64& rng) {
    std::vector<std::size_t> picked;
    if (outer == OuterMutation::OneBit) {
        picked.push_back(static_cast<std::size_t>(uniform_below(rng, cells)));
        return picked;
    }
    // Probability exactly 1/(M-1) per cell.
    for (std::size_t m = 0; m < cells; ++m)
        if (uniform_below(rng, cells) == 0) picked.push_back(m);
    return picked;
}

Genotype outer_mutation(const Genotype& g, const MutationConfig& cfg, SplitMix64& rng) {
    Genotype child = g;
    // All cells are chosen before any of them is altered.
    for (std::size_t m : select_cells(g.size(), cfg.outer, rng))
        child[m] = inner_mutation(child[m], cfg.inner, cfg.global_shifted, rng);
    return child;
}

// ---------------------------------------------------------------------------

Individual make_individual(Genotype g) {
    const auto key = fitness_key(g);
    return {std::move(g), key};
}

std::vector<Individual> select(const std::vector<Individual>& parents, const std::vector<Individual>& offspring) {
    if (parents.size() != offspring.size())
        throw ParameterError("parent and offspring populations must have equal size");
    std::vector<const Individual*> pool;
    pool.reserve(parents.size() + offspring.size());
    for (const auto& ind : offspring) pool.push_back(&ind);
    for (const auto& ind : parents) pool.push_back(&ind);
    std::stable_sort(pool.begin(), pool.end(), [](const Individual* x, const Individual* y) { return x->key > y->key; });

    std::vector<Individual> survivors;
    survivors.reserve(parents.size());
    for (std::size_t i = 0; i < parents.size(); ++i) survivors.push_back(*pool[i]);
    return survivors;
}

Genotype one_point_crossover(const Genotype& a, const Genotype& b, SplitMix64& rng) {
    if (!(a.problem() == b.problem())) throw ParameterError("crossover parents solve different problems");
    Genotype child = a;
    const std::size_t cells = a.size();
    if (cells < 2) return child;
    const std::size_t cut = 1 + static_cast<std::size_t>(uniform_below(rng, cells - 1));
    for (std::size_t m = cut; m < cells; ++m) child[m] = b[m];
    return child;
}

Genotype uniform_crossover(const Genotype& a, const Genotype& b, SplitMix64& rng) {
    if (!(a.problem() == b.problem())) throw ParameterError("crossover parents solve different problems");
    Genotype child = a;
    for (std::size_t m = 0; m < a.size(); ++m)
        if (coin(rng)) child[m] = b[m];
    return child;
}

// ---------------------------------------------------------------------------

namespace {

const Individual& best_of(const std::vector<Individual>& pop) {
    return *std::max_element(pop.begin(), pop.end(),
                             [](const Individual& x, const Individual& y) { return x.key < y.key; });
}

bool any_optimal(const std::vector<Individual>& pop) {
    return std::any_of(pop.begin(), pop.end(), [](const Individual& ind) { return is_optimal(ind.genotype); });
}

TrajectoryPoint snapshot(const ProblemParams& p, std::int64_t generation, const Individual& ind) {
    return {generation, ind.key.i, ind.key.j, match_vector(ind.genotype).ones, fitness_value(p, ind.key)};
}

}  // namespace

RunRecord run(const ProblemParams& p, const EvolutionConfig& cfg, std::uint64_t seed) {
    validate(cfg);
    SplitMix64 rng(seed);
    const std::int64_t s = cfg.s.value_or(p.r);
    const auto lambda = static_cast<std::size_t>(cfg.lambda);

    std::vector<Individual> pop;
    pop.reserve(lambda);
    for (std::size_t i = 0; i < lambda; ++i) pop.push_back(make_individual(random_genotype(p, s, rng)));

    RunRecord rec;
    rec.seed = seed;
    if (cfg.record_trajectory) rec.trajectory.push_back(snapshot(p, 0, best_of(pop)));

    bool done = any_optimal(pop);
    std::int64_t generation = 0;
    std::vector<Individual> offspring;
    offspring.reserve(lambda);
    while (!done && generation < cfg.max_generations) {
        offspring.clear();
        for (std::size_t k = 0; k < lambda; ++k) {
            if (cfg.crossover != Crossover::None) {
                const auto first = static_cast<std::size_t>(uniform_below(rng, lambda));
                auto second = static_cast<std::size_t>(uniform_below(rng, lambda - 1));
                if (second >= first) ++second;
                const Genotype& a = pop[first].genotype;
                const Genotype& b = pop[second].genotype;
                Genotype child = cfg.crossover == Crossover::OnePoint ? one_point_crossover(a, b, rng)
                                                                      : uniform_crossover(a, b, rng);
                offspring.push_back(make_individual(outer_mutation(child, cfg.mutation, rng)));
            } else {
                const std::size_t parent = lambda == 1 ? 0 : static_cast<std::size_t>(uniform_below(rng, lambda));
                offspring.push_back(make_individual(outer_mutation(pop[parent].genotype, cfg.mutation, rng)));
            }
        }
        pop = select(pop, offspring);
        ++generation;
        done = any_optimal(pop);
        if (cfg.record_trajectory) rec.trajectory.push_back(snapshot(p, generation, best_of(pop)));
    }

    rec.generations = generation;
    rec.evaluations = static_cast<std::int64_t>(lambda) * (generation + 1);
    rec.success = done;
    rec.final_fitness = fitness_value(p, best_of(pop).key);
    return rec;
}

}  // namespace enas
