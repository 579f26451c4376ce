#include "fge/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "fge/errors.hpp"

namespace fge {

void GEConfig::validate() const {
    if (population_size != 64)
        throw std::invalid_argument("population_size is fixed at 64 (batch 16, pool 16)");
    if (initial_genotype_length < 1)
        throw std::invalid_argument("initial_genotype_length must be >= 1");
    if (codon_max != 10 && codon_max != 255)
        throw std::invalid_argument("codon_max must be 10 or 255");
    if (!degenerate_code && codon_max > 10)
        throw std::invalid_argument("codon_max > 10 requires the degenerate code");
    if (!(target_dimension > 0.0) || target_dimension > 2.0)
        throw std::invalid_argument("target_dimension must lie in (0, 2]");
    if (!(target_fitness > 0.0))
        throw std::invalid_argument("target_fitness must be positive");
    if (angle.angle_denominator <= 0)
        throw std::invalid_argument("angle denominator must be positive");
    for (double rate : {mutation_rate_equal_parents, mutation_rate_distinct_parents,
                        fusion_rate, elision_rate})
        if (rate < 0.0 || rate > 100.0)
            throw std::invalid_argument("operator rates are percentages in [0, 100]");
    if (censorship < 1) throw std::invalid_argument("censorship must be >= 1");
}

std::string express(const Genotype& genotype, bool degenerate_code) {
    const auto& codons = genotype.codons;
    if (codons.empty()) throw std::invalid_argument("genotype must be nonempty");
    if (!degenerate_code)
        for (int c : codons)
            if (c < 0 || c > 10)
                throw DomainError("codon " + std::to_string(c) +
                                  " needs the degenerate code");

    std::string word = "F";
    std::size_t next = 0;
    std::vector<int> selected;
    while (true) {
        // one codon per F; completion wraps circularly over the original
        // genotype, restarting at its head
        const auto needed = static_cast<std::size_t>(
            std::count(word.begin(), word.end(), 'F'));
        selected.clear();
        while (selected.size() < needed && next < codons.size())
            selected.push_back(codons[next++]);
        for (std::size_t wrap = 0; selected.size() < needed; ++wrap)
            selected.push_back(codons[wrap % codons.size()]);

        std::string derived;
        derived.reserve(word.size() * 2);
        std::size_t f_index = 0;
        for (char c : word) {
            if (c == 'F') {
                const int codon = selected[f_index++];
                derived.append(kGrammarRules[degenerate_code ? codon % 11 : codon]);
            } else {
                derived.push_back(c);
            }
        }
        word = std::move(derived);

        if (next >= codons.size()) return word;  // exhausted at a boundary
        if (word.find('F') == std::string::npos) word = "F";
    }
}

std::pair<std::optional<DimensionResult>, double> evaluate(const std::string& word,
                                                           const GEConfig& config) {
    std::optional<DimensionResult> result =
        detail::dimension_of_generator(word, config.angle, DimensionOptions{});
    if (!result) return {std::nullopt, 0.0};
    const double error = std::abs(config.target_dimension - result->value);
    return {result, 1.0 / std::max(error, kFitnessEpsilon)};
}

namespace {

// Phenotypes recur heavily (crossover clones, repeated elites), so one run
// keeps a phenotype -> evaluation memo. Pure lookup, no effect on results.
class EvalCache {
  public:
    explicit EvalCache(const GEConfig& config) : config_(config) {}

    void fill(Individual& individual) {
        auto it = cache_.find(individual.phenotype);
        if (it == cache_.end()) {
            if (cache_.size() >= kMaxEntries) cache_.clear();
            auto eval = evaluate(individual.phenotype, config_);
            it = cache_.emplace(individual.phenotype, std::move(eval)).first;
        }
        individual.dimension = it->second.first;
        individual.fitness = it->second.second;
    }

  private:
    static constexpr std::size_t kMaxEntries = 1 << 20;
    const GEConfig& config_;
    std::unordered_map<std::string, std::pair<std::optional<DimensionResult>, double>> cache_;
};

void make_offspring(std::vector<Individual>& population, const GEConfig& config,
                    Rng& rng, EvalCache& cache) {
    population.reserve(64);
    // parent pool: the 16 fittest, paired uniformly at random
    std::array<std::size_t, 16> pool;
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    for (std::size_t i = pool.size() - 1; i > 0; --i)
        std::swap(pool[i], pool[rng.uniform_below(i + 1)]);

    for (std::size_t pair = 0; pair < 8; ++pair) {
        const Individual& pa = population[pool[2 * pair]];
        const Individual& pb = population[pool[2 * pair + 1]];
        const bool equal_parents = pa.genotype == pb.genotype;
        const double mutation_rate = equal_parents ? config.mutation_rate_equal_parents
                                                   : config.mutation_rate_distinct_parents;

        auto [c1, c2] = recombine(pa.genotype, pb.genotype, rng);
        const Genotype sibling_of_c1 = c2;  // fusion sources pre-mutation siblings
        const Genotype sibling_of_c2 = c1;

        const auto finish = [&](Genotype g, const Genotype& sibling) {
            if (rng.u01() * 100.0 < mutation_rate) g = mutate(g, config.codon_max, rng);
            if (rng.u01() * 100.0 < config.fusion_rate)
                g = fuse(g, sibling, config.fuse_whole_genotype, rng);
            if (rng.u01() * 100.0 < config.elision_rate) g = elide(g, rng);
            Individual child;
            child.genotype = std::move(g);
            child.phenotype = express(child.genotype, config.degenerate_code);
            cache.fill(child);
            population.push_back(std::move(child));
        };
        finish(std::move(c1), sibling_of_c1);
        finish(std::move(c2), sibling_of_c2);
    }
}

}  // namespace

void step_generation(std::vector<Individual>& population, const GEConfig& config, Rng& rng) {
    if (population.size() != 64)
        throw std::invalid_argument("step_generation expects a population of 64");

    std::stable_sort(population.begin(), population.end(),
                     [](const Individual& a, const Individual& b) {
                         return a.fitness > b.fitness;
                     });
    population.resize(48);  // drop the worst 16

    EvalCache cache(config);
    make_offspring(population, config, rng, cache);
}

namespace {

std::size_t best_index(const std::vector<Individual>& population) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
        if (population[i].fitness > population[best].fitness) best = i;
    return best;
}

}  // namespace

RunRecord run(const GEConfig& config, std::uint64_t seed) {
    config.validate();
    Rng rng(seed);
    EvalCache cache(config);

    std::vector<Individual> population;
    population.reserve(static_cast<std::size_t>(config.population_size) + 16);
    for (int i = 0; i < config.population_size; ++i) {
        Individual ind;
        ind.genotype.codons.resize(static_cast<std::size_t>(config.initial_genotype_length));
        for (int& codon : ind.genotype.codons)
            codon = static_cast<int>(
                rng.uniform_below(static_cast<std::uint64_t>(config.codon_max) + 1));
        ind.phenotype = express(ind.genotype, config.degenerate_code);
        cache.fill(ind);
        population.push_back(std::move(ind));
    }

    std::uint64_t generation = 1;
    while (population[best_index(population)].fitness < config.target_fitness &&
           generation < config.censorship) {
        std::stable_sort(population.begin(), population.end(),
                         [](const Individual& a, const Individual& b) {
                             return a.fitness > b.fitness;
                         });
        population.resize(48);
        make_offspring(population, config, rng, cache);
        ++generation;
    }

    const Individual& best = population[best_index(population)];
    RunRecord record;
    record.seed = seed;
    record.generations = generation;
    record.censored = best.fitness < config.target_fitness;
    record.best_fitness = best.fitness;
    record.best_phenotype = best.phenotype;
    return record;
}

}  // namespace fge
