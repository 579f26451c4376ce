#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fge/dimension.hpp"
#include "fge/lsystem.hpp"
#include "fge/rng.hpp"

namespace fge {

struct Genotype {
    std::vector<int> codons;

    bool operator==(const Genotype&) const = default;
    std::size_t size() const { return codons.size(); }
};

struct GEConfig {
    int population_size = 64;        // fixed: batch 16, parent pool 16
    int initial_genotype_length = 8;
    int codon_max = 255;             // 10 or 255
    bool degenerate_code = true;     // codon mod 11 selects the rule
    double target_dimension = 1.3;   // in (0, 2]
    double target_fitness = 100.0;   // stop at dimension error <= 0.01
    TurtleConfig angle{1, 6, 1.0};
    double mutation_rate_equal_parents = 50.0;     // n1, percent
    double mutation_rate_distinct_parents = 10.0;  // n2, percent
    double fusion_rate = 10.0;                     // n3, percent
    double elision_rate = 5.0;                     // percent
    bool fuse_whole_genotype = false;
    std::uint64_t censorship = 5000;  // tau, max generations
    std::uint64_t rng_seed = 1;

    void validate() const;  // throws std::invalid_argument
};

struct Individual {
    Genotype genotype;
    std::string phenotype;
    std::optional<DimensionResult> dimension;
    double fitness = 0.0;
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::uint64_t generations = 0;
    bool censored = false;
    double best_fitness = 0.0;
    std::string best_phenotype;
};

// The fixed 11-rule grammar; codon c selects rule c (mod 11 under the
// degenerate code).
inline constexpr const char* kGrammarRules[11] = {
    "F", "FF", "F+", "F-", "+F", "-F", "F+F", "F-F", "+", "-", "",
};

// Genotype-to-phenotype developmental mapping. Starts from "F"; each round
// consumes one codon per F in the current word (completing circularly over
// the original genotype when it runs short) and rewrites all F's at once;
// a word left without F resets to the axiom; returns the word derived when
// the genotype is exhausted.
std::string express(const Genotype& genotype, bool degenerate_code);

inline constexpr double kFitnessEpsilon = 1e-12;

// Fitness of a candidate generator word: 1 / max(|target - D|, eps), or 0
// with no dimension when the word is degenerate (not angle-invariant, no
// draw symbol, d <= 1, or dimension outside (0, 2]).
std::pair<std::optional<DimensionResult>, double> evaluate(const std::string& word,
                                                           const GEConfig& config);

// One-point crossover; the cut index is uniform on [0, min(n, m)], where 0
// and 1 both mean a whole swap. Total codon count is conserved.
template <class R>
std::pair<Genotype, Genotype> recombine(const Genotype& a, const Genotype& b, R& rng) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t cut = rng.uniform_below(std::min(n, m) + 1);
    const std::size_t i = cut == 0 ? 1 : cut;  // empty prefix either way
    Genotype c1, c2;
    c1.codons.assign(a.codons.begin(), a.codons.begin() + (i - 1));
    c1.codons.insert(c1.codons.end(), b.codons.begin() + (i - 1), b.codons.end());
    c2.codons.assign(b.codons.begin(), b.codons.begin() + (i - 1));
    c2.codons.insert(c2.codons.end(), a.codons.begin() + (i - 1), a.codons.end());
    return {std::move(c1), std::move(c2)};
}

// Replaces one uniformly chosen codon by a uniform draw from [0, codon_max].
template <class R>
Genotype mutate(const Genotype& g, int codon_max, R& rng) {
    Genotype out = g;
    const std::size_t pos = rng.uniform_below(out.size());
    out.codons[pos] = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(codon_max) + 1));
    return out;
}

// Appends a contiguous random slice (or the whole genotype, under the whole-
// genotype variant) of itself or of its sibling, each source with probability
// one half. The result is strictly longer than g.
template <class R>
Genotype fuse(const Genotype& g, const Genotype& sibling, bool whole_genotype, R& rng) {
    const Genotype& source = rng.uniform_below(2) == 0 ? g : sibling;
    Genotype out = g;
    if (whole_genotype) {
        out.codons.insert(out.codons.end(), source.codons.begin(), source.codons.end());
    } else {
        const std::size_t start = rng.uniform_below(source.size());
        const std::size_t len = 1 + rng.uniform_below(source.size() - start);
        out.codons.insert(out.codons.end(), source.codons.begin() + start,
                          source.codons.begin() + start + len);
    }
    return out;
}

// Removes one uniformly chosen codon; a length-1 genotype is returned
// unchanged (no rng draw).
template <class R>
Genotype elide(const Genotype& g, R& rng) {
    if (g.size() < 2) return g;
    Genotype out = g;
    out.codons.erase(out.codons.begin() + rng.uniform_below(out.size()));
    return out;
}

// Steady-state generation step: stable-sort the 64 individuals by descending
// fitness, drop the worst 16, pair the best 16 at random into 8 pairs, and
// append their 16 evaluated offspring (recombination always, then mutation /
// fusion / elision decided independently per offspring).
void step_generation(std::vector<Individual>& population, const GEConfig& config, Rng& rng);

// Full search for one seed; deterministic given (config, seed). Generations
// count from 1 (the evaluated initial population).
RunRecord run(const GEConfig& config, std::uint64_t seed);

}  // namespace fge
