#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "fge/lsystem.hpp"

namespace fge {

struct DimensionResult {
    double value = 0.0;
    std::uint64_t draw_count = 0;  // N of the inspected word
    double distance = 0.0;         // d, start-to-end distance in step units
    int derivations_used = 0;
    bool converged = false;
};

struct DimensionOptions {
    double tol = 1e-6;
    int max_derivations = 8;
    std::uint64_t word_length_cap = 10'000'000;
};

// N = number of Draw symbols, d = start-to-end distance of the walk in step
// units. The word must be angle-invariant and leave a visible trail.
std::pair<std::uint64_t, double> generator_counts(std::string_view word,
                                                  const D0LSystem& system,
                                                  const TurtleConfig& config);

// D = log N / log d straight from the generator (the single non-trivial
// rule's right-hand side). Exact for non-overlapping generators.
DimensionResult dimension_direct(const D0LSystem& system, const TurtleConfig& config);

// Overlap-tolerant form: D_m = log N_m / log d_m on successive derivations of
// the generator, where N_m counts the distinct visible unit cells of the walk
// (a retraced cell adds length once). Stops when |D_m - D_{m-1}| < tol or at
// max_derivations / the word-length cap (converged = false).
DimensionResult dimension_limit(const D0LSystem& system, const TurtleConfig& config,
                                int max_derivations, double tol,
                                std::uint64_t word_length_cap = DimensionOptions{}.word_length_cap);

// Checks D_1 against D_2; returns the direct result when they agree within
// tol, otherwise continues as dimension_limit.
DimensionResult dimension(const D0LSystem& system, const TurtleConfig& config,
                          const DimensionOptions& options = {});

namespace detail {

// One pass over a word: raw draw count, distinct visible cells, endpoint
// distance (step units) and net turns, all on the exact heading/position
// lattice. `system` may be null for the fixed F/+/- alphabet.
struct WordCensus {
    std::uint64_t raw_draws = 0;
    std::uint64_t trail_cells = 0;
    double distance = 0.0;
    std::int64_t net_turns = 0;
};

WordCensus census_word(std::string_view word, const D0LSystem* system,
                       const TurtleConfig& config, bool count_cells);

// Shared engine behind dimension()/dimension_limit()/evaluate(): the D_m
// sequence for a single-rule generator word. nullopt = degenerate (no trail,
// d <= 1 at every level, value outside (0, 2], or not angle-invariant).
std::optional<DimensionResult> dimension_of_generator(std::string_view generator,
                                                      const TurtleConfig& config,
                                                      const DimensionOptions& options);

}  // namespace detail

}  // namespace fge
