#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fge/tailstats.hpp"

namespace fge {

struct RestartStrategy {
    enum class Kind { NoRestart, Fixed, Luby, Walsh };

    Kind kind = Kind::NoRestart;
    std::uint64_t fixed_threshold = 1;  // theta >= 1, Fixed only
    double walsh_gamma = 2.0;           // gamma > 1, Walsh only

    static RestartStrategy no_restart() { return {}; }
    static RestartStrategy fixed(std::uint64_t theta);
    static RestartStrategy luby();
    static RestartStrategy walsh(double gamma);

    // CLI spec strings: none | fixed:6 | luby | walsh:1.2
    static RestartStrategy parse(std::string_view text);
    std::string to_string() const;

    bool operator==(const RestartStrategy&) const = default;
};

inline constexpr std::uint64_t kUnboundedThreshold =
    std::numeric_limits<std::uint64_t>::max();

// Budget for the i-th attempt (i >= 1). NoRestart yields the unbounded
// sentinel, Luby the universal power-of-two sequence 1,1,2,1,1,2,4,...,
// Walsh round(gamma^(i-1)) floored at 1.
std::uint64_t threshold_sequence(const RestartStrategy& strategy, std::uint64_t i);

// One bounded attempt: success at some generation <= budget (consuming that
// many generations) or failure consuming the whole budget.
struct AttemptResult {
    bool succeeded = false;
    std::uint64_t generations = 0;
};

using BudgetedRun = std::function<AttemptResult(std::uint64_t seed, std::uint64_t budget)>;

struct RestartOutcome {
    std::uint64_t total_generations = 0;
    std::uint64_t restarts_used = 0;
    bool succeeded = false;
    std::optional<std::uint64_t> winning_seed;
};

// Runs attempts with budgets from the strategy and seeds derive_seed(master,
// attempt) until success or until the accumulated generations reach
// global_cap; the final attempt's budget is truncated to fit the cap.
RestartOutcome run_with_restarts(const BudgetedRun& run, const RestartStrategy& strategy,
                                 std::uint64_t master_seed, std::uint64_t global_cap);

struct ThresholdChoice {
    std::uint64_t threshold = 0;
    double expected_cost = 0.0;
};

// Expected cost of a fixed-threshold restart policy on the empirical
// distribution: theta*(1-F(theta))/F(theta) + E[X | X <= theta], minimized
// over the candidates. Candidates with F(theta) = 0 are skipped.
ThresholdChoice optimal_fixed_threshold(const RunSample& sample,
                                        std::span<const std::uint64_t> candidates);

}  // namespace fge
