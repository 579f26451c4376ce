#include "fge/restart.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "fge/errors.hpp"
#include "fge/rng.hpp"

namespace fge {

RestartStrategy RestartStrategy::fixed(std::uint64_t theta) {
    if (theta < 1) throw std::invalid_argument("fixed threshold must be >= 1");
    RestartStrategy s;
    s.kind = Kind::Fixed;
    s.fixed_threshold = theta;
    return s;
}

RestartStrategy RestartStrategy::luby() {
    RestartStrategy s;
    s.kind = Kind::Luby;
    return s;
}

RestartStrategy RestartStrategy::walsh(double gamma) {
    if (!(gamma > 1.0)) throw std::invalid_argument("walsh gamma must be > 1");
    RestartStrategy s;
    s.kind = Kind::Walsh;
    s.walsh_gamma = gamma;
    return s;
}

RestartStrategy RestartStrategy::parse(std::string_view text) {
    if (text == "none") return no_restart();
    if (text == "luby") return luby();
    if (text.starts_with("fixed:")) {
        const std::string_view arg = text.substr(6);
        std::uint64_t theta = 0;
        const auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), theta);
        if (ec != std::errc{} || p != arg.data() + arg.size() || theta < 1)
            throw std::invalid_argument("expected fixed:<theta>, theta >= 1");
        return fixed(theta);
    }
    if (text.starts_with("walsh:")) {
        const std::string arg(text.substr(6));
        std::size_t used = 0;
        double gamma = 0.0;
        try {
            gamma = std::stod(arg, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("expected walsh:<gamma>, gamma > 1");
        }
        if (used != arg.size() || !(gamma > 1.0))
            throw std::invalid_argument("expected walsh:<gamma>, gamma > 1");
        return walsh(gamma);
    }
    throw std::invalid_argument("unknown strategy '" + std::string(text) +
                                "' (none | fixed:N | luby | walsh:G)");
}

std::string RestartStrategy::to_string() const {
    switch (kind) {
        case Kind::NoRestart: return "none";
        case Kind::Fixed: return "fixed:" + std::to_string(fixed_threshold);
        case Kind::Luby: return "luby";
        case Kind::Walsh: {
            char buf[32];
            const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, walsh_gamma);
            return "walsh:" + std::string(buf, p);
        }
    }
    return "none";
}

namespace {

std::uint64_t luby_term(std::uint64_t i) {
    // t_i = 2^(k-1) when i = 2^k - 1, else t_{i - 2^(k-1) + 1}
    for (;;) {
        std::uint64_t k = 1;
        while ((std::uint64_t{1} << k) - 1 < i) ++k;
        if ((std::uint64_t{1} << k) - 1 == i) return std::uint64_t{1} << (k - 1);
        i -= (std::uint64_t{1} << (k - 1)) - 1;
    }
}

}  // namespace

std::uint64_t threshold_sequence(const RestartStrategy& strategy, std::uint64_t i) {
    if (i < 1) throw std::invalid_argument("attempt index starts at 1");
    switch (strategy.kind) {
        case RestartStrategy::Kind::NoRestart: return kUnboundedThreshold;
        case RestartStrategy::Kind::Fixed: return strategy.fixed_threshold;
        case RestartStrategy::Kind::Luby: return luby_term(i);
        case RestartStrategy::Kind::Walsh: {
            const double value = std::pow(strategy.walsh_gamma, static_cast<double>(i - 1));
            if (value >= 9.0e18) return kUnboundedThreshold;
            return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(value)));
        }
    }
    throw std::logic_error("unreachable strategy kind");
}

RestartOutcome run_with_restarts(const BudgetedRun& run, const RestartStrategy& strategy,
                                 std::uint64_t master_seed, std::uint64_t global_cap) {
    if (global_cap < 1) throw std::invalid_argument("global cap must be >= 1");

    RestartOutcome outcome;
    for (std::uint64_t attempt = 1;; ++attempt) {
        if (outcome.total_generations >= global_cap) break;
        const std::uint64_t remaining = global_cap - outcome.total_generations;
        const std::uint64_t budget =
            std::min(threshold_sequence(strategy, attempt), remaining);
        const std::uint64_t seed = derive_seed(master_seed, attempt);

        const AttemptResult result = run(seed, budget);
        if (result.generations > budget)
            throw DomainError("budgeted run overran its budget");
        if (result.succeeded) {
            outcome.total_generations += result.generations;
            outcome.restarts_used = attempt - 1;
            outcome.succeeded = true;
            outcome.winning_seed = seed;
            return outcome;
        }
        outcome.total_generations += budget;
        outcome.restarts_used = attempt;
    }
    outcome.succeeded = false;
    return outcome;
}

ThresholdChoice optimal_fixed_threshold(const RunSample& sample,
                                        std::span<const std::uint64_t> candidates) {
    if (sample.n() == 0) throw DomainError("empty sample");
    if (candidates.empty()) throw std::invalid_argument("no candidate thresholds");

    const double k = static_cast<double>(sample.total());
    bool found = false;
    ThresholdChoice best{};
    for (const std::uint64_t theta : candidates) {
        const double t = static_cast<double>(theta);
        // mass and partial mean of observed runs finishing within theta
        const auto end = std::upper_bound(sample.observed.begin(), sample.observed.end(), t);
        const auto within = static_cast<double>(end - sample.observed.begin());
        if (within == 0.0) continue;
        const double f = within / k;
        double partial = 0.0;
        for (auto it = sample.observed.begin(); it != end; ++it) partial += *it;
        const double cost = t * (1.0 - f) / f + partial / within;
        if (!found || cost < best.expected_cost) {
            best = {theta, cost};
            found = true;
        }
    }
    if (!found) throw DomainError("no candidate threshold has positive success mass");
    return best;
}

}  // namespace fge
