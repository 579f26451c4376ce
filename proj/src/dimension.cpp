#include "fge/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

#include "fge/cyclotomic.hpp"
#include "fge/errors.hpp"

namespace fge {

namespace detail {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

const CyclotomicLattice& lattice_for(int n) {
    thread_local std::map<int, std::unique_ptr<CyclotomicLattice>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<CyclotomicLattice>(n);
    return *slot;
}

constexpr std::uint64_t kKeyMixSeed = 0x2545f4914f6cdd1dull;

std::uint64_t mix_key(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
    return h ^ (h >> 33);
}

}  // namespace

WordCensus census_word(std::string_view word, const D0LSystem* system,
                       const TurtleConfig& config, bool count_cells) {
    const int n = config.angle_denominator;
    if (n <= 0) throw DomainError("angle denominator must be positive");
    const CyclotomicLattice& lat = lattice_for(n);
    const int rank = lat.rank();
    const int step = static_cast<int>(floor_mod(config.angle_numerator, n));
    const int half = n % 2 == 0 ? n / 2 : n;  // opposite headings share an axis

    thread_local std::vector<std::uint64_t> keys;
    keys.clear();

    // Undirected unit cells keyed by doubled midpoint; rank <= 2 lattices
    // (n in {1,2,3,4,6}) pack exactly, others hash the coordinate vector.
    const bool exact_pack = rank <= 2 && word.size() < (std::uint64_t{1} << 24);
    constexpr std::int64_t kOffset = std::int64_t{1} << 26;

    std::vector<std::int64_t> pos(static_cast<std::size_t>(rank), 0);
    int idx = 0;
    std::int64_t turns = 0;
    WordCensus out;

    for (char c : word) {
        const SymbolClass sc = system ? system->class_of(c) : default_symbol_class(c);
        switch (sc) {
            case SymbolClass::Draw: {
                const std::int64_t* u = lat.unit(idx);
                if (count_cells) {
                    const auto axis = static_cast<std::uint64_t>(idx % half);
                    std::uint64_t key;
                    if (exact_pack) {
                        const std::uint64_t a = static_cast<std::uint64_t>(2 * pos[0] + u[0] + kOffset);
                        const std::uint64_t b = rank > 1
                            ? static_cast<std::uint64_t>(2 * pos[1] + u[1] + kOffset)
                            : 0;
                        key = (a << 37) | (b << 10) | axis;
                    } else {
                        key = kKeyMixSeed;
                        for (int j = 0; j < rank; ++j)
                            key = mix_key(key, static_cast<std::uint64_t>(2 * pos[static_cast<std::size_t>(j)] + u[j]));
                        key = mix_key(key, axis);
                    }
                    keys.push_back(key);
                }
                for (int j = 0; j < rank; ++j) pos[static_cast<std::size_t>(j)] += u[j];
                ++out.raw_draws;
                break;
            }
            case SymbolClass::Move: {
                const std::int64_t* u = lat.unit(idx);
                for (int j = 0; j < rank; ++j) pos[static_cast<std::size_t>(j)] += u[j];
                break;
            }
            case SymbolClass::TurnPlus:
                idx += step;
                if (idx >= n) idx -= n;
                ++turns;
                break;
            case SymbolClass::TurnMinus:
                idx -= step;
                if (idx < 0) idx += n;
                --turns;
                break;
            case SymbolClass::PushBranch:
            case SymbolClass::PopBranch:
                throw DomainError("branched curves are outside the dimension algorithm's scope");
            case SymbolClass::NonGraphic: break;
        }
    }

    out.net_turns = turns;
    double x = 0, y = 0;
    lat.to_plane(pos.data(), x, y);
    out.distance = std::hypot(x, y);

    if (count_cells && !keys.empty()) {
        std::sort(keys.begin(), keys.end());
        std::uint64_t distinct = 1;
        for (std::size_t i = 1; i < keys.size(); ++i)
            if (keys[i] != keys[i - 1]) ++distinct;
        out.trail_cells = distinct;
    }
    if (keys.capacity() > (std::size_t{1} << 23)) {
        keys.clear();
        keys.shrink_to_fit();
    }
    return out;
}

namespace {

enum class LimitError { None, NotInvariant, NoTrail, Degenerate, OutOfRange };

constexpr double kUpperSlack = 1e-9;  // accept D = 2 up to rounding

bool invariant_turns(std::int64_t net_turns, const TurtleConfig& config) {
    return floor_mod(net_turns * config.angle_numerator, config.angle_denominator) == 0;
}

// D_m loop over successive derivations of a single generator word.
// next_level grows the word in place and returns false at the length cap.
struct LimitOutcome {
    DimensionResult result;
    LimitError error = LimitError::None;
};

LimitOutcome limit_engine(std::string level1, const D0LSystem* classifier,
                          const TurtleConfig& config, const DimensionOptions& options,
                          const std::function<bool(std::string&)>& next_level) {
    LimitOutcome out;
    bool any_trail = false;
    bool have_valid = false;
    double prev_value = 0.0;
    bool prev_valid = false;
    DimensionResult prev_result{};

    std::string word = std::move(level1);
    for (int m = 1; m <= options.max_derivations; ++m) {
        if (m > 1 && !next_level(word)) break;

        const WordCensus c = census_word(word, classifier, config, true);
        if (m == 1 && !invariant_turns(c.net_turns, config)) {
            out.error = LimitError::NotInvariant;
            return out;
        }
        if (c.raw_draws > 0) any_trail = true;

        if (c.trail_cells >= 1 && c.distance > 1.0) {
            const double value = std::log(static_cast<double>(c.trail_cells)) /
                                 std::log(c.distance);
            if (prev_valid && std::abs(value - prev_value) < options.tol) {
                out.result = prev_result;
                out.result.converged = true;
                break;
            }
            prev_value = value;
            prev_valid = true;
            have_valid = true;
            if (m == 1) {
                // level 1 reports the generator itself: raw draw count
                const double direct = std::log(static_cast<double>(c.raw_draws)) /
                                      std::log(c.distance);
                prev_result = {direct, c.raw_draws, c.distance, 1, false};
            } else {
                prev_result = {value, c.trail_cells, c.distance, m, false};
            }
            out.result = prev_result;
        } else {
            prev_valid = false;
        }
    }

    if (!any_trail) {
        out.error = LimitError::NoTrail;
    } else if (!have_valid) {
        out.error = LimitError::Degenerate;
    } else if (out.result.value <= 0.0 || out.result.value > 2.0 + kUpperSlack) {
        out.error = LimitError::OutOfRange;
    }
    return out;
}

[[noreturn]] void throw_limit_error(LimitError error) {
    switch (error) {
        case LimitError::NotInvariant:
            throw DomainError("generator is not angle-invariant");
        case LimitError::NoTrail:
            throw DegenerateError("generator leaves no visible trail");
        case LimitError::Degenerate:
            throw DegenerateError("degenerate generator (d <= 1)");
        case LimitError::OutOfRange:
            throw DegenerateError("dimension outside (0, 2]");
        case LimitError::None: break;
    }
    throw DomainError("unreachable");
}

// Which word the level-1 inspection uses, and how levels derive from it.
struct GeneratorPlan {
    std::string level1;
    bool single_rule = false;
    char rule_symbol = 'F';
};

GeneratorPlan plan_for(const D0LSystem& system) {
    std::vector<std::pair<char, const std::string*>> nontrivial;
    for (const auto& [symbol, rhs] : system.rules)
        if (rhs.size() != 1 || rhs[0] != symbol) nontrivial.emplace_back(symbol, &rhs);

    if (nontrivial.size() == 1)
        return {*nontrivial.front().second, true, nontrivial.front().first};
    if (nontrivial.empty() && !system.rules.empty())
        return {system.rules.begin()->second, true, system.rules.begin()->first};
    // multi-rule (or rule-free) systems: expand the axiom instead
    return {derive(system, system.axiom, 1), false, 0};
}

std::size_t count_nontrivial(const D0LSystem& system) {
    std::size_t count = 0;
    for (const auto& [symbol, rhs] : system.rules)
        if (rhs.size() != 1 || rhs[0] != symbol) ++count;
    return count;
}

std::function<bool(std::string&)> system_next_level(const D0LSystem& system,
                                                    std::uint64_t cap) {
    return [&system, cap](std::string& word) {
        std::uint64_t next_len = 0;
        for (char c : word) {
            const std::string* rhs = system.rule_for(c);
            next_len += rhs ? rhs->size() : 1;
            if (next_len > cap) return false;
        }
        word = derive(system, word, 1);
        return true;
    };
}

LimitOutcome run_system_limit(const D0LSystem& system, const TurtleConfig& config,
                              const DimensionOptions& options) {
    GeneratorPlan plan = plan_for(system);
    if (!plan.single_rule) {
        // an angle-invariant D0L system: every rule body is angle-invariant
        for (const auto& [symbol, rhs] : system.rules) {
            const WordCensus c = census_word(rhs, &system, config, false);
            if (!invariant_turns(c.net_turns, config))
                return {DimensionResult{}, LimitError::NotInvariant};
        }
    }
    return limit_engine(std::move(plan.level1), &system, config, options,
                        system_next_level(system, options.word_length_cap));
}

}  // namespace

std::optional<DimensionResult> dimension_of_generator(std::string_view generator,
                                                      const TurtleConfig& config,
                                                      const DimensionOptions& options) {
    // the implicit system: axiom F, single rule F ::= generator
    const std::uint64_t cap = options.word_length_cap;
    std::string gen(generator);
    auto next_level = [&gen, cap](std::string& word) {
        const auto n_f = static_cast<std::uint64_t>(std::count(word.begin(), word.end(), 'F'));
        const std::uint64_t next_len = n_f * gen.size() + (word.size() - n_f);
        if (next_len > cap || next_len == 0) return false;
        std::string next;
        next.reserve(static_cast<std::size_t>(next_len));
        for (char c : word) {
            if (c == 'F')
                next.append(gen);
            else
                next.push_back(c);
        }
        word = std::move(next);
        return true;
    };

    LimitOutcome out = limit_engine(std::string(generator), nullptr, config, options, next_level);
    if (out.error != LimitError::None) return std::nullopt;
    return out.result;
}

}  // namespace detail

std::pair<std::uint64_t, double> generator_counts(std::string_view word,
                                                  const D0LSystem& system,
                                                  const TurtleConfig& config) {
    const detail::WordCensus c = detail::census_word(word, &system, config, false);
    const std::int64_t reduced =
        ((c.net_turns * config.angle_numerator) % config.angle_denominator +
         config.angle_denominator) % config.angle_denominator;
    if (reduced != 0) throw DomainError("word is not angle-invariant");
    if (c.raw_draws == 0) throw DegenerateError("word leaves no visible trail");
    return {c.raw_draws, c.distance};
}

DimensionResult dimension_direct(const D0LSystem& system, const TurtleConfig& config) {
    if (detail::count_nontrivial(system) > 1)
        throw DomainError("dimension_direct requires a single non-trivial rule");
    const auto plan_word = [&] {
        if (!system.rules.empty()) {
            for (const auto& [symbol, rhs] : system.rules)
                if (rhs.size() != 1 || rhs[0] != symbol) return rhs;
            return system.rules.begin()->second;
        }
        return system.axiom;
    }();

    const auto [draws, distance] = generator_counts(plan_word, system, config);
    if (distance <= 1.0) throw DegenerateError("degenerate generator (d <= 1)");
    const double value = std::log(static_cast<double>(draws)) / std::log(distance);
    if (value <= 0.0 || value > 2.0 + 1e-9)
        throw DegenerateError("dimension outside (0, 2]");
    return {value, draws, distance, 1, true};
}

DimensionResult dimension_limit(const D0LSystem& system, const TurtleConfig& config,
                                int max_derivations, double tol,
                                std::uint64_t word_length_cap) {
    if (max_derivations < 2) throw std::invalid_argument("max_derivations must be >= 2");
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    DimensionOptions options{tol, max_derivations, word_length_cap};
    detail::LimitOutcome out = detail::run_system_limit(system, config, options);
    if (out.error != detail::LimitError::None) detail::throw_limit_error(out.error);
    return out.result;
}

DimensionResult dimension(const D0LSystem& system, const TurtleConfig& config,
                          const DimensionOptions& options) {
    detail::LimitOutcome out = detail::run_system_limit(system, config, options);
    if (out.error != detail::LimitError::None) detail::throw_limit_error(out.error);
    return out.result;
}

}  // namespace fge
