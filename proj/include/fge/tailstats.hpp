#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fge {

// A censored runtime sample: the n observed generation counts (sorted
// nondecreasing) plus the number u of executions that hit the censorship
// threshold tau. k = n + u executions total.
struct RunSample {
    std::vector<double> observed;
    std::uint64_t censored_count = 0;
    std::optional<double> censorship_threshold;

    // Sorts and validates (positive values, observed <= tau when tau is set).
    static RunSample make(std::vector<double> values, std::uint64_t censored = 0,
                          std::optional<double> tau = std::nullopt);

    std::size_t n() const { return observed.size(); }
    std::uint64_t total() const { return observed.size() + censored_count; }
};

enum class TailEstimator { HillHall, Regression };

struct TailEstimate {
    double alpha = 0.0;
    std::size_t tail_count = 0;  // r actually used
    double r_fraction = 0.0;
    TailEstimator estimator = TailEstimator::HillHall;
};

// r from a fraction of the observed count, rounded and floored at 2.
std::size_t tail_count_for(double r_fraction, std::size_t n);

// Hill-Hall maximum-likelihood estimator adapted for censored observations
// over the r+1 largest order statistics; u = 0 recovers the classic form.
// nullopt = non-positive denominator, i.e. no heavy-tail evidence.
std::optional<TailEstimate> hill_hall_alpha(const RunSample& sample, double r_fraction);
std::optional<TailEstimate> hill_hall_alpha_r(const RunSample& sample, std::size_t r,
                                              double r_fraction = 0.0);

// Least-squares slope of log survival against log value over the r+1 largest
// observations (points with zero empirical survival are dropped). nullopt =
// non-positive slope estimate.
std::optional<TailEstimate> regression_alpha(const RunSample& sample, double r_fraction);
std::optional<TailEstimate> regression_alpha_r(const RunSample& sample, std::size_t r,
                                               double r_fraction = 0.0);

// mu4 / mu2^2 with centralized sample moments, no bias correction.
double kurtosis(std::span<const double> values);

// Right-continuous step function over the observed values; one step per
// distinct value.
std::vector<std::pair<double, double>> ecdf(std::span<const double> values);

// (ln x, ln survival) for the r+1 largest observations, survival computed
// over all k = n + u executions.
std::vector<std::pair<double, double>> tail_loglog(const RunSample& sample, double r_fraction);

struct SampleSummary {
    double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
};

// Quartiles by linear interpolation of order statistics.
SampleSummary summary(std::span<const double> values);

// Prefix means in arrival order.
std::vector<double> running_mean(std::span<const double> values);

}  // namespace fge
