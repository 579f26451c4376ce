#include "fge/tailstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fge/errors.hpp"

namespace fge {

RunSample RunSample::make(std::vector<double> values, std::uint64_t censored,
                          std::optional<double> tau) {
    std::sort(values.begin(), values.end());
    if (!values.empty() && values.front() <= 0.0)
        throw DomainError("observed values must be positive");
    if (tau && !values.empty() && values.back() > *tau)
        throw DomainError("observed values must not exceed the censorship threshold");
    RunSample sample;
    sample.observed = std::move(values);
    sample.censored_count = censored;
    sample.censorship_threshold = tau;
    return sample;
}

std::size_t tail_count_for(double r_fraction, std::size_t n) {
    const auto r = static_cast<std::size_t>(
        std::llround(r_fraction * static_cast<double>(n)));
    return std::max<std::size_t>(2, r);
}

std::optional<TailEstimate> hill_hall_alpha_r(const RunSample& sample, std::size_t r,
                                              double r_fraction) {
    const std::size_t n = sample.n();
    if (n == 0) throw DomainError("empty sample");
    if (r < 1 || r >= n) throw InsufficientTailError("tail count r must satisfy 1 <= r < n");
    if (sample.observed[n - 1 - r] <= 0.0)
        throw DomainError("order statistic X_{n,n-r} must be positive");

    const double u = static_cast<double>(sample.censored_count);
    const double rd = static_cast<double>(r);

    double acc = 0.0;
    for (std::size_t j = 1; j <= r - 1; ++j)
        acc += std::log(sample.observed[n - 1 - r + j]);
    acc /= rd;
    acc += (u + 1.0) / rd * std::log(sample.observed[n - 1]);
    acc -= (u + rd) / rd * std::log(sample.observed[n - 1 - r]);

    if (!(acc > 0.0)) return std::nullopt;  // no heavy-tail evidence
    return TailEstimate{1.0 / acc, r, r_fraction, TailEstimator::HillHall};
}

std::optional<TailEstimate> hill_hall_alpha(const RunSample& sample, double r_fraction) {
    return hill_hall_alpha_r(sample, tail_count_for(r_fraction, sample.n()), r_fraction);
}

std::optional<TailEstimate> regression_alpha_r(const RunSample& sample, std::size_t r,
                                               double r_fraction) {
    const std::size_t n = sample.n();
    if (n == 0) throw DomainError("empty sample");
    if (r >= n) throw InsufficientTailError("tail count r must satisfy r < n");

    const double k = static_cast<double>(sample.total());
    double sum_x = 0, sum_l = 0, sum_xx = 0, sum_xl = 0;
    double count = 0;
    // order statistics i = n-r .. n (1-based); survival (k - i)/k, the
    // zero-survival point (i = k, only when u = 0) is dropped
    for (std::size_t i = n - r; i <= n; ++i) {
        const double survivors = k - static_cast<double>(i);
        if (survivors <= 0.0) continue;
        const double value = sample.observed[i - 1];
        if (value <= 0.0) throw DomainError("tail values must be positive");
        const double lx = std::log(value);
        const double li = std::log(survivors / k);
        sum_x += lx;
        sum_l += li;
        sum_xx += lx * lx;
        sum_xl += lx * li;
        count += 1.0;
    }
    if (count < 2.0) throw InsufficientTailError("fewer than two usable tail points");

    const double denom = sum_xx - sum_x * sum_x / count;
    if (denom <= 0.0) throw DegenerateError("zero variance of log X over the tail");
    const double slope = (sum_xl - sum_x * sum_l / count) / denom;
    const double alpha = -slope;
    if (!(alpha > 0.0) || !std::isfinite(alpha)) return std::nullopt;
    return TailEstimate{alpha, r, r_fraction, TailEstimator::Regression};
}

std::optional<TailEstimate> regression_alpha(const RunSample& sample, double r_fraction) {
    return regression_alpha_r(sample, tail_count_for(r_fraction, sample.n()), r_fraction);
}

double kurtosis(std::span<const double> values) {
    if (values.size() < 2) throw DomainError("kurtosis needs at least two values");
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double m2 = 0, m4 = 0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m4 /= n;
    if (m2 <= 0.0) throw DegenerateError("zero variance");
    return m4 / (m2 * m2);
}

std::vector<std::pair<double, double>> ecdf(std::span<const double> values) {
    if (values.empty()) throw DomainError("empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> steps;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        steps.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    }
    return steps;
}

std::vector<std::pair<double, double>> tail_loglog(const RunSample& sample,
                                                   double r_fraction) {
    const std::size_t n = sample.n();
    if (n == 0) throw DomainError("empty sample");
    const std::size_t r = std::min(tail_count_for(r_fraction, n), n - 1);
    const double k = static_cast<double>(sample.total());

    std::vector<std::pair<double, double>> points;
    points.reserve(r + 1);
    for (std::size_t i = n - r; i <= n; ++i) {
        const double survivors = k - static_cast<double>(i);
        if (survivors <= 0.0) continue;
        points.emplace_back(std::log(sample.observed[i - 1]), std::log(survivors / k));
    }
    return points;
}

SampleSummary summary(std::span<const double> values) {
    if (values.empty()) throw DomainError("empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    const auto quantile = [&](double p) {
        const double h = p * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(h);
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
    };

    SampleSummary s;
    s.min = sorted.front();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
             static_cast<double>(sorted.size());
    s.q3 = quantile(0.75);
    s.max = sorted.back();
    return s;
}

std::vector<double> running_mean(std::span<const double> values) {
    if (values.empty()) throw DomainError("empty sample");
    std::vector<double> means;
    means.reserve(values.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += values[i];
        means.push_back(sum / static_cast<double>(i + 1));
    }
    return means;
}

}  // namespace fge
