#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace bures {

/// Right-continuous empirical CDF, F(t) = #{x <= t} / n.
class Ecdf {
public:
    /// Throws InvalidInputError on an empty sample.
    explicit Ecdf(std::span<const double> samples);

    double operator()(double t) const noexcept;
    std::size_t size() const noexcept { return sorted_.size(); }
    std::span<const double> sorted_values() const noexcept { return sorted_; }

private:
    std::vector<double> sorted_;
};

inline Ecdf ecdf(std::span<const double> samples) { return Ecdf(samples); }

/// Asymptotic two-sample coefficient c(alpha) for alpha = 0.01.
inline constexpr double kKsCoefficient001 = 1.628;

/// c(0.01) sqrt((n + m) / (n m)).
double ks_critical_001(std::size_t n, std::size_t m);

struct KsResult {
    double statistic;
    std::size_t n;
    std::size_t m;
    double critical_001;
    bool pass;  // statistic < critical_001
};

/// Two-sample Kolmogorov-Smirnov statistic by a merge scan over both sorted
/// samples, evaluated after each run of tied values.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// sup_t |F_n(t) - cdf(t)| for a continuous reference CDF.
double ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Quantile-quantile pairs (sort(a)_i, sort(b)_i). Equal, nonzero lengths required.
std::vector<std::pair<double, double>> cumulative_pairs(std::span<const double> a,
                                                        std::span<const double> b);

/// max_i |a_i - b_i| over the pairs.
double max_diagonal_deviation(std::span<const std::pair<double, double>> pairs);

}  // namespace bures
