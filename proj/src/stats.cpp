#include "bures/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bures/error.hpp"

namespace bures {

namespace {

std::vector<double> sorted_copy(std::span<const double> v, const char* what) {
    if (v.empty()) {
        throw InvalidInputError(std::string(what) + ": empty sample");
    }
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

Ecdf::Ecdf(std::span<const double> samples) : sorted_(sorted_copy(samples, "ecdf")) {}

double Ecdf::operator()(double t) const noexcept {
    const auto above = std::upper_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<double>(above - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_critical_001(std::size_t n, std::size_t m) {
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    return kKsCoefficient001 * std::sqrt((nd + md) / (nd * md));
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    const auto sa = sorted_copy(a, "ks_two_sample");
    const auto sb = sorted_copy(b, "ks_two_sample");
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());

    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double t = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= t) {
            ++i;
        }
        while (j < sb.size() && sb[j] <= t) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    // Once one sample is exhausted the gap only shrinks toward 0.
    const double crit = ks_critical_001(sa.size(), sb.size());
    return {d, sa.size(), sb.size(), crit, d < crit};
}

double ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf) {
    const auto s = sorted_copy(samples, "ks_one_sample");
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

std::vector<std::pair<double, double>> cumulative_pairs(std::span<const double> a,
                                                        std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InvalidInputError("cumulative_pairs: samples have different lengths");
    }
    const auto sa = sorted_copy(a, "cumulative_pairs");
    const auto sb = sorted_copy(b, "cumulative_pairs");
    std::vector<std::pair<double, double>> out(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) {
        out[i] = {sa[i], sb[i]};
    }
    return out;
}

double max_diagonal_deviation(std::span<const std::pair<double, double>> pairs) {
    double d = 0.0;
    for (const auto& [x, y] : pairs) {
        d = std::max(d, std::abs(x - y));
    }
    return d;
}

}  // namespace bures
