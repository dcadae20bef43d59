// pair_correlation.hpp
//
// The pair correlation statistic: R(s,N) counts ordered pairs (i,j), i != j,
// with torus_distance(x_i, x_j) <= s/N (inclusive). pair_count_naive is the
// O(N^2) transcription of that definition; pair_count_fast reproduces it
// bit-for-bit in O(N log N) + O(N) per threshold.
//
// Exact agreement is engineered, not hoped for. With t = s/N and sorted
// values, a pair p < q is within distance t iff
//
//     A <= t  or  fl(1 - A) <= t,   where A = fl(y[q] - y[p]),
//
// which is precisely min(A, fl(1-A)) <= t, the naive predicate. For t < 1/2
// the two disjuncts are mutually exclusive even after rounding (A <= t forces
// fl(1-A) >= 1/2 > t), so the fast path counts them in two separate sweeps:
// a forward sweep over A <= t and a wrap sweep over fl(1-A) <= t. Both
// predicates are monotone in p and q, so each sweep is a two-pointer pass.
// For t >= 1/2 every pair qualifies and the count saturates at N(N-1).

#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paircorr/parallel.hpp"
#include "paircorr/torus.hpp"

namespace paircorr {

struct PairCorrelationCurve {
    std::size_t n = 0;
    std::vector<double> s_grid; // strictly increasing, >= 0
    std::vector<double> values; // values[t] = R(s_grid[t], N) / N
    std::string label;
};

namespace detail {

// Ordered-pair count on sorted values for threshold t.
inline std::uint64_t count_within_sorted(const std::vector<double>& y, double t) {
    const std::size_t n = y.size();
    if (t < 0.0)
        return 0; // callers reject s < 0 already
    if (t >= 0.5)
        return static_cast<std::uint64_t>(n) * (n - 1);

    // forward sweep: pairs p < q with fl(y[q] - y[p]) <= t
    std::uint64_t unordered = 0;
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (r < i)
            r = i;
        while (r + 1 < n && y[r + 1] - y[i] <= t)
            ++r;
        unordered += r - i;
    }

    // wrap sweep: pairs p < q with fl(1 - fl(y[q] - y[p])) <= t; for fixed q
    // the valid p form a prefix, and the prefix only grows with q
    std::size_t lim = 0;
    for (std::size_t q = 0; q < n; ++q) {
        while (lim < q && 1.0 - (y[q] - y[lim]) <= t)
            ++lim;
        unordered += lim;
    }

    return 2 * unordered;
}

} // namespace detail

inline std::uint64_t pair_count_naive(const PointSet& points, double s) {
    if (s < 0.0)
        throw std::invalid_argument("pair_count: s must be >= 0");
    const std::size_t n = points.size();
    if (n < 1)
        throw std::invalid_argument("pair_count: empty point set");
    const double t = s / static_cast<double>(n);
    std::uint64_t unordered = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (torus_distance(points.points[i], points.points[j]) <= t)
                ++unordered;
    return 2 * unordered;
}

inline std::uint64_t pair_count_fast(const PointSet& points, double s) {
    if (s < 0.0)
        throw std::invalid_argument("pair_count: s must be >= 0");
    const std::size_t n = points.size();
    if (n < 1)
        throw std::invalid_argument("pair_count: empty point set");
    std::vector<double> y = values_of(points);
    std::sort(y.begin(), y.end());
    return detail::count_within_sorted(y, s / static_cast<double>(n));
}

inline void validate_s_grid(const std::vector<double>& s_grid) {
    if (s_grid.empty())
        throw std::invalid_argument("s grid must be nonempty");
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        if (!(s_grid[i] >= 0.0))
            throw std::invalid_argument("s grid values must be >= 0");
        if (i > 0 && !(s_grid[i] > s_grid[i - 1]))
            throw std::invalid_argument("s grid must be strictly increasing");
    }
}

// One shared sort; per-threshold sweeps run in parallel (read-only sharing,
// output identical to the sequential loop).
inline PairCorrelationCurve pair_correlation_curve(const PointSet& points,
                                                   std::vector<double> s_grid) {
    validate_s_grid(s_grid);
    const std::size_t n = points.size();
    if (n < 1)
        throw std::invalid_argument("pair_correlation_curve: empty point set");

    std::vector<double> y = values_of(points);
    std::sort(y.begin(), y.end());

    PairCorrelationCurve curve;
    curve.n = n;
    curve.label = points.label;
    curve.s_grid = std::move(s_grid);
    curve.values.resize(curve.s_grid.size());
    parallel_for(curve.s_grid.size(), [&](std::size_t i) {
        std::uint64_t c = detail::count_within_sorted(y, curve.s_grid[i] / static_cast<double>(n));
        curve.values[i] = static_cast<double>(c) / static_cast<double>(n);
    });
    return curve;
}

inline void write_curve_csv(std::ostream& out, const PairCorrelationCurve& curve) {
    out << "s,R_over_N\n";
    for (std::size_t i = 0; i < curve.s_grid.size(); ++i)
        out << format_real(curve.s_grid[i]) << ',' << format_real(curve.values[i]) << '\n';
}

inline nlohmann::json curve_to_json(const PairCorrelationCurve& curve) {
    return {{"n", curve.n},
            {"label", curve.label},
            {"s_grid", curve.s_grid},
            {"values", curve.values}};
}

} // namespace paircorr
