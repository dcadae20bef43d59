// gaps.hpp
//
// Circular gap spectra and what grows out of them: the three-gap check for
// Kronecker sequences, the Large/Medium/Zero classification of scaled gaps
// N*d_j across growing N, and the batch decomposition of coinciding points
// with its lower bound (1/N) * sum |B_i|^2 - 1 for R(s,N)/N.
//
// Conventions pinned here:
//   * the sorted point set contributes exactly N gaps: N-1 neighbor gaps
//     plus the wrap gap (1 - max) + min, so counts always sum to N and the
//     gap lengths tile the torus (for N = 1 the wrap gap is the whole circle)
//   * gap merging is tolerance-chaining on the sorted gap list; a merged
//     group is represented by its minimum, so a zero gap stays exactly zero
//   * batch grouping uses exact value equality, never the merge tolerance

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paircorr/generators.hpp"
#include "paircorr/pair_correlation.hpp"
#include "paircorr/torus.hpp"

namespace paircorr {

struct GapSpectrum {
    std::size_t n = 0;
    double merge_tolerance = 0.0;
    std::vector<double> gaps;          // distinct values, strictly increasing
    std::vector<std::uint64_t> counts; // multiplicities, sum to n

    std::size_t k() const { return gaps.size(); }
};

inline GapSpectrum gap_spectrum(const PointSet& points, double merge_tolerance) {
    if (merge_tolerance < 0.0)
        throw std::invalid_argument("gap_spectrum: tolerance must be >= 0");
    const std::size_t n = points.size();
    if (n < 1)
        throw std::invalid_argument("gap_spectrum: empty point set");

    std::vector<double> y = values_of(points);
    std::sort(y.begin(), y.end());

    std::vector<double> g;
    g.reserve(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        g.push_back(y[i + 1] - y[i]);
    g.push_back((1.0 - y[n - 1]) + y[0]); // wrap gap
    std::sort(g.begin(), g.end());

    GapSpectrum spec;
    spec.n = n;
    spec.merge_tolerance = merge_tolerance;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= g.size(); ++i) {
        if (i == g.size() || g[i] - g[i - 1] > merge_tolerance) {
            spec.gaps.push_back(g[start]); // group minimum
            spec.counts.push_back(i - start);
            start = i;
        }
    }
    return spec;
}

// --------------------------------------------------------------------------
// Three-gap check
// --------------------------------------------------------------------------

struct ThreeGapRow {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> gaps;
    bool violation = false; // k > 3
};

inline std::vector<ThreeGapRow> three_gap_check(double alpha,
                                                const std::vector<std::size_t>& n_values,
                                                double merge_tolerance) {
    if (n_values.empty())
        throw std::invalid_argument("three_gap_check: n_values must be nonempty");
    std::vector<ThreeGapRow> rows;
    rows.reserve(n_values.size());
    for (std::size_t n : n_values) {
        GapSpectrum spec = gap_spectrum(generate(Kronecker{alpha}, n), merge_tolerance);
        rows.push_back({n, spec.k(), spec.gaps, spec.k() > 3});
    }
    return rows;
}

// --------------------------------------------------------------------------
// Gap classification across growing N
// --------------------------------------------------------------------------

enum class GapLabel { Large, Medium, Zero, Undetermined };

inline const char* to_string(GapLabel label) {
    switch (label) {
    case GapLabel::Large: return "Large";
    case GapLabel::Medium: return "Medium";
    case GapLabel::Zero: return "Zero";
    default: return "Undetermined";
    }
}

enum class RankMatch { ByRank };

struct GapTrajectory {
    std::vector<std::size_t> n_values;
    // indexed [rank-1][i]; NaN where the spectrum at n_values[i] has < rank gaps
    std::vector<std::vector<double>> gaps;
    std::vector<std::vector<double>> scaled; // N * d
    std::vector<GapLabel> labels;
    std::vector<double> sup_scaled; // observed sup of N*d per rank (bound for Medium)

    std::size_t rank_count() const { return labels.size(); }
};

// Tracks gap families by rank (the spectra are sorted, matching the order
// d_1 < ... < d_k). Labels:
//   Zero   - d == 0 at every recorded N
//   Large  - N*d exceeds large_threshold at the final N and is non-decreasing
//            over the last half of n_values (suffix from index floor(m/2))
//   Medium - every N*d lies in (0, large_threshold]
// Anything else, or a rank count that changes across N (rank matching would
// be a guess), is Undetermined. The classification is a finite-N diagnostic;
// the raw trajectories are always reported alongside the labels.
inline GapTrajectory classify_gaps(const SequenceSpec& spec,
                                   const std::vector<std::size_t>& n_values,
                                   double merge_tolerance, double large_threshold,
                                   RankMatch = RankMatch::ByRank) {
    if (n_values.empty())
        throw std::invalid_argument("classify_gaps: n_values must be nonempty");
    for (std::size_t i = 1; i < n_values.size(); ++i)
        if (n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("classify_gaps: n_values must be strictly increasing");

    const std::size_t m = n_values.size();
    std::vector<GapSpectrum> spectra;
    spectra.reserve(m);
    for (std::size_t n : n_values)
        spectra.push_back(gap_spectrum(generate(spec, n), merge_tolerance));

    std::size_t max_k = 0;
    bool equal_k = true;
    for (const auto& s : spectra) {
        max_k = std::max(max_k, s.k());
        if (s.k() != spectra.front().k())
            equal_k = false;
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    GapTrajectory traj;
    traj.n_values = n_values;
    traj.gaps.assign(max_k, std::vector<double>(m, nan));
    traj.scaled.assign(max_k, std::vector<double>(m, nan));
    traj.labels.assign(max_k, GapLabel::Undetermined);
    traj.sup_scaled.assign(max_k, nan);

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t r = 0; r < spectra[i].k(); ++r) {
            traj.gaps[r][i] = spectra[i].gaps[r];
            traj.scaled[r][i] = static_cast<double>(n_values[i]) * spectra[i].gaps[r];
        }
    for (std::size_t r = 0; r < max_k; ++r) {
        double sup = -1.0;
        for (double c : traj.scaled[r])
            if (!std::isnan(c))
                sup = std::max(sup, c);
        if (sup >= 0.0)
            traj.sup_scaled[r] = sup;
    }

    if (!equal_k)
        return traj; // everything stays Undetermined

    for (std::size_t r = 0; r < max_k; ++r) {
        const auto& c = traj.scaled[r];
        bool all_zero = true, all_medium = true;
        for (double v : c) {
            if (v != 0.0)
                all_zero = false;
            if (!(v > 0.0 && v <= large_threshold))
                all_medium = false;
        }
        bool tail_nondecreasing = true;
        for (std::size_t i = m / 2; i + 1 < m; ++i)
            if (c[i + 1] < c[i])
                tail_nondecreasing = false;

        if (all_zero)
            traj.labels[r] = GapLabel::Zero;
        else if (c.back() > large_threshold && tail_nondecreasing)
            traj.labels[r] = GapLabel::Large;
        else if (all_medium)
            traj.labels[r] = GapLabel::Medium;
    }
    return traj;
}

// --------------------------------------------------------------------------
// Batch decomposition
// --------------------------------------------------------------------------

struct BatchDecomposition {
    std::size_t n = 0;
    std::vector<std::uint64_t> batch_sizes; // maximal groups of equal values
    double lower_bound = 0.0;               // (1/N) * sum |B_i|^2 - 1

    std::uint64_t sum_sq() const {
        std::uint64_t s = 0;
        for (std::uint64_t b : batch_sizes)
            s += b * b;
        return s;
    }
};

inline BatchDecomposition batch_decomposition(const PointSet& points) {
    const std::size_t n = points.size();
    if (n < 1)
        throw std::invalid_argument("batch_decomposition: empty point set");
    std::vector<double> y = values_of(points);
    std::sort(y.begin(), y.end());

    BatchDecomposition dec;
    dec.n = n;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == n || y[i] != y[start]) {
            dec.batch_sizes.push_back(i - start);
            start = i;
        }
    }
    dec.lower_bound = static_cast<double>(dec.sum_sq()) / static_cast<double>(n) - 1.0;
    return dec;
}

// --------------------------------------------------------------------------
// Divergence witness: R(s,N)/N against the batch lower bound
// --------------------------------------------------------------------------

struct DivergenceRow {
    std::size_t n = 0;
    double statistic = 0.0;   // R(s,N)/N
    double lower_bound = 0.0; // batch bound
    bool holds = false;       // statistic >= bound, checked in exact integers
};

inline std::vector<DivergenceRow> divergence_witness(const SequenceSpec& spec,
                                                     const std::vector<std::size_t>& n_values,
                                                     double s) {
    if (s < 0.0)
        throw std::invalid_argument("divergence_witness: s must be >= 0");
    std::vector<DivergenceRow> rows;
    rows.reserve(n_values.size());
    for (std::size_t n : n_values) {
        PointSet points = generate(spec, n);
        std::uint64_t count = pair_count_fast(points, s);
        BatchDecomposition dec = batch_decomposition(points);
        DivergenceRow row;
        row.n = n;
        row.statistic = static_cast<double>(count) / static_cast<double>(n);
        row.lower_bound = dec.lower_bound;
        // zero-distance pairs are always within the inclusive threshold, so
        // count >= sum |B_i|*(|B_i|-1) = sum_sq - N holds exactly
        row.holds = count + static_cast<std::uint64_t>(n) >= dec.sum_sq();
        rows.push_back(row);
    }
    return rows;
}

// --------------------------------------------------------------------------
// Serialization
// --------------------------------------------------------------------------

inline nlohmann::json spectrum_to_json(const GapSpectrum& spec) {
    return {{"n", spec.n},
            {"merge_tolerance", spec.merge_tolerance},
            {"k", spec.k()},
            {"gaps", spec.gaps},
            {"counts", spec.counts}};
}

inline void write_spectrum_csv(std::ostream& out, const GapSpectrum& spec) {
    out << "d,count\n";
    for (std::size_t i = 0; i < spec.gaps.size(); ++i)
        out << format_real(spec.gaps[i]) << ',' << spec.counts[i] << '\n';
}

inline nlohmann::json three_gap_report_to_json(const std::vector<ThreeGapRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows)
        arr.push_back({{"n", row.n}, {"k", row.k}, {"gaps", row.gaps},
                       {"violation", row.violation}});
    return arr;
}

inline nlohmann::json trajectory_to_json(const GapTrajectory& traj) {
    nlohmann::json ranks = nlohmann::json::array();
    for (std::size_t r = 0; r < traj.rank_count(); ++r)
        ranks.push_back({{"rank", r + 1},
                         {"label", to_string(traj.labels[r])},
                         {"gaps", traj.gaps[r]},
                         {"scaled", traj.scaled[r]},
                         {"sup_scaled", traj.sup_scaled[r]}});
    return {{"n_values", traj.n_values}, {"ranks", ranks}};
}

inline void write_trajectory_csv(std::ostream& out, const GapTrajectory& traj) {
    out << "N,rank,d,N_times_d,label\n";
    for (std::size_t i = 0; i < traj.n_values.size(); ++i)
        for (std::size_t r = 0; r < traj.rank_count(); ++r) {
            if (std::isnan(traj.gaps[r][i]))
                continue; // rank absent at this N
            out << traj.n_values[i] << ',' << (r + 1) << ',' << format_real(traj.gaps[r][i])
                << ',' << format_real(traj.scaled[r][i]) << ',' << to_string(traj.labels[r])
                << '\n';
        }
}

inline nlohmann::json batches_to_json(const BatchDecomposition& dec) {
    return {{"n", dec.n}, {"batch_sizes", dec.batch_sizes}, {"lower_bound", dec.lower_bound}};
}

inline nlohmann::json divergence_report_to_json(const std::vector<DivergenceRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows)
        arr.push_back({{"n", row.n},
                       {"statistic", row.statistic},
                       {"lower_bound", row.lower_bound},
                       {"holds", row.holds}});
    return arr;
}

} // namespace paircorr
