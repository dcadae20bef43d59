// experiments.hpp
//
// Config-driven convergence studies: how far is R(s,N)/N from a target curve
// (usually the Poissonian 2s) as N grows, and what does the statistic do at
// a fixed s along a chosen N schedule. The module records trajectories and
// deviations; it never judges convergence.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "paircorr/generators.hpp"
#include "paircorr/pair_correlation.hpp"

namespace paircorr {

// --------------------------------------------------------------------------
// Grids
// --------------------------------------------------------------------------

// start:stop:step, inclusive of start, inclusive of stop when
// (stop-start)/step is integral within 1e-9.
inline std::vector<double> grid_range(double start, double stop, double step) {
    if (!(start >= 0.0) || !(step > 0.0) || !(stop >= start))
        throw std::invalid_argument("grid: need 0 <= start <= stop and step > 0");
    auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> grid;
    grid.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
        grid.push_back(start + static_cast<double>(i) * step);
    return grid;
}

inline std::vector<double> parse_grid(const std::string& text) {
    double a = 0, b = 0, c = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &c, &extra) != 3)
        throw std::invalid_argument("grid syntax is start:stop:step, got '" + text + "'");
    return grid_range(a, b, c);
}

inline std::vector<double> default_s_grid() { return grid_range(0.1, 5.0, 0.1); }

// Named alpha shorthands for three-gap demos.
inline double parse_alpha(const std::string& text) {
    if (text == "golden")
        return (std::sqrt(5.0) - 1.0) / 2.0;
    if (text == "sqrt2m1")
        return std::sqrt(2.0) - 1.0;
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::invalid_argument("cannot parse alpha '" + text + "'");
    return v;
}

// --------------------------------------------------------------------------
// Deviation from a target curve
// --------------------------------------------------------------------------

struct PoissonianTarget {};
struct CurveTarget {
    std::vector<double> values; // reference on the same grid
};
struct NoTarget {};
using Target = std::variant<PoissonianTarget, CurveTarget, NoTarget>;

inline double poissonian_deviation(const PairCorrelationCurve& curve) {
    double dev = 0.0;
    for (std::size_t i = 0; i < curve.s_grid.size(); ++i)
        dev = std::max(dev, std::fabs(curve.values[i] - 2.0 * curve.s_grid[i]));
    return dev;
}

inline double curve_deviation(const PairCorrelationCurve& curve,
                              const std::vector<double>& reference) {
    if (reference.size() != curve.values.size())
        throw std::invalid_argument("curve_deviation: reference length differs from grid");
    double dev = 0.0;
    for (std::size_t i = 0; i < curve.values.size(); ++i)
        dev = std::max(dev, std::fabs(curve.values[i] - reference[i]));
    return dev;
}

// --------------------------------------------------------------------------
// Convergence reports
// --------------------------------------------------------------------------

struct ExperimentConfig {
    SequenceSpec spec;
    std::vector<std::size_t> n_values; // strictly increasing
    std::vector<double> s_grid;        // strictly increasing, >= 0
    Target target = PoissonianTarget{};
    std::string output_prefix;
};

inline void validate_config(const ExperimentConfig& config) {
    if (config.n_values.empty())
        throw std::invalid_argument("config: n_values must be nonempty");
    for (std::size_t i = 1; i < config.n_values.size(); ++i)
        if (config.n_values[i] <= config.n_values[i - 1])
            throw std::invalid_argument("config: n_values must be strictly increasing");
    validate_s_grid(config.s_grid);
}

struct DeviationRow {
    std::size_t n = 0;
    double deviation = std::numeric_limits<double>::quiet_NaN(); // NaN when no target
};

struct ConvergenceReport {
    ExperimentConfig config;
    std::vector<DeviationRow> rows;
    std::vector<PairCorrelationCurve> curves; // one per N
};

inline ConvergenceReport convergence_report(const ExperimentConfig& config) {
    validate_config(config);
    ConvergenceReport report;
    report.config = config;
    for (std::size_t n : config.n_values) {
        PairCorrelationCurve curve = pair_correlation_curve(generate(config.spec, n),
                                                            config.s_grid);
        DeviationRow row;
        row.n = n;
        if (std::get_if<PoissonianTarget>(&config.target))
            row.deviation = poissonian_deviation(curve);
        else if (const auto* ct = std::get_if<CurveTarget>(&config.target))
            row.deviation = curve_deviation(curve, ct->values);
        report.rows.push_back(row);
        report.curves.push_back(std::move(curve));
    }
    return report;
}

// Raw trajectory of R(s,N)/N at fixed s; oscillation is the reader's call.
inline std::vector<std::pair<std::size_t, double>>
limit_nonexistence_probe(const SequenceSpec& spec, double s,
                         const std::vector<std::size_t>& n_values) {
    if (s < 0.0)
        throw std::invalid_argument("probe: s must be >= 0");
    std::vector<std::pair<std::size_t, double>> rows;
    rows.reserve(n_values.size());
    for (std::size_t n : n_values) {
        std::uint64_t count = pair_count_fast(generate(spec, n), s);
        rows.emplace_back(n, static_cast<double>(count) / static_cast<double>(n));
    }
    return rows;
}

// --------------------------------------------------------------------------
// JSON rendering of specs, configs, reports
// --------------------------------------------------------------------------

inline nlohmann::json spec_to_json(const SequenceSpec& spec) {
    struct Visitor {
        nlohmann::json operator()(const Kronecker& k) const {
            return {{"family", "kronecker"}, {"alpha", k.alpha}};
        }
        nlohmann::json operator()(const VanDerCorput& v) const {
            return {{"family", "vdc"}, {"base", v.base}};
        }
        nlohmann::json operator()(const RootSequence&) const {
            return {{"family", "root"}};
        }
        nlohmann::json operator()(const UniformRandom& u) const {
            return {{"family", "random"}, {"seed", u.seed}};
        }
        nlohmann::json operator()(const FromFile& f) const {
            return {{"family", "file"}, {"path", f.path}};
        }
    };
    return std::visit(Visitor{}, spec);
}

inline SequenceSpec spec_from_json(const nlohmann::json& j) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "kronecker") {
        const auto& a = j.at("alpha");
        double alpha = a.is_string() ? parse_alpha(a.get<std::string>()) : a.get<double>();
        return Kronecker{alpha};
    }
    if (family == "vdc")
        return VanDerCorput{j.at("base").get<unsigned>()};
    if (family == "root")
        return RootSequence{};
    if (family == "random")
        return UniformRandom{j.at("seed").get<std::uint64_t>()};
    if (family == "file")
        return FromFile{j.at("path").get<std::string>()};
    throw std::invalid_argument("unknown sequence family '" + family + "'");
}

inline nlohmann::json target_to_json(const Target& target) {
    if (std::get_if<PoissonianTarget>(&target))
        return "poissonian";
    if (const auto* ct = std::get_if<CurveTarget>(&target))
        return {{"curve", ct->values}};
    return "none";
}

inline Target target_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "poissonian")
            return PoissonianTarget{};
        if (s == "none")
            return NoTarget{};
        throw std::invalid_argument("unknown target '" + s + "'");
    }
    if (j.is_object() && j.contains("curve"))
        return CurveTarget{j.at("curve").get<std::vector<double>>()};
    throw std::invalid_argument("target must be \"poissonian\", \"none\" or {\"curve\": [...]}");
}

inline nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json j = spec_to_json(config.spec);
    j["n_values"] = config.n_values;
    j["s_grid"] = config.s_grid;
    j["target"] = target_to_json(config.target);
    j["output"] = config.output_prefix;
    return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    config.spec = spec_from_json(j);
    config.n_values = j.at("n_values").get<std::vector<std::size_t>>();
    const auto& grid = j.at("s_grid");
    config.s_grid = grid.is_string() ? parse_grid(grid.get<std::string>())
                                     : grid.get<std::vector<double>>();
    config.target = j.contains("target") ? target_from_json(j.at("target"))
                                         : Target{PoissonianTarget{}};
    if (j.contains("output"))
        config.output_prefix = j.at("output").get<std::string>();
    validate_config(config);
    return config;
}

inline nlohmann::json report_to_json(const ConvergenceReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r = {{"n", row.n}};
        if (std::isnan(row.deviation))
            r["deviation"] = nullptr;
        else
            r["deviation"] = row.deviation;
        rows.push_back(r);
    }
    return {{"config", config_to_json(report.config)}, {"rows", rows}};
}

inline void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
    out << "N,deviation\n";
    for (const auto& row : report.rows)
        out << row.n << ',' << format_real(row.deviation) << '\n';
}

inline void write_probe_csv(std::ostream& out,
                            const std::vector<std::pair<std::size_t, double>>& rows) {
    out << "N,R_over_N\n";
    for (const auto& [n, v] : rows)
        out << n << ',' << format_real(v) << '\n';
}

} // namespace paircorr
