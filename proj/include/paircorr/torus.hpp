// torus.hpp
//
// Points on the one-dimensional torus [0,1) and the nearest-integer metric.
// Everything downstream (pair counting, gap spectra) is built on these two
// operations, so their floating-point behavior is pinned here:
//
//   * positions are always doubles in [0,1); construction reduces mod 1 and
//     clamps a rounded-up 1.0 back to 0.0
//   * torus_distance(a,b) = min(d, 1-d) with d = |a-b|, no tolerance

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace paircorr {

// Decimal rendering used by every text surface (point files, CSV).
// 17 significant digits round-trip an IEEE double exactly.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class TorusPoint {
public:
    TorusPoint() = default;

    explicit TorusPoint(double x) : value_(reduce(x)) {}

    double value() const { return value_; }

    friend bool operator==(TorusPoint a, TorusPoint b) { return a.value_ == b.value_; }
    friend bool operator<(TorusPoint a, TorusPoint b) { return a.value_ < b.value_; }

private:
    static double reduce(double x) {
        if (!std::isfinite(x))
            throw std::invalid_argument("torus point requires a finite value");
        double f = x - std::floor(x);
        // x slightly below an integer can round to exactly 1.0 here
        if (f >= 1.0)
            f = 0.0;
        return f;
    }

    double value_ = 0.0;
};

inline TorusPoint reduce_mod_1(double x) { return TorusPoint(x); }

// Nearest-integer distance; symmetric, bounded by 1/2.
inline double torus_distance(TorusPoint a, TorusPoint b) {
    double d = std::fabs(a.value() - b.value());
    return std::min(d, 1.0 - d);
}

// A finite multiset of torus points. Duplicates are meaningful: they are
// exactly what the zero-gap and batch machinery is about.
struct PointSet {
    std::vector<TorusPoint> points;
    std::string label;

    std::size_t size() const { return points.size(); }
};

inline std::vector<double> values_of(const PointSet& ps) {
    std::vector<double> v;
    v.reserve(ps.points.size());
    for (TorusPoint p : ps.points)
        v.push_back(p.value());
    return v;
}

// ---------------------------------------------------------------------------
// Text format: one decimal real per line, values in [0,1), '#' comments and
// blank lines ignored.
// ---------------------------------------------------------------------------

inline PointSet read_points(std::istream& in, const std::string& label = "") {
    PointSet ps;
    ps.label = label;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#')
            continue;
        const char* begin = line.c_str() + start;
        char* end = nullptr;
        double x = std::strtod(begin, &end);
        if (end == begin)
            throw std::runtime_error("line " + std::to_string(lineno) + ": not a number");
        while (*end == ' ' || *end == '\t' || *end == '\r')
            ++end;
        if (*end != '\0')
            throw std::runtime_error("line " + std::to_string(lineno) + ": trailing characters");
        if (!std::isfinite(x) || x < 0.0 || x >= 1.0)
            throw std::runtime_error("line " + std::to_string(lineno) + ": value outside [0,1)");
        ps.points.push_back(TorusPoint(x));
    }
    if (ps.points.empty())
        throw std::runtime_error("point file contains no points");
    return ps;
}

inline PointSet read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open point file: " + path);
    try {
        return read_points(in, path);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

inline void write_points(std::ostream& out, const PointSet& ps) {
    for (TorusPoint p : ps.points)
        out << format_real(p.value()) << '\n';
}

inline void write_points_file(const std::string& path, const PointSet& ps) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    write_points(out, ps);
}

} // namespace paircorr
