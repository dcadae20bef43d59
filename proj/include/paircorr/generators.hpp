// generators.hpp
//
// The sequence families used throughout: Kronecker {n*alpha}, van der Corput
// radical inverses, the root sequence {sqrt(n)} over non-squares, seeded
// uniform random draws, and point files. All families are deterministic and
// prefix-stable: generate(spec, n) is the first n points of generate(spec, m)
// for any m > n.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include "paircorr/rng.hpp"
#include "paircorr/torus.hpp"

namespace paircorr {

struct Kronecker {
    double alpha;
};

struct VanDerCorput {
    unsigned base; // >= 2
};

struct RootSequence {};

struct UniformRandom {
    std::uint64_t seed;
};

struct FromFile {
    std::string path;
};

using SequenceSpec = std::variant<Kronecker, VanDerCorput, RootSequence, UniformRandom, FromFile>;

// {i*alpha} computed with a single rounding. alpha is a dyadic rational
// m*2^e; i*m fits in 128 bits, so the fractional part of i*alpha is exact
// as an integer and only the final conversion to double rounds. Repeated
// gap lengths of the rotation orbit then agree to a couple of ulps instead
// of drifting by i*ulp(alpha), which keeps three-gap spectra clean under a
// 1e-12 merge tolerance.
inline double frac_multiple(double alpha, std::uint64_t i) {
    if (i == 0 || alpha == 0.0)
        return 0.0;
    int e = 0;
    double m = std::frexp(std::fabs(alpha), &e); // |alpha| = m * 2^e, m in [0.5,1)
    auto mant = static_cast<unsigned __int128>(std::ldexp(m, 53));
    int shift = 53 - e; // |i*alpha| = (i*mant) * 2^-shift
    unsigned __int128 prod = mant * static_cast<unsigned __int128>(i);
    double f;
    if (shift <= 0) {
        f = 0.0; // i*alpha is an integer
    } else {
        unsigned __int128 rem = prod;
        if (shift < 128)
            rem = prod & ((static_cast<unsigned __int128>(1) << shift) - 1);
        f = std::ldexp(static_cast<double>(rem), -shift);
        if (f >= 1.0) // conversion of rem can round up to 2^shift
            f = 0.0;
    }
    if (alpha < 0.0 && f != 0.0) {
        f = 1.0 - f;
        if (f >= 1.0)
            f = 0.0;
    }
    return f;
}

// Radical inverse of i in the given base: digit-reverse i across the point.
inline double radical_inverse(std::uint64_t i, unsigned base) {
    double inv = 1.0 / base;
    double scale = inv;
    double r = 0.0;
    while (i != 0) {
        r += static_cast<double>(i % base) * scale;
        i /= base;
        scale *= inv;
    }
    return r;
}

inline std::string describe(const SequenceSpec& spec) {
    struct Visitor {
        std::string operator()(const Kronecker& k) const {
            return "kronecker(alpha=" + format_real(k.alpha) + ")";
        }
        std::string operator()(const VanDerCorput& v) const {
            return "vdc(base=" + std::to_string(v.base) + ")";
        }
        std::string operator()(const RootSequence&) const { return "root"; }
        std::string operator()(const UniformRandom& u) const {
            return "random(seed=" + std::to_string(u.seed) + ")";
        }
        std::string operator()(const FromFile& f) const { return "file(" + f.path + ")"; }
    };
    return std::visit(Visitor{}, spec);
}

inline PointSet generate(const SequenceSpec& spec, std::size_t n) {
    if (n < 1)
        throw std::invalid_argument("generate: n must be >= 1");

    PointSet ps;
    ps.label = describe(spec);
    ps.points.reserve(n);

    if (const auto* k = std::get_if<Kronecker>(&spec)) {
        if (!std::isfinite(k->alpha))
            throw std::invalid_argument("generate: alpha must be finite");
        for (std::size_t i = 1; i <= n; ++i)
            ps.points.push_back(TorusPoint(frac_multiple(k->alpha, i)));
    } else if (const auto* v = std::get_if<VanDerCorput>(&spec)) {
        if (v->base < 2)
            throw std::invalid_argument("generate: van der Corput base must be >= 2");
        for (std::size_t i = 1; i <= n; ++i)
            ps.points.push_back(TorusPoint(radical_inverse(i, v->base)));
    } else if (std::get_if<RootSequence>(&spec)) {
        // enumerate non-squares 2, 3, 5, 6, ... and take {sqrt(m)}
        std::uint64_t m = 0;
        std::uint64_t root = 1;
        std::uint64_t next_square = 1;
        for (std::size_t got = 0; got < n;) {
            ++m;
            if (m == next_square) {
                ++root;
                next_square = root * root;
                continue;
            }
            ps.points.push_back(TorusPoint(std::sqrt(static_cast<double>(m))));
            ++got;
        }
    } else if (const auto* u = std::get_if<UniformRandom>(&spec)) {
        SplitMix64 rng(u->seed);
        for (std::size_t i = 0; i < n; ++i)
            ps.points.push_back(TorusPoint(rng.next_unit()));
    } else {
        const auto& f = std::get<FromFile>(spec);
        PointSet file = read_points_file(f.path);
        if (file.points.size() < n)
            throw std::runtime_error("generate: " + f.path + " holds " +
                                     std::to_string(file.points.size()) + " points, need " +
                                     std::to_string(n));
        file.points.resize(n);
        file.label = ps.label;
        return file;
    }
    return ps;
}

} // namespace paircorr
