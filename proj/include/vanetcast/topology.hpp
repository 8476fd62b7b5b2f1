#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "vanetcast/connectivity.hpp"
#include "vanetcast/errors.hpp"
#include "vanetcast/random.hpp"

namespace vanetcast {

// The sub-network under study: a road segment of length L with the source
// at 0 and the destination at L, relay density rho, per-vehicle malice
// probability p_m, and a wireless connection model.
struct Scenario {
    double road_length;   // L, meters
    double density;       // rho, vehicles per meter
    double malice_prob;   // p_m
    ConnectionModel model;

    Scenario(double road_length_, double density_, double malice_prob_, ConnectionModel model_)
        : road_length(road_length_), density(density_), malice_prob(malice_prob_), model(model_) {
        if (!(road_length > 0.0)) throw InputError("road length must be > 0");
        if (!(density > 0.0)) throw InputError("density must be > 0");
        if (!(malice_prob >= 0.0 && malice_prob <= 1.0))
            throw InputError("malice probability must be in [0, 1]");
    }

    double mean_count() const { return density * road_length; }
};

// One realized road: relay positions strictly increasing in (0, L) and a
// malice flag per relay. The source (position 0, always normal) and the
// destination (position L) are protocol roles, not members of `positions`.
struct Topology {
    std::vector<double> positions;
    std::vector<std::uint8_t> malicious;

    Topology() = default;
    Topology(std::vector<double> positions_, std::vector<std::uint8_t> malicious_)
        : positions(std::move(positions_)), malicious(std::move(malicious_)) {
        if (positions.size() != malicious.size())
            throw InputError("positions and malice flags must have equal length");
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (!(positions[i] > 0.0)) throw InputError("relay positions must be > 0");
            if (i > 0 && !(positions[i] > positions[i - 1]))
                throw InputError("relay positions must be strictly increasing");
        }
    }

    std::size_t size() const { return positions.size(); }
};

inline void validate_against(const Topology& topo, double road_length) {
    if (!topo.positions.empty() && !(topo.positions.back() < road_length))
        throw InputError("relay positions must lie strictly inside (0, road_length)");
}

// Pr(N = n) for N ~ Poisson(rho * L), computed in log space so large n does
// not overflow the (rho*L)^n / n! terms.
inline double poisson_pmf(double density, double length, std::uint64_t count) {
    const double mean = density * length;
    if (!(mean > 0.0)) throw InputError("poisson_pmf needs density * length > 0");
    const double n = static_cast<double>(count);
    return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

// Smallest n_max with Pr(N > n_max) < tail_mass.
inline std::uint64_t truncation_bound(double density, double length, double tail_mass) {
    if (!(tail_mass > 0.0 && tail_mass < 1.0)) throw InputError("tail mass must be in (0, 1)");
    const double mean = density * length;
    if (!(mean > 0.0)) throw InputError("truncation_bound needs density * length > 0");
    const std::uint64_t cap =
        static_cast<std::uint64_t>(mean + 50.0 * std::sqrt(mean + 1.0) + 200.0);
    double cum = 0.0;
    for (std::uint64_t n = 0; n <= cap; ++n) {
        cum += poisson_pmf(density, length, n);
        if (1.0 - cum < tail_mass) return n;
    }
    throw InfeasibleError("truncation_bound: tail mass " + std::to_string(tail_mass) +
                          " not reachable in double precision");
}

// Draws one road realization: N ~ Poisson(rho*L); given N, positions are
// independent uniforms on (0, L) returned sorted (the order-statistics
// characterization of the Poisson process); malice flags are independent
// Bernoulli(p_m), attached to the sorted positions. Draw order is fixed
// (count, positions, flags) so a given engine state maps to exactly one
// topology.
inline Topology sample_topology(const Scenario& scenario, Engine& rng) {
    const std::uint64_t count = poisson_sample(rng, scenario.mean_count());
    std::vector<double> positions(count);
    const double top = std::nextafter(scenario.road_length, 0.0);
    for (auto& p : positions) {
        p = uniform01(rng) * scenario.road_length;
        if (p >= scenario.road_length) p = top;  // guard the open upper endpoint
    }
    std::sort(positions.begin(), positions.end());
    // exact duplicates have probability ~0 but would break strict ordering
    for (std::size_t i = 1; i < positions.size(); ++i)
        if (positions[i] <= positions[i - 1])
            positions[i] = std::nextafter(positions[i - 1], scenario.road_length);
    std::vector<std::uint8_t> flags(count);
    for (auto& f : flags) f = bernoulli(rng, scenario.malice_prob) ? 1 : 0;
    return Topology(std::move(positions), std::move(flags));
}

// Line-oriented fixture form, one relay per line: `position<TAB>malice`
// with malice as 0/1. Blank lines and lines starting with '#' are ignored
// on input. Positions are printed with enough digits to round-trip exactly.
inline std::string format_topology(const Topology& topo) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < topo.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g\t%d\n", topo.positions[i],
                      topo.malicious[i] ? 1 : 0);
        out += buf;
    }
    return out;
}

inline Topology parse_topology(std::string_view text) {
    std::vector<double> positions;
    std::vector<std::uint8_t> flags;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        std::string_view line = text.substr(
            start, end == std::string_view::npos ? text.size() - start : end - start);
        ++line_no;
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        if (line.empty() || line.front() == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw ParseError("expected `position<TAB>malice`", line_no);
        const std::string pos_text(line.substr(0, tab));
        const std::string flag_text(line.substr(tab + 1));
        char* rest = nullptr;
        const double pos = std::strtod(pos_text.c_str(), &rest);
        if (rest == pos_text.c_str() || *rest != '\0')
            throw ParseError("bad position '" + pos_text + "'", line_no);
        if (flag_text != "0" && flag_text != "1")
            throw ParseError("bad malice flag '" + flag_text + "' (expected 0 or 1)", line_no);
        positions.push_back(pos);
        flags.push_back(flag_text == "1" ? 1 : 0);
    }
    try {
        return Topology(std::move(positions), std::move(flags));
    } catch (const InputError& e) {
        throw ParseError(e.what(), line_no);
    }
}

}  // namespace vanetcast
